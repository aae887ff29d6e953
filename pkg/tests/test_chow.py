from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from terracini.chow import (
    Context, ProdClass, SymClass, TruncationMismatch, eval_top, exp_class, prod_mul,
    pushforward, universal_divisor_class,
)
from terracini.poly import falling_factorial, symbols
from strategies import prod_classes, sym_classes, without_constant

d, g = symbols("d", "g")


def eta(n=2):
    return ProdClass.eta(n)


def gamma(n=2):
    return ProdClass.gamma(n)


def theta(n=2):
    return SymClass.theta(n)


def x(n=2):
    return SymClass.x(n)


def test_gamma_squared():
    assert gamma() * gamma() == eta() * theta() * -2


def test_eta_gamma_and_eta_squared():
    assert (eta() * gamma()).is_zero()
    assert (eta() * eta()).is_zero()
    assert (gamma() * gamma() * gamma()).is_zero()


def test_small_product():
    assert (1 + eta()) * (1 + gamma()) == 1 + eta() + gamma()


def test_mismatched_levels():
    with pytest.raises(TruncationMismatch):
        prod_mul(eta(2), eta(3))
    with pytest.raises(TruncationMismatch):
        x(2) * x(3)


def test_exp_eta():
    assert exp_class(eta() * d) == 1 + eta() * d


def test_exp_gamma():
    assert exp_class(gamma() * -2) == 1 - gamma() * 2 - eta() * theta() * 4


def test_exp_zero_and_bad_input():
    assert exp_class(ProdClass.zero(3)) == ProdClass.one(3)
    with pytest.raises(ValueError):
        exp_class(ProdClass.one(2))


def test_exp_of_x_is_finite_series():
    # e^{-2x} = 1 - 2x + 2x^2 at n = 2
    assert exp_class(x() * -2) == 1 - 2 * x() + 2 * x() * x()


@pytest.mark.parametrize("n", [2, 3])
def test_universal_divisor(n):
    delta = universal_divisor_class(Context(n))
    assert delta == eta(n) * n + gamma(n) + x(n)
    assert delta - x(n) - gamma(n) == eta(n) * n


def test_pushforward_examples():
    assert pushforward(eta()) == 1
    e2x = ProdClass.pullback(exp_class(x() * -2))
    assert pushforward(gamma() * e2x).is_zero()
    assert pushforward(eta() * theta() * e2x) == theta() - 2 * x() * theta()


@pytest.mark.parametrize("cls, n, expected", [
    (SymClass.monomial(2, 2, 0), 2, 1),
    (SymClass.monomial(2, 1, 1), 2, g),
    (SymClass.monomial(3, 1, 2), 3, g * (g - 1)),
])
def test_eval_top_examples(cls, n, expected):
    assert eval_top(cls, Context(n)) == expected


def test_eval_top_kills_lower_degrees():
    a = SymClass(3, {(0, 0): d, (1, 0): 5, (1, 1): g, (3, 0): 2})
    assert eval_top(a, Context(3)) == 2


def test_eval_top_numeric_context():
    a = SymClass(3, {(0, 3): 1, (1, 2): 1})
    assert eval_top(a, Context(3, d=10, g=1)) == 0
    assert eval_top(a, Context(3, d=10, g=4)) == 24 + 12


def test_context_warns_below_nondegenerate_degree():
    assert Context(2, d=3, g=0).warnings
    assert not Context(2, d=4, g=0).warnings
    with pytest.raises(ValueError):
        Context(0)


levels = st.integers(min_value=2, max_value=4)


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_projection_formula(data):
    n = data.draw(levels)
    alpha = data.draw(sym_classes(n))
    beta = data.draw(prod_classes(n))
    assert pushforward(ProdClass.pullback(alpha) * beta) == alpha * pushforward(beta)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_grading(data):
    n = data.draw(levels)
    i = data.draw(st.integers(0, n))
    j = data.draw(st.integers(0, n))
    a = data.draw(sym_classes(n)).degree_part(i)
    b = data.draw(sym_classes(n)).degree_part(j)
    prod = a * b
    assert prod.is_homogeneous(i + j)
    if i + j > n:
        assert prod.is_zero()


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_truncation_coherence(data):
    n = data.draw(levels)
    a = data.draw(prod_classes(n + 1))
    b = data.draw(prod_classes(n + 1))
    assert (a * b).truncate(n) == a.truncate(n) * b.truncate(n)
    assert (a + b).truncate(n) == a.truncate(n) + b.truncate(n)
    nil = without_constant(a)
    assert exp_class(nil).truncate(n) == exp_class(nil.truncate(n))
    assert pushforward(a).truncate(n) == pushforward(a.truncate(n))
    s = data.draw(sym_classes(n + 1))
    t = data.draw(sym_classes(n + 1))
    assert (s * t).truncate(n) == s.truncate(n) * t.truncate(n)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_eval_top_linear(data):
    n = data.draw(levels)
    a = data.draw(sym_classes(n))
    b = data.draw(sym_classes(n))
    ctx = Context(n)
    assert eval_top(a + b, ctx) == eval_top(a, ctx) + eval_top(b, ctx)
    assert eval_top(a * Fraction(3, 2), ctx) == eval_top(a, ctx) * Fraction(3, 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_poincare_numbers(n):
    ctx = Context(n)
    for i in range(n + 1):
        assert eval_top(SymClass.monomial(n, n - i, i), ctx) == falling_factorial(i).with_variables(("d", "g"))
