from fractions import Fraction

import numpy as np
import pytest

from terracini.oracle import (
    IntPoly, OracleError, contact_matrix, count_terracini_pairs, divide_by_diagonal,
    osculating_full_rank, rank_drop_minors, random_curve, reduced_minors, sylvester_resultant,
    _exact_rank,
)
from terracini.poly import Poly, symbols

t1, t2 = symbols("t1", "t2")


def test_random_curve_shape_and_determinism():
    c = random_curve(5, 11, 10)
    assert c.d == 5
    assert len(c.coeffs) == 5 and all(len(row) == 6 for row in c.coeffs)
    assert all(-10 <= v <= 10 for row in c.coeffs for v in row)
    assert random_curve(5, 11, 10) == c
    assert random_curve(5, 12, 10) != c
    assert _exact_rank(c.coeffs) == 5


def test_random_curve_regenerates_dependent_draws():
    # with range 0 every draw is the zero matrix, so retries run out
    with pytest.raises(OracleError):
        random_curve(4, 0, 0, max_tries=5)
    with pytest.raises(ValueError):
        random_curve(3, 0)


def test_contact_matrix_generic_rank():
    c = random_curve(5, 1)
    m = contact_matrix(c, Fraction(2, 7), Fraction(-5, 3))
    assert _exact_rank(m) == 4


def test_contact_matrix_on_diagonal():
    c = random_curve(5, 1)
    assert _exact_rank(contact_matrix(c, 3, 3)) <= 2


def test_symbolic_contact_matrix_evaluates_exactly():
    c = random_curve(4, 2)
    sym = contact_matrix(c)
    num = contact_matrix(c, Fraction(1, 2), 3)
    assert [[e.substitute({"t1": Fraction(1, 2), "t2": 3}) for e in row] for row in sym] == num


def test_rational_normal_curve_never_drops_rank():
    c = random_curve(4, 5)
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b = (Fraction(int(v), int(w)) for v, w in zip(rng.integers(-20, 20, 2), rng.integers(1, 9, 2)))
        if a != b:
            assert _exact_rank(contact_matrix(c, a, b)) == 4


def test_minors_vanish_to_order_four_on_diagonal():
    c = random_curve(5, 3)
    for q in rank_drop_minors(c):
        divide_by_diagonal(q, 4)
        with pytest.raises(OracleError):
            divide_by_diagonal(divide_by_diagonal(q, 4), 1)


def test_minor_symmetry():
    c = random_curve(5, 4)
    for q in reduced_minors(c):
        swapped = Poly({(j, i): v for (i, j), v in q.terms.items()}, ("t1", "t2"))
        assert swapped == q or swapped == -q


def test_minors_not_all_zero_at_generic_point():
    c = random_curve(6, 0)
    vals = [q.substitute({"t1": 2, "t2": -1}) for q in rank_drop_minors(c)]
    assert any(vals)


def test_osculating_matrix_full_rank():
    for d in (4, 5, 6):
        assert osculating_full_rank(random_curve(d, 0))


def test_sylvester_examples():
    assert sylvester_resultant(t2 - t1, t2 + t1) == 2 * t1
    assert sylvester_resultant(t2 * t2 - t1, t2) == -t1
    a = t2 * t2 * t1 + 3 * t2 - 1
    assert sylvester_resultant(a, a).is_zero()


def test_sylvester_vanishes_at_common_roots():
    a = (t2 - 2) * (t2 + t1)
    b = (t2 - 2 * t1) * (t2 + 5)
    res = sylvester_resultant(a, b)
    for v in (1, 0):
        assert res.substitute({"t1": v}) == 0
    assert res.substitute({"t1": 3}) != 0


def test_sylvester_rejects_constant_in_t2():
    with pytest.raises(ValueError):
        sylvester_resultant(t1 + 1, t2)


def test_intpoly_ring():
    a, b = IntPoly([1, 2]), IntPoly([0, -1, 3])
    assert (a * b).c == [0, -1, 1, 6]
    assert (a - a).c == []
    assert (2 * a + 1).c == [3, 4]


@pytest.mark.parametrize("d, expected", [(4, 0), (5, 4), (6, 12)])
def test_counts_match_closed_formula(d, expected):
    result = count_terracini_pairs(random_curve(d, 0))
    assert result.count == expected
    assert result.symmetric
    for s in result.solutions:
        assert s.residual <= 1e-8
        assert abs(s.t1 - s.t2) > 1e-6


def test_solutions_drop_rank():
    curve = random_curve(5, 2)
    result = count_terracini_pairs(curve)
    assert len(result.ordered_solutions) == 2 * result.count
    for s in result.solutions:
        rows = []
        for t in (s.t1, s.t2):
            f = [np.polyval(row[::-1], t) for row in curve.coeffs]
            fp = [np.polyval(np.polyder(np.array(row[::-1], dtype=float)), t) for row in curve.coeffs]
            rows += [f, fp]
        sv = np.linalg.svd(np.array(rows), compute_uv=False)
        assert sv[-1] / sv[0] < 1e-7


def test_determinism():
    a = count_terracini_pairs(random_curve(5, 9))
    b = count_terracini_pairs(random_curve(5, 9))
    assert a.count == b.count
    assert [(s.t1, s.t2) for s in a.solutions] == [(s.t1, s.t2) for s in b.solutions]
