"""Porteous determinant and the closed Terracini count ``t(C)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .chern import ChernVector, chern_vector, inverse_series
from .chow import COEFF_VARIABLES, Context, SymClass, eval_top
from .poly import Poly


def porteous_matrix(c: ChernVector) -> list:
    """``n x n`` matrix with entry ``(i, j) = c_(1+j-i)``."""
    n = c.n
    return [[c.chern(1 + j - i) for j in range(n)] for i in range(n)]


def _check_square(m: list) -> int:
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("determinant of a non-square matrix")
    return size


def det_berkowitz(m: list, one=1):
    """Division-free determinant (Berkowitz).

    Works over any commutative ring whose elements support ``+``, ``-``,
    ``*`` and mixing with the integer ``one``/``0``; zero divisors are fine.
    """
    size = _check_square(m)
    if size == 0:
        return one
    # characteristic polynomial det(t I - A), highest coefficient first
    vect = [one, -m[0][0]]
    for r in range(1, size):
        row = m[r][:r]
        col = [m[i][r] for i in range(r)]
        sub = [line[:r] for line in m[:r]]
        q = [one, -m[r][r]]
        v = col
        for _ in range(r):
            q.append(-_dot(row, v))
            v = [_dot(line, v) for line in sub]
        # Toeplitz(q) @ vect, lower triangular of shape (r+2) x (r+1)
        new = []
        for i in range(r + 2):
            acc = None
            for j in range(min(i, r) + 1):
                term = q[i - j] * vect[j]
                acc = term if acc is None else acc + term
            new.append(acc)
        vect = new
    det = vect[-1]
    return det if size % 2 == 0 else -det


def _dot(a: list, b: list):
    acc = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        acc = acc + x * y
    return acc


def det_cofactor(m: list, one=1):
    """Leibniz expansion; the independent check for :func:`det_berkowitz`."""
    size = _check_square(m)
    if size == 0:
        return one
    total = None
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = m[0][perm[0]]
        for i in range(1, size):
            term = term * m[i][perm[i]]
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def det_division_free(m: list):
    size = _check_square(m)
    one = SymClass.one(m[0][0].n) if size and isinstance(m[0][0], SymClass) else 1
    return det_berkowitz(m, one)


@dataclass
class TerraciniFormula:
    n: int
    t: Poly
    cls: SymClass | None = field(default=None, repr=False)
    warnings: list = field(default_factory=list)

    def evaluate(self, d, g) -> Fraction:
        return self.t.substitute({"d": d, "g": g})

    def expanded(self) -> Poly:
        return self.t.with_variables(COEFF_VARIABLES)


def terracini_class(ctx: Context, c: ChernVector | None = None, check: bool = True) -> SymClass:
    """Degree-``n`` Porteous class; cross-checked against ``(-1)^n [c^(-1)]_n``."""
    if c is None:
        c = chern_vector(ctx)
    cls = det_division_free(porteous_matrix(c))
    if check:
        s = inverse_series(c.c)
        expected = s[c.n] if c.n % 2 == 0 else -s[c.n]
        if cls != expected:
            raise ArithmeticError("Porteous determinant disagrees with the inverse-series route")
    return cls


def terracini_formula(ctx: Context) -> TerraciniFormula:
    if ctx.n < 2:
        raise ValueError("the Terracini count needs n >= 2")
    cls = terracini_class(ctx)
    t = eval_top(cls, ctx)
    out_warnings = list(ctx.warnings)
    if not ctx.symbolic:
        value = t.constant_value()
        if value < 0:
            out_warnings.append(f"negative formal count {value}")
    return TerraciniFormula(ctx.n, t, cls, out_warnings)


def terracini_count(n: int, d, g) -> TerraciniFormula:
    """Numeric count at a single ``(d, g)``; value in ``result.t.constant_value()``."""
    return terracini_formula(Context(n, d, g))
