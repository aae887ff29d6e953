"""Brute-force Terracini count for rational curves in P^4 (g = 0, n = 2).

A rational curve is given by five polynomials ``f_0 .. f_4`` in one
parameter.  A pair of distinct parameters ``(t1, t2)`` is a Terracini pair
when the 4 x 5 matrix with rows ``f(t1), f'(t1), f(t2), f'(t2)`` has rank
below 4, i.e. all five maximal minors vanish.

Pipeline: exact minors -> strip the ``(t1 - t2)^4`` factor every minor
carries -> two random integer combinations -> Sylvester resultant in ``t2``
(exact, division-free) -> numeric roots in ``t1`` -> back-solve ``t2`` ->
Gauss-Newton polish on all five minors -> residual filter and dedup.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .porteous import det_berkowitz
from .poly import Poly

log = logging.getLogger(__name__)

PAIR_VARIABLES = ("t1", "t2")
DIAGONAL_ORDER = 4


class OracleError(RuntimeError):
    pass


# --- dense univariate integer polynomials (coefficient i is t^i) -----------


class IntPoly:
    """Minimal dense univariate polynomial over Z, ring ops only."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @classmethod
    def _raw(cls, c):
        while c and c[-1] == 0:
            c.pop()
        p = cls.__new__(cls)
        p.c = c
        return p

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly._raw([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly._raw([-x for x in self.c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if not a or not b:
            return IntPoly._raw([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly._raw(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.c == other.c

    def __bool__(self):
        return bool(self.c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def to_poly(self, var: str = "t1") -> Poly:
        return Poly({(i,): x for i, x in enumerate(self.c)}, (var,))


# --- bivariate helpers: dense[j] is the t1-polynomial multiplying t2^j ------


def _to_dense(p: Poly) -> list:
    p = p.with_variables(PAIR_VARIABLES)
    if not p.terms:
        return []
    deg2 = max(e[1] for e in p.terms)
    rows = [dict() for _ in range(deg2 + 1)]
    for (i, j), c in p.terms.items():
        if c.denominator != 1:
            raise OracleError("oracle polynomials must have integer coefficients")
        rows[j][i] = int(c)
    out = []
    for row in rows:
        size = max(row) + 1 if row else 0
        out.append(IntPoly([row.get(i, 0) for i in range(size)]))
    return out


def _from_dense(rows: list) -> Poly:
    terms = {}
    for j, row in enumerate(rows):
        for i, c in enumerate(row.c):
            if c:
                terms[(i, j)] = c
    return Poly(terms, PAIR_VARIABLES)


def divide_by_diagonal(p: Poly, times: int = 1) -> Poly:
    """Exact quotient of ``p`` by ``(t2 - t1)^times``; raises if not divisible."""
    rows = _to_dense(p)
    t1 = IntPoly([0, 1])
    for _ in range(times):
        if not rows:
            return Poly.zero(PAIR_VARIABLES)
        quotient = [IntPoly()] * (len(rows) - 1)
        carry = IntPoly()
        for j in range(len(rows) - 1, 0, -1):
            carry = rows[j] + t1 * carry
            quotient[j - 1] = carry
        remainder = rows[0] + t1 * carry
        if remainder:
            raise OracleError("polynomial is not divisible by (t2 - t1)")
        rows = quotient
    return _from_dense(rows)


# --- the curve ---------------------------------------------------------------


@dataclass(frozen=True)
class CurveParam:
    """Rational curve ``t -> [f_0(t) : ... : f_4(t)]``; ``coeffs[k][i]`` multiplies ``t^i`` in ``f_k``."""

    d: int
    coeffs: tuple
    seed: int
    coeff_range: int = 10

    def polys(self, var: str) -> list:
        return [Poly({(i,): c for i, c in enumerate(row)}, (var,)) for row in self.coeffs]


def _exact_rank(rows) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def random_curve(d: int, seed: int, coeff_range: int = 10, max_tries: int = 100) -> CurveParam:
    """Five random integer polynomials of degree ``d`` spanning a 5-dimensional space."""
    if d < 4:
        raise ValueError("a non-degenerate curve in P^4 needs d >= 4")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        coeffs = rng.integers(-coeff_range, coeff_range + 1, size=(5, d + 1))
        if not coeffs[:, d].any():
            continue
        if _exact_rank(coeffs.tolist()) == 5:
            return CurveParam(d, tuple(tuple(int(c) for c in row) for row in coeffs), seed, coeff_range)
    raise OracleError(f"no independent draw after {max_tries} tries (d={d}, seed={seed})")


def _derivative(p: Poly, var: str) -> Poly:
    i = p.variables.index(var)
    terms = {}
    for exps, c in p.terms.items():
        if exps[i]:
            e = list(exps)
            e[i] -= 1
            terms[tuple(e)] = c * exps[i]
    return Poly(terms, p.variables)


def contact_matrix(curve: CurveParam, t1=None, t2=None) -> list:
    """Rows ``f(t1), f'(t1), f(t2), f'(t2)``.

    Without values the entries are polynomials in ``t1, t2``; with values
    the entries are exact Fractions.
    """
    rows = []
    for var in PAIR_VARIABLES:
        fs = [p.with_variables(PAIR_VARIABLES) for p in curve.polys(var)]
        rows.append(fs)
        rows.append([_derivative(f, var) for f in fs])
    if t1 is None and t2 is None:
        return rows
    assignment = {}
    if t1 is not None:
        assignment["t1"] = t1
    if t2 is not None:
        assignment["t2"] = t2
    return [[entry.substitute(assignment) for entry in row] for row in rows]


def rank_drop_minors(curve: CurveParam) -> list:
    """The five maximal minors of the contact matrix (column ``k`` deleted)."""
    m = contact_matrix(curve)
    one = Poly.const(1, PAIR_VARIABLES)
    minors = []
    for k in range(5):
        sub = [[row[j] for j in range(5) if j != k] for row in m]
        minors.append(det_berkowitz(sub, one))
    return minors


def reduced_minors(curve: CurveParam) -> list:
    """Minors with the diagonal factor ``(t1 - t2)^4`` removed."""
    return [divide_by_diagonal(q, DIAGONAL_ORDER) for q in rank_drop_minors(curve)]


def osculating_full_rank(curve: CurveParam, samples=range(-3, 4)) -> bool:
    """Whether ``[f, f', f'', f'''](t)`` has rank 4 at every sampled ``t``."""
    fs = curve.polys("t")
    for t in samples:
        rows, cur = [], fs
        for _ in range(4):
            rows.append([f.substitute({"t": t}) for f in cur])
            cur = [_derivative(f, "t") for f in cur]
        if _exact_rank(rows) < 4:
            return False
    return True


# --- elimination -------------------------------------------------------------


def sylvester_matrix(a: Poly, b: Poly) -> list:
    """Sylvester matrix of ``a, b`` in ``t2`` with entries in Z[t1]."""
    ra, rb = _to_dense(a), _to_dense(b)
    m, k = len(ra) - 1, len(rb) - 1
    if m < 1 or k < 1:
        raise ValueError("both polynomials need positive degree in t2")
    size = m + k
    zero = IntPoly()
    rows = []
    for shift in range(k):
        row = [zero] * size
        for j in range(m + 1):
            row[shift + j] = ra[m - j]
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for j in range(k + 1):
            row[shift + j] = rb[k - j]
        rows.append(row)
    return rows


def sylvester_resultant(a: Poly, b: Poly) -> Poly:
    """Resultant of ``a`` and ``b`` eliminating ``t2``; a polynomial in ``t1``."""
    det = det_berkowitz(sylvester_matrix(a, b), IntPoly([1]))
    if isinstance(det, int):
        det = IntPoly([det])
    return det.to_poly("t1")


# --- numerics ----------------------------------------------------------------


class _NumPoly:
    """Float evaluation of an integer bivariate polynomial and its partials."""

    def __init__(self, p: Poly):
        p = p.with_variables(PAIR_VARIABLES)
        deg1 = max((e[0] for e in p.terms), default=0)
        deg2 = max((e[1] for e in p.terms), default=0)
        c = np.zeros((deg1 + 1, deg2 + 1))
        for (i, j), v in p.terms.items():
            c[i, j] = float(v)
        self.c = c
        self.abs_c = np.abs(c)
        self.d1 = np.polynomial.polynomial.polyder(c, axis=0) if deg1 else np.zeros((1, 1))
        self.d2 = np.polynomial.polynomial.polyder(c, axis=1) if deg2 else np.zeros((1, 1))

    def __call__(self, t1, t2):
        return np.polynomial.polynomial.polyval2d(t1, t2, self.c)

    def scale(self, t1, t2) -> float:
        return float(np.polynomial.polynomial.polyval2d(abs(t1), abs(t2), self.abs_c))

    def grad(self, t1, t2):
        pv = np.polynomial.polynomial.polyval2d
        return pv(t1, t2, self.d1), pv(t1, t2, self.d2)

    def in_t2(self, t1) -> np.ndarray:
        """Coefficients in ``t2`` (lowest first) after fixing ``t1``."""
        return np.polynomial.polynomial.polyval(t1, self.c)


def _univariate_roots(p: Poly) -> np.ndarray:
    p = p.with_variables(("t1",))
    deg = p.degree()
    if deg < 1:
        return np.array([], dtype=complex)
    coeffs = [p.coefficient({"t1": i}) for i in range(deg + 1)]
    big = max(abs(c) for c in coeffs)
    scaled = [float(c / big) for c in coeffs]
    return np.roots(scaled[::-1])


@dataclass
class PairSolution:
    t1: complex
    t2: complex
    residual: float

    def to_json(self) -> dict:
        def enc(z):
            return [float(z.real), float(z.imag)]
        return {"t1": enc(self.t1), "t2": enc(self.t2), "residual": self.residual}


@dataclass
class OracleResult:
    curve: CurveParam
    count: int
    solutions: list
    ordered_solutions: list = field(repr=False, default_factory=list)
    attempts: int = 1

    @property
    def symmetric(self) -> bool:
        """Ordered solutions closed under swapping ``t1`` and ``t2``."""
        return all(
            any(_close(s.t1, o.t2, 1e-6) and _close(s.t2, o.t1, 1e-6) for o in self.ordered_solutions)
            for s in self.ordered_solutions
        )


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _residual(polys: list, t1: complex, t2: complex) -> float:
    worst = 0.0
    for q in polys:
        s = q.scale(t1, t2)
        if s == 0:
            continue
        worst = max(worst, abs(q(t1, t2)) / s)
    return worst


def _polish(polys: list, t1: complex, t2: complex, steps: int = 60):
    """Gauss-Newton on the overdetermined system of all minors."""
    z = np.array([t1, t2], dtype=complex)
    for _ in range(steps):
        vals, jac = [], []
        for q in polys:
            s = q.scale(z[0], z[1]) or 1.0
            vals.append(q(z[0], z[1]) / s)
            g1, g2 = q.grad(z[0], z[1])
            jac.append([g1 / s, g2 / s])
        step, *_ = np.linalg.lstsq(np.array(jac), -np.array(vals), rcond=None)
        z = z + step
        if not np.all(np.isfinite(z)):
            return None
        if np.linalg.norm(step) <= 1e-15 * max(1.0, np.linalg.norm(z)):
            break
    return complex(z[0]), complex(z[1])


def _canonical(t1: complex, t2: complex) -> tuple:
    def key(z):
        return (round(z.real, 6), round(z.imag, 6))
    return (t1, t2) if key(t1) <= key(t2) else (t2, t1)


def count_terracini_pairs(curve: CurveParam, tol: float = 1e-8, dedup_tol: float = 1e-6,
                          max_attempts: int = 5) -> OracleResult:
    """Count distinct unordered complex pairs ``{t1, t2}``, ``t1 != t2``, where the contact matrix drops rank."""
    minors = reduced_minors(curve)
    if all(q.is_zero() for q in minors):
        raise OracleError("all minors vanish identically: curve is degenerate")
    numeric = [_NumPoly(q) for q in minors if not q.is_zero()]
    rng = np.random.default_rng([curve.seed, 7919])

    for attempt in range(1, max_attempts + 1):
        weights = rng.integers(1, 30, size=(2, len(minors))) * rng.choice([-1, 1], size=(2, len(minors)))
        a = sum((q * int(w) for q, w in zip(minors, weights[0])), Poly.zero(PAIR_VARIABLES))
        b = sum((q * int(w) for q, w in zip(minors, weights[1])), Poly.zero(PAIR_VARIABLES))
        if a.degree("t2") < 1 or b.degree("t2") < 1:
            log.debug("combination lost its t2 dependence; retrying")
            continue
        res = sylvester_resultant(a, b)
        if res.is_zero():
            log.debug("identically zero resultant on attempt %d", attempt)
            continue
        if res.degree() < 1:
            return OracleResult(curve, 0, [], [], attempt)
        break
    else:
        raise OracleError(f"resultant vanished identically after {max_attempts} attempts")

    num_a = _NumPoly(a)
    ordered: list = []
    for r1 in _univariate_roots(res):
        t2_coeffs = num_a.in_t2(r1)
        nz = np.flatnonzero(np.abs(t2_coeffs) > 0)
        if nz.size == 0 or nz[-1] == 0:
            continue
        for r2 in np.roots(t2_coeffs[: nz[-1] + 1][::-1]):
            polished = _polish(numeric, complex(r1), complex(r2))
            if polished is None:
                continue
            p1, p2 = polished
            if _close(p1, p2, dedup_tol):
                continue
            resid = _residual(numeric, p1, p2)
            if resid > tol:
                continue
            if not any(_close(p1, s.t1, dedup_tol) and _close(p2, s.t2, dedup_tol) for s in ordered):
                ordered.append(PairSolution(p1, p2, resid))

    unordered: list = []
    for s in ordered:
        c1, c2 = _canonical(s.t1, s.t2)
        dup = any(
            (_close(c1, u.t1, dedup_tol) and _close(c2, u.t2, dedup_tol))
            or (_close(c1, u.t2, dedup_tol) and _close(c2, u.t1, dedup_tol))
            for u in unordered
        )
        if not dup:
            unordered.append(PairSolution(c1, c2, s.residual))
    return OracleResult(curve, len(unordered), unordered, ordered, attempt)
