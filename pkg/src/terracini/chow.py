"""Truncated models of the Chow rings of ``C_n`` and ``C x C_n``.

``SymClass`` lives on the symmetric product: a polynomial in the divisor
class ``x`` and the theta class, cut off above degree ``n``.  The ring is
free in ``x`` and theta; the genus only enters through :func:`eval_top`,
where ``x^(n-i) theta^i`` integrates to the falling factorial ``(g)_i``.

``ProdClass`` lives on ``C x C_n`` in the normal form ``P0 + P1*eta + P2*gamma``
with ``eta^2 = eta*gamma = 0`` and ``gamma^2 = -2*eta*theta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .poly import Poly, falling_factorial, to_rational

COEFF_VARIABLES = ("d", "g")


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.const(to_rational(value), COEFF_VARIABLES)


class TruncationMismatch(ValueError):
    pass


class SymClass:
    """Element of Q[d, g][x, theta] / (degree > n)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        if n < 0:
            raise ValueError("truncation level must be non-negative")
        self.n = n
        out = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("negative exponent")
            if a + b > n:
                continue
            c = _as_poly(c)
            if c:
                out[(a, b)] = c
        self.terms = out

    @classmethod
    def _raw(cls, n, terms):
        s = cls.__new__(cls)
        s.n = n
        s.terms = terms
        return s

    @classmethod
    def scalar(cls, n: int, value) -> "SymClass":
        return cls(n, {(0, 0): value})

    @classmethod
    def one(cls, n: int) -> "SymClass":
        return cls.scalar(n, 1)

    @classmethod
    def zero(cls, n: int) -> "SymClass":
        return cls._raw(n, {})

    @classmethod
    def x(cls, n: int) -> "SymClass":
        return cls(n, {(1, 0): 1})

    @classmethod
    def theta(cls, n: int) -> "SymClass":
        return cls(n, {(0, 1): 1})

    @classmethod
    def monomial(cls, n: int, a: int, b: int, coeff=1) -> "SymClass":
        return cls(n, {(a, b): coeff})

    def _check(self, other: "SymClass"):
        if other.n != self.n:
            raise TruncationMismatch(f"truncation levels differ: {self.n} vs {other.n}")

    def _coerce(self, other) -> "SymClass":
        if isinstance(other, SymClass):
            self._check(other)
            return other
        return SymClass.scalar(self.n, other)

    def __add__(self, other):
        if isinstance(other, ProdClass):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SymClass._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SymClass._raw(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, ProdClass):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, ProdClass):
            return NotImplemented
        if not isinstance(other, SymClass):
            c = _as_poly(other)
            if not c:
                return SymClass.zero(self.n)
            return SymClass._raw(self.n, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        n = self.n
        out: dict = {}
        for (a1, b1), v1 in self.terms.items():
            room = n - a1 - b1
            for (a2, b2), v2 in other.terms.items():
                if a2 + b2 > room:
                    continue
                k = (a1 + a2, b1 + b2)
                out[k] = out[k] + v1 * v2 if k in out else v1 * v2
        return SymClass._raw(n, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_rational(other)
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SymClass.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ProdClass):
            return NotImplemented
        if not isinstance(other, SymClass):
            try:
                other = SymClass.scalar(self.n, other)
            except TypeError:
                return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, b: int) -> Poly:
        return self.terms.get((a, b), Poly.zero(COEFF_VARIABLES))

    def degree_part(self, k: int) -> "SymClass":
        return SymClass._raw(self.n, {ab: v for ab, v in self.terms.items() if sum(ab) == k})

    def constant_part(self) -> Poly:
        return self.coefficient(0, 0)

    def is_homogeneous(self, k: int) -> bool:
        return all(a + b == k for a, b in self.terms)

    def truncate(self, m: int) -> "SymClass":
        """Drop everything above degree ``m`` and re-home at level ``m``."""
        return SymClass._raw(m, {ab: v for ab, v in self.terms.items() if sum(ab) <= m})

    def map_coefficients(self, fn) -> "SymClass":
        return SymClass(self.n, {k: fn(v) for k, v in self.terms.items()})

    def substitute(self, assignment) -> "SymClass":
        def sub(p):
            r = p.substitute(assignment)
            return r if isinstance(r, Poly) else Poly.const(r, COEFF_VARIABLES)
        return self.map_coefficients(sub)

    def kill_theta(self) -> "SymClass":
        """Image under the ring map theta -> 0."""
        return SymClass._raw(self.n, {ab: v for ab, v in self.terms.items() if ab[1] == 0})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0][0])):
            mono = "*".join(
                s for s in (
                    "" if a == 0 else ("x" if a == 1 else f"x^{a}"),
                    "" if b == 0 else ("theta" if b == 1 else f"theta^{b}"),
                ) if s
            )
            coeff = c.to_text()
            if not mono:
                parts.append(f"({coeff})")
            else:
                parts.append(mono if coeff == "1" else f"({coeff})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SymClass(n={self.n}, {self})"


@dataclass(frozen=True, eq=False)
class ProdClass:
    """``p0 + p1*eta + p2*gamma`` on ``C x C_n``; components are SymClasses."""

    n: int
    p0: SymClass
    p1: SymClass
    p2: SymClass

    def __post_init__(self):
        for comp in (self.p0, self.p1, self.p2):
            if comp.n != self.n:
                raise TruncationMismatch("component truncation levels must equal n")

    @classmethod
    def pullback(cls, alpha: SymClass) -> "ProdClass":
        z = SymClass.zero(alpha.n)
        return cls(alpha.n, alpha, z, z)

    @classmethod
    def scalar(cls, n: int, value) -> "ProdClass":
        return cls.pullback(SymClass.scalar(n, value))

    @classmethod
    def one(cls, n: int) -> "ProdClass":
        return cls.scalar(n, 1)

    @classmethod
    def zero(cls, n: int) -> "ProdClass":
        return cls.scalar(n, 0)

    @classmethod
    def eta(cls, n: int) -> "ProdClass":
        z = SymClass.zero(n)
        return cls(n, z, SymClass.one(n), z)

    @classmethod
    def gamma(cls, n: int) -> "ProdClass":
        z = SymClass.zero(n)
        return cls(n, z, z, SymClass.one(n))

    def _coerce(self, other) -> "ProdClass":
        if isinstance(other, ProdClass):
            if other.n != self.n:
                raise TruncationMismatch(f"truncation levels differ: {self.n} vs {other.n}")
            return other
        if isinstance(other, SymClass):
            if other.n != self.n:
                raise TruncationMismatch(f"truncation levels differ: {self.n} vs {other.n}")
            return ProdClass.pullback(other)
        return ProdClass.scalar(self.n, other)

    def __add__(self, other):
        o = self._coerce(other)
        return ProdClass(self.n, self.p0 + o.p0, self.p1 + o.p1, self.p2 + o.p2)

    __radd__ = __add__

    def __neg__(self):
        return ProdClass(self.n, -self.p0, -self.p1, -self.p2)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        return prod_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_rational(other)
        return self * (1 / c)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.p0 == o.p0 and self.p1 == o.p1 and self.p2 == o.p2

    __hash__ = None

    def is_zero(self) -> bool:
        return self.p0.is_zero() and self.p1.is_zero() and self.p2.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def constant_part(self) -> Poly:
        return self.p0.constant_part()

    def truncate(self, m: int) -> "ProdClass":
        return ProdClass(m, self.p0.truncate(m), self.p1.truncate(m), self.p2.truncate(m))

    def __str__(self):
        return f"[{self.p0}] + [{self.p1}]*eta + [{self.p2}]*gamma"

    def __repr__(self):
        return f"ProdClass(n={self.n}, {self})"


def prod_mul(a: ProdClass, b: ProdClass) -> ProdClass:
    """Product in the normal form; ``gamma^2`` folds into the eta slot as ``-2*theta``."""
    if a.n != b.n:
        raise TruncationMismatch(f"truncation levels differ: {a.n} vs {b.n}")
    theta = SymClass.theta(a.n)
    p0 = a.p0 * b.p0
    p1 = a.p0 * b.p1 + a.p1 * b.p0 - 2 * theta * (a.p2 * b.p2)
    p2 = a.p0 * b.p2 + a.p2 * b.p0
    return ProdClass(a.n, p0, p1, p2)


def exp_class(a):
    """Truncated exponential of a nilpotent class (SymClass or ProdClass)."""
    if isinstance(a, (SymClass, ProdClass)):
        if a.constant_part():
            raise ValueError("exponential needs a class with zero degree-0 part")
    else:
        raise TypeError(f"cannot exponentiate {type(a).__name__}")
    one = type(a).one(a.n)
    total = one
    power = one
    k = 0
    while True:
        k += 1
        power = power * a
        if power.is_zero():
            return total
        total = total + power / factorial(k)


@dataclass
class Context:
    """Curve data for one run: ``C`` of degree ``d`` and genus ``g`` in P^(3n-2).

    ``d`` and ``g`` default to symbols; numeric values are exact rationals.
    """

    n: int
    d: object = None
    g: object = None
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if self.d is not None:
            self.d = to_rational(self.d)
            if self.d < 3 * self.n - 2:
                msg = f"d={self.d} < 3n-2={3 * self.n - 2}: curve cannot be non-degenerate in P^{3 * self.n - 2}"
                self.warnings.append(msg)
        if self.g is not None:
            self.g = to_rational(self.g)

    @property
    def symbolic(self) -> bool:
        return self.d is None or self.g is None

    @property
    def d_poly(self) -> Poly:
        if self.d is None:
            return Poly.var("d", COEFF_VARIABLES)
        return Poly.const(self.d, COEFF_VARIABLES)

    @property
    def g_poly(self) -> Poly:
        if self.g is None:
            return Poly.var("g", COEFF_VARIABLES)
        return Poly.const(self.g, COEFF_VARIABLES)

    def with_n(self, n: int) -> "Context":
        return Context(n, self.d, self.g)


def universal_divisor_class(ctx: Context) -> ProdClass:
    n = ctx.n
    return ProdClass.eta(n) * n + ProdClass.gamma(n) + SymClass.x(n)


def pushforward(a: ProdClass) -> SymClass:
    """Pushforward to ``C_n``: only the eta component survives."""
    return a.p1


def poincare_number(i: int, ctx: Context | None = None) -> Poly:
    """Degree of ``x^(n-i) theta^i`` on ``C_n``: the falling factorial ``(g)_i``."""
    ff = falling_factorial(i, "g")
    if ctx is not None and ctx.g is not None:
        return Poly.const(ff.substitute({"g": ctx.g}), COEFF_VARIABLES)
    return ff.with_variables(COEFF_VARIABLES)


def eval_top(a: SymClass, ctx: Context) -> Poly:
    """Intersection number of the degree-``n`` part of ``a``."""
    n = ctx.n
    if a.n < n:
        raise TruncationMismatch(f"class truncated at {a.n} < n={n}")
    total = Poly.zero(COEFF_VARIABLES)
    for (xa, tb), c in a.terms.items():
        if xa + tb == n:
            total = total + c * poincare_number(tb, ctx)
    return total
