"""Exact sparse multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; a polynomial is a map from
exponent vectors to non-zero coefficients over an ordered tuple of symbols.
Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

Rational = Fraction

# Canonical symbol order; anything else sorts after these, alphabetically.
SYMBOL_ORDER = ("d", "g", "t1", "t2")

Scalar = Union[int, Fraction]


def _symbol_key(name: str) -> tuple:
    try:
        return (0, SYMBOL_ORDER.index(name), "")
    except ValueError:
        return (1, 0, name)


def _merge_variables(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=_symbol_key))


def to_rational(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction (rejects floats)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


class Poly:
    """Sparse polynomial with rational coefficients.

    ``variables`` is an ordered tuple of symbol names and ``terms`` maps
    exponent tuples (one entry per variable) to non-zero Fractions.
    Arithmetic between polynomials over different variable lists works over
    the union of the two lists.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None,
                 variables: Iterable[str] = ()):
        self.variables = tuple(variables)
        nvars = len(self.variables)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not match variables {self.variables}")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = to_rational(coeff)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, terms: dict, variables: tuple) -> "Poly":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    # constructors

    @classmethod
    def const(cls, value: Scalar, variables: Iterable[str] = ()) -> "Poly":
        variables = tuple(variables)
        c = to_rational(value)
        return cls._raw({(0,) * len(variables): c} if c else {}, variables)

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None) -> "Poly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ValueError(f"{name!r} not among {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._raw({exps: Fraction(1)}, variables)

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "Poly":
        return cls._raw({}, tuple(variables))

    # structure

    def with_variables(self, variables: Iterable[str]) -> "Poly":
        """Re-express over a variable list containing every used symbol."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        used = self.used_variables()
        missing = [v for v in used if v not in index]
        if missing:
            raise ValueError(f"variables {missing} would be dropped")
        positions = [index.get(v) for v in self.variables]
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for pos, e in zip(positions, exps):
                if e:
                    new[pos] = e
            out[tuple(new)] = c
        return Poly._raw(out, variables)

    def used_variables(self) -> tuple:
        used = set()
        for exps in self.terms:
            used.update(v for v, e in zip(self.variables, exps) if e)
        return tuple(v for v in self.variables if v in used)

    def trimmed(self) -> "Poly":
        return self.with_variables(self.used_variables())

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self, variable: str | None = None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if variable is None:
            return max(sum(e) for e in self.terms)
        if variable not in self.variables:
            return 0
        i = self.variables.index(variable)
        return max(e[i] for e in self.terms)

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        exps = tuple(exponents.get(v, 0) for v in self.variables)
        return self.terms.get(exps, Fraction(0))

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(to_rational(other), self.variables)

    def _aligned(self, other) -> tuple:
        other = self._coerce(other)
        if other.variables == self.variables:
            return self, other
        variables = _merge_variables(self.variables, other.variables)
        return self.with_variables(variables), other.with_variables(variables)

    def __add__(self, other):
        try:
            a, b = self._aligned(other)
        except TypeError:
            return NotImplemented
        out = dict(a.terms)
        for k, v in b.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly._raw(out, a.variables)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -v for k, v in self.terms.items()}, self.variables)

    def __sub__(self, other):
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return self._coerce(other) + (-self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = to_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly.zero(self.variables)
            return Poly._raw({k: v * c for k, v in self.terms.items()}, self.variables)
        a, b = self._aligned(other)
        out: dict = {}
        for ka, va in a.terms.items():
            for kb, vb in b.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return Poly._raw({k: v for k, v in out.items() if v}, a.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by scalars only
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def _canonical(self) -> tuple:
        t = self.trimmed()
        return t.variables, frozenset(t.terms.items())

    def __bool__(self):
        return bool(self.terms)

    # evaluation

    def substitute(self, assignment: Mapping[str, Scalar]) -> "Poly | Fraction":
        """Exact partial or full evaluation.

        Returns a Fraction when every variable of the polynomial is assigned,
        otherwise a Poly over the unassigned variables.
        """
        values = {k: to_rational(v) for k, v in assignment.items()}
        keep = tuple(v for v in self.variables if v not in values)
        keep_idx = [i for i, v in enumerate(self.variables) if v not in values]
        subs_idx = [(i, values[v]) for i, v in enumerate(self.variables) if v in values]
        out: dict = {}
        for exps, c in self.terms.items():
            for i, val in subs_idx:
                if exps[i]:
                    c = c * val ** exps[i]
            if not c:
                continue
            k = tuple(exps[i] for i in keep_idx)
            out[k] = out.get(k, 0) + c
        out = {k: v for k, v in out.items() if v}
        if not keep:
            return out.get((), Fraction(0))
        return Poly._raw(out, keep)

    __call__ = substitute

    # rendering

    def sorted_terms(self) -> list:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def _monomial(self, exps: tuple, power: str, sep: str) -> str:
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}{power.format(e)}")
        return sep.join(parts)

    def to_text(self) -> str:
        """Canonical expanded rendering, e.g. ``2*d^2 - 4*d*g + 4/3*g``."""
        if not self.terms:
            return "0"
        chunks = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = self._monomial(exps, "^{}", "*")
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                chunks.append(("-" if sign == "-" else "") + body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def to_latex(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            mag = abs(c)
            mono = self._monomial(exps, "^{{{}}}", " ")
            if mag.denominator != 1:
                coeff = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            elif mag != 1 or not mono:
                coeff = str(mag.numerator)
            else:
                coeff = ""
            body = " ".join(s for s in (coeff, mono) if s)
            if i == 0:
                chunks.append(("-" if c < 0 else "") + body)
            else:
                chunks.append((" - " if c < 0 else " + ") + body)
        return "".join(chunks)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [[list(exps), str(c)] for exps, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Poly":
        variables = tuple(data["variables"])
        return cls({tuple(e): Fraction(c) for e, c in data["terms"]}, variables)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r}, variables={self.variables})"


def symbols(*names: str) -> tuple:
    """Generators over a shared variable list: ``d, g = symbols("d", "g")``."""
    variables = tuple(sorted(names, key=_symbol_key))
    return tuple(Poly.var(n, variables) for n in names)


def falling_factorial(i: int, var: str = "g") -> Poly:
    """``g (g-1) ... (g-i+1)`` as a polynomial in ``var``."""
    if i < 0:
        raise ValueError("falling factorial needs i >= 0")
    x = Poly.var(var)
    out = Poly.const(1, (var,))
    for k in range(i):
        out = out * (x - k)
    return out


def poly_substitute(p, assignment: Mapping[str, Scalar]):
    """Evaluate ``p`` (a Poly or a bare scalar) under ``assignment``."""
    if isinstance(p, Poly):
        return p.substitute(assignment)
    return to_rational(p)
