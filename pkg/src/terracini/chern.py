"""Chern character -> Chern classes.

Newton's identities are the primary route; the exponential of the signed
power-sum series is kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .chow import Context, SymClass, exp_class
from .grr import ChCharacter, ch_EC_grr


@dataclass(eq=False)
class ChernVector:
    n: int
    p: list  # p_1 .. p_n
    c: list  # c_0 .. c_n

    def __post_init__(self):
        if len(self.p) != self.n or len(self.c) != self.n + 1:
            raise ValueError("ChernVector needs n power sums and n+1 Chern classes")
        if self.c[0] != SymClass.one(self.n):
            raise ValueError("c_0 must be 1")

    def chern(self, k: int) -> SymClass:
        """``c_k`` with ``c_k = 0`` outside ``0..n``."""
        if 0 <= k <= self.n:
            return self.c[k]
        return SymClass.zero(self.n)


def power_sums_from_ch(ch: ChCharacter) -> list:
    return [ch.parts[i] * factorial(i) for i in range(1, ch.n + 1)]


def _level(p: list) -> int:
    if not p:
        raise ValueError("need at least one power sum")
    return p[0].n


def chern_newton(p: list) -> list:
    """Solve ``p_i - c_1 p_(i-1) + ... + (-1)^i i c_i = 0`` for ``c_1 .. c_n``.

    Returns ``[c_0, c_1, ..., c_len(p)]``.
    """
    n = _level(p)
    c = [SymClass.one(n)]
    for i in range(1, len(p) + 1):
        acc = SymClass.zero(n)
        for j in range(i):
            term = c[j] * p[i - 1 - j]
            acc = acc + term if j % 2 == 0 else acc - term
        sign = 1 if i % 2 == 1 else -1
        c.append(acc * Fraction(sign, i))
    return c


def chern_exp(p: list) -> list:
    """Total Chern class as ``exp(sum (-1)^(i-1) p_i / i)``, split by degree."""
    n = _level(p)
    log_c = SymClass.zero(n)
    for i, pi in enumerate(p, start=1):
        log_c = log_c + pi * Fraction((-1) ** (i - 1), i)
    total = exp_class(log_c)
    return [total.degree_part(k) for k in range(len(p) + 1)]


def power_sums_from_chern(c: list) -> list:
    """Power sums back from Chern classes, by the same identities read the other way."""
    n = c[0].n
    p: list = []
    for i in range(1, len(c)):
        acc = SymClass.zero(n)
        for j in range(1, i):
            term = c[j] * p[i - 1 - j]
            acc = acc + term if j % 2 == 1 else acc - term
        last = c[i] * i
        acc = acc + last if i % 2 == 1 else acc - last
        p.append(acc)
    return p


def inverse_series(c: list) -> list:
    """Formal inverse ``s`` of ``c_0 + c_1 + ...`` with ``c_0 = 1``."""
    n = c[0].n
    if c[0] != SymClass.one(n):
        raise ValueError("series inversion needs c_0 = 1")
    s = [SymClass.one(n)]
    for k in range(1, len(c)):
        acc = SymClass.zero(n)
        for j in range(1, k + 1):
            acc = acc - c[j] * s[k - j]
        s.append(acc)
    return s


def convolve(a: list, b: list) -> list:
    n = a[0].n
    out = []
    for k in range(min(len(a), len(b))):
        acc = SymClass.zero(n)
        for j in range(k + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return out


def chern_vector(ctx: Context, ch: ChCharacter | None = None) -> ChernVector:
    if ch is None:
        ch = ch_EC_grr(ctx)
    p = power_sums_from_ch(ch)
    return ChernVector(ch.n, p, chern_newton(p))
