"""Chern character of the bundle of first-order jets along divisors of ``C_n``.

Two independent constructions:

* :func:`ch_EC_grr` runs Grothendieck-Riemann-Roch literally: build
  ``ch(O_2D (x) L) = e^(d eta) - e^(d eta - 2 delta)`` on ``C x C_n``,
  multiply by ``td(C)`` and push forward.
* :func:`ch_EC_closed` expands the resulting closed form
  ``(d-g+1) - (d-g-2n+1 - 4 theta) e^(-2x)`` directly on ``C_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .chow import Context, ProdClass, SymClass, exp_class, pushforward, universal_divisor_class


@dataclass(eq=False)
class ChCharacter:
    """Graded pieces ``ch_0 .. ch_n`` of a Chern character on ``C_n``."""

    n: int
    parts: list

    def __post_init__(self):
        if len(self.parts) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} graded parts, got {len(self.parts)}")
        for i, part in enumerate(self.parts):
            if not part.is_homogeneous(i):
                raise ValueError(f"ch_{i} is not homogeneous of degree {i}")

    def __getitem__(self, i: int) -> SymClass:
        return self.parts[i]

    def __eq__(self, other):
        if not isinstance(other, ChCharacter):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in zip(self.parts, other.parts))

    def total(self) -> SymClass:
        out = SymClass.zero(self.n)
        for p in self.parts:
            out = out + p
        return out

    @classmethod
    def from_total(cls, total: SymClass) -> "ChCharacter":
        return cls(total.n, [total.degree_part(i) for i in range(total.n + 1)])

    @property
    def rank(self):
        return self.parts[0].constant_part()


def todd_curve(ctx: Context) -> ProdClass:
    """``td(C) = 1 + (1-g) eta`` pulled back to ``C x C_n``."""
    n = ctx.n
    return ProdClass.one(n) + ProdClass.eta(n) * (1 - ctx.g_poly)


def ch_line_bundle(ctx: Context) -> ProdClass:
    return exp_class(ProdClass.eta(ctx.n) * ctx.d_poly)


def ch_twisted_ideal(ctx: Context) -> ProdClass:
    """``ch(O_2D (x) pi_1^* L)`` from the sequence ``0 -> L(-2D) -> L -> O_2D (x) L -> 0``."""
    n = ctx.n
    twisted = exp_class(ProdClass.eta(n) * ctx.d_poly - universal_divisor_class(ctx) * 2)
    return ch_line_bundle(ctx) - twisted


def todd_times_ch(ctx: Context) -> ProdClass:
    return todd_curve(ctx) * ch_twisted_ideal(ctx)


def todd_times_ch_displayed(ctx: Context) -> ProdClass:
    """``1 + (d-g+1) eta - (1 + (d-g-2n+1) eta - 2 gamma - 4 eta theta) e^(-2x)``, assembled as written."""
    n = ctx.n
    d, g = ctx.d_poly, ctx.g_poly
    eta, gamma = ProdClass.eta(n), ProdClass.gamma(n)
    theta = SymClass.theta(n)
    e2x = ProdClass.pullback(exp_class(SymClass.x(n) * -2))
    bracket = 1 + eta * (d - g - 2 * n + 1) - gamma * 2 - eta * theta * 4
    return 1 + eta * (d - g + 1) - bracket * e2x


def ch_EC_grr(ctx: Context) -> ChCharacter:
    return ChCharacter.from_total(pushforward(todd_times_ch(ctx)))


def ch_EC_closed(ctx: Context) -> ChCharacter:
    """Graded pieces of ``(d-g+1) - (d-g-2n+1 - 4 theta) e^(-2x)``.

    ``ch_i = -(d-g-2n+1) (-2)^i x^i / i! + 4 theta (-2)^(i-1) x^(i-1) / (i-1)!`` for ``i >= 1``.
    """
    n = ctx.n
    a = ctx.d_poly - ctx.g_poly - 2 * n + 1
    parts = [SymClass.scalar(n, 2 * n)]
    for i in range(1, n + 1):
        x_coeff = a * Fraction(-((-2) ** i), factorial(i))
        xtheta_coeff = Fraction(4 * (-2) ** (i - 1), factorial(i - 1))
        parts.append(SymClass.monomial(n, i, 0, x_coeff) + SymClass.monomial(n, i - 1, 1, xtheta_coeff))
    return ChCharacter(n, parts)
