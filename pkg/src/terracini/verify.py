"""Cross-checks run by ``terracini verify``.

Every check compares two independently computed objects exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import chern, grr, porteous
from .chow import Context
from .poly import symbols


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f": {self.detail}" if self.detail and not self.passed else "")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def proposition_formula():
    """Closed n=2 count ``2(d-g-3)(d-g-4) + 8g(d-5)``."""
    d, g = symbols("d", "g")
    return 2 * (d - g - 3) * (d - g - 4) + 8 * g * (d - 5)


def _guard(name, fn) -> Check:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing route is a failed check
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, bool(ok), detail)


def checks_for(n: int) -> list:
    ctx = Context(n)
    out = []

    out.append(_guard(f"n={n} todd*ch matches displayed expansion",
                      lambda: (grr.todd_times_ch(ctx) == grr.todd_times_ch_displayed(ctx), "")))

    ch = grr.ch_EC_grr(ctx)
    out.append(_guard(f"n={n} GRR pushforward == closed form",
                      lambda: (ch == grr.ch_EC_closed(ctx), "")))
    out.append(_guard(f"n={n} rank ch_0 == 2n",
                      lambda: (ch.parts[0] == 2 * n, str(ch.parts[0]))))

    p = chern.power_sums_from_ch(ch)
    c_newton = chern.chern_newton(p)
    out.append(_guard(f"n={n} Newton route == exponential route",
                      lambda: (c_newton == chern.chern_exp(p), "")))
    out.append(_guard(f"n={n} Chern -> power sums round trip",
                      lambda: (chern.power_sums_from_chern(c_newton) == p, "")))

    def inverse_ok():
        s = chern.inverse_series(c_newton)
        conv = chern.convolve(s, c_newton)
        return all(term == (1 if k == 0 else 0) for k, term in enumerate(conv)), ""
    out.append(_guard(f"n={n} inverse series convolution", inverse_ok))

    cv = chern.ChernVector(n, p, c_newton)
    m = porteous.porteous_matrix(cv)
    det = porteous.det_division_free(m)
    out.append(_guard(f"n={n} Berkowitz determinant == cofactor",
                      lambda: (det == porteous.det_cofactor(m), "")))

    def jacobi_trudi():
        s = chern.inverse_series(c_newton)
        expected = s[n] if n % 2 == 0 else -s[n]
        return det == expected, ""
    out.append(_guard(f"n={n} Porteous class == (-1)^n [c^-1]_n", jacobi_trudi))

    if n == 2:
        out.append(_guard("n=2 matches 2(d-g-3)(d-g-4)+8g(d-5)",
                          lambda: (porteous.terracini_formula(ctx).t == proposition_formula(), "")))
    return out


def run_verification(max_n: int) -> list:
    if max_n < 2:
        raise ValueError("verification needs max_n >= 2")
    results = []
    for n in range(2, max_n + 1):
        results.extend(checks_for(n))
    return results
