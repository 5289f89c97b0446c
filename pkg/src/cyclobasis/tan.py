"""Exact verification that n*tan(pi*rho) = tan(n*pi*rho) has no rational roots.

With both tangents finite the equation is equivalent to

    (n + 1) * sin((n - 1)*pi*rho) == (n - 1) * sin((n + 1)*pi*rho),

which is compared exactly as coordinate vectors over D_{2q}. Real (irrational)
roots are located numerically by bisection on the pole-free difference.
"""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

import mpmath

from .basis import CoordVector
from .sines import Classification, Rho, classify_ratio, sin_vector

log = logging.getLogger(__name__)

HOLDS = "holds"
FAILS = "fails"
POLE_LHS = "pole_lhs"
POLE_RHS = "pole_rhs"
VERDICTS = (HOLDS, FAILS, POLE_LHS, POLE_RHS)


@dataclass(frozen=True)
class IdentityVerdict:
    kind: str
    lhs: Optional[CoordVector] = None  # (n+1) * i*sin((n-1) pi rho)
    rhs: Optional[CoordVector] = None  # (n-1) * i*sin((n+1) pi rho)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.lhs is not None:
            out["lhs"] = self.lhs.to_json()
            out["rhs"] = self.rhs.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict, n: int) -> "IdentityVerdict":
        if "lhs" not in data:
            return cls(data["verdict"])
        return cls(
            data["verdict"],
            CoordVector.from_json(n, data["lhs"]),
            CoordVector.from_json(n, data["rhs"]),
        )


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n <= 1:
        raise ValueError(f"n must be an integer greater than 1, got {n!r}")


def is_rhs_pole(rho: Rho, n: int) -> bool:
    """tan(n*pi*rho) is undefined iff 2*n*p == q (mod 2q)."""
    return (2 * n * rho.p - rho.q) % (2 * rho.q) == 0


def check_identity(rho: Rho, n: int) -> IdentityVerdict:
    _check_n(n)
    if rho.q == 2:
        return IdentityVerdict(POLE_LHS)
    if is_rhs_pole(rho, n):
        return IdentityVerdict(POLE_RHS)
    lhs = sin_vector(rho, n - 1).scale(n + 1)
    rhs = sin_vector(rho, n + 1).scale(n - 1)
    return IdentityVerdict(HOLDS if lhs == rhs else FAILS, lhs, rhs)


def ratio_form(rho: Rho, n: int) -> tuple[Classification, Fraction]:
    """Classification of sin((n-1) pi rho) / sin((n+1) pi rho) and the target (n-1)/(n+1).

    The tan equation holds iff the classification is rational with exactly
    the target value.
    """
    _check_n(n)
    return classify_ratio(rho, n - 1, n + 1), Fraction(n - 1, n + 1)


@dataclass
class SweepReport:
    qmax: int
    nmax: int
    total: int = 0
    tallies: dict[str, int] = field(default_factory=lambda: dict.fromkeys(VERDICTS, 0))
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "qmax": self.qmax,
            "nmax": self.nmax,
            "total": self.total,
            "tallies": {k: self.tallies[k] for k in VERDICTS},
            "violations": [{"p": p, "q": q, "n": n} for p, q, n in self.violations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SweepReport":
        return cls(
            data["qmax"],
            data["nmax"],
            data["total"],
            {k: data["tallies"].get(k, 0) for k in VERDICTS},
            [(v["p"], v["q"], v["n"]) for v in data["violations"]],
        )


def _sweep_q(q: int, nmax: int) -> tuple[Counter, list[tuple[int, int, int]]]:
    tallies: Counter = Counter()
    found = []
    for p in range(1, q):
        if gcd(p, q) != 1:
            continue
        rho = Rho(p, q)
        for n in range(2, nmax + 1):
            kind = check_identity(rho, n).kind
            tallies[kind] += 1
            if kind == HOLDS:
                found.append((p, q, n))
    return tallies, found


def sweep(qmax: int, nmax: int, jobs: int = 1) -> SweepReport:
    """Check every reduced p/q with 3 <= q <= qmax against every 2 <= n <= nmax."""
    if qmax < 3 or nmax < 2:
        raise ValueError("sweep needs qmax >= 3 and nmax >= 2")
    qs = range(3, qmax + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_q, qs, [nmax] * len(qs), chunksize=4))
    else:
        parts = [_sweep_q(q, nmax) for q in qs]
    report = SweepReport(qmax, nmax)
    for tallies, found in parts:
        for kind, c in tallies.items():
            report.tallies[kind] += c
        report.violations.extend(found)
    report.total = sum(report.tallies.values())
    report.violations.sort(key=lambda v: (v[1], v[0], v[2]))
    if report.violations:
        log.warning("sweep found %d solutions", len(report.violations))
    return report


# ---------------------------------------------------------------- real roots


class PoleProximityError(ValueError):
    """A root sits too close to a pole of tan for the tangent check."""


@dataclass(frozen=True)
class RealRoot:
    rho: mpmath.mpf
    bits: int
    tan_residual: mpmath.mpf  # |n tan(pi rho) - tan(n pi rho)|
    ratio_residual: mpmath.mpf  # |sin((n-1) pi rho)/sin((n+1) pi rho) - (n-1)/(n+1)|


def h(n: int, rho, ctx=mpmath.mp):
    """(n-1) sin((n+1) pi rho) - (n+1) sin((n-1) pi rho); no poles."""
    return (n - 1) * ctx.sin((n + 1) * ctx.pi * rho) - (n + 1) * ctx.sin((n - 1) * ctx.pi * rho)


def _certified_sign(n: int, x: Fraction, prec: int) -> int:
    iv = mpmath.iv
    saved, iv.prec = iv.prec, prec
    try:
        val = h(n, iv.mpf(x.numerator) / x.denominator, iv)
    finally:
        iv.prec = saved
    if val.a > 0:
        return 1
    if val.b < 0:
        return -1
    return 0


def find_real_root(n: int, a, b, precision_bits: int = 256) -> Optional[RealRoot]:
    """Bisect for a root of ``h`` in [a, b] to ``precision_bits`` bits.

    Endpoints are exact rationals (``Fraction``, int, or decimal string).
    Returns None unless interval arithmetic certifies a sign change.
    """
    _check_n(n)
    a, b = Fraction(a), Fraction(b)
    if not 0 < a < b < 1:
        raise ValueError(f"need 0 < a < b < 1, got a={a}, b={b}")
    prec = precision_bits + 32
    sa, sb = _certified_sign(n, a, prec), _certified_sign(n, b, prec)
    if sa == 0 or sb == 0 or sa == sb:
        return None
    with mpmath.workprec(prec):
        lo = mpmath.mpf(a.numerator) / a.denominator
        hi = mpmath.mpf(b.numerator) / b.denominator
        width = mpmath.ldexp(1, -precision_bits)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = h(n, mid)
            if s == 0:
                lo = hi = mid
                break
            if (s > 0) == (sa > 0):
                lo = mid
            else:
                hi = mid
        rho = (lo + hi) / 2
        guard = mpmath.ldexp(1, -10)
        for arg in (mpmath.pi * rho, n * mpmath.pi * rho):
            if abs(mpmath.cos(arg)) < guard:
                raise PoleProximityError(f"root {mpmath.nstr(rho, 20)} is within 2^-10 of a tan pole")
        tan_res = abs(n * mpmath.tan(mpmath.pi * rho) - mpmath.tan(n * mpmath.pi * rho))
        ratio = mpmath.sin((n - 1) * mpmath.pi * rho) / mpmath.sin((n + 1) * mpmath.pi * rho)
        ratio_res = abs(ratio - mpmath.mpf(n - 1) / (n + 1))
    if tan_res >= mpmath.ldexp(1, -(precision_bits // 2)):
        raise ArithmeticError(f"tan residual {tan_res} too large at root {rho}")
    return RealRoot(rho, precision_bits, tan_res, ratio_res)
