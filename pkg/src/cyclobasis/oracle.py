"""Power-basis representation of Q(omega_n), used as the independent check.

Elements are rational vectors in the basis 1, x, ..., x**(phi(n)-1) of
Q[x]/(Phi_n). Nothing here imports the D_n decomposition code: basis keys are
evaluated straight from their definition as products of cosines and i*sines.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

import mpmath
import numpy as np

from . import _kernels
from .arith import euler_phi, format_rational, parse_rational


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divexact(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient by a monic divisor; raises if the remainder is nonzero."""
        if not other.coeffs or other.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            raise ArithmeticError("divisor has higher degree")
        quot = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + other.degree]
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial(tuple(quot))

    def __str__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """Phi_n = (x**n - 1) / prod_{d | n, d < n} Phi_d."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    poly = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    for d in range(1, n):
        if n % d == 0:
            poly = poly.divexact(cyclotomic_poly(d))
    return poly


@lru_cache(maxsize=None)
def power_table(n: int) -> np.ndarray:
    """Row j holds x**j mod Phi_n, for j in [0, n)."""
    return _kernels.power_table(list(cyclotomic_poly(n).coeffs), n)


def _normalize(num, den: int) -> tuple[tuple[int, ...], int]:
    num = tuple(int(c) for c in num)
    if den < 0:
        num, den = tuple(-c for c in num), -den
    g = reduce(gcd, num, den)
    if g > 1:
        num, den = tuple(c // g for c in num), den // g
    return num, den


@dataclass(frozen=True)
class PowerPoly:
    """Element of Q(omega_n) as (integer numerators, common denominator).

    The pair is kept in lowest terms, so equality is structural.
    """

    n: int
    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self) -> None:
        if len(self.num) != euler_phi(self.n):
            raise ValueError(f"expected {euler_phi(self.n)} coefficients, got {len(self.num)}")
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = _normalize(self.num, self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def zero(cls, n: int) -> "PowerPoly":
        return cls(n, (0,) * euler_phi(n))

    @classmethod
    def from_fractions(cls, n: int, coeffs) -> "PowerPoly":
        coeffs = [Fraction(c) for c in coeffs]
        den = lcm(1, *(c.denominator for c in coeffs))
        return cls(n, tuple(c.numerator * (den // c.denominator) for c in coeffs), den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def _check(self, other: "PowerPoly") -> None:
        if self.n != other.n:
            raise ValueError(f"conductor mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PowerPoly") -> "PowerPoly":
        self._check(other)
        den = lcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        return PowerPoly(self.n, tuple(a * x + b * y for x, y in zip(self.num, other.num)), den)

    def __neg__(self) -> "PowerPoly":
        return PowerPoly(self.n, tuple(-c for c in self.num), self.den)

    def __sub__(self, other: "PowerPoly") -> "PowerPoly":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "PowerPoly":
        c = Fraction(c)
        return PowerPoly(self.n, tuple(x * c.numerator for x in self.num), self.den * c.denominator)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        prod = _kernels.mulmod(self.num, other.num, power_table(self.n))
        return PowerPoly(self.n, tuple(prod), self.den * other.den)

    __rmul__ = __mul__

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, n: int, data: list[str]) -> "PowerPoly":
        return cls.from_fractions(n, [parse_rational(s) for s in data])


def root_power(n: int, t: int) -> PowerPoly:
    """omega_n**t."""
    return PowerPoly(n, tuple(power_table(n)[t % n]))


def re_im_power(n: int, t: int) -> tuple[PowerPoly, PowerPoly]:
    """Re(omega_n**t) and i*Im(omega_n**t), as (w + 1/w)/2 and (w - 1/w)/2."""
    table = power_table(n)
    fwd, back = table[t % n], table[-t % n]
    return PowerPoly(n, tuple(fwd + back), 2), PowerPoly(n, tuple(fwd - back), 2)


def lift(x: PowerPoly, n: int) -> PowerPoly:
    """Embed Q(omega_m) into Q(omega_n) via omega_m = omega_n**(n/m)."""
    if n % x.n:
        raise ValueError(f"{x.n} does not divide {n}")
    step = n // x.n
    exps = np.arange(len(x.num), dtype=np.int64) * step
    return PowerPoly(n, tuple(_kernels.fold(x.num, exps, power_table(n))), x.den)


@lru_cache(maxsize=None)
def key_power(n: int, key) -> PowerPoly:
    """Power form of a basis key: product of its atoms' values lifted to n."""
    out = root_power(n, 0)
    for atom in key:
        if n % atom.q:
            raise ValueError(f"atom {atom} is not defined over conductor {n}")
        re, im = re_im_power(atom.q, atom.exponent)
        out = out * lift(re if atom.part == "A" else im, n)
    return out


@lru_cache(maxsize=None)
def _key_row(n: int, key) -> tuple[int, ...]:
    # every atom value has denominator dividing 2, so 2**len(key) clears the key
    p = key_power(n, key)
    scale = 2 ** len(key) // p.den
    return tuple(c * scale for c in p.num)


def vector_power(v) -> PowerPoly:
    """Power form of a D_n coordinate vector (anything with ``n`` and ``items()``)."""
    items = v.items()
    if not items:
        return PowerPoly.zero(v.n)
    rows = [_key_row(v.n, k) for k, _ in items]
    matrix = np.array(rows, dtype=np.int64 if _fits(rows) else object)
    cden = lcm(1, *(c.denominator for _, c in items))
    coeffs = [c.numerator * (cden // c.denominator) for _, c in items]
    mden = 2 ** len(items[0][0])
    return PowerPoly(v.n, tuple(_kernels.matvec(coeffs, matrix)), cden * mden)


def _fits(rows) -> bool:
    return max((abs(c) for r in rows for c in r), default=0) < 2**40


def power_proportionality(u: PowerPoly, v: PowerPoly) -> Fraction | None:
    """The rational lam with u == lam * v, or None; v must be nonzero."""
    u._check(v)
    if not v:
        raise ZeroDivisionError("reference element is zero")
    j = next(i for i, c in enumerate(v.num) if c)
    lam = Fraction(u.num[j] * v.den, u.den * v.num[j])
    if u != v.scale(lam):
        return None
    return lam


# ------------------------------------------------------------ numeric values

# Each atom value is correctly rounded by mpmath at the working precision plus
# GUARD_BITS; a vector with K keys of at most F factors and coefficients up to
# C accumulates error below K*C*(F+2)*2**-(bits+GUARD_BITS), which stays under
# 2**-(bits-20) whenever K*C*(F+2) < 2**(20+GUARD_BITS).
GUARD_BITS = 16


@lru_cache(maxsize=65536)
def _atom_value(q: int, part: str, exponent: int, prec: int):
    with mpmath.workprec(prec):
        angle = 2 * mpmath.pi * exponent / q
        if part == "A":
            return mpmath.mpc(mpmath.cos(angle), 0)
        return mpmath.mpc(0, mpmath.sin(angle))


def numeric_eval(v, precision_bits: int = 192) -> mpmath.mpc:
    """High-precision complex value of a D_n coordinate vector.

    Error is below ``2**-(precision_bits - 20)`` at desk scale (see GUARD_BITS).
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    prec = precision_bits + GUARD_BITS
    with mpmath.workprec(prec):
        total = mpmath.mpc(0)
        for key, c in v.items():
            term = mpmath.mpc(c.numerator) / c.denominator
            for atom in key:
                term *= _atom_value(atom.q, atom.part, atom.exponent, prec)
            total += term
        return total
