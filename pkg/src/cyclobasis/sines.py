"""Exact rational/irrational classification of sin(k*pi*rho) / sin(m*pi*rho).

sin(k*pi*p/q) is Im(omega_{2q}**(k*p)), so i*sin lives in Q(omega_{2q}) and the
ratio is rational exactly when the two coordinate vectors are proportional.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

import numpy as np

from . import _kernels
from .arith import format_rational, parse_rational
from .basis import CoordVector, decompose_root, proportionality
from .oracle import power_table, power_proportionality, re_im_power

ZERO = "zero"
RATIONAL = "rational"
IRRATIONAL = "irrational"
DENOMINATOR_ZERO = "denominator_zero"
_KINDS = (ZERO, RATIONAL, IRRATIONAL, DENOMINATOR_ZERO)


@dataclass(frozen=True)
class Rho:
    """A rational angle p/q in (0, 1), stored in lowest terms."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q <= 0 or not 0 < self.p < self.q:
            raise ValueError(f"rho must lie strictly between 0 and 1, got {self.p}/{self.q}")
        g = gcd(self.p, self.q)
        object.__setattr__(self, "p", self.p // g)
        object.__setattr__(self, "q", self.q // g)

    @classmethod
    def parse(cls, text: str) -> "Rho":
        x = parse_rational(text)
        return cls(x.numerator, x.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def conductor(self) -> int:
        return 2 * self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class Classification:
    kind: str
    ratio: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown classification {self.kind!r}")
        if (self.kind == RATIONAL) != (self.ratio is not None):
            raise ValueError("a ratio is carried exactly by rational classifications")

    def to_json(self) -> dict:
        out = {"class": self.kind}
        if self.ratio is not None:
            out["lambda"] = format_rational(self.ratio)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Classification":
        lam = data.get("lambda")
        return cls(data["class"], None if lam is None else parse_rational(lam))

    def __str__(self) -> str:
        return f"{self.kind} {self.ratio}" if self.ratio is not None else self.kind


def sin_vector(rho: Rho, k: int) -> CoordVector:
    """Coordinates of i*sin(k*pi*rho) over D_{2q}."""
    return decompose_root(rho.conductor, k * rho.p)[1]


def _classify(u, v, ratio) -> Classification:
    if not v:
        return Classification(DENOMINATOR_ZERO)
    if not u:
        return Classification(ZERO)
    lam = ratio(u, v)
    return Classification(IRRATIONAL) if lam is None else Classification(RATIONAL, lam)


def classify_ratio(rho: Rho, k: int, m: int) -> Classification:
    """Classify sin(k*pi*rho) / sin(m*pi*rho) through the D_{2q} coordinates.

    >>> classify_ratio(Rho(1, 6), 1, 3)
    Classification(kind='rational', ratio=Fraction(1, 2))
    """
    return _classify(sin_vector(rho, k), sin_vector(rho, m), proportionality)


def classify_ratio_oracle(rho: Rho, k: int, m: int) -> Classification:
    """Same question answered in the power basis of Q(omega_{2q})."""
    n = rho.conductor
    u = re_im_power(n, k * rho.p)[1]
    v = re_im_power(n, m * rho.p)[1]
    return _classify(u, v, power_proportionality)


@lru_cache(maxsize=256)
def _residue_grid(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # rows r: numerators of 2*i*Im(omega_n**r) in the power basis
    table = power_table(n)
    rows = table - table[(-np.arange(n)) % n]
    return _kernels.pair_ratios(rows)


def classify_grid_oracle(rho: Rho, ks, ms) -> list[list[Classification]]:
    """Oracle-path classifications for every (k, m) in ks x ms, batched."""
    n = rho.conductor
    kind, num, den = _residue_grid(n)
    out = []
    for k in ks:
        rk = k * rho.p % n
        row = []
        for m in ms:
            rm = m * rho.p % n
            code = int(kind[rk, rm])
            if code == 1:
                row.append(Classification(RATIONAL, Fraction(int(num[rk, rm]), int(den[rk, rm]))))
            else:
                row.append(Classification(_KINDS[code]))
        out.append(row)
    return out
