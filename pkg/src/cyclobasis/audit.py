"""Cross-check of the D_n decomposition against the power basis and mpmath."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .arith import euler_phi
from .basis import build_basis, decompose_root
from .oracle import _key_row, numeric_eval, re_im_power, vector_power

# a prime just under 2**31 keeps products of residues inside int64
_PRIME = 2_147_483_629


def rank_mod_p(rows, p: int = _PRIME) -> int:
    a = np.array([[c % p for c in r] for r in rows], dtype=np.int64)
    rank = 0
    nrows, ncols = a.shape
    for col in range(ncols):
        pivots = np.nonzero(a[rank:, col])[0]
        if not len(pivots):
            continue
        piv = rank + pivots[0]
        a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        below = a[:, col].copy()
        below[rank] = 0
        a = (a - below[:, None] * a[rank][None, :]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_exact(rows) -> int:
    """Rank over Q by fraction Gaussian elimination."""
    m = [[Fraction(c) for c in r] for r in rows]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def basis_is_independent(n: int) -> bool:
    """True iff the phi(n) x phi(n) matrix of key power forms is invertible."""
    keys = build_basis(n).keys
    rows = [_key_row(n, k) for k in keys]
    # full rank mod a prime certifies full rank over Q
    if rank_mod_p(rows) == len(keys):
        return True
    return rank_exact(rows) == len(keys)


@dataclass
class BasisAudit:
    n: int
    phi: int
    size: int
    exact: bool
    numeric: bool
    independent: bool
    max_error_log2: float

    @property
    def passed(self) -> bool:
        return self.size == self.phi and self.exact and self.numeric and self.independent

    def to_json(self) -> dict:
        out = asdict(self) | {"pass": self.passed}
        if out["max_error_log2"] == float("-inf"):
            out["max_error_log2"] = None  # exact zero error
        return out


def audit_n(n: int, bits: int = 192) -> BasisAudit:
    """Every t in [0, n): exact oracle equality and numeric agreement within 2**-(bits-20)."""
    exact = True
    worst = mpmath.mpf(0)
    with mpmath.workprec(bits + 32):
        for t in range(n):
            re, im = decompose_root(n, t)
            ore, oim = re_im_power(n, t)
            exact &= vector_power(re) == ore and vector_power(im) == oim
            angle = 2 * mpmath.pi * t / n
            err_re = abs(numeric_eval(re, bits) - mpmath.cos(angle))
            err_im = abs(numeric_eval(im, bits) - mpmath.mpc(0, mpmath.sin(angle)))
            worst = max(worst, err_re, err_im)
        tol = mpmath.ldexp(1, -(bits - 20))
        err_log2 = float(mpmath.log(worst, 2)) if worst else float("-inf")
    return BasisAudit(
        n=n,
        phi=euler_phi(n),
        size=len(build_basis(n)),
        exact=exact,
        numeric=worst < tol,
        independent=basis_is_independent(n),
        max_error_log2=err_log2,
    )
