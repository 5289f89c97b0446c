"""Integer inner loops of the power-basis oracle.

Each kernel has a numba ``@njit`` version working on int64 arrays and a numpy
version that also accepts ``dtype=object`` arrays of Python ints. Callers go
through the dispatch functions at the bottom, which check magnitude bounds and
drop to exact object arrays whenever int64 could overflow, so the choice of
backend never changes a result.

Set ``CYCLOBASIS_BACKEND=numpy`` to disable numba.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

INT64_SAFE = 2**62

_backend = os.environ.get("CYCLOBASIS_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
if _backend not in ("numba", "numpy"):
    raise ImportError(f"CYCLOBASIS_BACKEND must be 'numba' or 'numpy', got {_backend!r}")
if _backend == "numba" and not HAVE_NUMBA:  # pragma: no cover
    _backend = "numpy"


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


# ---------------------------------------------------------------- numpy path


def power_table_np(phi, n):
    """Rows ``x**j mod phi`` for j in [0, n); phi is monic, lowest degree first."""
    d = len(phi) - 1
    table = np.zeros((n, d), dtype=phi.dtype)
    cur = np.zeros(d + 1, dtype=phi.dtype)
    cur[0] = 1
    for j in range(n):
        top = cur[d]
        if top != 0:
            cur = cur - top * phi
        table[j] = cur[:d]
        cur = np.concatenate((cur[-1:] * 0, cur[:-1]))
    return table


def fold_np(coeffs, exps, table):
    """sum_j coeffs[j] * x**exps[j] reduced through the power table."""
    n = table.shape[0]
    return coeffs @ table[np.asarray(exps) % n]


def mulmod_np(a, b, table):
    d = len(a)
    conv = np.zeros(2 * d - 1, dtype=table.dtype)
    for i in range(d):
        if a[i] != 0:
            conv[i : i + d] += a[i] * b
    return fold_np(conv, np.arange(2 * d - 1), table)


def pair_ratios_np(rows):
    """Classify rows[i] against rows[j] for every pair.

    Returns (kind, num, den) matrices: kind 0 zero numerator, 1 rational with
    ratio num/den (unreduced), 2 irrational, 3 zero denominator.
    """
    r, d = rows.shape
    nonzero = rows != 0
    has = nonzero.any(axis=1)
    lead = np.argmax(nonzero, axis=1)
    ref = rows[np.arange(r), lead]  # leading entry of each v
    u_at = rows[:, lead]  # u_at[i, j] = rows[i, lead[j]]
    # u * ref_v == v * u[lead_v] entrywise
    lhs = rows[:, None, :] * ref[None, :, None]
    rhs = rows[None, :, :] * u_at[:, :, None]
    prop = (lhs == rhs).all(axis=2)
    kind = np.where(prop, 1, 2).astype(np.int8)
    kind[~has, :] = 0
    kind[:, ~has] = 3
    num = np.where(kind == 1, u_at, 0)
    den = np.broadcast_to(np.where(has, ref, 1), (r, r)).copy()
    return kind, num, den


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def power_table_nb(phi, n):
        d = phi.shape[0] - 1
        table = np.zeros((n, d), dtype=np.int64)
        cur = np.zeros(d + 1, dtype=np.int64)
        cur[0] = 1
        ok = True
        for j in range(n):
            top = cur[d]
            if top != 0:
                for i in range(d + 1):
                    cur[i] -= top * phi[i]
            for i in range(d):
                table[j, i] = cur[i]
                if abs(cur[i]) > 2**40:
                    ok = False
            for i in range(d, 0, -1):
                cur[i] = cur[i - 1]
            cur[0] = 0
        return table, ok

    @njit(cache=True)
    def fold_nb(coeffs, exps, table):
        n, d = table.shape
        out = np.zeros(d, dtype=np.int64)
        for j in range(coeffs.shape[0]):
            c = coeffs[j]
            if c != 0:
                row = exps[j] % n
                for i in range(d):
                    out[i] += c * table[row, i]
        return out

    @njit(cache=True)
    def mulmod_nb(a, b, table):
        d = a.shape[0]
        conv = np.zeros(2 * d - 1, dtype=np.int64)
        for i in range(d):
            if a[i] != 0:
                for j in range(d):
                    conv[i + j] += a[i] * b[j]
        return fold_nb(conv, np.arange(2 * d - 1), table)

    @njit(cache=True)
    def pair_ratios_nb(rows):
        r, d = rows.shape
        kind = np.empty((r, r), dtype=np.int8)
        num = np.zeros((r, r), dtype=np.int64)
        den = np.ones((r, r), dtype=np.int64)
        lead = np.full(r, -1, dtype=np.int64)
        for i in range(r):
            for c in range(d):
                if rows[i, c] != 0:
                    lead[i] = c
                    break
        for i in range(r):
            for j in range(r):
                lj = lead[j]
                if lj < 0:
                    kind[i, j] = 3
                    continue
                den[i, j] = rows[j, lj]
                if lead[i] < 0:
                    kind[i, j] = 0
                    continue
                ui = rows[i, lj]
                ref = rows[j, lj]
                same = True
                for c in range(d):
                    if rows[i, c] * ref != rows[j, c] * ui:
                        same = False
                        break
                if same:
                    kind[i, j] = 1
                    num[i, j] = ui
                else:
                    kind[i, j] = 2
        return kind, num, den


# ------------------------------------------------------------------ dispatch


def _maxabs(a) -> int:
    return int(abs(a).max()) if a.size else 0


def _as_int64(a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64)


def to_object(a) -> np.ndarray:
    """Exact Python-int copy of an integer array."""
    flat = [int(x) for x in np.ravel(a)]
    out = np.empty(len(flat), dtype=object)
    out[:] = flat
    return out.reshape(np.shape(a))


def power_table(phi: list[int], n: int) -> np.ndarray:
    if max(map(abs, phi)) < 2**20:
        arr = np.array(phi, dtype=np.int64)
        if _backend == "numba":
            table, ok = power_table_nb(arr, n)
        else:
            table = power_table_np(arr, n)
            ok = _maxabs(table) <= 2**40
        if ok:
            return table
    return power_table_np(to_object(phi), n)


def fold(coeffs, exps, table) -> np.ndarray:
    coeffs = np.asarray(coeffs)
    exps = np.asarray(exps, dtype=np.int64)
    bound = len(coeffs) * _maxabs(coeffs) * _maxabs(table)
    if bound < INT64_SAFE and table.dtype != object:
        c = _as_int64(coeffs)
        return fold_nb(c, exps, table) if _backend == "numba" else fold_np(c, exps, table)
    return fold_np(to_object(coeffs), exps, to_object(table))


def mulmod(a, b, table) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    d = len(a)
    bound = 2 * d * d * _maxabs(a) * _maxabs(b) * _maxabs(table)
    if bound < INT64_SAFE and table.dtype != object:
        a, b = _as_int64(a), _as_int64(b)
        return mulmod_nb(a, b, table) if _backend == "numba" else mulmod_np(a, b, table)
    return mulmod_np(to_object(a), to_object(b), to_object(table))


def matvec(coeffs, matrix) -> np.ndarray:
    """coeffs @ matrix, exact."""
    coeffs = np.asarray(coeffs)
    bound = len(coeffs) * _maxabs(coeffs) * _maxabs(matrix)
    if bound < INT64_SAFE and matrix.dtype != object:
        c = _as_int64(coeffs)
        exps = np.arange(matrix.shape[0], dtype=np.int64)
        return fold_nb(c, exps, matrix) if _backend == "numba" else fold_np(c, exps, matrix)
    return to_object(coeffs) @ to_object(matrix)


def pair_ratios(rows) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows = np.asarray(rows)
    if _maxabs(rows) ** 2 * 2 < INT64_SAFE and rows.dtype != object:
        rows = _as_int64(rows)
        return pair_ratios_nb(rows) if _backend == "numba" else pair_ratios_np(rows)
    return pair_ratios_np(to_object(rows))
