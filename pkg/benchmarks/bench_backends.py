"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_backends.py [--repeat 3]

Both backends are run on identical inputs and their outputs are compared.
"""
import argparse
import time
from math import gcd

import numpy as np

from cyclobasis import _kernels, oracle, sines
from cyclobasis.oracle import cyclotomic_poly


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def power_tables():
    return [_kernels.power_table(list(cyclotomic_poly(n).coeffs), n).tolist() for n in range(100, 400, 7)]


def mulmods():
    rng = np.random.default_rng(0)
    table = _kernels.power_table(list(cyclotomic_poly(210).coeffs), 210)
    d = table.shape[1]
    return [_kernels.mulmod(rng.integers(-3, 4, d), rng.integers(-3, 4, d), table).tolist() for _ in range(300)]


def pair_grids():
    out = []
    for n in range(4, 161, 2):
        table = _kernels.power_table(list(cyclotomic_poly(n).coeffs), n)
        rows = table - table[(-np.arange(n)) % n]
        out.append([x.tolist() for x in _kernels.pair_ratios(rows)])
    return out


def oracle_grid():
    oracle.power_table.cache_clear()
    sines._residue_grid.cache_clear()
    n = 0
    for q in range(2, 41):
        for p in range(1, q):
            if gcd(p, q) == 1:
                ks = range(1, 2 * q + 1)
                n += sum(len(r) for r in sines.classify_grid_oracle(sines.Rho(p, q), ks, ks))
    return n


CASES = {
    "power_table n=100..400": power_tables,
    "mulmod x300 (n=210)": mulmods,
    "pair_ratios n=4..160": pair_grids,
    "oracle classify grid q<=40": oracle_grid,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = ["numpy", "numba"] if _kernels.HAVE_NUMBA else ["numpy"]
    saved = _kernels.get_backend()
    if "numba" in backends:
        _kernels.set_backend("numba")
        for fn in CASES.values():  # JIT compile outside the timings
            fn()
    print(f"{'case':<30}" + "".join(f"{b:>12}" for b in backends) + "     speedup  same")
    try:
        for name, fn in CASES.items():
            times, outs = [], []
            for b in backends:
                _kernels.set_backend(b)
                t, out = _time(fn, args.repeat)
                times.append(t)
                outs.append(out)
            speed = times[0] / times[-1] if len(times) > 1 else 1.0
            same = all(o == outs[0] for o in outs)
            print(f"{name:<30}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times) + f"{speed:>11.1f}x  {same}")
    finally:
        _kernels.set_backend(saved)


if __name__ == "__main__":
    main()
