"""Exit criteria. Each test prints one ``ACCEPTANCE <id> PASS|FAIL`` line."""
import json
import random
import time
from fractions import Fraction
from math import gcd

import mpmath
import pytest

from cyclobasis.arith import euler_phi
from cyclobasis.audit import audit_n
from cyclobasis.basis import CoordVector, build_basis, decompose_root, proportionality
from cyclobasis.cli import main
from cyclobasis.oracle import re_im_power, root_power, vector_power
from cyclobasis.sines import Classification, Rho, classify_grid_oracle, classify_ratio
from cyclobasis.tan import find_real_root

RESULTS: list[str] = []


@pytest.fixture
def report():
    def record(ident: str, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {ident} {'PASS' if ok else 'FAIL'}: {detail}"
        RESULTS.append(line)
        print(line)
        assert ok, line

    return record


def test_1_theorem_sweep(capsys, report):
    code = main(["--format", "json", "sweep", "--qmax", "60", "--nmax", "60"])
    data = json.loads(capsys.readouterr().out)
    t = data["tallies"]
    ok = code == 0 and data["violations"] == [] and t["fails"] + t["pole_rhs"] == data["total"] > 0
    report("1-sweep", ok, f"q<=60, n<=60: {data['total']} checks, {t['fails']} fails, {t['pole_rhs']} pole_rhs, "
           f"{len(data['violations'])} violations")


def test_2_basis_audit(report):
    bits = 192
    rows = [audit_n(n, bits) for n in range(1, 151)]
    exact = all(r.exact for r in rows)
    numeric = all(r.numeric for r in rows)
    worst = max(r.max_error_log2 for r in rows)
    sizes = all(len(build_basis(n)) == euler_phi(n) for n in range(1, 501))
    report("2-basis-audit", exact and numeric and sizes,
           f"exact={exact} numeric={numeric} (worst error 2^{worst:.1f} vs tol 2^-{bits - 20}) |D_n|=phi(n) to 500: {sizes}")


def test_3_coprime_coefficients(report):
    bad = []
    checked = 0
    for n in range(1, 151):
        for t in range(n):
            if gcd(t, n) == 1:
                checked += 1
                for v in decompose_root(n, t):
                    if not set(v.entries.values()) <= {-1, 0, 1}:
                        bad.append((n, t))
    report("3-coprime-coeffs", not bad, f"{checked} coprime (n, t) pairs, {len(bad)} with coefficients outside {{-1,0,1}}")


def test_4_counterexample_regression(capsys, report):
    main(["--format", "json", "decompose", "3", "0"])
    dec = json.loads(capsys.readouterr().out)
    main(["--format", "json", "sin-ratio", "1/6", "1", "3"])
    ratio = json.loads(capsys.readouterr().out)
    re = CoordVector.from_json(3, dec["re"])
    oracle_re = vector_power(re) == re_im_power(3, 0)[0] == root_power(3, 0)
    with mpmath.workprec(192):
        numeric = abs(mpmath.sin(mpmath.pi / 6) - Fraction(1, 2) * mpmath.sin(mpmath.pi / 2)) < mpmath.mpf(2) ** -150
    u, v = re_im_power(12, 1)[1], re_im_power(12, 3)[1]  # i sin(pi/6), i sin(pi/2)
    oracle_ratio = u == v.scale(Fraction(1, 2))
    ok = (
        dec == {"n": 3, "t": 0, "re": {"A3.1": "-2/1"}, "im": {}}
        and ratio == {"rho": "1/6", "k": 1, "m": 3, "class": "rational", "lambda": "1/2"}
        and oracle_re and oracle_ratio and numeric
    )
    report("4-counterexamples", ok, "decompose 3 0 -> A3.1: -2/1; sin-ratio 1/6 1 3 -> 1/2 (observed, oracle-verified)")


def test_5_proportionality_trichotomy(report):
    rng = random.Random(20261016)
    found = {}
    outside = 0
    for _ in range(10_000):
        n = rng.randint(1, 60)
        keys = build_basis(n).keys
        density = rng.random()
        v = {}
        while not v:
            v = {k: rng.choice((-1, 1)) for k in keys if rng.random() < density}
            density = max(density, 1 / len(keys))
        if rng.random() < 0.3:
            # force the same support so nonzero multiples are reachable
            u = {k: rng.choice((-1, 1)) for k in v}
        else:
            u = {k: rng.choice((-1, 1)) for k in keys if rng.random() < density}
        lam = proportionality(CoordVector(n, u), CoordVector(n, v))
        if lam is not None:
            found[lam] = found.get(lam, 0) + 1
            outside += lam not in (-1, 0, 1)
    detail = ", ".join(f"{k}: {c}" for k, c in sorted(found.items()))
    report("5-trichotomy", outside == 0, f"10000 pairs, proportional factors found {{{detail}}}")


def test_6_equivalence_witness(report):
    root = find_real_root(4, "0.35", "0.38", 256)
    tol = mpmath.mpf(2) ** -100
    with mpmath.workprec(288):
        x = mpmath.pi * root.rho
        tan_res = abs(4 * mpmath.tan(x) - mpmath.tan(4 * x))
        ratio_res = abs(mpmath.sin(3 * x) / mpmath.sin(5 * x) - mpmath.mpf(3) / 5)
    ok = tan_res < tol and ratio_res < tol
    report("6-root-witness", ok, f"rho*={mpmath.nstr(root.rho, 25)} tan residual 2^{float(mpmath.log(tan_res, 2)):.1f}, "
           f"ratio residual 2^{float(mpmath.log(ratio_res, 2)):.1f} (tol 2^-100)")


def test_7_dual_path_agreement(report):
    start = time.perf_counter()
    checked = 0
    mismatches = []
    for q in range(2, 41):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            rho = Rho(p, q)
            ks = range(1, 2 * q + 1)
            grid = classify_grid_oracle(rho, ks, ks)
            for i, k in enumerate(ks):
                for j, m in enumerate(ks):
                    checked += 1
                    if classify_ratio(rho, k, m) != grid[i][j]:
                        mismatches.append((p, q, k, m))
    elapsed = time.perf_counter() - start
    report("7-dual-path", not mismatches and elapsed < 600,
           f"{checked} (rho, k, m) cases, {len(mismatches)} disagreements, {elapsed:.1f}s (limit 600s)")
