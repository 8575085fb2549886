"""Acceptance suite: one test per numbered criterion, each printing a
PASS/FAIL line. Run with `pytest -v -s tests/test_acceptance.py`.

Criteria 3b and 4 encode reference coefficient/error values that are
mutually inconsistent (details in the assertion messages); they are
asserted exactly as specified and are expected to stay red.
"""

import random
import time

import numpy as np

from tropfit import (
    MAX_PLUS,
    DegreeVector,
    Termination,
    TropicalMatrix,
    TropicalVector,
    distance,
    eval_polynomial,
    eval_rational,
    fit_polynomial,
    fit_rational,
    mat_vec_mul,
    one_sided_solve,
    scale,
    two_sided_solve,
)
from tropfit.cli import main, parse_model
from tropfit.datasets import convex_samples, dataset_csv, nonconvex_samples
from oracles import grid_min_one_sided, grid_min_two_sided

CONVEX_N5_DEGREES = [-14, -1, 1, 2, 3]
CONVEX_N5_THETA = (2.5680, 0.9176, -0.4320, -1.6281, -3.2413)
CONVEX_N7_DEGREES = [-15, -3, -1, 0, 1, 2, 3]
CONVEX_N7_THETA = (2.5240, 1.4096, 0.8736, 0.3503, -0.4760, -1.6720, -3.2853)
RATIONAL_A_NUM_DEGREES = [-3, -2, 1, 2]
RATIONAL_A_DEN_DEGREES = [-5, -2]
RATIONAL_A_THETA_REF = (11.4688, 9.6386, 5.3845, -10.5453)
RATIONAL_A_SIGMA_REF = (11.1281, 10.3861)
RATIONAL_B_NUM_DEGREES = [-3, -2, 0, 1, 2, 4]
RATIONAL_B_DEN_DEGREES = [-5, -3, -2, 0]


def check(num: str, description: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {num:>3}: {status}  {description}{detail}")
    assert ok, f"criterion {num}: {description}{detail}"


def test_criterion_01_convex_polynomial_n5():
    samples = convex_samples()
    start = time.perf_counter()
    report = fit_polynomial(samples, DegreeVector(CONVEX_N5_DEGREES))
    elapsed = time.perf_counter() - start
    ok = abs(report.delta_star - 0.1360) <= 1e-3
    ok &= all(abs(got - want) <= 1e-3 for got, want
              in zip(report.model.coefficients, CONVEX_N5_THETA))
    ok &= elapsed < 0.1
    check("1", "convex demo, 5 terms: delta 0.1360 and coefficients to 1e-3",
          ok, f" (delta={report.delta_star:.4f}, {elapsed * 1e3:.1f} ms)")


def test_criterion_02_convex_polynomial_n7():
    samples = convex_samples()
    start = time.perf_counter()
    report = fit_polynomial(samples, DegreeVector(CONVEX_N7_DEGREES))
    elapsed = time.perf_counter() - start
    ok = abs(report.delta_star - 0.0481) <= 1e-3
    ok &= all(abs(got - want) <= 1e-3 for got, want
              in zip(report.model.coefficients, CONVEX_N7_THETA))
    ok &= elapsed < 0.1
    check("2", "convex demo, 7 terms: delta 0.0481 and coefficients to 1e-3",
          ok, f" (delta={report.delta_star:.4f}, {elapsed * 1e3:.1f} ms)")


def test_criterion_03a_nonconvex_rational_delta():
    samples = nonconvex_samples()
    start = time.perf_counter()
    report = fit_rational(samples, DegreeVector(RATIONAL_A_NUM_DEGREES),
                          DegreeVector(RATIONAL_A_DEN_DEGREES))
    elapsed = time.perf_counter() - start
    ok = abs(report.delta_star - 0.1395) <= 2e-3 and elapsed < 1.0
    check("3a", "nonconvex demo, 4/2 terms: delta 0.1395 to 2e-3",
          ok, f" (delta={report.delta_star:.4f}, {elapsed * 1e3:.1f} ms)")


def test_criterion_03b_nonconvex_rational_coefficients():
    report = fit_rational(nonconvex_samples(),
                          DegreeVector(RATIONAL_A_NUM_DEGREES),
                          DegreeVector(RATIONAL_A_DEN_DEGREES))
    # Remove the common-scaling freedom by pinning the leading
    # denominator coefficient to the reference value.
    shift = RATIONAL_A_SIGMA_REF[0] - report.model.denominator.coefficients[0]
    theta = [c + shift for c in report.model.numerator.coefficients]
    sigma = [c + shift for c in report.model.denominator.coefficients]
    ok = all(abs(got - want) <= 2e-3 for got, want
             in zip(theta + sigma,
                    RATIONAL_A_THETA_REF + RATIONAL_A_SIGMA_REF))
    check("3b", "nonconvex demo, 4/2 terms: coefficients match the reference "
          "vectors to 2e-3 after gauge normalization", ok,
          " [the reference vectors cannot attain the reference error: under "
          "any common shift they force |R(0) - y(0)| = 0.0907 > "
          "sqrt(0.1395) = 0.0698, so no optimal fit can match them]")


def test_criterion_04_nonconvex_rational_larger_class():
    samples = nonconvex_samples()
    start = time.perf_counter()
    report = fit_rational(samples, DegreeVector(RATIONAL_B_NUM_DEGREES),
                          DegreeVector(RATIONAL_B_DEN_DEGREES))
    elapsed = time.perf_counter() - start
    ok = abs(report.delta_star - 0.0701) <= 2e-3 and elapsed < 1.0
    check("4", "nonconvex demo, 6/4 terms: delta 0.0701 to 2e-3", ok,
          f" (delta={report.delta_star:.4f}, {elapsed * 1e3:.1f} ms) "
          "[the stated degree list reaches a smaller error than the "
          "reference value; the reference error 0.0701 belongs to the "
          "neighbouring class with -1 in place of 1, which this suite "
          "covers in test_approx.py]")


def test_criterion_05_one_sided_grid_oracle():
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    ok = True
    for index in range(100):
        n = index % 3 + 1
        m = index % 4 + 1
        a = rng.uniform(-5, 5, size=(m, n))
        b = rng.uniform(-5, 5, size=m)
        sol = one_sided_solve(TropicalMatrix(a.tolist(), MAX_PLUS),
                              TropicalVector(b.tolist(), MAX_PLUS))
        reference = grid_min_one_sided(a, b, lo=-10.0, hi=10.0, step=0.1)
        ok &= sol.error <= reference + 1e-9
        ok &= sol.error >= reference - 0.1 * n
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10.0
    check("5", "one-sided solver vs brute-force grid on 100 instances",
          ok, f" ({elapsed:.1f} s)")


def test_criterion_06_two_sided_monotone_and_grid_oracle():
    rng = np.random.default_rng(20240602)
    start = time.perf_counter()
    ok = True
    for index in range(100):
        m = index % 2 + 2
        n = index % 2 + 1
        l = (index // 2) % 2 + 1
        a = rng.uniform(-3, 3, size=(m, n))
        b = rng.uniform(-3, 3, size=(m, l))
        sol = two_sided_solve(TropicalMatrix(a.tolist(), MAX_PLUS),
                              TropicalMatrix(b.tolist(), MAX_PLUS))
        ok &= all(later <= earlier + 1e-12
                  for earlier, later in zip(sol.deltas, sol.deltas[1:]))
        reference = grid_min_two_sided(a, b, lo=-6.0, hi=6.0, step=0.2)
        ok &= sol.delta_star <= 2.0 * reference + 1e-9
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60.0
    check("6", "two-sided solver: non-increasing deltas and grid oracle "
          "bound on 100 instances", ok, f" ({elapsed:.1f} s)")


def test_criterion_07_exact_system_recovery():
    rng = random.Random(20240603)
    ok = True
    for _ in range(100):
        m, n = rng.randrange(1, 5), rng.randrange(1, 4)
        a = TropicalMatrix(
            [[rng.uniform(-5, 5) for _ in range(n)] for _ in range(m)],
            MAX_PLUS)
        x = TropicalVector([rng.uniform(-5, 5) for _ in range(n)], MAX_PLUS)
        b = mat_vec_mul(a, x)
        sol = one_sided_solve(a, b)
        ok &= sol.exact and abs(sol.delta - MAX_PLUS.one) <= 1e-9
        reproduced = mat_vec_mul(a, sol.x_star)
        ok &= all(abs(p - q) <= 1e-12 for p, q in zip(reproduced, b))
        ok &= all(xs >= xi - 1e-12 for xs, xi in zip(sol.x_star, x))
    check("7", "exact one-sided systems: unit delta, reproduced rhs, "
          "greatest solution, on 100 instances", ok)


def test_criterion_08_metric_properties():
    rng = random.Random(20240604)
    ok = True
    for index in range(1000):
        n = rng.randrange(1, 6)
        a = TropicalVector([rng.uniform(-10, 10) for _ in range(n)], MAX_PLUS)
        if index % 4 == 0:
            b = a
        else:
            b = TropicalVector([rng.uniform(-10, 10) for _ in range(n)],
                               MAX_PLUS)
        d_ab = distance(a, b)
        d_ba = distance(b, a)
        ok &= d_ab == d_ba
        ok &= d_ab.value >= MAX_PLUS.one
        cheb = max(abs(p - q) for p, q in zip(a, b))
        ok &= abs(d_ab.value - cheb) <= 1e-12
        ok &= (d_ab.value == MAX_PLUS.one) == (a.elements == b.elements)
        lam = rng.uniform(-8, 8)
        scaled = distance(scale(lam, a), scale(lam, b))
        ok &= abs(scaled.value - d_ab.value) <= 1e-12
    check("8", "metric on 1000 pairs: symmetric, >= unit, unit iff equal, "
          "Chebyshev in max-plus, scaling invariant", ok)


def test_criterion_09_residual_identity_of_all_demo_fits():
    convex = convex_samples()
    nonconvex = nonconvex_samples()
    fits = [
        (convex, fit_polynomial(convex, DegreeVector(CONVEX_N5_DEGREES))),
        (convex, fit_polynomial(convex, DegreeVector(CONVEX_N7_DEGREES))),
        (nonconvex, fit_rational(nonconvex,
                                 DegreeVector(RATIONAL_A_NUM_DEGREES),
                                 DegreeVector(RATIONAL_A_DEN_DEGREES))),
        (nonconvex, fit_rational(nonconvex,
                                 DegreeVector(RATIONAL_B_NUM_DEGREES),
                                 DegreeVector(RATIONAL_B_DEN_DEGREES))),
    ]
    ok = True
    for samples, report in fits:
        if report.termination is Termination.ONE_SHOT:
            worst = max(abs(eval_polynomial(report.model, x) - y)
                        for x, y in samples.points)
        else:
            worst = max(abs(eval_rational(report.model, x) - y)
                        for x, y in samples.points)
        ok &= abs(worst - report.error) <= 1e-9
    check("9", "pointwise residual maximum equals the reported error for "
          "all four demo fits", ok)


def test_criterion_10_cli_determinism_across_threads(tmp_path, capsys):
    csv_path = tmp_path / "f.csv"
    csv_path.write_text(dataset_csv("f"), encoding="utf-8")
    outputs = []
    for threads in ("1", "4"):
        code = main(["fit", "--kind", "polynomial", "--terms", "5",
                     "--range", "-15:5", "--samples", "60", "--seed", "11",
                     "--threads", threads, "--input", str(csv_path)])
        captured = capsys.readouterr()
        outputs.append((code, captured.out))
    ok = outputs[0] == outputs[1] and outputs[0][0] == 0
    ok &= parse_model(outputs[0][1]).provenance["seed"] == 11
    check("10", "search fit via the CLI is byte-identical for "
          "--threads 1 and 4", ok)
