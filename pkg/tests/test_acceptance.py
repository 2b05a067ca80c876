"""Acceptance gate: one test and one printed pass/fail line per criterion.

Criteria 4-7 share two module-scoped fuzz corpora (10^4 trials each, exact
backend) so the gate stays inside its runtime targets.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from enokit import (
    EXACT,
    CellAverageField,
    FuzzConfig,
    Mesh,
    PointValueField,
    bound_Cp,
    cell_mean,
    convergence_study,
    fuzz_sign_property,
    interface_traces,
    midpoint_traces,
    primitive_from_averages,
    reconstruct_cell,
    uniform_bound_Cp,
    uniform_bound_cp,
    uniform_mesh,
    worst_case_averages,
    worst_case_ratio,
)

from conftest import random_fraction_mesh, random_int_values

T1 = [Fraction(1), Fraction(2), Fraction(10, 3), Fraction(16, 3),
      Fraction(128, 15), Fraction(208, 15)]
T2 = [Fraction(1), Fraction(2), Fraction(7, 2), Fraction(6),
      Fraction(83, 8), Fraction(73, 4)]

CORPUS_TRIALS = 10_000
CORPUS_WORKERS = 4


_CAPTURE = {"manager": None}


@pytest.fixture(autouse=True)
def _reach_past_capture(request):
    _CAPTURE["manager"] = request.config.pluginmanager.getplugin("capturemanager")
    yield


def _line(num, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    text = f"[{status}] acceptance {num:02d} {label}"
    manager = _CAPTURE["manager"]
    if manager is not None:
        with manager.global_and_fixture_disabled():
            print(text, flush=True)
    else:
        print(text, flush=True)
    assert ok, f"acceptance {num:02d} {label} {detail}".rstrip()


def _corpus(kind):
    config = FuzzConfig(
        seed=0,
        trials=CORPUS_TRIALS,
        cells=30,
        orders=(1, 2, 3, 4, 5, 6),
        width_low=0.5,
        width_high=2.0,
        backend="exact",
        distribution="mixed",
        kind=kind,
    )
    assert config.width_high / config.width_low <= 4.0
    start = time.perf_counter()
    report = fuzz_sign_property(config, workers=CORPUS_WORKERS)
    return report, time.perf_counter() - start


@pytest.fixture(scope="module")
def recon_corpus():
    return _corpus("reconstruction")


@pytest.fixture(scope="module")
def interp_corpus():
    return _corpus("interpolation")


def test_criterion_01_closed_form_reconstruction_bounds():
    start = time.perf_counter()
    got = [uniform_bound_Cp(p) for p in range(1, 7)]
    elapsed = time.perf_counter() - start
    _line(1, "closed-form reconstruction bounds",
          got == T1 and elapsed < 1.0, f"got={got} elapsed={elapsed:.3f}s")


def test_criterion_02_closed_form_interpolation_bounds():
    start = time.perf_counter()
    got = [uniform_bound_cp(p) for p in range(1, 7)]
    elapsed = time.perf_counter() - start
    ok = (got == T2 and float(got[4]) == 10.375 and float(got[5]) == 18.25
          and elapsed < 1.0)
    _line(2, "closed-form interpolation bounds", ok,
          f"got={got} elapsed={elapsed:.3f}s")


def test_criterion_03_mesh_specific_matches_closed_form():
    ok = True
    detail = ""
    for mesh in (uniform_mesh(16), uniform_mesh(14, width=Fraction(1, 3))):
        for p in range(1, 7):
            if bound_Cp(mesh, p) != uniform_bound_Cp(p):
                ok = False
                detail = f"p={p} width={mesh.width(0)}"
    _line(3, "mesh-specific bound equals closed form on uniform meshes",
          ok, detail)


def test_criterion_04_reconstruction_fuzz_has_no_violations(recon_corpus):
    report, elapsed = recon_corpus
    ok = (report.violations == 0 and report.trials_run == CORPUS_TRIALS
          and elapsed < 300.0)
    _line(4, "reconstruction sign property over the fuzz corpus", ok,
          f"violations={report.violations} witnesses="
          f"{report.violation_witnesses[:1]} elapsed={elapsed:.1f}s")


def test_criterion_05_interpolation_fuzz_has_no_violations(interp_corpus):
    report, elapsed = interp_corpus
    ok = (report.violations == 0 and report.trials_run == CORPUS_TRIALS
          and elapsed < 300.0)
    _line(5, "interpolation sign property over the fuzz corpus", ok,
          f"violations={report.violations} witnesses="
          f"{report.violation_witnesses[:1]} elapsed={elapsed:.1f}s")


def test_criterion_06_ratios_stay_under_mesh_bounds(recon_corpus,
                                                    interp_corpus):
    recon, _ = recon_corpus
    interp, _ = interp_corpus
    ok = recon.bound_exceedances == 0 and interp.bound_exceedances == 0
    _line(6, "relative jumps within mesh-specific bounds, exact", ok,
          f"recon={recon.bound_exceedances} interp={interp.bound_exceedances}")


def test_criterion_07_telescoped_oracle_matches_traces(recon_corpus,
                                                       interp_corpus):
    recon, _ = recon_corpus
    interp, _ = interp_corpus
    ok = recon.oracle_mismatches == 0 and interp.oracle_mismatches == 0
    _line(7, "telescoped jump equals direct trace difference, exact", ok,
          f"recon={recon.oracle_mismatches} interp={interp.oracle_mismatches}")


def test_criterion_08_conservation_is_exact():
    ok = True
    detail = ""
    for seed in range(12):
        rng = random.Random(seed)
        for p in range(1, 7):
            n = 2 * p + 4
            xs = random_fraction_mesh(rng, n + 1)
            avgs = [Fraction(v, rng.randint(1, 9))
                    for v in random_int_values(rng, n)]
            field = CellAverageField(Mesh(xs), avgs)
            prim = primitive_from_averages(field)
            for cell in range(p - 1, n - p + 1):
                poly = reconstruct_cell(prim, cell, p)
                if cell_mean(poly, field.mesh) != avgs[cell]:
                    ok = False
                    detail = f"seed={seed} p={p} cell={cell}"
    _line(8, "reconstructed cell means equal the given averages", ok, detail)


def test_criterion_09_worst_case_attains_the_bound():
    ok = True
    detail = ""
    field = worst_case_averages(2)
    if field.mesh.interfaces[field.mesh.ncells // 2] != 4.0:
        ok = False
        detail = "target interface is not at x=4"
    for p in (2, 3, 4, 5):
        measured = worst_case_ratio(p, epsilon=1e-10)
        gap = abs(measured - float(uniform_bound_Cp(p)))
        if gap >= 1e-6:
            ok = False
            detail = f"p={p} measured={measured!r} gap={gap:.3e}"
    _line(9, "perturbed-step construction attains the bound within 1e-6",
          ok, detail)


def test_criterion_10_convergence_rates_and_exact_reproduction():
    table = convergence_study(
        lambda x: math.sin(2 * math.pi * x),
        (1, 2, 3, 4, 5),
        (16, 32, 64, 128, 256),
    )
    ok = all(rate >= p - 0.3 for p, rate in zip(table.orders, table.rates))
    detail = f"rates={[round(r, 3) for r in table.rates]}"
    for p in range(1, 6):
        coeffs = [Fraction(k + 1, 3) for k in range(p)]

        def anti(x, cs=coeffs):
            return sum(c * x ** (k + 1) / (k + 1) for k, c in enumerate(cs))

        def val(x, cs=coeffs):
            return sum(c * x ** k for k, c in enumerate(cs))

        n = 2 * p + 6
        xs = [Fraction(k, 2) for k in range(n + 1)]
        avgs = [(anti(xs[i + 1]) - anti(xs[i])) / (xs[i + 1] - xs[i])
                for i in range(n)]
        cells = CellAverageField(Mesh([float(x) for x in xs]),
                                 [float(a) for a in avgs])
        for t in interface_traces(cells, p):
            truth = float(val(Fraction(t.location)))
            err = max(abs(t.left - truth), abs(t.right - truth))
            if err > 1e-9 * max(1.0, abs(truth)):
                ok = False
                detail += f" recon p={p} err={err:.3e}"
        points = PointValueField([float(x) for x in xs],
                                 [float(val(x)) for x in xs])
        for t in midpoint_traces(points, p):
            truth = float(val(Fraction(t.location)))
            err = max(abs(t.left - truth), abs(t.right - truth))
            if err > 1e-9 * max(1.0, abs(truth)):
                ok = False
                detail += f" interp p={p} err={err:.3e}"
    _line(10, "trace error decays at the stencil order; polynomials exact",
          ok, detail)


def test_criterion_11_reports_are_deterministic():
    config = FuzzConfig(seed=42, trials=50, cells=20, orders=(1, 2, 3, 4))
    first = fuzz_sign_property(config).to_json()
    second = fuzz_sign_property(config).to_json()
    parallel = fuzz_sign_property(config, workers=CORPUS_WORKERS).to_json()
    interp = FuzzConfig(seed=42, trials=50, cells=20, orders=(1, 2, 3, 4),
                        kind="interpolation")
    ifirst = fuzz_sign_property(interp).to_json()
    iparallel = fuzz_sign_property(interp, workers=3).to_json()
    ok = first == second == parallel and ifirst == iparallel
    _line(11, "byte-identical reports across runs and worker counts", ok)
