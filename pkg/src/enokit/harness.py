"""Worst-case generators, randomized fuzzing, convergence studies, oracles.

Fuzz trials are reproducible and independent: trial t of seed s draws from
random.Random(f"{s}:{t}"), so a corpus can be replayed trial by trial and
split across workers without changing any draw. All aggregation is
order-independent (sums and max-reductions with total tie-breaks), which
makes serial and parallel runs byte-identical.
"""

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .eno_interpolation import midpoint_traces
from .eno_reconstruction import interface_traces
from .errors import InvalidMesh, ShapeError, StencilOutOfRange
from .grid import CellAverageField, Mesh, PointValueField, primitive_from_averages
from .numerics import (
    EXACT,
    FLOAT,
    divided_difference_table,
    get_backend,
    is_float_data,
    promote_integers,
)
from .stability import (
    bound_constants_recursive,
    relative_jump,
    sign_report,
    telescoped_jump_interpolation,
    telescoped_jump_reconstruction,
)

ORACLE_FLOAT_TOL = 1e-9
WIDTH_DENOMINATOR = 65536


# ---- Worst case ----

def worst_case_averages(p, epsilon=1e-10, n_cells=20, backend=FLOAT):
    """Perturbed sawtooth of averages whose jump ratio is extremal at x=4.

    Unit-width cells centered so that the interface at coordinate 4 has
    full stencil windows. Averages alternate 0 and 1, with the 1-cells
    left of the target interface lowered to 1-epsilon; the perturbation
    steers every stencil choice toward the configuration that attains the
    uniform-mesh jump bound at the target.

    Args:
        p: order, >= 1.
        epsilon: perturbation, > 0 to attain the bound (0 is allowed and
            demonstrates the collapse when selections tie).
        n_cells: cell count, >= 2p + 10.
        backend: scalar backend for coordinates and averages.

    Raises:
        StencilOutOfRange: n_cells too small for the target interface.
    """
    if p < 1:
        raise ValueError("order must be >= 1")
    if n_cells < 2 * p + 10:
        raise StencilOutOfRange(
            f"need at least {2 * p + 10} cells for order {p}; have {n_cells}"
        )
    eps = backend.convert(epsilon)
    zero = backend.convert(0)
    one = backend.convert(1)
    start = 4 - n_cells // 2
    mesh = Mesh([backend.convert(start + k) for k in range(n_cells + 1)])
    averages = []
    for c in range(n_cells):
        i = start + c + 1
        if i % 2 == 0:
            averages.append(zero)
        elif i >= 5:
            averages.append(one)
        else:
            averages.append(one - eps)
    return CellAverageField(mesh, averages)


def worst_case_ratio(p, epsilon=1e-10, n_cells=20, backend=FLOAT):
    """Relative trace jump of the worst-case field at coordinate 4."""
    field = worst_case_averages(p, epsilon, n_cells, backend)
    iota = n_cells // 2
    for t in interface_traces(field, p):
        if t.index == iota:
            return relative_jump(t)
    raise StencilOutOfRange(f"interface {iota} not interior at order {p}")


# ---- Fuzzing ----

@dataclass(frozen=True)
class FuzzConfig:
    """Reproducible description of one fuzz corpus."""

    seed: int = 0
    trials: int = 100
    cells: int = 30
    orders: tuple = (1, 2, 3, 4, 5, 6)
    width_low: float = 0.5
    width_high: float = 2.0
    backend: str = "exact"
    distribution: str = "mixed"
    kind: str = "reconstruction"

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.cells < 2:
            raise ValueError("cells must be >= 2")
        if not self.orders or any(p < 1 for p in self.orders):
            raise ValueError("orders must be a nonempty sequence of p >= 1")
        if not 0 < self.width_low <= self.width_high:
            raise ValueError("cell widths need 0 < low <= high")
        if self.backend not in ("float", "exact"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.distribution not in ("mixed", "uniform-int"):
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.kind not in ("reconstruction", "interpolation"):
            raise ValueError(f"unknown kind {self.kind!r}")


@dataclass(frozen=True)
class FuzzReport:
    """Aggregated outcome of a fuzz corpus; all counters order-independent."""

    config: FuzzConfig
    trials_run: int
    interfaces_checked: int
    violations: int
    bound_exceedances: int
    oracle_mismatches: int
    max_ratio_per_order: dict
    bound_per_order: dict
    worst_witness: object
    violation_witnesses: tuple

    def to_json(self):
        """Canonical JSON with stable key order."""
        payload = {
            "interfaces": self.interfaces_checked,
            "violations": self.violations,
            "max_ratio": {str(p): v for p, v in self.max_ratio_per_order.items()},
            "bound": {str(p): v for p, v in self.bound_per_order.items()},
            "seed": self.config.seed,
            "order": list(self.config.orders),
            "backend": self.config.backend,
            "kind": self.config.kind,
            "trials": self.trials_run,
            "cells": self.config.cells,
            "distribution": self.config.distribution,
            "bound_exceedances": self.bound_exceedances,
            "oracle_mismatches": self.oracle_mismatches,
            "worst_witness": self.worst_witness,
            "violation_witnesses": list(self.violation_witnesses),
        }
        return json.dumps(payload, sort_keys=True)


def _trial_values(rng, count, distribution):
    roll = rng.random() if distribution == "mixed" else 0.0
    if roll < 0.7:
        return [rng.randint(-8, 8) for _ in range(count)]
    a = rng.randint(-8, 8)
    b = rng.randint(-8, 8)
    if b == a:
        b = a + 1
    if roll < 0.8:
        return [a if i % 2 == 0 else b for i in range(count)]
    split = rng.randint(1, count - 1)
    if roll < 0.9:
        return [a] * split + [b] * (count - split)
    eps = EXACT.convert(1) / 10 ** rng.randint(6, 12)
    values = [a if i % 2 == 0 else b for i in range(count)]
    for i in range(split, count):
        if i % 2 == 1:
            values[i] = b - eps
    return values


def _trial_inputs(config, trial):
    """Coordinates and data values of one trial, in exact scalars."""
    rng = random.Random(f"{config.seed}:{trial}")
    lo = math.ceil(config.width_low * WIDTH_DENOMINATOR)
    hi = math.floor(config.width_high * WIDTH_DENOMINATOR)
    coords = [EXACT.convert(0)]
    for _ in range(config.cells):
        width = EXACT.convert(rng.randint(lo, hi)) / WIDTH_DENOMINATOR
        coords.append(coords[-1] + width)
    count = config.cells if config.kind == "reconstruction" else config.cells + 1
    return coords, _trial_values(rng, count, config.distribution)


def _serialize_all(backend, values):
    return [backend.serialize(v) for v in values]


def _run_fuzz_trial(config, trial):
    """Evaluate one trial; returns a JSON-safe, order-independent payload."""
    backend = get_backend(config.backend)
    coords, values = _trial_inputs(config, trial)
    if not backend.exact:
        coords = [float(x) for x in coords]
        values = [float(v) for v in values]
    pmax = max(config.orders)
    reconstruction = config.kind == "reconstruction"
    if reconstruction:
        field = CellAverageField(Mesh(coords), values)
        source = primitive_from_averages(field)
        npts = len(coords)
    else:
        field = PointValueField(coords, values)
        source = field
        npts = len(coords)
    table = None
    if backend.exact:
        depth = pmax + 1 if reconstruction else pmax
        table = divided_difference_table(source.nodes, source.values,
                                         max_order=min(depth, npts - 1))
    payload = {
        "interfaces": 0,
        "violations": 0,
        "bound_exceedances": 0,
        "oracle_mismatches": 0,
        "max_ratio": {},
        "bound": {},
        "best": None,
        "violation_witnesses": [],
    }

    def witness(order, t, reason):
        return {
            "trial": trial,
            "order": order,
            "index": t.index,
            "reason": reason,
            "coordinates": _serialize_all(backend, coords),
            "data": _serialize_all(backend, values),
            "left": backend.serialize(t.left),
            "right": backend.serialize(t.right),
            "data_jump": backend.serialize(t.data_jump),
        }

    for p in config.orders:
        room = len(coords) - 1 if reconstruction else len(coords)
        if room < 2 * p:
            continue
        if reconstruction:
            traces = interface_traces(field, p, table=table)
        else:
            traces = midpoint_traces(field, p, table=table)
        report = sign_report(traces)
        payload["interfaces"] += len(traces)
        best_ratio = None
        best_bound = None
        for t, verdict, ratio in zip(traces, report.verdicts, report.ratios):
            if verdict == "VIOLATION":
                payload["violations"] += 1
                payload["violation_witnesses"].append(witness(p, t, "sign"))
            bound = bound_constants_recursive(
                coords, p, config.kind, position=t.index).bound
            if best_bound is None or bound > best_bound:
                best_bound = bound
            if ratio is not None:
                exact_ratio = EXACT.convert(ratio) if not backend.exact else ratio
                slack = bound if backend.exact else bound * (
                    1 + EXACT.convert(ORACLE_FLOAT_TOL))
                if exact_ratio > slack:
                    payload["bound_exceedances"] += 1
                    payload["violation_witnesses"].append(witness(p, t, "bound"))
                if best_ratio is None or ratio > best_ratio:
                    best_ratio = ratio
                    candidate = (trial, p, t.index)
            if reconstruction:
                tele = telescoped_jump_reconstruction(
                    source, t.left_signature, t.right_signature, t.index, p,
                    table=table)
            else:
                tele = telescoped_jump_interpolation(
                    source, t.left_signature, t.right_signature, t.index, p,
                    table=table)
            direct = t.jump
            if backend.exact:
                mismatch = tele != direct
            else:
                mismatch = abs(tele - direct) > ORACLE_FLOAT_TOL * max(
                    1.0, abs(direct))
            if mismatch:
                payload["oracle_mismatches"] += 1
                payload["violation_witnesses"].append(witness(p, t, "oracle"))
        payload["max_ratio"][p] = (
            None if best_ratio is None else backend.serialize(best_ratio))
        payload["bound"][p] = EXACT.serialize(best_bound)
        if best_ratio is not None:
            entry = {
                "ratio": backend.serialize(best_ratio),
                "trial": candidate[0],
                "order": candidate[1],
                "index": candidate[2],
                "coordinates": _serialize_all(backend, coords),
                "data": _serialize_all(backend, values),
            }
            if payload["best"] is None or _witness_beats(
                    backend, entry, payload["best"]):
                payload["best"] = entry
    return payload


def _witness_beats(backend, challenger, incumbent):
    a = backend.parse(challenger["ratio"])
    b = backend.parse(incumbent["ratio"])
    if a != b:
        return a > b
    key = ("trial", "order", "index")
    return tuple(challenger[k] for k in key) < tuple(incumbent[k] for k in key)


def fuzz_sign_property(config, workers=1):
    """Run the corpus described by config and aggregate one FuzzReport.

    Deterministic for a fixed config: trials draw from per-trial RNG
    streams and every aggregate is order-independent, so any workers
    value (and any trial interleaving) produces the identical report.

    Args:
        config: FuzzConfig.
        workers: process count; 1 runs in-process.
    """
    trial_ids = range(config.trials)
    runner = partial(_run_fuzz_trial, config)
    if workers > 1:
        chunk = max(1, config.trials // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            payloads = list(pool.map(runner, trial_ids, chunksize=chunk))
    else:
        payloads = [runner(t) for t in trial_ids]
    backend = get_backend(config.backend)
    interfaces = 0
    violations = 0
    exceedances = 0
    mismatches = 0
    max_ratio = {}
    bound = {}
    best = None
    witnesses = []
    for payload in payloads:
        interfaces += payload["interfaces"]
        violations += payload["violations"]
        exceedances += payload["bound_exceedances"]
        mismatches += payload["oracle_mismatches"]
        for p, text in payload["max_ratio"].items():
            if text is None:
                max_ratio.setdefault(p, None)
            elif max_ratio.get(p) is None or backend.parse(text) > backend.parse(
                    max_ratio[p]):
                max_ratio[p] = text
        for p, text in payload["bound"].items():
            if p not in bound or EXACT.parse(text) > EXACT.parse(bound[p]):
                bound[p] = text
        if payload["best"] is not None and (
                best is None or _witness_beats(backend, payload["best"], best)):
            best = payload["best"]
        witnesses.extend(payload["violation_witnesses"])
    witnesses.sort(key=lambda w: (w["trial"], w["order"], w["index"], w["reason"]))
    return FuzzReport(
        config=config,
        trials_run=config.trials,
        interfaces_checked=interfaces,
        violations=violations,
        bound_exceedances=exceedances,
        oracle_mismatches=mismatches,
        max_ratio_per_order={p: max_ratio.get(p) for p in sorted(max_ratio)},
        bound_per_order={p: bound[p] for p in sorted(bound)},
        worst_witness=best,
        violation_witnesses=tuple(witnesses),
    )


# ---- Convergence ----

@dataclass(frozen=True)
class RateTable:
    """L-infinity trace errors per order and resolution, with fitted rates.

    errors[i][j] is the max interface-trace error at orders[i] on
    resolutions[j] cells; rates[i] is the fitted decay exponent of that
    row against resolution.
    """

    orders: tuple
    resolutions: tuple
    errors: tuple
    rates: tuple


def convergence_study(sampler, orders, resolutions, domain=(0.0, 1.0)):
    """Refine a smooth sampler and fit interface-trace error decay rates.

    Cell averages are formed by 12-point Gauss-Legendre quadrature of the
    sampler, traces are compared against the sampler at every interior
    interface, and each order's max errors are fitted to a power of the
    resolution by least squares in log-log coordinates.

    Args:
        sampler: smooth callable on the domain, float to float.
        orders: iterable of p >= 1.
        resolutions: strictly increasing cell counts, at least two, each
            >= 2*max(orders).
        domain: (left, right) interval.
    """
    orders = tuple(orders)
    resolutions = tuple(resolutions)
    if len(resolutions) < 2 or any(
            resolutions[i] >= resolutions[i + 1] for i in range(len(resolutions) - 1)):
        raise ValueError("resolutions must be strictly increasing, two or more")
    if any(p < 1 for p in orders) or not orders:
        raise ValueError("orders must be a nonempty sequence of p >= 1")
    if resolutions[0] < 2 * max(orders):
        raise StencilOutOfRange(
            f"coarsest resolution {resolutions[0]} cannot host order {max(orders)}"
        )
    gauss_x, gauss_w = np.polynomial.legendre.leggauss(12)
    a, b = float(domain[0]), float(domain[1])
    errors = []
    for p in orders:
        row = []
        for ncells in resolutions:
            X = [a + (b - a) * k / ncells for k in range(ncells + 1)]
            averages = []
            for i in range(ncells):
                mid = 0.5 * (X[i] + X[i + 1])
                half = 0.5 * (X[i + 1] - X[i])
                samples = [sampler(mid + half * t) for t in gauss_x]
                averages.append(0.5 * float(np.dot(gauss_w, samples)))
            field = CellAverageField(Mesh(X), averages)
            err = 0.0
            for t in interface_traces(field, p):
                truth = sampler(t.location)
                err = max(err, abs(t.left - truth), abs(t.right - truth))
            row.append(err)
        errors.append(tuple(row))
    rates = []
    log_n = np.log(np.asarray(resolutions, dtype=float))
    for row in errors:
        log_e = np.log(np.maximum(np.asarray(row, dtype=float), 1e-300))
        rates.append(float(-np.polyfit(log_n, log_e, 1)[0]))
    return RateTable(orders, resolutions, tuple(errors), tuple(rates))


# ---- Independent evaluation oracle ----

def lagrange_oracle(points, values, x):
    """Interpolant value at x by direct Lagrange basis summation.

    Independent of the Newton form: no divided differences, no stagewise
    ordering. Exact for exact inputs.

    Raises:
        ShapeError: length mismatch or empty input.
        InvalidMesh: duplicate points.
    """
    pts = list(points)
    vals = list(values)
    if len(pts) != len(vals):
        raise ShapeError(f"{len(pts)} points but {len(vals)} values")
    if not pts:
        raise ShapeError("empty point set")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise InvalidMesh(f"duplicate point at indices {i} and {j}")
    if is_float_data(pts) or is_float_data(vals) or isinstance(x, float):
        pts = [float(v) for v in pts]
        vals = [float(v) for v in vals]
        x = float(x)
    else:
        pts = promote_integers(pts)
        vals = promote_integers(vals)
        x = promote_integers([x])[0]
    total = vals[0] - vals[0]
    for i in range(len(pts)):
        term = vals[i]
        for j in range(len(pts)):
            if j != i:
                term = term * (x - pts[j]) / (pts[i] - pts[j])
        total = total + term
    return total
