"""Shared fixtures plus an independent reference implementation.

The reference functions below use only fractions.Fraction, greedy stencil
growth on explicit point sets, and Lagrange-form evaluation. They share no
code or representation with the package (which selects via offset
signatures and evaluates Newton forms), so agreement is meaningful.
"""

import random
from fractions import Fraction

import pytest

from enokit import CellAverageField, Mesh, PointValueField


@pytest.fixture
def step_cells():
    return CellAverageField(Mesh(range(9)), [0, 0, 0, 0, 1, 1, 1, 1])


@pytest.fixture
def step_points():
    return PointValueField(range(8), [0, 0, 0, 0, 1, 1, 1, 1])


def random_fraction_mesh(rng, n_points, start=0):
    """Strictly increasing rationals with spacing in [1/2, 2]."""
    xs = [Fraction(start)]
    for _ in range(n_points - 1):
        xs.append(xs[-1] + Fraction(rng.randint(32768, 131072), 65536))
    return xs


def random_int_values(rng, count, lo=-8, hi=8):
    return [rng.randint(lo, hi) for _ in range(count)]


# ---- Reference implementation (Fractions + Lagrange form) ----

def _dd_over(xs, vs):
    """Single divided difference over the whole window, by recursion."""
    work = [Fraction(v) for v in vs]
    for j in range(1, len(xs)):
        work = [
            (work[k + 1] - work[k]) / (xs[k + j] - xs[k])
            for k in range(len(work) - 1)
        ]
    return work[0]


def _grow_window(xs, vs, lo, hi, p_points):
    """Greedy growth toward the smaller extension difference.

    Strictly smaller on the left moves the window left; ties extend right.
    """
    while hi - lo + 1 < p_points:
        left = abs(_dd_over(xs[lo - 1:hi + 1], vs[lo - 1:hi + 1]))
        right = abs(_dd_over(xs[lo:hi + 2], vs[lo:hi + 2]))
        if left < right:
            lo -= 1
        else:
            hi += 1
    return lo, hi


def _lagrange_value(xs, vs, t):
    total = Fraction(0)
    for k in range(len(xs)):
        term = Fraction(vs[k])
        for j in range(len(xs)):
            if j != k:
                term = term * (t - xs[j]) / (xs[k] - xs[j])
        total += term
    return total


def _lagrange_derivative(xs, vs, t):
    total = Fraction(0)
    for k in range(len(xs)):
        denom = Fraction(1)
        for j in range(len(xs)):
            if j != k:
                denom *= xs[k] - xs[j]
        dsum = Fraction(0)
        for m in range(len(xs)):
            if m == k:
                continue
            prod = Fraction(1)
            for j in range(len(xs)):
                if j != k and j != m:
                    prod *= t - xs[j]
            dsum += prod
        total += Fraction(vs[k]) * dsum / denom
    return total


def reference_recon_traces(interfaces, averages, p):
    """(left, right) trace pairs at interior interfaces, reference path."""
    xs = [Fraction(x) for x in interfaces]
    avgs = [Fraction(a) for a in averages]
    prim = [Fraction(0)]
    for i, a in enumerate(avgs):
        prim.append(prim[-1] + (xs[i + 1] - xs[i]) * a)
    n = len(avgs)
    windows = {}
    for cell in range(p - 1, n - p + 1):
        windows[cell] = _grow_window(xs, prim, cell, cell + 1, p + 1)
    traces = []
    for iota in range(p, n - p + 1):
        llo, lhi = windows[iota - 1]
        rlo, rhi = windows[iota]
        left = _lagrange_derivative(xs[llo:lhi + 1], prim[llo:lhi + 1], xs[iota])
        right = _lagrange_derivative(xs[rlo:rhi + 1], prim[rlo:rhi + 1], xs[iota])
        traces.append((iota, left, right))
    return traces


def reference_interp_traces(nodes, values, p):
    """(left, right) pairs at node midpoints, reference path."""
    xs = [Fraction(x) for x in nodes]
    vs = [Fraction(v) for v in values]
    n = len(xs)
    windows = {}
    for node in range(p - 1, n - p + 1):
        windows[node] = _grow_window(xs, vs, node, node, p)
    traces = []
    for nu in range(p - 1, n - p):
        xm = (xs[nu] + xs[nu + 1]) / 2
        llo, lhi = windows[nu]
        rlo, rhi = windows[nu + 1]
        left = _lagrange_value(xs[llo:lhi + 1], vs[llo:lhi + 1], xm)
        right = _lagrange_value(xs[rlo:rhi + 1], vs[rlo:rhi + 1], xm)
        traces.append((nu, left, right))
    return traces


def reference_random_case(seed, n, want_points=False):
    rng = random.Random(seed)
    xs = random_fraction_mesh(rng, n + 1)
    data = random_int_values(rng, n if not want_points else n + 1)
    return xs, data
