"""Stencil selection, Newton forms, traces, and conservation."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from enokit import (
    CellAverageField,
    Mesh,
    StencilOutOfRange,
    StencilSignature,
    cell_mean,
    interface_traces,
    newton_interpolant,
    primitive_from_averages,
    reconstruct_cell,
    select_signature,
    uniform_mesh,
)

from conftest import (
    random_fraction_mesh,
    random_int_values,
    reference_recon_traces,
)


def test_signature_validation():
    assert StencilSignature((0, -1, -1)).order == 3
    assert str(StencilSignature((0, 0, -1))) == "0,0,-1"
    with pytest.raises(ValueError):
        StencilSignature(())
    with pytest.raises(ValueError):
        StencilSignature((1,))
    with pytest.raises(ValueError):
        StencilSignature((0, -2))
    with pytest.raises(ValueError):
        StencilSignature((0, -1, 0))


def test_select_signature_step_data(step_cells):
    prim = primitive_from_averages(step_cells)
    assert select_signature(prim, 3, 2).offsets == (0, -1)
    assert select_signature(prim, 4, 2).offsets == (0, 0)


def test_select_signature_avoids_the_kink(step_cells):
    """Stencils never cross the jump while a one-sided window exists."""
    prim = primitive_from_averages(step_cells)
    for cell in (2, 3):
        offsets = select_signature(prim, cell, 3).offsets
        assert cell + offsets[-1] + 3 <= 4 or cell + offsets[-1] >= 4
    sig = select_signature(prim, 3, 3)
    assert 3 + sig.offsets[-1] + 3 <= 4


def test_select_signature_window_checks(step_cells):
    prim = primitive_from_averages(step_cells)
    with pytest.raises(StencilOutOfRange):
        select_signature(prim, 0, 2)
    with pytest.raises(StencilOutOfRange):
        select_signature(prim, 7, 2)
    with pytest.raises(ValueError):
        select_signature(prim, 3, 0)


def test_newton_interpolant_matches_primitive_samples(step_cells):
    prim = primitive_from_averages(step_cells)
    samples = dict(zip(prim.nodes, prim.values))
    for cell in range(2, 6):
        sig = select_signature(prim, cell, 3)
        poly = newton_interpolant(prim, sig, cell)
        assert poly.degree == 3
        for pt in poly.points:
            assert poly.value(pt) == samples[pt]


def test_newton_points_follow_appearance_order():
    rng = random.Random(3)
    xs = random_fraction_mesh(rng, 11)
    field = CellAverageField(Mesh(xs), random_int_values(rng, 10))
    prim = primitive_from_averages(field)
    for cell in range(3, 7):
        sig = select_signature(prim, cell, 3)
        poly = newton_interpolant(prim, sig, cell)
        seen = {xs[cell], xs[cell + 1]}
        assert set(poly.points[:2]) == seen
        for j, k in enumerate(sig.offsets[1:], start=2):
            new_pt = poly.points[j]
            assert new_pt in (xs[cell + k], xs[cell + k + j])
            assert new_pt not in seen
            seen.add(new_pt)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_conservation_is_exact(seed, p):
    rng = random.Random(seed)
    n = 2 * p + 3
    xs = random_fraction_mesh(rng, n + 1)
    avgs = [Fraction(v, rng.randint(1, 7)) for v in random_int_values(rng, n)]
    field = CellAverageField(Mesh(xs), avgs)
    prim = primitive_from_averages(field)
    for cell in range(p - 1, n - p + 1):
        poly = reconstruct_cell(prim, cell, p)
        assert cell_mean(poly, field.mesh) == avgs[cell]


def test_polynomial_averages_reproduce_traces_exactly():
    """Averages of a cubic: order-4 traces equal the cubic at interfaces."""
    coeffs = [Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(5, 3)]

    def antiderivative(x):
        return sum(c * x ** (k + 1) / (k + 1) for k, c in enumerate(coeffs))

    def value(x):
        return sum(c * x ** k for k, c in enumerate(coeffs))

    rng = random.Random(11)
    xs = random_fraction_mesh(rng, 13)
    avgs = [
        (antiderivative(xs[i + 1]) - antiderivative(xs[i])) / (xs[i + 1] - xs[i])
        for i in range(12)
    ]
    field = CellAverageField(Mesh(xs), avgs)
    for t in interface_traces(field, 4):
        assert t.left == value(t.location)
        assert t.right == value(t.location)
        assert t.jump == 0


def test_interface_traces_layout(step_cells):
    traces = interface_traces(step_cells, 2)
    assert [t.index for t in traces] == [2, 3, 4, 5, 6]
    assert [t.location for t in traces] == [2, 3, 4, 5, 6]
    for t in traces:
        assert t.data_jump == step_cells.averages[t.index] \
            - step_cells.averages[t.index - 1]
    jumpy = traces[2]
    assert jumpy.left_signature.offsets == (0, -1)
    assert jumpy.right_signature.offsets == (0, 0)
    assert (jumpy.left, jumpy.right) == (0, 1)


def test_interface_traces_too_few_cells():
    field = CellAverageField(uniform_mesh(5), [1, 2, 3, 4, 5])
    with pytest.raises(StencilOutOfRange):
        interface_traces(field, 3)
    with pytest.raises(ValueError):
        interface_traces(field, 0)


@pytest.mark.parametrize("p", [1, 2, 3, 4])
@pytest.mark.parametrize("seed", [0, 1, 2, 17, 91])
def test_traces_agree_with_reference_implementation(p, seed):
    rng = random.Random(seed)
    n = 2 * p + 4
    xs = random_fraction_mesh(rng, n + 1)
    avgs = random_int_values(rng, n)
    field = CellAverageField(Mesh(xs), avgs)
    ours = interface_traces(field, p)
    theirs = reference_recon_traces(xs, avgs, p)
    assert len(ours) == len(theirs)
    for t, (iota, left, right) in zip(ours, theirs):
        assert t.index == iota
        assert t.left == left
        assert t.right == right


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_float_path_tracks_exact_path(p):
    rng = random.Random(23)
    n = 2 * p + 6
    xs = random_fraction_mesh(rng, n + 1)
    avgs = [Fraction(v, 3) for v in random_int_values(rng, n)]
    exact = interface_traces(CellAverageField(Mesh(xs), avgs), p)
    floats = interface_traces(
        CellAverageField(Mesh([float(x) for x in xs]),
                         [float(a) for a in avgs]),
        p,
    )
    for te, tf in zip(exact, floats):
        assert te.index == tf.index
        assert tf.left == pytest.approx(float(te.left), rel=1e-9, abs=1e-9)
        assert tf.right == pytest.approx(float(te.right), rel=1e-9, abs=1e-9)


def test_shared_table_matches_per_call():
    from enokit import divided_difference_table

    rng = random.Random(5)
    xs = random_fraction_mesh(rng, 11)
    field = CellAverageField(Mesh(xs), random_int_values(rng, 10))
    prim = primitive_from_averages(field)
    table = divided_difference_table(prim.nodes, prim.values, max_order=3)
    for cell in range(2, 8):
        assert select_signature(prim, cell, 3, table=table) \
            == select_signature(prim, cell, 3)
