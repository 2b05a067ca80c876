"""Meshes, fields, primitives, and periodic padding."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from enokit import (
    CellAverageField,
    InvalidMesh,
    Mesh,
    PointValueField,
    ShapeError,
    first_dd_is_average,
    first_divided_differences,
    periodic_extension,
    periodic_extension_points,
    primitive_from_averages,
    uniform_mesh,
)

from conftest import random_fraction_mesh, random_int_values


def test_mesh_basics():
    mesh = Mesh([0, 1, 3, 6])
    assert mesh.ncells == 3
    assert mesh.interfaces == (0, 1, 3, 6)
    assert mesh.width(0) == 1
    assert mesh.width(2) == 3
    assert mesh.mesh_ratio(0) == 2
    assert mesh.mesh_ratio(1) == Fraction(3, 2)


def test_mesh_validation():
    with pytest.raises(InvalidMesh):
        Mesh([0])
    with pytest.raises(InvalidMesh):
        Mesh([0, 1, 1])
    with pytest.raises(InvalidMesh):
        Mesh([0, 2, 1])


def test_uniform_mesh():
    mesh = uniform_mesh(4)
    assert mesh.interfaces == (0, 1, 2, 3, 4)
    scaled = uniform_mesh(2, start=Fraction(1, 2), width=Fraction(1, 4))
    assert scaled.interfaces == (Fraction(1, 2), Fraction(3, 4), Fraction(1))


def test_field_shape_checks():
    mesh = Mesh([0, 1, 2])
    with pytest.raises(ShapeError):
        CellAverageField(mesh, [1])
    with pytest.raises(ShapeError):
        PointValueField([0, 1], [1])
    with pytest.raises(InvalidMesh):
        PointValueField([1, 0], [1, 2])


def test_primitive_known_values():
    field = CellAverageField(Mesh([0, 1, 3]), [2, 5])
    prim = primitive_from_averages(field)
    assert prim.nodes == (0, 1, 3)
    assert prim.values == (0, 2, 12)
    shifted = primitive_from_averages(field, base=7)
    assert shifted.values == (7, 9, 19)


def test_primitive_first_dd_recovers_averages_exact():
    rng = random.Random(7)
    xs = random_fraction_mesh(rng, 13)
    avgs = [Fraction(v, rng.randint(1, 5)) for v in random_int_values(rng, 12)]
    field = CellAverageField(Mesh(xs), avgs)
    prim = primitive_from_averages(field)
    assert first_divided_differences(prim) == avgs
    assert first_dd_is_average(prim, field)


def test_primitive_first_dd_recovers_averages_float():
    rng = random.Random(8)
    xs = [0.0]
    for _ in range(12):
        xs.append(xs[-1] + rng.uniform(0.5, 2.0))
    avgs = [rng.uniform(-8, 8) for _ in range(12)]
    field = CellAverageField(Mesh(xs), avgs)
    assert first_dd_is_average(primitive_from_averages(field), field)


@given(st.integers(0, 10 ** 6))
def test_primitive_base_shift_property(seed):
    rng = random.Random(seed)
    xs = random_fraction_mesh(rng, 7)
    avgs = random_int_values(rng, 6)
    field = CellAverageField(Mesh(xs), avgs)
    low = primitive_from_averages(field, base=0)
    high = primitive_from_averages(field, base=Fraction(5, 3))
    assert all(
        b - a == Fraction(5, 3) for a, b in zip(low.values, high.values)
    )


def test_periodic_extension_cells():
    field = CellAverageField(Mesh([0, 1, 3, 4]), [10, 20, 30])
    padded = periodic_extension(field, 2)
    assert padded.averages == (20, 30, 10, 20, 30, 10, 20)
    widths = [
        padded.mesh.interfaces[i + 1] - padded.mesh.interfaces[i]
        for i in range(padded.mesh.ncells)
    ]
    assert widths == [2, 1, 1, 2, 1, 1, 2]


def test_periodic_extension_points():
    field = PointValueField([0, 1, 3, 4], [5, 6, 7, 5])
    padded = periodic_extension_points(field, 2)
    assert padded.values == (6, 7, 5, 6, 7, 5, 6, 7)
    gaps = [
        padded.nodes[i + 1] - padded.nodes[i]
        for i in range(len(padded.nodes) - 1)
    ]
    assert gaps == [2, 1, 1, 2, 1, 1, 2]


def test_periodic_extension_wraps_past_one_period():
    field = CellAverageField(Mesh([0, 1, 2]), [1, 2])
    padded = periodic_extension(field, 3)
    assert padded.averages == (2, 1, 2, 1, 2, 1, 2, 1)
