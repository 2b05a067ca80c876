"""Meshes, cell-average fields, point-value fields, and the primitive bridge.

The primitive of a cell-average field is its cumulative integral sampled at
the mesh interfaces; its first divided differences give back the averages,
which is what lets average data drive point-value interpolation machinery.
"""

from . import _kernels
from .errors import InvalidMesh, ShapeError
from .numerics import is_float_data, promote_integers


class Mesh:
    """Strictly increasing interface coordinates delimiting cells.

    Cell i spans [interfaces[i], interfaces[i+1]); values at an interface
    are attributed through one-sided traces, never through cell membership
    of the interface point.
    """

    def __init__(self, interfaces):
        interfaces = tuple(interfaces)
        if len(interfaces) < 2:
            raise InvalidMesh("a mesh needs at least two interfaces")
        for k in range(len(interfaces) - 1):
            if not interfaces[k] < interfaces[k + 1]:
                raise InvalidMesh(
                    f"interfaces must be strictly increasing; offender at index {k + 1}"
                )
        self.interfaces = interfaces

    @property
    def ncells(self):
        return len(self.interfaces) - 1

    def width(self, i):
        """Width of cell i."""
        return self.interfaces[i + 1] - self.interfaces[i]

    def mesh_ratio(self, i):
        """Width ratio of cell i+1 to cell i."""
        widths = promote_integers([self.width(i + 1), self.width(i)])
        return widths[0] / widths[1]


def uniform_mesh(ncells, start=0, width=1):
    """Mesh of ncells equal cells beginning at start."""
    return Mesh([start + k * width for k in range(ncells + 1)])


class CellAverageField:
    """Cell averages attached to a mesh, one scalar per cell."""

    def __init__(self, mesh, averages):
        averages = tuple(averages)
        if len(averages) != mesh.ncells:
            raise ShapeError(
                f"{len(averages)} averages for a mesh of {mesh.ncells} cells"
            )
        self.mesh = mesh
        self.averages = averages


class PointValueField:
    """Values sampled at strictly increasing nodes."""

    def __init__(self, nodes, values):
        nodes = tuple(nodes)
        values = tuple(values)
        if len(nodes) != len(values):
            raise ShapeError(f"{len(nodes)} nodes but {len(values)} values")
        for k in range(len(nodes) - 1):
            if not nodes[k] < nodes[k + 1]:
                raise InvalidMesh(
                    f"nodes must be strictly increasing; offender at index {k + 1}"
                )
        self.nodes = nodes
        self.values = values


# ---- Primitive bridge ----

def primitive_from_averages(field, base=0):
    """Cumulative integral of the field, sampled at the mesh interfaces.

    Args:
        field: CellAverageField.
        base: value assigned at the first interface; it shifts every sample
            by a constant and no divided difference of order >= 1 changes.

    Returns:
        PointValueField on the interfaces with values[0] == base and
        values[j+1] - values[j] == width(j) * averages[j]. Float data uses
        compensated summation; exact data sums exactly.
    """
    X = field.mesh.interfaces
    avgs = field.averages
    if is_float_data(avgs) or is_float_data(X) or isinstance(base, float):
        xs = [float(x) for x in X]
        values = _kernels.primitive_floats(xs, [float(a) for a in avgs], float(base))
        return PointValueField(xs, values)
    values = [base]
    acc = base
    for i in range(len(avgs)):
        acc = acc + (X[i + 1] - X[i]) * avgs[i]
        values.append(acc)
    return PointValueField(X, values)


def first_divided_differences(primitive):
    """First divided differences of a point-value field, window by window."""
    xs = promote_integers(primitive.nodes)
    vs = promote_integers(primitive.values)
    return [
        (vs[k + 1] - vs[k]) / (xs[k + 1] - xs[k]) for k in range(len(xs) - 1)
    ]


def first_dd_is_average(primitive, field, rel_tol=1e-12):
    """Check that the primitive's first divided differences are the averages.

    Exact scalars are compared exactly; float scalars within rel_tol of the
    average's scale (with a floor of 1).
    """
    dds = first_divided_differences(primitive)
    if len(dds) != len(field.averages):
        raise ShapeError(
            f"{len(dds)} cells in the primitive but {len(field.averages)} averages"
        )
    approximate = is_float_data(primitive.values) or is_float_data(field.averages)
    for dd, avg in zip(dds, field.averages):
        if approximate:
            if abs(dd - avg) > rel_tol * max(1.0, abs(avg)):
                return False
        elif dd != avg:
            return False
    return True


# ---- Periodic extension ----

def periodic_extension(field, pad):
    """Extend a cell-average field by wrapping pad cells onto each side.

    Convenience for exercising interior-only operations on periodic data;
    no extrapolation is ever fabricated.
    """
    X = field.mesh.interfaces
    n = field.mesh.ncells
    widths = [X[i + 1] - X[i] for i in range(n)]
    idx = [i % n for i in range(-pad, n + pad)]
    wrapped = [widths[i] for i in idx]
    x0 = X[0]
    for i in range(pad):
        x0 = x0 - wrapped[pad - 1 - i]
    interfaces = [x0]
    for w in wrapped:
        interfaces.append(interfaces[-1] + w)
    return CellAverageField(Mesh(interfaces), [field.averages[i] for i in idx])


def periodic_extension_points(field, pad):
    """Extend a point-value field by wrapping pad nodes onto each side.

    The node pattern repeats with index period n-1 (the last node plays the
    role of the first, one period later), so padded values wrap with that
    period while the original samples are kept verbatim.
    """
    xs = field.nodes
    n = len(xs)
    gaps = [xs[i + 1] - xs[i] for i in range(n - 1)]
    gap_idx = [i % (n - 1) for i in range(-pad, n - 1 + pad)]
    wrapped = [gaps[i] for i in gap_idx]
    x0 = xs[0]
    for i in range(pad):
        x0 = x0 - wrapped[pad - 1 - i]
    nodes = [x0]
    for g in wrapped:
        nodes.append(nodes[-1] + g)
    values = [
        field.values[i] if 0 <= i < n else field.values[i % (n - 1)]
        for i in range(-pad, n + pad)
    ]
    return PointValueField(nodes, values)
