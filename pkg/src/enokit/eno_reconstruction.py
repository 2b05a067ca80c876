"""Adaptive-stencil reconstruction of interface traces from cell averages.

The cell averages are bridged to point values of their running integral at
the interfaces. Each cell grows a stencil one point per stage, extending
toward the side whose divided difference is strictly smaller in magnitude;
ties keep the current stencil. The interpolant of the running integral over
the final stencil is differentiated to give the in-cell polynomial, whose
one-sided values at the interfaces are the traces.
"""

from dataclasses import dataclass

from . import _kernels
from .errors import StencilOutOfRange
from .grid import primitive_from_averages
from .numerics import divided_difference_table, is_float_data, promote_integers
from .stability import InterfaceTrace


def validate_offsets(offsets):
    """Check the stagewise offset rules shared by both signature kinds."""
    if not offsets:
        raise ValueError("a signature needs at least one offset")
    if offsets[0] != 0:
        raise ValueError("the first offset must be 0")
    for j in range(1, len(offsets)):
        if offsets[j] - offsets[j - 1] not in (0, -1):
            raise ValueError(
                "each stage may keep its stencil or extend it one point left"
            )


@dataclass(frozen=True)
class StencilSignature:
    """Stagewise stencil offsets chosen for one cell.

    offsets[j-1] is the shift of the stage-j stencil's leftmost interface
    relative to the cell's left interface; stage j spans j+1 consecutive
    interfaces. The first offset is 0 and each later stage either keeps
    the stencil or extends it one interface to the left.
    """

    offsets: tuple

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(self.offsets))
        validate_offsets(self.offsets)

    @property
    def order(self):
        return len(self.offsets)

    def __str__(self):
        return ",".join(str(k) for k in self.offsets)


@dataclass(frozen=True)
class NewtonPolynomial:
    """Interpolating polynomial in Newton form, points in appearance order.

    coefficients[j] is the divided difference of the ordinates over
    points[0..j], so the polynomial interpolates the underlying data at
    every stored point regardless of the order in which they appeared.
    """

    points: tuple
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.points:
            raise ValueError("a polynomial needs at least one point")
        if len(self.points) != len(self.coefficients):
            raise ValueError(
                f"{len(self.points)} points but {len(self.coefficients)} coefficients"
            )

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def value(self, x):
        total = self.coefficients[0]
        prod = None
        for j in range(1, len(self.coefficients)):
            factor = x - self.points[j - 1]
            prod = factor if prod is None else prod * factor
            total = total + self.coefficients[j] * prod
        return total

    def derivative_value(self, x):
        zero = self.coefficients[0] - self.coefficients[0]
        total = zero
        for j in range(1, len(self.coefficients)):
            dsum = zero
            for skip in range(j):
                prod = self.coefficients[j]
                for m in range(j):
                    if m != skip:
                        prod = prod * (x - self.points[m])
                dsum = dsum + prod
            total = total + dsum
        return total


@dataclass(frozen=True)
class CellPolynomial:
    """In-cell polynomial: derivative of the running-integral interpolant."""

    cell: int
    antiderivative: NewtonPolynomial

    @property
    def order(self):
        return self.antiderivative.degree

    def value(self, x):
        return self.antiderivative.derivative_value(x)


def _check_window(npts, cell, p):
    if p < 1:
        raise ValueError("order must be >= 1")
    if cell - p + 1 < 0 or cell + p > npts - 1:
        raise StencilOutOfRange(
            f"cell {cell} at order {p} needs points {cell - p + 1}..{cell + p}; "
            f"have 0..{npts - 1}"
        )


def select_signature(primitive, cell, p, table=None):
    """Grow the cell's stencil one point per stage over the primitive.

    Each stage compares the magnitudes of the two divided differences that
    would extend the current stencil by one point to the left or to the
    right, and moves left only on a strict win; ties keep the current
    stencil. Deterministic.

    Args:
        primitive: PointValueField of running-integral samples.
        cell: index of the cell (its left interface in the primitive).
        p: stencil order, >= 1.
        table: optional precomputed DividedDifferenceTable of the
            primitive with max_order >= p, reused across cells.

    Raises:
        StencilOutOfRange: the candidate window leaves the data.
    """
    _check_window(len(primitive.nodes), cell, p)
    if table is None:
        table = divided_difference_table(primitive.nodes, primitive.values,
                                         max_order=p)
    levels = table.levels
    L = cell
    offs = [0] * p
    for j in range(1, p):
        if abs(levels[j + 1][L - 1]) < abs(levels[j + 1][L]):
            L -= 1
        offs[j] = L - cell
    return StencilSignature(tuple(offs))


def newton_interpolant(primitive, signature, cell, table=None):
    """Newton form of the primitive's interpolant over the final stencil.

    Points are ordered by the stage at which the signature brought them
    in, so coefficient j is exactly the stage-j divided difference.
    """
    p = signature.order
    _check_window(len(primitive.nodes), cell, p)
    if table is None:
        table = divided_difference_table(primitive.nodes, primitive.values,
                                         max_order=p)
    X = table.points
    levels = table.levels
    points = [X[cell]]
    coefficients = [levels[0][cell]]
    prev = 0
    for j in range(1, p + 1):
        k = signature.offsets[j - 1]
        coefficients.append(levels[j][cell + k])
        points.append(X[cell + k + j] if k == prev else X[cell + k])
        prev = k
    return NewtonPolynomial(tuple(points), tuple(coefficients))


def reconstruct_cell(primitive, cell, p, table=None):
    """Select the cell's stencil and differentiate its interpolant."""
    if table is None:
        table = divided_difference_table(primitive.nodes, primitive.values,
                                         max_order=p)
    signature = select_signature(primitive, cell, p, table=table)
    return CellPolynomial(cell, newton_interpolant(primitive, signature, cell,
                                                   table=table))


def cell_mean(poly, mesh):
    """Mean of the in-cell polynomial over its cell: exact integration."""
    a = mesh.interfaces[poly.cell]
    b = mesh.interfaces[poly.cell + 1]
    anti = poly.antiderivative
    num = anti.value(b) - anti.value(a)
    den = b - a
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    num, den = promote_integers([num, den])
    return num / den


def _trace_at(table, cell, offsets, q):
    """One-sided trace at point q of the cell's derivative polynomial.

    Evaluates the derivative of the Newton interpolant at a stencil point
    directly: only the product that skips the zero factor survives.
    """
    X = table.points
    levels = table.levels
    total = levels[1][cell]
    for j in range(2, len(offsets) + 1):
        coef = levels[j][cell + offsets[j - 1]]
        start = cell + offsets[j - 2]
        prod = None
        for idx in range(start, start + j):
            if idx == q:
                continue
            factor = X[q] - X[idx]
            prod = factor if prod is None else prod * factor
        total = total + coef * prod
    return total


def interface_traces(field, p, table=None):
    """One-sided traces at every interior interface of an average field.

    Interfaces p..ncells-p carry full stencil windows on both sides; each
    gets the left cell's polynomial evaluated from the left and the right
    cell's from the right, along with the data jump and both signatures.

    Args:
        field: CellAverageField.
        p: order, >= 1.
        table: optional DividedDifferenceTable of the primitive with
            max_order >= p (exact path only), reused across orders.

    Returns:
        list of InterfaceTrace, ordered by interface index.

    Raises:
        StencilOutOfRange: fewer than 2p cells.
    """
    if p < 1:
        raise ValueError("order must be >= 1")
    n = field.mesh.ncells
    if n < 2 * p:
        raise StencilOutOfRange(f"order {p} needs at least {2 * p} cells; have {n}")
    X = field.mesh.interfaces
    avgs = field.averages
    if is_float_data(avgs) or is_float_data(X):
        xs = [float(x) for x in X]
        data = [float(a) for a in avgs]
        raw_sigs, vminus, vplus = _kernels.recon_traces(xs, data, p, 0.0)
        sigs = [StencilSignature(s) for s in raw_sigs]
        out = []
        for pos, iota in enumerate(range(p, n - p + 1)):
            out.append(InterfaceTrace(
                index=iota,
                location=xs[iota],
                left=vminus[pos],
                right=vplus[pos],
                data_jump=data[iota] - data[iota - 1],
                left_signature=sigs[iota - p],
                right_signature=sigs[iota - p + 1],
            ))
        return out
    primitive = primitive_from_averages(field)
    if table is None:
        table = divided_difference_table(primitive.nodes, primitive.values,
                                         max_order=p)
    sigs = {c: select_signature(primitive, c, p, table=table)
            for c in range(p - 1, n - p + 1)}
    out = []
    for iota in range(p, n - p + 1):
        left_sig = sigs[iota - 1]
        right_sig = sigs[iota]
        out.append(InterfaceTrace(
            index=iota,
            location=table.points[iota],
            left=_trace_at(table, iota - 1, left_sig.offsets, iota),
            right=_trace_at(table, iota, right_sig.offsets, iota),
            data_jump=avgs[iota] - avgs[iota - 1],
            left_signature=left_sig,
            right_signature=right_sig,
        ))
    return out
