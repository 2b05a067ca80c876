"""Adaptive-stencil interpolation of point values with midpoint traces.

Point values are interpolated directly: each node grows a stencil one node
per stage toward the side whose divided difference is strictly smaller in
magnitude, ties keeping the current stencil. The stencil polynomial of a
node is evaluated one-sided at the midpoints between nodes.
"""

from dataclasses import dataclass

from . import _kernels
from .errors import StencilOutOfRange
from .eno_reconstruction import NewtonPolynomial, validate_offsets
from .numerics import divided_difference_table, halfway, is_float_data
from .stability import InterfaceTrace


@dataclass(frozen=True)
class PointSignature:
    """Stagewise stencil offsets chosen for one node.

    offsets[j-1] is the shift of the stage-j stencil's leftmost node
    relative to the anchor node; stage j spans j consecutive nodes. The
    first offset is 0 and each later stage either keeps the stencil or
    extends it one node to the left.
    """

    offsets: tuple

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(self.offsets))
        validate_offsets(self.offsets)

    @property
    def order(self):
        return len(self.offsets)

    def __str__(self):
        return ",".join(str(m) for m in self.offsets)


def _check_window(npts, node, p):
    if p < 1:
        raise ValueError("order must be >= 1")
    if node - p + 1 < 0 or node + p - 1 > npts - 1:
        raise StencilOutOfRange(
            f"node {node} at order {p} needs nodes {node - p + 1}..{node + p - 1}; "
            f"have 0..{npts - 1}"
        )


def select_signature_pointwise(field, node, p, table=None):
    """Grow the node's stencil one node per stage over the values.

    Stage j compares the magnitudes of the divided differences of the two
    candidate (j+1)-node extensions and moves left only on a strict win;
    ties keep the current stencil. Deterministic.

    Args:
        field: PointValueField.
        node: anchor node index.
        p: stencil order (node count), >= 1.
        table: optional DividedDifferenceTable of the field with
            max_order >= p-1, reused across nodes.

    Raises:
        StencilOutOfRange: the candidate window leaves the data.
    """
    _check_window(len(field.nodes), node, p)
    if table is None:
        table = divided_difference_table(field.nodes, field.values,
                                         max_order=p - 1)
    levels = table.levels
    L = node
    offs = [0] * p
    for j in range(1, p):
        if abs(levels[j][L - 1]) < abs(levels[j][L]):
            L -= 1
        offs[j] = L - node
    return PointSignature(tuple(offs))


def interpolant_at_node(field, node, p, table=None):
    """Newton form of the values' interpolant over the node's stencil.

    Selects the stencil, then orders the points by the stage at which they
    were brought in, so coefficient j is the stage-(j+1) divided
    difference. Degree <= p-1.
    """
    _check_window(len(field.nodes), node, p)
    if table is None:
        table = divided_difference_table(field.nodes, field.values,
                                         max_order=p - 1)
    signature = select_signature_pointwise(field, node, p, table=table)
    X = table.points
    levels = table.levels
    points = [X[node]]
    coefficients = [levels[0][node]]
    prev = 0
    for j in range(2, p + 1):
        m = signature.offsets[j - 1]
        coefficients.append(levels[j - 1][node + m])
        points.append(X[node + m + j - 1] if m == prev else X[node + m])
        prev = m
    return NewtonPolynomial(tuple(points), tuple(coefficients))


def _eval_at(table, node, offsets, x):
    """Value at x of the node's stencil polynomial, Newton product form."""
    X = table.points
    levels = table.levels
    total = levels[0][node]
    for j in range(2, len(offsets) + 1):
        coef = levels[j - 1][node + offsets[j - 1]]
        start = node + offsets[j - 2]
        prod = None
        for idx in range(start, start + j - 1):
            factor = x - X[idx]
            prod = factor if prod is None else prod * factor
        total = total + coef * prod
    return total


def midpoint_traces(field, p, table=None):
    """One-sided traces at every interior node midpoint.

    Midpoints between nodes nu and nu+1 for nu = p-1..len-p-1 carry full
    stencil windows on both sides; each gets the left node's polynomial
    and the right node's polynomial evaluated at the midpoint, along with
    the value jump and both signatures.

    Args:
        field: PointValueField.
        p: order, >= 1.
        table: optional DividedDifferenceTable of the field with
            max_order >= p-1 (exact path only), reused across orders.

    Returns:
        list of InterfaceTrace, ordered by left node index.

    Raises:
        StencilOutOfRange: fewer than 2p nodes.
    """
    if p < 1:
        raise ValueError("order must be >= 1")
    n = len(field.nodes)
    if n < 2 * p:
        raise StencilOutOfRange(f"order {p} needs at least {2 * p} nodes; have {n}")
    if is_float_data(field.values) or is_float_data(field.nodes):
        xs = [float(x) for x in field.nodes]
        data = [float(v) for v in field.values]
        raw_sigs, wminus, wplus = _kernels.interp_traces(xs, data, p)
        sigs = [PointSignature(s) for s in raw_sigs]
        out = []
        for pos, nu in enumerate(range(p - 1, n - p)):
            out.append(InterfaceTrace(
                index=nu,
                location=(xs[nu] + xs[nu + 1]) / 2,
                left=wminus[pos],
                right=wplus[pos],
                data_jump=data[nu + 1] - data[nu],
                left_signature=sigs[nu - p + 1],
                right_signature=sigs[nu - p + 2],
            ))
        return out
    if table is None:
        table = divided_difference_table(field.nodes, field.values,
                                         max_order=p - 1)
    sigs = {i: select_signature_pointwise(field, i, p, table=table)
            for i in range(p - 1, n - p + 1)}
    X = table.points
    out = []
    for nu in range(p - 1, n - p):
        xm = halfway(X[nu], X[nu + 1])
        left_sig = sigs[nu]
        right_sig = sigs[nu + 1]
        out.append(InterfaceTrace(
            index=nu,
            location=xm,
            left=_eval_at(table, nu, left_sig.offsets, xm),
            right=_eval_at(table, nu + 1, right_sig.offsets, xm),
            data_jump=field.values[nu + 1] - field.values[nu],
            left_signature=left_sig,
            right_signature=right_sig,
        ))
    return out
