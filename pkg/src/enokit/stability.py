"""Sign-property verdicts, telescoped jump oracles, and jump-bound constants.

The telescoped jump rewrites the one-sided trace difference at an interface
as a short sum of high-order divided differences times geometric factors.
It never evaluates the two polynomials, so it is an independent oracle for
the direct traces: in the exact backend the two must agree to the bit.

Bound constants are always computed in exact rationals, even when the trace
data is binary64; comparing a measured jump ratio against a bound must not
be polluted by round-off in the bound itself.
"""

from dataclasses import dataclass
from math import factorial

from .errors import StencilOutOfRange
from .numerics import (
    EXACT,
    divided_difference_table,
    halfway,
    is_float_data,
    promote_integers,
)

FLOAT_SIGN_TOL = 1e-12


# ---- Trace records ----

@dataclass(frozen=True)
class InterfaceTrace:
    """One-sided limits of a piecewise reconstruction at one breakpoint.

    The breakpoint is a mesh interface for reconstruction from averages and
    a node midpoint for interpolation of point values; `index` is the
    interface index in the former case and the left node index in the
    latter. `data_jump` is the difference of the two underlying data values
    whose sign the trace jump may never oppose.
    """

    index: int
    location: object
    left: object
    right: object
    data_jump: object
    left_signature: object
    right_signature: object

    @property
    def jump(self):
        return self.right - self.left


InterfaceTraceList = list


@dataclass(frozen=True)
class SignReport:
    """Per-breakpoint verdicts plus aggregate counters."""

    verdicts: tuple
    ratios: tuple
    violations: int
    max_ratio: object

    @property
    def counts(self):
        return {
            name: sum(1 for v in self.verdicts if v == name)
            for name in ("SameSign", "Continuous", "VIOLATION")
        }


def _divide(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    pa, pb = promote_integers([a, b])
    return pa / pb


def relative_jump(trace):
    """(right - left) / data_jump, or None when the data jump is zero."""
    if trace.data_jump == 0:
        return None
    return _divide(trace.jump, trace.data_jump)


def _verdict_exact(left, right, d):
    jump = right - left
    if d == 0:
        if jump == 0:
            return "Continuous", None
        return "VIOLATION", None
    ratio = _divide(jump, d)
    if jump == 0:
        return "Continuous", ratio
    if ratio < 0:
        return "VIOLATION", ratio
    return "SameSign", ratio


def _verdict_float(left, right, d):
    jump = right - left
    scale = max(abs(left), abs(right), abs(d))
    tol = FLOAT_SIGN_TOL * scale
    if abs(jump) <= tol:
        return "Continuous", (jump / d if d != 0.0 else None)
    if d == 0.0:
        return "VIOLATION", None
    ratio = jump / d
    if ratio < 0.0:
        return "VIOLATION", ratio
    return "SameSign", ratio


def sign_report(traces):
    """Classify every trace pair and aggregate the verdicts.

    Exact scalars get strict verdicts; float scalars tolerate wrong-signed
    jumps up to FLOAT_SIGN_TOL times the local scale before flagging, so
    round-off is not reported as a violation.
    """
    verdicts = []
    ratios = []
    violations = 0
    max_ratio = None
    for t in traces:
        approximate = is_float_data((t.left, t.right, t.data_jump))
        judge = _verdict_float if approximate else _verdict_exact
        verdict, ratio = judge(t.left, t.right, t.data_jump)
        verdicts.append(verdict)
        ratios.append(ratio)
        if verdict == "VIOLATION":
            violations += 1
        if ratio is not None and (max_ratio is None or ratio > max_ratio):
            max_ratio = ratio
    return SignReport(tuple(verdicts), tuple(ratios), violations, max_ratio)


# ---- Telescoped jump oracles ----

def _offsets(signature):
    return tuple(getattr(signature, "offsets", signature))


def jump_factor_reconstruction(coords, interface, start, p):
    """Geometric factor of one telescoped-jump summand (reconstruction).

    The factor is (X[start+p+1] - X[start]) times the product of
    (X[interface] - X[start+m+1]) over m = 0..p-1, skipping the zero
    factor where start+m+1 equals the interface itself.
    """
    X = promote_integers(list(coords))
    prod = X[start + p + 1] - X[start]
    for m in range(p):
        idx = start + m + 1
        if idx != interface:
            prod = prod * (X[interface] - X[idx])
    return prod


def jump_factor_interpolation(coords, midpoint, start, p):
    """Geometric factor of one telescoped-jump summand (interpolation).

    The factor is (X[start+p] - X[start]) times the product of
    (xm - X[start+m]) over m = 1..p-1, where xm is the midpoint of
    X[midpoint] and X[midpoint+1]; xm is never a node, so nothing skips.
    """
    X = promote_integers(list(coords))
    xm = halfway(X[midpoint], X[midpoint + 1])
    prod = X[start + p] - X[start]
    for m in range(1, p):
        prod = prod * (xm - X[start + m])
    return prod


def telescoped_terms_reconstruction(primitive, left_signature, right_signature,
                                    interface, p, table=None):
    """Summands of the telescoped jump at one interface, left to right.

    Each summand is an order-(p+1) divided difference of the primitive
    times its geometric factor. The sum runs between the leftmost points
    of the two final stencils; identical stencils give no summands. When
    the right stencil starts left of the left one (possible only for
    hand-crafted signatures), the summands flip sign.
    """
    if table is None:
        table = divided_difference_table(primitive.nodes, primitive.values,
                                         max_order=p + 1)
    X = table.points
    lo = (interface - 1) + _offsets(left_signature)[-1]
    hi = interface + _offsets(right_signature)[-1] - 1
    sign = 1
    if lo > hi + 1:
        lo, hi, sign = hi + 1, lo - 1, -1
    if lo <= hi and (lo < 0 or hi + p + 1 > len(X) - 1):
        raise StencilOutOfRange(
            f"telescoped sum needs points {lo}..{hi + p + 1}; have 0..{len(X) - 1}"
        )
    terms = []
    for a in range(lo, hi + 1):
        prod = X[a + p + 1] - X[a]
        for m in range(p):
            idx = a + m + 1
            if idx != interface:
                prod = prod * (X[interface] - X[idx])
        term = table.entry(p + 1, a) * prod
        terms.append(term if sign == 1 else -term)
    return terms


def telescoped_jump_reconstruction(primitive, left_signature, right_signature,
                                   interface, p, table=None):
    """Jump of the two one-sided traces at an interface, telescoped form.

    Equals right trace minus left trace without ever evaluating the two
    polynomials; exactly so in the exact backend.
    """
    total = 0
    for term in telescoped_terms_reconstruction(
            primitive, left_signature, right_signature, interface, p, table):
        total = total + term
    return total


def telescoped_terms_interpolation(field, left_signature, right_signature,
                                   midpoint, p, table=None):
    """Summands of the telescoped jump at one node midpoint, left to right.

    Each summand is an order-p divided difference of the values times its
    geometric factor; `midpoint` is the index of the node to the left of
    the evaluation point.
    """
    if table is None:
        table = divided_difference_table(field.nodes, field.values, max_order=p)
    X = table.points
    xm = halfway(X[midpoint], X[midpoint + 1])
    lo = midpoint + _offsets(left_signature)[-1]
    hi = midpoint + _offsets(right_signature)[-1]
    sign = 1
    if lo > hi + 1:
        lo, hi, sign = hi + 1, lo - 1, -1
    if lo <= hi and (lo < 0 or hi + p > len(X) - 1):
        raise StencilOutOfRange(
            f"telescoped sum needs points {lo}..{hi + p}; have 0..{len(X) - 1}"
        )
    terms = []
    for a in range(lo, hi + 1):
        prod = X[a + p] - X[a]
        for m in range(1, p):
            prod = prod * (xm - X[a + m])
        term = table.entry(p, a) * prod
        terms.append(term if sign == 1 else -term)
    return terms


def telescoped_jump_interpolation(field, left_signature, right_signature,
                                  midpoint, p, table=None):
    """Jump of the two one-sided traces at a node midpoint, telescoped form."""
    total = 0
    for term in telescoped_terms_interpolation(
            field, left_signature, right_signature, midpoint, p, table):
        total = total + term
    return total


# ---- Bound constants ----

@dataclass(frozen=True)
class BoundTable:
    """Per-offset constants and the aggregated jump bound at one position.

    `constants` holds the order-`order` constants for the offsets
    -order+1..0, leftmost first; `bound` is the aggregated relative-jump
    bound at `position` (an interface index for reconstruction, the left
    node index of a midpoint for interpolation). All entries are exact
    rationals.
    """

    kind: str
    order: int
    position: int
    constants: tuple
    bound: object


def _coordinates(mesh):
    if hasattr(mesh, "interfaces"):
        return mesh.interfaces
    if hasattr(mesh, "nodes"):
        return mesh.nodes
    return list(mesh)


def _recursive_constants(X, anchor, p, shift):
    """Constant triangle around `anchor`; stage-1 entries are all 1.

    `shift` is -1 for reconstruction (denominators span one extra gap to
    the left) and 0 for interpolation.
    """
    two = EXACT.convert(2)
    C = {(k, 1): EXACT.convert(1) for k in range(-p + 1, p)}
    for j in range(1, p):
        for k in range(-p + 1, p - j):
            den = X[anchor + k + j + 1] - X[anchor + k + shift]
            C[(k, j + 1)] = two / den * max(C[(k, j)], C[(k + 1, j)])
    return C


def _recon_bound_at(X, iota, p):
    C = _recursive_constants(X, iota, p, -1)
    total = EXACT.convert(0)
    for k in range(-p + 1, 1):
        prod = EXACT.convert(1)
        for m in range(p):
            if k + m != 0:
                prod = prod * (X[iota] - X[iota + k + m])
        total = total + C[(k, p)] * abs((X[iota + k + p] - X[iota + k - 1]) * prod)
    constants = tuple(C[(k, p)] for k in range(-p + 1, 1))
    return constants, total / (X[iota + 1] - X[iota - 1])


def _interp_bound_at(X, nu, p):
    c = _recursive_constants(X, nu, p, 0)
    xm = halfway(X[nu], X[nu + 1])
    total = EXACT.convert(0)
    for r in range(-p + 1, 1):
        prod = EXACT.convert(1)
        for m in range(1, p):
            prod = prod * (xm - X[nu + r + m])
        total = total + c[(r, p)] * abs((X[nu + r + p] - X[nu + r]) * prod)
    constants = tuple(c[(r, p)] for r in range(-p + 1, 1))
    return constants, total / (X[nu + 1] - X[nu])


def _valid_positions(kind, p, last):
    if kind == "reconstruction":
        return p, last - p
    return p - 1, last - p


def bound_constants_recursive(mesh, p, kind="reconstruction", position=None):
    """Recursive jump-bound constants anchored at one mesh position.

    Args:
        mesh: Mesh, point-value field, or plain coordinate sequence.
        p: order, >= 1.
        kind: "reconstruction" or "interpolation".
        position: interface index (reconstruction) or left node index of
            the midpoint (interpolation); defaults to the middle of the
            admissible range.

    Returns:
        BoundTable; all scalars exact rationals regardless of input type.

    Raises:
        StencilOutOfRange: the position's window leaves the coordinates.
    """
    if p < 1:
        raise ValueError("order must be >= 1")
    if kind not in ("reconstruction", "interpolation"):
        raise ValueError(f"unknown kind {kind!r}")
    X = [EXACT.convert(x) for x in _coordinates(mesh)]
    lo, hi = _valid_positions(kind, p, len(X) - 1)
    if lo > hi:
        raise StencilOutOfRange(
            f"no order-{p} {kind} window fits on {len(X)} coordinates"
        )
    if position is None:
        position = (lo + hi) // 2
    if not lo <= position <= hi:
        raise StencilOutOfRange(
            f"position {position} outside the admissible range {lo}..{hi}"
        )
    at = _recon_bound_at if kind == "reconstruction" else _interp_bound_at
    constants, bound = at(X, position, p)
    return BoundTable(kind, p, position, constants, bound)


def bound_Cp(mesh, p):
    """Mesh-specific relative-jump bound for reconstruction from averages.

    Maximum of the aggregated bound over every admissible interface, as an
    exact rational.
    """
    X = [EXACT.convert(x) for x in _coordinates(mesh)]
    lo, hi = _valid_positions("reconstruction", p, len(X) - 1)
    if lo > hi:
        raise StencilOutOfRange(
            f"no order-{p} reconstruction window fits on {len(X)} coordinates"
        )
    best = None
    for iota in range(lo, hi + 1):
        _, b = _recon_bound_at(X, iota, p)
        if best is None or b > best:
            best = b
    return best


def bound_cp(mesh, p):
    """Mesh-specific relative-jump bound for interpolation of point values.

    Maximum of the aggregated bound over every admissible midpoint, as an
    exact rational.
    """
    X = [EXACT.convert(x) for x in _coordinates(mesh)]
    lo, hi = _valid_positions("interpolation", p, len(X) - 1)
    if lo > hi:
        raise StencilOutOfRange(
            f"no order-{p} interpolation window fits on {len(X)} coordinates"
        )
    best = None
    for nu in range(lo, hi + 1):
        _, b = _interp_bound_at(X, nu, p)
        if best is None or b > best:
            best = b
    return best


def uniform_bound_Cp(p):
    """Closed-form reconstruction bound on a uniform mesh, exact rational."""
    if p < 1:
        raise ValueError("order must be >= 1")
    total = sum(factorial(k) * factorial(p - k - 1) for k in range(p))
    return EXACT.convert(2 ** (p - 1) * total) / EXACT.convert(factorial(p))


def uniform_bound_cp(p):
    """Closed-form interpolation bound on uniform nodes, exact rational."""
    if p < 1:
        raise ValueError("order must be >= 1")
    half = EXACT.convert(1) / EXACT.convert(2)
    total = EXACT.convert(0)
    for r in range(-p + 1, 1):
        prod = EXACT.convert(1)
        for m in range(1, p):
            prod = prod * abs(half - r - m)
        total = total + prod
    return EXACT.convert(2 ** (p - 1)) / EXACT.convert(factorial(p - 1)) * total
