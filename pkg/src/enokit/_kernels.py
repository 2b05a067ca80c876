"""Float pipelines with an optional compiled fast path.

The pure-Python functions here are the reference implementation. The
compiled extension (enokit._speedups) reproduces them operation for
operation, so the two paths return bitwise-identical floats; the test
suite asserts this. Set ENOKIT_PURE=1 before import to ignore the
extension.
"""

import os


def primitive_floats_py(interfaces, averages, base=0.0):
    """Compensated (Neumaier) running integral of cellwise-constant data."""
    values = [0.0] * (len(averages) + 1)
    values[0] = base
    s = base
    comp = 0.0
    for i in range(len(averages)):
        term = (interfaces[i + 1] - interfaces[i]) * averages[i]
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        values[i + 1] = s + comp
    return values


def dd_levels_floats_py(points, values, max_order):
    """Divided-difference levels 0..max_order as lists of floats."""
    levels = [list(values)]
    n = len(points)
    for j in range(1, max_order + 1):
        prev = levels[j - 1]
        cur = [0.0] * (n - j)
        for k in range(n - j):
            cur[k] = (prev[k + 1] - prev[k]) / (points[k + j] - points[k])
        levels.append(cur)
    return levels


def _select(levels, cell, p):
    L = cell
    offs = [0] * p
    for j in range(1, p):
        if abs(levels[j + 1][L - 1]) < abs(levels[j + 1][L]):
            L -= 1
        offs[j] = L - cell
    return tuple(offs)


def _trace(levels, X, cell, offs, q):
    total = levels[1][cell]
    for j in range(2, len(offs) + 1):
        coef = levels[j][cell + offs[j - 1]]
        start = cell + offs[j - 2]
        prod = 1.0
        for idx in range(start, start + j):
            if idx != q:
                prod *= X[q] - X[idx]
        total += coef * prod
    return total


def recon_traces_py(interfaces, averages, p, base=0.0):
    """Per-cell signatures and one-sided traces at the interior interfaces.

    Returns (signatures, vminus, vplus): signatures for cells
    p-1..ncells-p, traces for interfaces p..ncells-p.
    """
    n = len(averages)
    V = primitive_floats_py(interfaces, averages, base)
    levels = dd_levels_floats_py(interfaces, V, p)
    sigs = [_select(levels, c, p) for c in range(p - 1, n - p + 1)]
    vminus = []
    vplus = []
    for iota in range(p, n - p + 1):
        vminus.append(_trace(levels, interfaces, iota - 1, sigs[iota - p], iota))
        vplus.append(_trace(levels, interfaces, iota, sigs[iota - p + 1], iota))
    return sigs, vminus, vplus


def _iselect(levels, node, p):
    L = node
    offs = [0] * p
    for j in range(1, p):
        if abs(levels[j][L - 1]) < abs(levels[j][L]):
            L -= 1
        offs[j] = L - node
    return tuple(offs)


def _ieval(levels, nodes, node, offs, x):
    total = levels[0][node]
    for j in range(2, len(offs) + 1):
        coef = levels[j - 1][node + offs[j - 1]]
        start = node + offs[j - 2]
        prod = 1.0
        for idx in range(start, start + j - 1):
            prod *= x - nodes[idx]
        total += coef * prod
    return total


def interp_traces_py(nodes, values, p):
    """Per-node signatures and one-sided traces at the interior midpoints.

    Returns (signatures, wminus, wplus): signatures for nodes
    p-1..len-p, traces at midpoints between nodes nu and nu+1 for
    nu = p-1..len-p-1.
    """
    n = len(values)
    levels = dd_levels_floats_py(nodes, values, p - 1)
    sigs = [_iselect(levels, i, p) for i in range(p - 1, n - p + 1)]
    wminus = []
    wplus = []
    for nu in range(p - 1, n - p):
        xm = (nodes[nu] + nodes[nu + 1]) / 2
        wminus.append(_ieval(levels, nodes, nu, sigs[nu - p + 1], xm))
        wplus.append(_ieval(levels, nodes, nu + 1, sigs[nu - p + 2], xm))
    return sigs, wminus, wplus


if os.environ.get("ENOKIT_PURE") == "1":
    _ext = None
else:
    try:
        from . import _speedups as _ext
    except ImportError:
        _ext = None

HAVE_COMPILED = _ext is not None

if _ext is not None:
    primitive_floats = _ext.primitive_floats
    recon_traces = _ext.recon_traces
    interp_traces = _ext.interp_traces
else:
    primitive_floats = primitive_floats_py
    recon_traces = recon_traces_py
    interp_traces = interp_traces_py
