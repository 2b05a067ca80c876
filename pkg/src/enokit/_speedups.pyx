# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float pipelines, operation-for-operation twins of _kernels."""

from libc.math cimport fabs
from libc.stdlib cimport free, malloc


cdef double* _to_doubles(object seq, Py_ssize_t n) except NULL:
    cdef double* buf = <double*>malloc(n * sizeof(double))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


def primitive_floats(interfaces, averages, double base=0.0):
    """Compensated (Neumaier) running integral of cellwise-constant data."""
    cdef Py_ssize_t n = len(averages)
    cdef double* xs = NULL
    cdef double* av = NULL
    cdef double s, comp, term, t
    cdef Py_ssize_t i
    values = [0.0] * (n + 1)
    values[0] = base
    try:
        xs = _to_doubles(interfaces, n + 1)
        av = _to_doubles(averages, n)
        s = base
        comp = 0.0
        for i in range(n):
            term = (xs[i + 1] - xs[i]) * av[i]
            t = s + term
            if fabs(s) >= fabs(term):
                comp = comp + ((s - t) + term)
            else:
                comp = comp + ((term - t) + s)
            s = t
            values[i + 1] = s + comp
    finally:
        if xs != NULL:
            free(xs)
        if av != NULL:
            free(av)
    return values


cdef void _build_levels(double* pts, double* vals, Py_ssize_t npts, int maxo,
                        double* buf, Py_ssize_t* off):
    cdef Py_ssize_t k
    cdef int j
    for k in range(npts):
        buf[off[0] + k] = vals[k]
    for j in range(1, maxo + 1):
        for k in range(npts - j):
            buf[off[j] + k] = (buf[off[j - 1] + k + 1] - buf[off[j - 1] + k]) \
                / (pts[k + j] - pts[k])


cdef Py_ssize_t* _level_offsets(Py_ssize_t npts, int maxo, Py_ssize_t* total) except NULL:
    cdef Py_ssize_t* off = <Py_ssize_t*>malloc((maxo + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t sz
    cdef int j
    if off == NULL:
        raise MemoryError()
    off[0] = 0
    for j in range(1, maxo + 1):
        sz = npts - (j - 1)
        if sz < 0:
            sz = 0
        off[j] = off[j - 1] + sz
    sz = npts - maxo
    if sz < 0:
        sz = 0
    total[0] = off[maxo] + sz
    return off


cdef void _select_c(double* buf, Py_ssize_t* off, Py_ssize_t cell, int p, int* offs):
    cdef Py_ssize_t L = cell
    cdef int j
    offs[0] = 0
    for j in range(1, p):
        if fabs(buf[off[j + 1] + L - 1]) < fabs(buf[off[j + 1] + L]):
            L -= 1
        offs[j] = <int>(L - cell)


cdef double _trace_c(double* buf, Py_ssize_t* off, double* X, Py_ssize_t cell,
                     int* offs, int p, Py_ssize_t q):
    cdef double total = buf[off[1] + cell]
    cdef double coef, prod
    cdef Py_ssize_t start, idx
    cdef int j
    for j in range(2, p + 1):
        coef = buf[off[j] + cell + offs[j - 1]]
        start = cell + offs[j - 2]
        prod = 1.0
        for idx in range(start, start + j):
            if idx != q:
                prod = prod * (X[q] - X[idx])
        total = total + coef * prod
    return total


def recon_traces(interfaces, averages, int p, double base=0.0):
    """Per-cell signatures and one-sided traces at the interior interfaces.

    Returns (signatures, vminus, vplus): signatures for cells
    p-1..ncells-p, traces for interfaces p..ncells-p.
    """
    cdef Py_ssize_t n = len(averages)
    cdef Py_ssize_t npts = n + 1
    cdef Py_ssize_t nsig = n - 2 * p + 2
    cdef double* xs = NULL
    cdef double* av = NULL
    cdef double* V = NULL
    cdef double* buf = NULL
    cdef Py_ssize_t* off = NULL
    cdef int* sig_buf = NULL
    cdef Py_ssize_t total, i, c, iota
    cdef double s, comp, term, t
    cdef int j
    if nsig < 0:
        nsig = 0
    sigs = []
    vminus = []
    vplus = []
    try:
        xs = _to_doubles(interfaces, npts)
        av = _to_doubles(averages, n)
        V = <double*>malloc(npts * sizeof(double))
        if V == NULL:
            raise MemoryError()
        V[0] = base
        s = base
        comp = 0.0
        for i in range(n):
            term = (xs[i + 1] - xs[i]) * av[i]
            t = s + term
            if fabs(s) >= fabs(term):
                comp = comp + ((s - t) + term)
            else:
                comp = comp + ((term - t) + s)
            s = t
            V[i + 1] = s + comp
        off = _level_offsets(npts, p, &total)
        buf = <double*>malloc(total * sizeof(double))
        if buf == NULL:
            raise MemoryError()
        _build_levels(xs, V, npts, p, buf, off)
        if nsig > 0:
            sig_buf = <int*>malloc(nsig * p * sizeof(int))
            if sig_buf == NULL:
                raise MemoryError()
        for c in range(p - 1, n - p + 1):
            _select_c(buf, off, c, p, sig_buf + (c - (p - 1)) * p)
            sigs.append(tuple([sig_buf[(c - (p - 1)) * p + j] for j in range(p)]))
        for iota in range(p, n - p + 1):
            vminus.append(_trace_c(buf, off, xs, iota - 1,
                                   sig_buf + (iota - p) * p, p, iota))
            vplus.append(_trace_c(buf, off, xs, iota,
                                  sig_buf + (iota - p + 1) * p, p, iota))
    finally:
        if xs != NULL:
            free(xs)
        if av != NULL:
            free(av)
        if V != NULL:
            free(V)
        if buf != NULL:
            free(buf)
        if off != NULL:
            free(off)
        if sig_buf != NULL:
            free(sig_buf)
    return sigs, vminus, vplus


cdef void _iselect_c(double* buf, Py_ssize_t* off, Py_ssize_t node, int p, int* offs):
    cdef Py_ssize_t L = node
    cdef int j
    offs[0] = 0
    for j in range(1, p):
        if fabs(buf[off[j] + L - 1]) < fabs(buf[off[j] + L]):
            L -= 1
        offs[j] = <int>(L - node)


cdef double _ieval_c(double* buf, Py_ssize_t* off, double* nodes, Py_ssize_t node,
                     int* offs, int p, double x):
    cdef double total = buf[off[0] + node]
    cdef double coef, prod
    cdef Py_ssize_t start, idx
    cdef int j
    for j in range(2, p + 1):
        coef = buf[off[j - 1] + node + offs[j - 1]]
        start = node + offs[j - 2]
        prod = 1.0
        for idx in range(start, start + j - 1):
            prod = prod * (x - nodes[idx])
        total = total + coef * prod
    return total


def interp_traces(nodes, values, int p):
    """Per-node signatures and one-sided traces at the interior midpoints.

    Returns (signatures, wminus, wplus): signatures for nodes
    p-1..len-p, traces at midpoints between nodes nu and nu+1 for
    nu = p-1..len-p-1.
    """
    cdef Py_ssize_t n = len(values)
    cdef Py_ssize_t nsig = n - 2 * p + 2
    cdef double* xs = NULL
    cdef double* vv = NULL
    cdef double* buf = NULL
    cdef Py_ssize_t* off = NULL
    cdef int* sig_buf = NULL
    cdef Py_ssize_t total, i, nu
    cdef double xm
    cdef int j
    if nsig < 0:
        nsig = 0
    sigs = []
    wminus = []
    wplus = []
    try:
        xs = _to_doubles(nodes, n)
        vv = _to_doubles(values, n)
        off = _level_offsets(n, p - 1, &total)
        buf = <double*>malloc(total * sizeof(double))
        if buf == NULL:
            raise MemoryError()
        _build_levels(xs, vv, n, p - 1, buf, off)
        if nsig > 0:
            sig_buf = <int*>malloc(nsig * p * sizeof(int))
            if sig_buf == NULL:
                raise MemoryError()
        for i in range(p - 1, n - p + 1):
            _iselect_c(buf, off, i, p, sig_buf + (i - (p - 1)) * p)
            sigs.append(tuple([sig_buf[(i - (p - 1)) * p + j] for j in range(p)]))
        for nu in range(p - 1, n - p):
            xm = (xs[nu] + xs[nu + 1]) / 2
            wminus.append(_ieval_c(buf, off, xs, nu,
                                   sig_buf + (nu - (p - 1)) * p, p, xm))
            wplus.append(_ieval_c(buf, off, xs, nu + 1,
                                  sig_buf + (nu - (p - 1) + 1) * p, p, xm))
    finally:
        if xs != NULL:
            free(xs)
        if vv != NULL:
            free(vv)
        if buf != NULL:
            free(buf)
        if off != NULL:
            free(off)
        if sig_buf != NULL:
            free(sig_buf)
    return sigs, wminus, wplus
