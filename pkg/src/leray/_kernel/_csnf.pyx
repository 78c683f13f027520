# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of the Smith normal form kernel.

Same algorithm, same pivoting rule, same operation order as
``pure.smith_with_transforms``: the two backends must produce
bit-identical output.  Entries stay Python ints (arbitrary precision is
mandatory); the compilation removes interpreter overhead from the index
loops.
"""


def smith_with_transforms(a, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef Py_ssize_t t, limit, i, rank
    d = [list(row) for row in a]
    u = _identity(nrows)
    uinv = _identity(nrows)
    v = _identity(ncols)
    vinv = _identity(ncols)

    limit = nrows if nrows < ncols else ncols
    t = 0
    while t < limit:
        if not _clear_at(d, u, uinv, v, vinv, nrows, ncols, t):
            break
        t += 1

    rank = t
    for i in range(rank):
        if d[i][i] < 0:
            _negate_row(d, u, uinv, i, ncols)

    fixing = True
    while fixing:
        fixing = False
        for i in range(rank - 1):
            if d[i + 1][i + 1] % d[i][i]:
                _col_axpy(d, v, vinv, i, i + 1, 1, nrows)
                _clear_at(d, u, uinv, v, vinv, nrows, ncols, i)
                for j in (i, i + 1):
                    if d[j][j] < 0:
                        _negate_row(d, u, uinv, j, ncols)
                fixing = True
    return u, d, v, uinv, vinv


cdef list _identity(Py_ssize_t n):
    cdef Py_ssize_t i, j
    out = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        out.append(row)
    return out


cdef void _negate_row(list d, list u, list uinv, Py_ssize_t i, Py_ssize_t ncols):
    cdef Py_ssize_t j
    di = d[i]
    for j in range(ncols):
        di[j] = -di[j]
    ui = u[i]
    for j in range(len(ui)):
        ui[j] = -ui[j]
    for row in uinv:
        row[i] = -row[i]


cdef void _swap_rows(list d, list u, list uinv, Py_ssize_t i, Py_ssize_t t):
    d[i], d[t] = d[t], d[i]
    u[i], u[t] = u[t], u[i]
    for row in uinv:
        row[i], row[t] = row[t], row[i]


cdef void _swap_cols(list d, list v, list vinv, Py_ssize_t j, Py_ssize_t t):
    for row in d:
        row[j], row[t] = row[t], row[j]
    for row in v:
        row[j], row[t] = row[t], row[j]
    vinv[j], vinv[t] = vinv[t], vinv[j]


cdef void _row_axpy(list d, list u, list uinv, Py_ssize_t i, Py_ssize_t t,
                    c, Py_ssize_t ncols):
    cdef Py_ssize_t j
    di = d[i]
    dt = d[t]
    for j in range(ncols):
        di[j] = di[j] + c * dt[j]
    ui = u[i]
    ut = u[t]
    for j in range(len(ui)):
        ui[j] = ui[j] + c * ut[j]
    for row in uinv:
        row[t] = row[t] - c * row[i]


cdef void _col_axpy(list d, list v, list vinv, Py_ssize_t j, Py_ssize_t t,
                    c, Py_ssize_t nrows):
    cdef Py_ssize_t k
    for row in d:
        row[j] = row[j] + c * row[t]
    for row in v:
        row[j] = row[j] + c * row[t]
    vt = vinv[t]
    vj = vinv[j]
    for k in range(len(vt)):
        vt[k] = vt[k] - c * vj[k]


cdef bint _clear_at(list d, list u, list uinv, list v, list vinv,
                    Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t t):
    cdef Py_ssize_t i, j, bi, bj
    cdef bint found = False, col_clear
    best = None
    bi = t
    bj = t
    for i in range(t, nrows):
        di = d[i]
        for j in range(t, ncols):
            x = di[j]
            if x:
                ax = -x if x < 0 else x
                if best is None or ax < best:
                    best = ax
                    bi = i
                    bj = j
                    found = True
    if not found:
        return False
    if bi != t:
        _swap_rows(d, u, uinv, bi, t)
    if bj != t:
        _swap_cols(d, v, vinv, bj, t)

    while True:
        for i in range(t + 1, nrows):
            while d[i][t]:
                q = d[i][t] // d[t][t]
                if q:
                    _row_axpy(d, u, uinv, i, t, -q, ncols)
                if d[i][t]:
                    _swap_rows(d, u, uinv, i, t)
        for j in range(t + 1, ncols):
            while d[t][j]:
                q = d[t][j] // d[t][t]
                if q:
                    _col_axpy(d, v, vinv, j, t, -q, nrows)
                if d[t][j]:
                    _swap_cols(d, v, vinv, j, t)
        col_clear = True
        for i in range(t + 1, nrows):
            if d[i][t]:
                col_clear = False
                break
        if col_clear:
            break
    return True
