"""Pure-Python Smith normal form kernel.

This is the reference implementation of the one hot loop in the package:
full SNF with unimodular transforms over arbitrary-precision integers.
A compiled twin lives in ``_csnf.pyx``; both must produce bit-identical
output (see tests/test_kernel_backends.py).
"""


def smith_with_transforms(a, nrows, ncols):
    """Diagonalize an integer matrix by unimodular row/column operations.

    ``a`` is a sequence of ``nrows`` rows, each of length ``ncols``; it is
    not mutated.  Returns ``(u, d, v, uinv, vinv)`` as lists of list rows
    with ``u @ a @ v == d``, ``u @ uinv == I``, ``v @ vinv == I``, and
    ``d`` diagonal with nonnegative entries in a divisibility chain.

    Pivoting: smallest nonzero absolute value, ties broken by lowest row
    then lowest column, so the output is deterministic.
    """
    d = [list(row) for row in a]
    u = _identity(nrows)
    uinv = _identity(nrows)
    v = _identity(ncols)
    vinv = _identity(ncols)

    limit = min(nrows, ncols)
    t = 0
    while t < limit:
        if not _clear_at(d, u, uinv, v, vinv, nrows, ncols, t):
            break
        t += 1

    rank = t
    for i in range(rank):
        if d[i][i] < 0:
            _negate_row(d, u, uinv, i, ncols)

    # Enforce the divisibility chain d_i | d_{i+1}.
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


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _negate_row(d, u, uinv, i, ncols):
    di = d[i]
    for j in range(ncols):
        di[j] = -di[j]
    ui = u[i]
    for j in range(len(ui)):
        ui[j] = -ui[j]
    for row in uinv:
        row[i] = -row[i]


def _swap_rows(d, u, uinv, i, t):
    d[i], d[t] = d[t], d[i]
    u[i], u[t] = u[t], u[i]
    for row in uinv:
        row[i], row[t] = row[t], row[i]


def _swap_cols(d, v, vinv, j, t):
    for row in d:
        row[j], row[t] = row[t], row[j]
    for row in v:
        row[j], row[t] = row[t], row[j]
    vinv[j], vinv[t] = vinv[t], vinv[j]


def _row_axpy(d, u, uinv, i, t, c, ncols):
    # row i += c * row t; inverse bookkeeping: uinv col t -= c * col i
    di, dt = d[i], d[t]
    for j in range(ncols):
        di[j] += c * dt[j]
    ui, ut = u[i], u[t]
    for j in range(len(ui)):
        ui[j] += c * ut[j]
    for row in uinv:
        row[t] -= c * row[i]


def _col_axpy(d, v, vinv, j, t, c, nrows):
    # col j += c * col t; inverse bookkeeping: vinv row t -= c * row j
    for row in d:
        row[j] += c * row[t]
    for row in v:
        row[j] += c * row[t]
    vt, vj = vinv[t], vinv[j]
    for k in range(len(vt)):
        vt[k] -= c * vj[k]


def _clear_at(d, u, uinv, v, vinv, nrows, ncols, t):
    """Pivot-select in d[t:, t:] and clear row t and column t.

    Returns False when the trailing block is entirely zero.
    """
    best = None
    for i in range(t, nrows):
        di = d[i]
        for j in range(t, ncols):
            x = di[j]
            if x:
                ax = -x if x < 0 else x
                if best is None or ax < best[0]:
                    best = (ax, i, j)
    if best is None:
        return False
    _, bi, bj = best
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
        if all(d[i][t] == 0 for i in range(t + 1, nrows)):
            break
    return True
