"""Exact integer matrix kit: Hermite and Smith normal forms, solving, kernels.

Everything works on plain lists of Python ints.  Matrices are lists of rows.
All eliminations use Euclidean reduction with immediate reduction of the
remaining entries, which keeps intermediate coefficients small enough for
the dense systems this package produces (sizes up to ~64).  The Smith form
is computed by alternating row and column Hermite passes plus the standard
divisibility fix, with both unimodular transforms tracked: lattice
membership, kernels and abelian quotient presentations all come from here.
"""

from __future__ import annotations

from .errors import InternalInvariantError


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum(c * x for c, x in zip(row, v)) for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def _row_sub(mat, dst, src, q):
    if q:
        md, ms = mat[dst], mat[src]
        for j in range(len(md)):
            md[j] -= q * ms[j]


def hermite_row(a):
    """Row Hermite form: returns (h, u, pivots) with u*a = h, u unimodular,
    h in row echelon form with positive pivots and reduced entries above
    them; pivots is the list of (row, col) pivot positions."""
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(row) for row in a]
    u = identity_matrix(m)
    pivots = []
    pr = 0
    for col in range(n):
        if pr == m:
            break
        # move the absolutely smallest nonzero entry of the column into place
        choice = None
        for i in range(pr, m):
            e = h[i][col]
            if e and (choice is None or abs(e) < abs(h[choice][col])):
                choice = i
        if choice is None:
            continue
        if choice != pr:
            h[pr], h[choice] = h[choice], h[pr]
            u[pr], u[choice] = u[choice], u[pr]
        # euclidean elimination below the pivot
        while True:
            done = True
            for i in range(pr + 1, m):
                if h[i][col]:
                    q = h[i][col] // h[pr][col]
                    _row_sub(h, i, pr, q)
                    _row_sub(u, i, pr, q)
                    if h[i][col]:
                        h[pr], h[i] = h[i], h[pr]
                        u[pr], u[i] = u[i], u[pr]
                        done = False
            if done:
                break
        if h[pr][col] < 0:
            h[pr] = [-x for x in h[pr]]
            u[pr] = [-x for x in u[pr]]
        for i in range(pr):
            q = h[i][col] // h[pr][col]
            _row_sub(h, i, pr, q)
            _row_sub(u, i, pr, q)
        pivots.append((pr, col))
        pr += 1
    return h, u, pivots


def solve_integer(a, b):
    """One integer solution x of a*x = b, or None when none exists."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n
    # column Hermite form through the transpose: u * a^T = h
    h_t, u_t, pivots = hermite_row(transpose(a))
    # a * v = h with v = u_t^T, h = h_t^T; columns of h are staircase
    y = [0] * len(h_t)
    residual = list(b)
    for prow, pcol in pivots:
        # column prow of h has its first nonzero entry in row pcol
        piv = h_t[prow][pcol]
        if residual[pcol] % piv:
            return None
        q = residual[pcol] // piv
        y[prow] = q
        if q:
            for j in range(m):
                residual[j] -= q * h_t[prow][j]
    if any(residual):
        return None
    # x = v*y = u_t^T * y
    return [sum(u_t[i][j] * y[i] for i in range(len(y))) for j in range(n)]


def kernel_basis(a):
    """Basis (list of vectors) of the integer kernel {x : a*x = 0}."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    _h_t, u_t, pivots = hermite_row(transpose(a))
    rank = len(pivots)
    return [list(u_t[i]) for i in range(rank, n)]


def _is_diagonal(d):
    for i, row in enumerate(d):
        for j, e in enumerate(row):
            if i != j and e:
                return False
    return True


def smith_normal_form(a):
    """Return (d, u, v) with u*a*v = d, u and v unimodular and d diagonal
    with non-negative entries satisfying d[0][0] | d[1][1] | ... ."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = identity_matrix(m)
    v = identity_matrix(n)
    # alternate row and column Hermite passes until diagonal
    for _ in range(4 * (m + n) + 8):
        if _is_diagonal(d):
            break
        h, w, _ = hermite_row(d)
        d = h
        u = mat_mul(w, u)
        if _is_diagonal(d):
            break
        h_t, w_t, _ = hermite_row(transpose(d))
        d = transpose(h_t)
        v = mat_mul(v, transpose(w_t))
    else:
        raise InternalInvariantError("Smith reduction did not converge")
    # compact the diagonal: move zero diagonal entries past nonzero ones
    k = min(m, n)
    nz = [i for i in range(k) if d[i][i]]
    order = nz + [i for i in range(k) if not d[i][i]]
    if order != list(range(k)):
        perm_rows = order + list(range(k, m))
        perm_cols = order + list(range(k, n))
        d = [[d[i][j] for j in perm_cols] for i in perm_rows]
        u = [u[i] for i in perm_rows]
        v_t = transpose(v)
        v_t = [v_t[j] for j in perm_cols]
        v = transpose(v_t)
    # enforce the divisibility chain
    changed = True
    guard = 0
    while changed:
        changed = False
        guard += 1
        if guard > 10 * (k + 1):
            raise InternalInvariantError("divisibility fix did not converge")
        for i in range(len(nz) - 1):
            di, dj = d[i][i], d[i + 1][i + 1]
            if di and dj % di:
                # add column i+1 to column i, then re-diagonalize 2x2 block
                for row in range(m):
                    d[row][i] += d[row][i + 1]
                for row in range(n):
                    v[row][i] += v[row][i + 1]
                sub = [[d[i][i], d[i][i + 1]], [d[i + 1][i], d[i + 1][i + 1]]]
                ds, us, vs = _smith_2x2(sub)
                _apply_2x2_rows(d, u, us, i, i + 1)
                _apply_2x2_cols(d, v, vs, i, i + 1)
                changed = True
    for i in range(k):
        if d[i][i] < 0:
            for j in range(n):
                d[i][j] = -d[i][j]
            for j in range(m):
                u[i][j] = -u[i][j]
    return d, u, v


def _smith_2x2(sub):
    """Smith form of a 2x2 integer matrix with transforms."""
    d = [list(r) for r in sub]
    u = identity_matrix(2)
    v = identity_matrix(2)

    def col_sub(j_dst, j_src, q):
        if q:
            for row in d:
                row[j_dst] -= q * row[j_src]
            for row in v:
                row[j_dst] -= q * row[j_src]

    while True:
        while d[1][0] != 0 or d[0][1] != 0:
            entries = [
                (abs(d[i][j]), i, j) for i in range(2) for j in range(2) if d[i][j]
            ]
            entries.sort()
            _, pi, pj = entries[0]
            if pi != 0:
                d[0], d[1] = d[1], d[0]
                u[0], u[1] = u[1], u[0]
            if pj != 0:
                for row in d:
                    row[0], row[1] = row[1], row[0]
                for row in v:
                    row[0], row[1] = row[1], row[0]
            if d[1][0]:
                q = d[1][0] // d[0][0]
                _row_sub(d, 1, 0, q)
                _row_sub(u, 1, 0, q)
            if d[0][1]:
                q = d[0][1] // d[0][0]
                col_sub(1, 0, q)
        if d[0][0] == 0 and d[1][1] != 0:
            d[0], d[1] = d[1], d[0]
            u[0], u[1] = u[1], u[0]
            for row in d:
                row[0], row[1] = row[1], row[0]
            for row in v:
                row[0], row[1] = row[1], row[0]
        if d[0][0] and d[1][1] % d[0][0]:
            col_sub(0, 1, -1)  # add column 1 to column 0
            continue
        break
    return d, u, v


def _apply_2x2_rows(d, u, us, i, j):
    for col in range(len(d[0])):
        a, b = d[i][col], d[j][col]
        d[i][col] = us[0][0] * a + us[0][1] * b
        d[j][col] = us[1][0] * a + us[1][1] * b
    for col in range(len(u[0])):
        a, b = u[i][col], u[j][col]
        u[i][col] = us[0][0] * a + us[0][1] * b
        u[j][col] = us[1][0] * a + us[1][1] * b


def _apply_2x2_cols(d, v, vs, i, j):
    for row in d:
        a, b = row[i], row[j]
        row[i] = a * vs[0][0] + b * vs[1][0]
        row[j] = a * vs[0][1] + b * vs[1][1]
    for row in v:
        a, b = row[i], row[j]
        row[i] = a * vs[0][0] + b * vs[1][0]
        row[j] = a * vs[0][1] + b * vs[1][1]


def invariant_factors(a):
    """Diagonal of the Smith form, including any 1s, excluding zeros."""
    d, _, _ = smith_normal_form(a)
    out = []
    for k in range(min(len(d), len(d[0]) if d else 0)):
        if d[k][k]:
            out.append(d[k][k])
    return out


def abelian_quotient(relations, n):
    """Structure of Z^n / <relations> (relations: list of length-n vectors).

    Returns (factors, coord_map): factors lists the orders of the cyclic
    summands (0 for an infinite summand, entries 1 dropped), and
    coord_map(x) gives coordinates of a vector in those summands.
    """
    factors, coord_map, _section = abelian_quotient_with_section(relations, n)
    return factors, coord_map


def abelian_quotient_with_section(relations, n):
    """Like abelian_quotient, plus a section mapping coordinates back to a
    representative vector in Z^n.

    The relation lattice is the column span of relations^T; with
    u * relations^T * v = d diagonal, a vector x lies in the lattice iff
    u*x does in the diagonal lattice, so u provides the coordinates and
    u^-1 the section.
    """
    if not relations:
        factors = [0] * n
        return factors, (lambda x: list(x)), (lambda c: list(c))
    cols = transpose(relations)  # n x m, columns generate the lattice
    m = len(relations)
    d, u, _v = smith_normal_form(cols)
    uinv = invert_unimodular(u)
    diag = [d[k][k] if k < m and k < n else 0 for k in range(n)]
    keep = [k for k in range(n) if diag[k] != 1]
    factors = [diag[k] for k in keep]

    def coord_map(x):
        y = mat_vec(u, x)
        return [y[k] % diag[k] if diag[k] else y[k] for k in keep]

    def section(coords):
        y = [0] * n
        for c, k in zip(coords, keep):
            y[k] = c
        return mat_vec(uinv, y)

    return factors, coord_map, section


def invert_unimodular(m):
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    h, u, pivots = hermite_row(m)
    if len(pivots) != n or any(h[i][i] != 1 for i in range(n)):
        raise InternalInvariantError("matrix is not unimodular")
    # u*m = I
    return u
