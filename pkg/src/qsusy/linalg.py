"""Exact dense linear algebra over a field of Scalar-like elements.

Matrices are lists of lists; vectors are lists.  Entries only need +, -, *,
/ and truthiness, so both the symbolic rational-function field and the
numeric sqrt(q) specialization work unchanged.
"""

from __future__ import annotations


class SingularMatrixError(ArithmeticError):
    pass


def zeros(r, c, field):
    z = field.zero()
    return [[z for _ in range(c)] for _ in range(r)]


def identity(n, field):
    m = zeros(n, n, field)
    one = field.one()
    for i in range(n):
        m[i][i] = one
    return m


def _zero_like(a):
    for row in a:
        for x in row:
            return x - x
    raise ValueError("cannot infer zero from an empty matrix")


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    z = _zero_like(a)
    out = []
    for i in range(n):
        row_a = a[i]
        row = [z] * m
        for t in range(k):
            x = row_a[t]
            if not x:
                continue
            row_b = b[t]
            for j in range(m):
                if row_b[j]:
                    row[j] = row[j] + x * row_b[j]
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_vec(a, v):
    z = _zero_like(a)
    out = []
    for row in a:
        acc = z
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def kron(a, b):
    ra, ca = len(a), len(a[0])
    rb, cb = len(b), len(b[0])
    out = []
    for i in range(ra):
        for k in range(rb):
            row = []
            for j in range(ca):
                for l in range(cb):
                    row.append(a[i][j] * b[k][l])
            out.append(row)
    return out


def trace(a):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_zero(a):
    return all(not x for row in a for x in row)


def rref(mat, field):
    """Reduced row echelon form (copy); returns (rows, pivot column list)."""
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.one() / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(mat, field):
    """Basis of the right nullspace of mat (rows = equations)."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [[field.one() if i == j else field.zero() for i in range(cols)]
                for j in range(cols)]
    red, pivots = rref(mat, field)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    zero, one = field.zero(), field.one()
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a, b, field):
    """Exact solution x of a·x = b, or None if inconsistent (least structure:
    returns the solution with free variables set to zero)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(ra) + [bv] for ra, bv in zip(a, b)]
    red, pivots = rref(aug, field)
    for r in range(len(red)):
        if all(not x for x in red[r][:cols]) and red[r][cols]:
            return None
    x = [field.zero()] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = red[r][cols]
    return x


def inverse(mat, field):
    n = len(mat)
    aug = [list(row) + list(idr) for row, idr in zip(mat, identity(n, field))]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red[:n]]
