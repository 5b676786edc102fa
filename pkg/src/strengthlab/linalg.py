"""Dense exact linear algebra over Q(i).

``rank`` clears denominators row by row and hands Gaussian-integer rows to
the Bareiss kernels.  The small Gauss-Jordan helpers (``rref``,
``nullspace``, ``solve``, ``inverse``) work directly on field elements and
are meant for matrices of a few dozen entries.
"""

from gmpy2 import mpq

from .errors import SingularMatrix
from .field import ONE, ZERO, GaussianRational, denominator_lcm, to_field
from .kernels import bareiss_rank_gauss, bareiss_rank_int


def _integer_rows(rows):
    """Scale each row to Gaussian integers; returns (re_rows, im_rows or None)."""
    re_rows, im_rows = [], []
    complex_seen = False
    for row in rows:
        scale = denominator_lcm(row)
        rr, ri = [], []
        for c in row:
            if isinstance(c, GaussianRational):
                complex_seen = True
                rr.append(int(c.re * scale))
                ri.append(int(c.im * scale))
            else:
                rr.append(int(c * scale))
                ri.append(0)
        re_rows.append(rr)
        im_rows.append(ri)
    return re_rows, (im_rows if complex_seen else None)


def rank(rows):
    """Exact rank of a list of equal-length rows of field elements."""
    rows = [[to_field(c) for c in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    re_rows, im_rows = _integer_rows(rows)
    if im_rows is None:
        return bareiss_rank_int(re_rows)
    return bareiss_rank_gauss(re_rows, im_rows)


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot_columns)."""
    m = [[to_field(c) for c in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, ncols=None):
    """Basis of ``{v : rows * v = 0}``."""
    if not rows:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    m, pivots = rref(rows)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of ``rows * v = rhs`` (free variables set to 0), or None."""
    aug = [list(r) + [to_field(b)] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    ncols = len(aug[0]) - 1
    if ncols in pivots:
        return None
    v = [ZERO] * ncols
    for r, p in enumerate(pivots):
        v[p] = m[r][-1]
    return v


def inverse(rows):
    n = len(rows)
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [r[n:] for r in m]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def as_mpq_matrix(rows):
    return [[mpq(c) for c in r] for r in rows]
