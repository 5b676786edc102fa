"""Quadratic forms over Q: rank, signature and real decompositions.

Over the closure a quadric of rank r is a sum of ceil(r/2) products of
linear forms.  Over R the diagonal form is split into hyperbolic pairs
c_a y_a^2 + c_b y_b^2 = c_a (y_a - s y_b)(y_a + s y_b), s = sqrt(-c_b/c_a),
plus leftover squares; the square roots live in Q(sqrt N) and are carried
exactly as pairs (p, q) meaning p + q sqrt(N).
"""

from dataclasses import dataclass, field
from math import isqrt

from gmpy2 import mpq

from .errors import CertificateError, ZeroSectionError
from .field import ZERO, ONE, is_real, to_field
from .poly import HomogeneousPolynomial


def _mpq_matrix(gram):
    rows = [[to_field(c) for c in r] for r in gram]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("Gram matrix must be square and nonempty")
    for r in rows:
        for c in r:
            if not is_real(c):
                raise ValueError("Gram matrix must be real")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    return [[mpq(c) for c in r] for r in rows]


def diagonalize(gram):
    """Congruence diagonalization: returns [(c_k, y_k)] with G = sum c_k y_k y_k^T.

    ``y_k`` are coefficient vectors of linearly independent linear forms.
    """
    g = [list(r) for r in gram]
    n = len(g)
    out = []

    def subtract(c, u, v=None):
        # G -= c * (u u^T)  or  c * (u v^T + v u^T)
        for a in range(n):
            for b in range(n):
                g[a][b] -= c * (u[a] * u[b] if v is None else u[a] * v[b] + v[a] * u[b])

    while True:
        i = next((k for k in range(n) if g[k][k]), None)
        if i is not None:
            c = g[i][i]
            y = [g[i][j] / c for j in range(n)]
            out.append((c, y))
            subtract(c, y)
            continue
        pair = next(((a, b) for a in range(n) for b in range(a + 1, n) if g[a][b]), None)
        if pair is None:
            return out
        a, b = pair
        gab = g[a][b]
        ra = list(g[a])
        rb = list(g[b])
        # 2 ra.x rb.x / gab = ((ra+rb).x)^2 / (2 gab) - ((ra-rb).x)^2 / (2 gab)
        subtract(1 / gab, ra, rb)
        out.append((1 / (2 * gab), [x + y for x, y in zip(ra, rb)]))
        out.append((-1 / (2 * gab), [x - y for x, y in zip(ra, rb)]))


@dataclass
class QuadraticForm:
    gram: list
    rank: int = field(init=False)
    signature: tuple = field(init=False)
    diagonal: list = field(init=False, repr=False)

    def __post_init__(self):
        self.gram = _mpq_matrix(self.gram)
        self.diagonal = diagonalize(self.gram)
        p = sum(1 for c, _ in self.diagonal if c > 0)
        q = sum(1 for c, _ in self.diagonal if c < 0)
        self.rank = p + q
        self.signature = (p, q)

    @property
    def size(self):
        return len(self.gram)

    def is_zero(self):
        return all(not c for r in self.gram for c in r)

    @classmethod
    def from_polynomial(cls, f):
        if f.degree != 2:
            raise ValueError("a quadratic form has degree 2")
        if not f.is_real():
            raise ValueError("quadratic form must have real coefficients")
        n = f.num_vars
        g = [[ZERO] * n for _ in range(n)]
        for e, c in f.items():
            idx = [j for j, x in enumerate(e) for _ in range(x)]
            a, b = idx
            if a == b:
                g[a][a] = mpq(c)
            else:
                g[a][b] = g[b][a] = mpq(c) / 2
        return cls(g)

    def to_polynomial(self):
        n = self.size
        terms = {}
        for a in range(n):
            for b in range(a, n):
                c = self.gram[a][b] if a == b else 2 * self.gram[a][b]
                if c:
                    e = [0] * n
                    e[a] += 1
                    e[b] += 1
                    terms[tuple(e)] = c
        return HomogeneousPolynomial._raw(n, 2, terms)


def quadratic_strength(Q):
    if Q.is_zero():
        raise ZeroSectionError("zero quadratic form")
    return (Q.rank + 1) // 2


def real_one_term_possible(Q):
    """A single real product l*m has rank 1, or rank 2 with signature (1, 1)."""
    return Q.rank == 1 or (Q.rank == 2 and Q.signature == (1, 1))


# --------------------------------------------------------------------------
# exact real certificates


def _squarefree_split(n):
    """n = k^2 * r with r squarefree; returns (k, r)."""
    k = 1
    r = n
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            k *= p
        p += 1
    return k, r


def surd_sqrt(x):
    """sqrt(x) for positive rational x as (coefficient, radicand): c * sqrt(N)."""
    x = mpq(x)
    num, den = int(x.numerator), int(x.denominator)
    k, r = _squarefree_split(num * den)
    return mpq(k, den), r


def _s_mul(a, b, N):
    return (a[0] * b[0] + N * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


@dataclass
class SurdPair:
    radicand: int
    f: list  # per variable (p, q) meaning p + q sqrt(radicand)
    g: list

    def gram_contribution(self):
        n = len(self.f)
        N = self.radicand
        out = [[(ZERO, ZERO)] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                x = _s_mul(self.f[a], self.g[b], N)
                y = _s_mul(self.f[b], self.g[a], N)
                out[a][b] = ((x[0] + y[0]) / 2, (x[1] + y[1]) / 2)
        return out

    def to_json(self):
        enc = lambda v: [[str(p), str(q)] for p, q in v]
        return {"radicand": self.radicand, "f": enc(self.f), "g": enc(self.g)}


@dataclass
class RealQuadraticCertificate:
    gram: list
    pairs: list

    def verify(self):
        n = len(self.gram)
        total = [[ZERO] * n for _ in range(n)]
        for pair in self.pairs:
            contrib = pair.gram_contribution()
            for a in range(n):
                for b in range(n):
                    rat, irr = contrib[a][b]
                    if irr:
                        return False
                    total[a][b] += rat
        return total == [[mpq(c) for c in r] for r in self.gram]

    @property
    def length(self):
        return len(self.pairs)

    def to_json(self):
        return {"pairs": [p.to_json() for p in self.pairs], "verified": self.verify()}


@dataclass
class RealStrengthBounds:
    lower: int
    upper: int
    certificate: RealQuadraticCertificate

    def to_json(self):
        return {"lower": self.lower, "upper": self.upper, "certificate": self.certificate.to_json()}


def quadratic_real_strength_bounds(Q):
    """(ceil(r/2), max(p, q)) with an exact certificate of length max(p, q)."""
    if Q.is_zero():
        raise ZeroSectionError("zero quadratic form")
    pos = [(c, y) for c, y in Q.diagonal if c > 0]
    neg = [(c, y) for c, y in Q.diagonal if c < 0]
    if len(pos) < len(neg):
        big, small = neg, pos
    else:
        big, small = pos, neg
    pairs = []
    for (ca, ya), (cb, yb) in zip(big, small):
        s, N = surd_sqrt(-cb / ca)
        if N == 1:
            fvec = [(ca * (a - s * b), ZERO) for a, b in zip(ya, yb)]
            gvec = [(a + s * b, ZERO) for a, b in zip(ya, yb)]
        else:
            fvec = [(ca * a, -ca * s * b) for a, b in zip(ya, yb)]
            gvec = [(a, s * b) for a, b in zip(ya, yb)]
        pairs.append(SurdPair(N, fvec, gvec))
    for c, y in big[len(small):]:
        pairs.append(SurdPair(1, [(c * a, ZERO) for a in y], [(a, ZERO) for a in y]))
    cert = RealQuadraticCertificate(Q.gram, pairs)
    if not cert.verify():
        raise CertificateError("real quadratic certificate failed verification")
    return RealStrengthBounds((Q.rank + 1) // 2, max(Q.signature), cert)
