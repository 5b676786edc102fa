"""Multiplication maps W (x) H^0(O(d-e)) -> H^0(O(d)) and their image dimensions."""

from dataclasses import dataclass
from math import comb
import logging
import random

from .cohomology import LineBundleClass, SpaceDescriptor, h_twist
from .errors import DegreeMismatch, ZeroSectionError
from .field import ONE
from .linalg import rank, transpose
from .poly import HomogeneousPolynomial, as_poly, coefficient_vector, monomial_basis, t_mul_term

log = logging.getLogger(__name__)


@dataclass
class MultiplicationMap:
    W_basis: list
    target_degree: int
    matrix: list  # rows indexed by degree-d monomials, columns by (cofactor monomial, W element)

    @property
    def num_vars(self):
        return self.W_basis[0].num_vars

    @property
    def shape(self):
        return (len(self.matrix), len(self.matrix[0]) if self.matrix else 0)


def build_mult_map(W_basis, d):
    W = [as_poly(w) for w in W_basis]
    if not W:
        raise ValueError("W must be nonempty")
    if any(w.is_zero() for w in W):
        raise ZeroSectionError("W elements must be nonzero")
    e = W[0].degree
    nv = W[0].num_vars
    if any(w.degree != e for w in W) or any(w.num_vars != nv for w in W):
        raise DegreeMismatch("W elements must share degree and ring")
    if not 1 <= e <= d - 1:
        raise DegreeMismatch(f"need 1 <= deg W <= d - 1, got deg W = {e}, d = {d}")
    columns = []
    for mono in monomial_basis(nv, d - e):
        for w in W:
            prod = HomogeneousPolynomial._raw(nv, d, t_mul_term(w._terms, mono, ONE))
            columns.append(coefficient_vector(prod))
    return MultiplicationMap(W, d, transpose(columns))


def image_dim(mmap):
    # rank of the transpose is the same number and has fewer rows to eliminate
    return rank(transpose(mmap.matrix)) if mmap.matrix else 0


def koszul_formula_dim(m, h_values):
    h_values = list(h_values)
    if len(h_values) != m:
        raise ValueError(f"expected {m} values, got {len(h_values)}")
    return sum((-1) ** (k - 1) * comb(m, k) * h for k, h in enumerate(h_values, start=1))


def koszul_h_values(n, m, d):
    """h^0(O(d - k)) on P^n for k = 1..m (M = O(1), L = O(d))."""
    space = SpaceDescriptor((n,))
    return [h_twist(space, LineBundleClass((d - k,)), 0) for k in range(1, m + 1)]


def random_linear_subspace(n, m, rng, height=10):
    """m linearly independent linear forms on P^n with integer coefficients."""
    while True:
        rows = [[rng.randint(-height, height) for _ in range(n + 1)] for _ in range(m)]
        if rank(rows) == m:
            return [HomogeneousPolynomial.linear(r) for r in rows]


@dataclass
class KoszulComparison:
    n: int
    m: int
    d: int
    formula: int
    rank: int
    attempts: int
    W: list

    @property
    def agree(self):
        return self.formula == self.rank


def compare_koszul(n, m, d, rng=None, retries=5, height=10):
    """Sample a general W and compare the image rank with the Koszul sum.

    A mismatch is retried up to ``retries`` times (a sample can land in the
    special locus); every failed attempt is logged.
    """
    rng = rng or random.Random(0)
    formula = koszul_formula_dim(m, koszul_h_values(n, m, d))
    result = None
    for attempt in range(1, retries + 2):
        W = random_linear_subspace(n, m, rng, height)
        r = image_dim(build_mult_map(W, d))
        result = KoszulComparison(n, m, d, formula, r, attempt, W)
        if result.agree:
            return result
        log.warning("non-general sample for n=%d m=%d d=%d: rank %d vs formula %d", n, m, d, r, formula)
    return result
