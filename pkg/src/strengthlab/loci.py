"""Dimension counts for complete intersections and decomposition sets in P^2."""

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
import random

from .errors import DegenerateSamples, OutOfRange
from .ideal import GradedIdeal, ideal_dim_by_rank, is_regular_sequence
from .poly import HomogeneousPolynomial, monomial_basis


@dataclass(frozen=True)
class LociQuery:
    n: int
    d: int
    type_vector: tuple

    def __post_init__(self):
        t = tuple(int(i) for i in self.type_vector)
        if not t:
            raise ValueError("type vector must be nonempty")
        if any(not 1 <= i <= self.d // 2 for i in t):
            raise OutOfRange(f"type entries must lie in [1, {self.d // 2}]")
        object.__setattr__(self, "type_vector", t)


def _check_pair(i, j):
    if not 1 <= i <= j:
        raise OutOfRange(f"need 1 <= i <= j, got ({i}, {j})")


def dim_Z(i, j):
    """Dimension of the family of complete intersections of type (i, j) in P^2."""
    _check_pair(i, j)
    if i == j:
        return i * i + 3 * i - 2
    return comb(i + 2, 2) + comb(j + 2, 2) - comb(j - i + 2, 2) - 1


def dim_Gamma(i, j, d):
    """Incidence dimension and whether it exceeds dim |O(d)|."""
    _check_pair(i, j)
    if j > d // 2:
        raise OutOfRange(f"need j <= floor(d/2), got j = {j}, d = {d}")
    value = comb(d + 2, 2) - i * j - 1 + dim_Z(i, j)
    return value, value > comb(d + 2, 2) - 1


def dim_decomposition_set(i, j):
    _check_pair(i, j)
    return dim_Z(i, j) - i * j


def enumerate_types(d, k):
    return list(combinations_with_replacement(range(1, d // 2 + 1), k))


def count_types(d, k):
    if d < 2 or k < 1:
        raise OutOfRange("need d >= 2 and k >= 1")
    value = comb(d // 2 + k - 1, k)
    if value != len(enumerate_types(d, k)):
        raise AssertionError("type count disagrees with the enumeration")
    return value


def d10i_generic_bound(n, m, d):
    """n - m + 1 when (n - m)(m + 1) < C(m + d, m), else None."""
    if not 1 <= m < n:
        raise OutOfRange(f"need 1 <= m < n, got m = {m}, n = {n}")
    if d < 4:
        raise OutOfRange("need d >= 4")
    return n - m + 1 if (n - m) * (m + 1) < comb(m + d, m) else None


def _random_form(nv, deg, rng, height):
    vec = [rng.randint(-height, height) for _ in monomial_basis(nv, deg)]
    return HomogeneousPolynomial.from_coefficients(nv, deg, vec) if any(vec) else None


def fiber_sample(i, j, rng, height=5):
    """One oracle reading, or None for a degenerate (non-regular) draw.

    Pairs (f1, f2) form an affine space of dimension C(i+2,2) + C(j+2,2); the
    pairs generating the same ideal fill (I_i) x (I_j), whose dimensions are
    read off the rank of the generator-multiplication matrices.
    """
    f1 = _random_form(3, i, rng, height)
    f2 = _random_form(3, j, rng, height)
    if f1 is None or f2 is None:
        return None
    if not is_regular_sequence([f1, f2]).is_regular:
        return None
    ideal = GradedIdeal([f1, f2])
    pairs = comb(i + 2, 2) + comb(j + 2, 2)
    return pairs - ideal_dim_by_rank(ideal, i) - ideal_dim_by_rank(ideal, j)


def fiber_dim_oracle(query, samples=5, rng=None, max_draws=None, height=5):
    """Majority vote of ``samples`` non-degenerate readings."""
    if query.n != 2:
        raise OutOfRange("the oracle lives on P^2")
    if len(query.type_vector) != 2:
        raise ValueError("the oracle needs a type (i, j)")
    i, j = sorted(query.type_vector)
    rng = rng or random.Random(0)
    max_draws = max_draws if max_draws is not None else 4 * samples
    readings = []
    draws = 0
    while len(readings) < samples and draws < max_draws:
        draws += 1
        r = fiber_sample(i, j, rng, height)
        if r is not None:
            readings.append(r)
    if not readings:
        raise DegenerateSamples(f"all {draws} draws were degenerate")
    value, _ = Counter(readings).most_common(1)[0]
    return value
