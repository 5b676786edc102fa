"""Line-bundle cohomology on products of projective spaces.

Each factor uses the closed formulas on P^n (sections in non-negative
degree, top cohomology in degree <= -n-1, nothing in between); products
combine factors by Künneth.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb, prod

from .errors import InvalidM


@dataclass(frozen=True)
class SpaceDescriptor:
    factor_dims: tuple

    def __post_init__(self):
        dims = tuple(int(x) for x in self.factor_dims)
        if not dims or any(x < 1 for x in dims):
            raise ValueError("factor dimensions must be a nonempty list of positive integers")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def dim(self):
        return sum(self.factor_dims)

    def __str__(self):
        return " x ".join(f"P^{n}" for n in self.factor_dims)


@dataclass(frozen=True)
class LineBundleClass:
    multidegree: tuple

    def __post_init__(self):
        object.__setattr__(self, "multidegree", tuple(int(x) for x in self.multidegree))

    def __mul__(self, other):
        return LineBundleClass(tuple(a + b for a, b in zip(self.multidegree, other.multidegree)))

    def __pow__(self, k):
        return LineBundleClass(tuple(a * k for a in self.multidegree))

    def is_trivial(self):
        return not any(self.multidegree)


def _check(space, bundle):
    if len(bundle.multidegree) != len(space.factor_dims):
        raise ValueError("multidegree length differs from the number of factors")


@lru_cache(maxsize=None)
def h_projective(n, k, i):
    """h^i(P^n, O(k))."""
    if i == 0:
        return comb(n + k, n) if k >= 0 else 0
    if i == n:
        return comb(-k - 1, n) if k <= -n - 1 else 0
    return 0


def h_twist(space, bundle, i):
    _check(space, bundle)
    if i < 0 or i > space.dim:
        return 0
    dims = space.factor_dims
    total = 0
    # only degrees 0 and n_j contribute on each factor
    for choice in product(*[(0, n) for n in dims]):
        if sum(choice) != i:
            continue
        total += prod(h_projective(n, k, c) for n, k, c in zip(dims, bundle.multidegree, choice))
    return total


def cohomology_table(space, bundle):
    return {i: h_twist(space, bundle, i) for i in range(space.dim + 1)}


def euler_characteristic(space, bundle):
    return sum((-1) ** i * h for i, h in cohomology_table(space, bundle).items())


@dataclass
class X3Check:
    m: int
    vanishings: list = field(default_factory=list)  # (k, twist exponent, degree i, value)
    quotient_nontrivial: bool = True

    @property
    def holds(self):
        return self.quotient_nontrivial and all(v == 0 for (_, _, _, v) in self.vanishings)

    def to_json(self):
        return {
            "m": self.m,
            "holds": self.holds,
            "quotient_nontrivial": self.quotient_nontrivial,
            "vanishings": [
                {"k": k, "power": p, "i": i, "h": v} for (k, p, i, v) in self.vanishings
            ],
        }


def validate_M(space, M):
    _check(space, M)
    if M.is_trivial():
        raise InvalidM("M must be nontrivial")
    if any(a < 0 for a in M.multidegree):
        raise InvalidM("M must be globally generated (all multidegree entries >= 0)")
    if h_twist(space, M, 0) == 0:
        raise InvalidM("M has no sections")


def x3_hypotheses(space, M, L):
    """Evaluate every vanishing the Koszul bound needs, for the maximal m."""
    validate_M(space, M)
    _check(space, L)
    m = min(space.dim + 1, h_twist(space, M, 0))
    return x3_hypotheses_for(space, M, L, m)


def x3_hypotheses_for(space, M, L, m):
    """Same checks for a given m (for instance m = dim W of a chosen subspace)."""
    check = X3Check(m)
    check.quotient_nontrivial = L.multidegree != M.multidegree
    for k in range(1, m):
        for p in (k, k + 1):
            twist = L * (M ** (-p))
            check.vanishings.append((k, p, k, h_twist(space, twist, k)))
    twist = L * (M ** (-m))
    check.vanishings.append((m, m, m, h_twist(space, twist, m)))
    return check


def x3_bound(space, M, L):
    """The strength bound m when all hypotheses hold, else None.

    A bound is only returned when L differs from M: otherwise the cofactor
    bundle is trivial and the products are not genuine factorizations.
    """
    check = x3_hypotheses(space, M, L)
    return check.m if check.holds else None
