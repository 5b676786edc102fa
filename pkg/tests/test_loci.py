from math import comb
import random

import pytest

from strengthlab.errors import DegenerateSamples, OutOfRange
from strengthlab.loci import (
    LociQuery,
    count_types,
    d10i_generic_bound,
    dim_decomposition_set,
    dim_Gamma,
    dim_Z,
    enumerate_types,
    fiber_dim_oracle,
    fiber_sample,
)


def test_dim_Z_formula_values():
    assert dim_Z(2, 2) == 8
    assert dim_Z(1, 2) == 5
    assert dim_Z(1, 1) == 2


def test_dim_Gamma_values():
    assert dim_Gamma(1, 1, 4) == (15, True)
    assert dim_Gamma(2, 2, 4) == (18, True)
    assert dim_Gamma(1, 2, 5) == (23, True)


def test_dim_Gamma_exceeds_the_linear_system():
    for d in range(2, 13):
        for i in range(1, d // 2 + 1):
            for j in range(i, d // 2 + 1):
                value, exceeds = dim_Gamma(i, j, d)
                assert exceeds and value > comb(d + 2, 2) - 1


def test_decomposition_set_values():
    assert dim_decomposition_set(1, 1) == 1
    assert dim_decomposition_set(2, 2) == 4
    assert dim_decomposition_set(1, 2) == 3


def test_count_types_examples():
    assert count_types(4, 2) == 3 and enumerate_types(4, 2) == [(1, 1), (1, 2), (2, 2)]
    assert count_types(5, 1) == 2
    assert count_types(6, 3) == 10


def test_count_types_matches_enumeration():
    for d in range(2, 21):
        for k in range(1, 7):
            assert count_types(d, k) == len(enumerate_types(d, k))


def test_generic_bound_examples():
    assert d10i_generic_bound(3, 1, 4) == 3
    assert d10i_generic_bound(3, 2, 4) == 2
    assert d10i_generic_bound(5, 1, 4) is None


@pytest.mark.parametrize("i", [1, 2, 3])
def test_oracle_agrees_on_the_diagonal(i):
    assert fiber_dim_oracle(LociQuery(2, 6, (i, i)), rng=random.Random(i)) == dim_Z(i, i)


# frozen oracle readings off the diagonal (see the decisions log): the pair
# count minus both ideal pieces, e.g. length-two subschemes of P^2 for (1, 2)
@pytest.mark.parametrize("i, j, value", [(1, 2, 4), (1, 3, 5), (2, 3, 11)])
def test_oracle_off_the_diagonal(i, j, value):
    assert fiber_dim_oracle(LociQuery(2, 6, (i, j)), rng=random.Random(j)) == value
    assert value == dim_Z(i, j) - 1


def test_oracle_samples_are_stable():
    rng = random.Random(9)
    readings = {fiber_sample(2, 2, rng) for _ in range(10)} - {None}
    assert readings == {8}


def test_oracle_needs_non_degenerate_draws():
    with pytest.raises(DegenerateSamples):
        fiber_dim_oracle(LociQuery(2, 4, (1, 1)), rng=random.Random(0), height=0)


def test_oracle_scope():
    with pytest.raises(OutOfRange):
        fiber_dim_oracle(LociQuery(3, 4, (1, 1)))
    with pytest.raises(ValueError):
        fiber_dim_oracle(LociQuery(2, 4, (1,)))


def test_query_validation():
    with pytest.raises(OutOfRange):
        LociQuery(2, 4, (3,))
    with pytest.raises(ValueError):
        LociQuery(2, 4, ())
    with pytest.raises(OutOfRange):
        dim_Z(2, 1)
    with pytest.raises(OutOfRange):
        dim_Gamma(1, 3, 4)
    with pytest.raises(OutOfRange):
        count_types(1, 1)
