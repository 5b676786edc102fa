import logging
from math import comb
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import invertible_matrices
from strengthlab.errors import DegreeMismatch, ZeroSectionError
from strengthlab.multiplication import (
    build_mult_map,
    compare_koszul,
    image_dim,
    koszul_formula_dim,
    koszul_h_values,
    random_linear_subspace,
)
from strengthlab.poly import LinearChange, apply_change, parse_poly


def W(texts, nv=3):
    return [parse_poly(t, nv) for t in texts]


def test_two_coordinates_on_the_plane():
    mmap = build_mult_map(W(["x0", "x1"]), 2)
    assert mmap.shape == (6, 6)
    assert image_dim(mmap) == 5


def test_single_form_on_the_line():
    assert image_dim(build_mult_map(W(["x0"], 2), 2)) == 2


def test_all_linear_forms_surject():
    assert image_dim(build_mult_map(W(["x0", "x1", "x2"]), 2)) == 6


@pytest.mark.parametrize("d", range(2, 8))
def test_pencil_of_lines_formula(d):
    rank = image_dim(build_mult_map(W(["x0", "x1"]), d))
    assert rank == d * (d + 3) // 2 == koszul_formula_dim(2, koszul_h_values(2, 2, d))


def test_non_spanning_quadrics_only_rank():
    mmap = build_mult_map(W(["x0^2", "x0*x1"]), 4)
    # x0 times the cubic monomials divisible by x0 or x1: all ten but x2^3
    assert image_dim(mmap) == 9


def test_koszul_formula_examples():
    assert koszul_formula_dim(1, [7]) == 7
    assert koszul_formula_dim(3, [3, 1, 0]) == 6
    with pytest.raises(ValueError):
        koszul_formula_dim(2, [1])


def test_column_count():
    mmap = build_mult_map(W(["x0", "x1", "x2"]), 4)
    assert mmap.shape[1] == comb(2 + 3, 2) * 3


def test_degree_errors():
    with pytest.raises(DegreeMismatch):
        build_mult_map(W(["x0"]), 1)
    with pytest.raises(DegreeMismatch):
        build_mult_map(W(["x0", "x0^2"]), 4)
    with pytest.raises(ZeroSectionError):
        build_mult_map(W(["x0 - x0"]), 3)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_image_dim_bounded(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    d = rng.randint(2, 5)
    Wb = random_linear_subspace(n, rng.randint(1, n + 1), rng, height=2)
    mmap = build_mult_map(Wb, d)
    assert image_dim(mmap) <= min(mmap.shape[1], comb(n + d, n))


@settings(max_examples=25)
@given(st.data())
def test_image_dim_invariance(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    n = data.draw(st.integers(1, 2))
    m = data.draw(st.integers(1, n + 1))
    d = data.draw(st.integers(2, 4))
    Wb = random_linear_subspace(n, m, rng, height=3)
    base = image_dim(build_mult_map(Wb, d))
    # change of basis inside W
    A = data.draw(invertible_matrices(m))
    mixed = [sum((c * w for c, w in zip(row, Wb)), Wb[0] * 0) for row in A]
    assert image_dim(build_mult_map(mixed, d)) == base
    # change of coordinates on P^n
    T = LinearChange(data.draw(invertible_matrices(n + 1)))
    assert image_dim(build_mult_map([apply_change(w, T) for w in Wb], d)) == base


def test_compare_koszul_general_subspaces():
    rng = random.Random(1)
    for n in (1, 2, 3):
        for m in range(1, n + 2):
            for d in (2, 4, 6):
                assert compare_koszul(n, m, d, rng=rng).agree


def test_compare_koszul_logs_special_samples(caplog, monkeypatch):
    import strengthlab.multiplication as mult

    monkeypatch.setattr(mult, "image_dim", lambda mmap: -1)
    with caplog.at_level(logging.WARNING):
        result = compare_koszul(1, 2, 3, rng=random.Random(0), retries=2)
    assert not result.agree and result.attempts == 3
    assert sum("non-general sample" in r.message for r in caplog.records) == 3
