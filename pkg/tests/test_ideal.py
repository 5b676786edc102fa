import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import invertible_matrices, random_form, sym_vars, to_sympy
from strengthlab.errors import DegreeMismatch, TooManyForms, ZeroSectionError
from strengthlab.ideal import (
    GradedIdeal,
    complete_intersection_quotient,
    graded_membership,
    groebner,
    hilbert_function,
    hilbert_quotient,
    ideal_dim_by_rank,
    is_reduced_basis,
    is_regular_sequence,
    membership_dense,
    solvable_over_closure,
)
from strengthlab.poly import LinearChange, parse_poly, t_substitute


def P(text, nv=3):
    return parse_poly(text, nv)


def test_groebner_examples():
    assert set(groebner(GradedIdeal([P("x0"), P("x1")]))) == {P("x0"), P("x1")}
    assert set(groebner(GradedIdeal([P("x0 - x1"), P("x1")]))) == {P("x0"), P("x1")}
    basis = groebner(GradedIdeal([P("x0^2", 2), P("x0*x1 + x1^2", 2)]))
    assert P("x1^3", 2) in basis
    assert is_reduced_basis(basis)


def _sympy_basis(gens, nv):
    xs = sym_vars(nv)
    return set(sympy.groebner([to_sympy(g) for g in gens], *xs, order="grlex", domain="QQ").exprs)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_groebner_matches_sympy(seed):
    rng = random.Random(seed)
    nv = rng.randint(2, 3)
    gens = [random_form(rng, nv, rng.randint(1, 3), 3, 0.5) for _ in range(rng.randint(1, 3))]
    ours = {sympy.expand(to_sympy(b)) for b in groebner(GradedIdeal(gens))}
    assert ours == _sympy_basis(gens, nv)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_basis_and_generators_contain_each_other(seed):
    rng = random.Random(seed)
    nv = rng.randint(2, 4)
    gens = [random_form(rng, nv, rng.randint(1, 3), 3, 0.6) for _ in range(rng.randint(1, 3))]
    ideal = GradedIdeal(gens)
    basis = ideal.basis()
    assert is_reduced_basis(basis)
    for g in gens:
        assert ideal.reduce(g).is_zero()
    for b in basis:
        assert graded_membership(b, [g for g in gens if g.degree <= b.degree]).member


def test_cached_basis_is_filled_once():
    ideal = GradedIdeal([P("x0^2"), P("x1^2")])
    assert ideal.cached_basis is None
    first = ideal.basis()
    assert ideal.basis() is first and ideal.cached_basis is first


def test_zero_generator_rejected():
    with pytest.raises(ZeroSectionError):
        GradedIdeal([P("x0 - x0")])


def test_json_roundtrip():
    ideal = GradedIdeal([P("x0^2 + x1*x2"), P("x1")])
    again = GradedIdeal.from_json(ideal.to_json(), 3)
    assert again.generators == ideal.generators


def test_membership_examples():
    w = graded_membership(P("x0^2*x1"), [P("x0")])
    assert w.member and w.cofactors == (P("x0*x1"),)
    assert not graded_membership(P("x0^3 + x1^3 + x2^3"), [P("x0"), P("x1")]).member
    rng = random.Random(3)
    g0, g1 = random_form(rng, 3, 3), random_form(rng, 3, 3)
    f = P("x0") * g0 + P("x1") * g1
    w = graded_membership(f, [P("x0"), P("x1")])
    assert w.member and w.verify(f, [P("x0"), P("x1")])


def test_membership_errors():
    with pytest.raises(ZeroSectionError):
        graded_membership(P("x0 - x0"), [P("x0")])
    with pytest.raises(DegreeMismatch):
        graded_membership(P("x0"), [P("x0^2")])


@settings(max_examples=80)
@given(st.integers(0, 10**6), st.booleans())
def test_membership_agrees_with_dense_oracle(seed, plant):
    rng = random.Random(seed)
    nv = rng.randint(1, 4)
    d = rng.randint(1, 6 if nv <= 3 else 4)
    factors = [random_form(rng, nv, rng.randint(1, d), 2, 0.5) for _ in range(rng.randint(1, 3))]
    if plant:
        f = random_form(rng, nv, d - factors[0].degree, 2) * factors[0]
    else:
        f = random_form(rng, nv, d, 2)
    w = graded_membership(f, factors, cross_check=False)
    assert w.member == membership_dense(f, factors)
    if plant:
        assert w.member
    if w.member:
        assert all(c.degree == d - g.degree for g, c in zip(factors, w.cofactors))
        assert w.verify(f, factors)


def test_hilbert_examples():
    rng = random.Random(11)
    q1, q2 = random_form(rng, 4, 2), random_form(rng, 4, 2)
    ideal = GradedIdeal([q1, q2])
    assert hilbert_function(ideal, 2) == 2
    for d in range(2, 7):
        assert hilbert_quotient(ideal, d) == 4 * d
    assert hilbert_function(GradedIdeal([P("x0")]), 3) == 6


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_hilbert_function_of_regular_sequences(seed):
    rng = random.Random(seed)
    nv = rng.randint(2, 4)
    k = rng.randint(1, min(3, nv))
    gens = [random_form(rng, nv, rng.randint(1, 3), 3) for _ in range(k)]
    report = is_regular_sequence(gens)
    ideal = GradedIdeal(gens)
    for d in range(0, 11):
        if d <= 6:
            assert hilbert_function(ideal, d) == ideal_dim_by_rank(ideal, d)
        if report.is_regular:
            assert hilbert_quotient(ideal, d) == complete_intersection_quotient(nv, [g.degree for g in gens], d)


def test_regular_sequence_examples():
    assert is_regular_sequence([P("x0"), P("x1")]).is_regular
    r = is_regular_sequence([P("x0^2"), P("x0*x1")])
    assert not r.is_regular and r.codimension == 1 and r.expected_codimension == 2
    rng = random.Random(5)
    assert is_regular_sequence([random_form(rng, 4, 2), random_form(rng, 4, 2)]).is_regular
    with pytest.raises(TooManyForms):
        is_regular_sequence([P("x0", 2), P("x1", 2), P("x0 + x1", 2)])


def test_solvability_examples():
    assert solvable_over_closure(["x0^2 + 1"], 1)
    assert not solvable_over_closure(["x0", "x0 - 1"], 1)
    assert solvable_over_closure(["x0^2 - 2"], 1)
    assert not solvable_over_closure(["x0*x1 - 1", "x0"], 2)
    assert solvable_over_closure([], 2)


def _random_affine(rng, nv):
    out = []
    for _ in range(rng.randint(1, 3)):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = tuple(rng.randint(0, 2) for _ in range(nv))
            terms[e] = rng.randint(-3, 3)
        out.append({e: c for e, c in terms.items() if c})
    return [p for p in out if p]


@settings(max_examples=40)
@given(st.data())
def test_solvability_is_invariant_under_linear_change(data):
    seed = data.draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    nv = rng.randint(1, 3)
    system = _random_affine(rng, nv)
    T = LinearChange(data.draw(invertible_matrices(nv)))
    moved = [t_substitute(p, T.images(), nv) for p in system]
    assert solvable_over_closure(system) == solvable_over_closure(moved)


def test_complete_intersection_series():
    # two quadrics in P^3: 1, 4, 8, 12, ...
    assert [complete_intersection_quotient(4, [2, 2], d) for d in range(5)] == [1, 4, 8, 12, 16]
