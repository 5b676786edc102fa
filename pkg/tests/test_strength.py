import json
import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from helpers import invertible_matrices, random_form
from strengthlab.certificate import StrengthCertificate
from strengthlab.errors import (
    BudgetExceeded,
    CertificateError,
    DegreeMismatch,
    NoRationalPoint,
    NotRealTarget,
    ZeroSectionError,
)
from strengthlab.ideal import graded_membership
from strengthlab.poly import HomogeneousPolynomial, LinearChange, apply_change, parse_poly
from strengthlab.strength import (
    d14_decompose,
    decide_strength_leq,
    fano_solvable,
    grassmannian_charts,
    realify,
    slice_rank,
    strength_lower_from_fano,
    strength_one_test,
)


def P(text, nv=3):
    return parse_poly(text, nv)


# slice rank


@pytest.mark.parametrize("nv, d", [(2, 2), (3, 3), (4, 2), (4, 4)])
def test_slice_rank_of_a_power(nv, d):
    f = P("x0", nv) ** d
    r = slice_rank(f)
    assert r.value == 1 and r.witness_subspace_dim == nv - 2
    assert graded_membership(f, r.witness).member


def test_slice_rank_of_split_quadric_surface():
    f = P("x0*x1 + x2*x3", 4)
    r = slice_rank(f)
    assert r.value == 2 and r.witness_subspace_dim == 1
    assert r.certificate.verify() and r.certificate.length <= 2
    assert fano_solvable(f, 1) and not fano_solvable(f, 2)


def test_slice_rank_of_fermat_cubic_curve():
    r = slice_rank(P("x0^3 + x1^3 + x2^3"))
    assert r.value == 2 and r.witness_subspace_dim == 0
    assert not fano_solvable(P("x0^3 + x1^3 + x2^3"), 1)


def test_slice_rank_without_points_over_the_base_field():
    # no rational point, but a point over the closure still exists
    r = slice_rank(P("x0^2 + x1^2 + 3*x2^2"))
    assert r.value == 2


def test_slice_rank_in_one_variable_uses_coordinates():
    r = slice_rank(P("5*x0^3", 1))
    assert r.value == 1 and r.certificate.verify()


def test_slice_rank_rejects_zero():
    with pytest.raises(ZeroSectionError):
        slice_rank(HomogeneousPolynomial.zero(3, 2))
    with pytest.raises(DegreeMismatch):
        slice_rank(HomogeneousPolynomial(2, 0, {(0, 0): 7}))


def test_chart_count():
    from math import comb

    for nv in range(1, 5):
        for m in range(nv):
            assert len(grassmannian_charts(nv, m)) == comb(nv, m + 1)


def test_lower_bounds_from_fano():
    assert strength_lower_from_fano(P("x0*x1 + x2*x3", 4), 2) == 2
    assert strength_lower_from_fano(P("x0^3", 4), 2) is None
    assert strength_lower_from_fano(P("x0^3 + x1^3 + x2^3 + x3^3", 4), 2) == 2
    with pytest.raises(ValueError):
        strength_lower_from_fano(P("x0^3"), 2)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_witness_lies_in_target(seed):
    rng = random.Random(seed)
    nv = rng.randint(2, 4)
    f = random_form(rng, nv, rng.randint(1, 3), 3, 0.6)
    r = slice_rank(f)
    assert r.value == nv - 1 - r.witness_subspace_dim
    if r.witness is not None:
        assert len(r.witness) == r.value
        assert graded_membership(f, r.witness).member
        assert f.degree == 1 or r.certificate.verify()


@settings(max_examples=15)
@given(st.data())
def test_invariance_under_coordinate_change(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    nv = data.draw(st.integers(2, 3))
    f = random_form(rng, nv, data.draw(st.integers(2, 3)), 3, 0.6)
    T = LinearChange(data.draw(invertible_matrices(nv, height=5)))
    g = apply_change(f, T)
    assert slice_rank(f, find_witness=False).value == slice_rank(g, find_witness=False).value
    for k in (1, 2):
        assert decide_strength_leq(f, k).holds == decide_strength_leq(g, k).holds


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_strength_at_most_slice_rank(seed):
    rng = random.Random(seed)
    f = random_form(rng, rng.randint(2, 4), rng.randint(2, 3), 3, 0.6)
    sr = slice_rank(f, find_witness=False).value
    assert decide_strength_leq(f, sr).holds


def test_plane_quartics_share_a_slice_rank():
    rng = random.Random(44)
    values = [slice_rank(random_form(rng, 3, 4, 5), find_witness=False).value for _ in range(20)]
    if len(set(values)) > 1:
        warnings.warn(f"non-generic quartics in the sample: {values}")
    assert set(values) <= {1, 2}


# strength one


def test_binary_forms_always_split():
    rng = random.Random(8)
    for d in range(2, 6):
        assert strength_one_test(random_form(rng, 2, d, 4)).reducible


def test_sum_of_squares_splits_over_gaussian_rationals():
    one = strength_one_test(P("x0^2 + x1^2", 2))
    assert one.reducible and one.certificate.verify() and not one.certificate.is_real()


def test_smooth_cubic_is_irreducible():
    assert not strength_one_test(P("x0^3 + x1^3 + x2^3")).reducible


def test_linear_forms_have_infinite_strength():
    one = strength_one_test(P("x0 + x1"))
    assert not one.reducible and one.infinite_strength
    d = decide_strength_leq(P("x0 + x1"), 3)
    assert not d.holds and d.infinite_strength


def test_planted_factorization_is_found():
    f = P("x0 + 2*x1 - x2") * P("x0^2 + x1*x2 + 3*x2^2")
    one = strength_one_test(f)
    assert one.reducible and one.split == 1 and one.certificate.verify()


# strength <= k


def test_decide_examples():
    f = P("x0*x1 + x2*x3", 4)
    d = decide_strength_leq(f, 2, (1, 1))
    assert d.holds and d.certificate.verify() and d.certificate.type_vector == (1, 1)
    assert not decide_strength_leq(f, 1).holds


def test_plane_quartic_has_strength_two_with_a_point():
    f = P("x0^4 + x1^4 - x2^4 + 5*x0*x1*x2^2")
    d = decide_strength_leq(f, 2, (1, 3))
    assert d.holds and d.type_vector == (1, 1) and d.certificate.verify()


def test_quadric_times_quadric_type():
    # ternary quartics of this type run to 22 unknowns and take minutes
    f = P("x0^2 + x1^2", 2) * P("x0^2 - 3*x1^2", 2) + P("x0*x1", 2) * P("x0^2 + x0*x1", 2)
    assert decide_strength_leq(f, 2, (2, 2)).holds


def test_budget_exceeded_is_not_false():
    f = P("x0^4 + x1^4 + x2^4 + x3^4", 4)
    with pytest.raises(BudgetExceeded) as info:
        decide_strength_leq(f, 2, (2, 2))
    assert info.value.unknowns > info.value.budget


def test_decide_validates_k_and_type():
    with pytest.raises(ValueError):
        decide_strength_leq(P("x0*x1"), 0)
    with pytest.raises(ValueError):
        decide_strength_leq(P("x0*x1"), 2, (1,))


# plane curves through a point


def test_d14_monomial_curve():
    cert, point = d14_decompose(P("x0*x1*x2"), point=(0, 0, 1))
    assert cert.pairs == ((P("x0"), P("x1*x2")),)
    assert cert.type_vector == (1,)


def test_d14_fermat_cubic():
    cert, _ = d14_decompose(P("x0^3 + x1^3 + x2^3"), point=(1, -1, 0))
    assert [f for f, _ in cert.pairs] == [P("x0 + x1"), P("x2")]
    assert cert.verify()


def test_d14_needs_gaussian_point_for_a_conic_without_rational_points():
    f = P("x0^2 + x1^2 + x2^2")
    with pytest.raises(NoRationalPoint):
        d14_decompose(f)
    cert, point = d14_decompose(f, gaussian=True)
    assert cert.verify() and f.evaluate(point) == 0


def test_d14_rejects_points_off_the_curve():
    with pytest.raises(ValueError):
        d14_decompose(P("x0^3 + x1^3 + x2^3"), point=(1, 0, 0))


# realification


def test_realify_sum_of_squares():
    f = P("x0^2 + x1^2", 2)
    cert = StrengthCertificate(f, [(P("x0 + i*x1", 2), P("x0 - i*x1", 2))])
    real = realify(cert)
    assert real.is_real() and real.length == 2
    assert set(real.pairs) == {(P("x0", 2), P("x0", 2)), (P("x1", 2), P("x1", 2))}


def test_realify_keeps_real_certificates():
    cert = StrengthCertificate(P("x0*x1 + x2*x3", 4), [(P("x0", 4), P("x1", 4)), (P("x2", 4), P("x3", 4))])
    assert realify(cert).pairs == cert.pairs


def test_realify_mixed_certificate():
    f = P("x0^2 + x1^2 + x2*x3", 4)
    cert = StrengthCertificate(f, [(P("x0 + i*x1", 4), P("x0 - i*x1", 4)), (P("x2", 4), P("x3", 4))])
    real = realify(cert)
    assert real.length <= 4 and real.is_real() and real.verify()


def test_realify_rejects_complex_targets():
    f = P("x0^2 + i*x1^2", 2)
    cert = StrengthCertificate(f, [(P("x0", 2), P("x0", 2)), (P("x1", 2), P("i*x1", 2))])
    with pytest.raises(NotRealTarget):
        realify(cert)


# certificates


def test_certificate_json_roundtrip():
    cert = StrengthCertificate(P("x0^2 + x1^2", 2), [(P("x0 + i*x1", 2), P("x0 - i*x1", 2))])
    again = StrengthCertificate.from_json(json.loads(cert.dumps()))
    assert again == cert and again.verify()
    data = cert.to_json()
    assert data["type"] == [1] and data["pairs"][0]["f"] == "x0 + i*x1"


def test_certificate_check_catches_errors():
    f = P("x0*x1 + x2^2")
    with pytest.raises(CertificateError):
        StrengthCertificate(f, [(P("x0"), P("x1"))]).check()
    with pytest.raises(CertificateError):
        StrengthCertificate(f, [(HomogeneousPolynomial(3, 0, {(0, 0, 0): 1}), f)]).check()
    assert not StrengthCertificate(f, [(P("x0"), P("x1")), (P("x2"), P("x1"))]).verify()
