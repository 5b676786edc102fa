from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strengthlab.errors import InvalidConeData, OutOfRange
from strengthlab.surface_cone import (
    EffectiveCone,
    PicardLattice2,
    e_squared_routes,
    effective_cone,
    line_obstruction,
    surface_invariants,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
positive = st.fractions(min_value=Fraction(1, 20), max_value=50, max_denominator=20)
nonneg = st.fractions(min_value=0, max_value=50, max_denominator=20)


def test_cone_from_the_conic_surface():
    cone = effective_cone(PicardLattice2.conic_surface(5))
    assert cone.contains(1, 0)
    assert not cone.contains(-1, 0)
    assert cone.contains(-1, 1) and not cone.contains(-2, 1)


def test_invariants_examples():
    s = surface_invariants(4)
    assert (s.D_sq, s.E_sq, s.H_sq, s.D_H) == (-2, -2, 4, 2)
    s = surface_invariants(5)
    assert (s.D_sq, s.E_sq) == (-4, -3)
    s = surface_invariants(6)
    assert (s.D_sq, s.E_sq) == (-6, -4)
    assert (6 - 2) * (6 - 5) == (6 - 4) * (6 - 2) + s.E_sq


def test_invariants_for_all_degrees():
    for d in range(4, 201):
        a, b = e_squared_routes(d)
        assert a == b == 2 - d
        s = surface_invariants(d)
        assert s.D_sq < 0 and s.E_sq < 0


def test_obstruction_transcripts():
    d4 = line_obstruction(4)
    assert d4["infeasible"] and {v["violation"] for v in d4["violations"]} == {"parity"}
    d5 = line_obstruction(5)
    by_b = {v["b"]: v for v in d5["violations"]}
    assert by_b[0]["violation"] == "parity"
    assert by_b[1]["violation"] == "cone" and by_b[1]["a"] == -2
    assert line_obstruction(100)["infeasible"]
    assert all(line_obstruction(d)["infeasible"] for d in range(4, 201))
    assert line_obstruction(7)["assumptions"]


@given(rationals, positive, nonneg, nonneg, nonneg, nonneg, rationals, rationals)
def test_cone_is_closed_under_addition(w, z, s1, t1, s2, t2, a, b):
    cone = EffectiveCone(w, z)
    # s[A] + t[E] sweeps the cone
    u = (s1 + t1 * w, t1 * z)
    v = (s2 + t2 * w, t2 * z)
    assert cone.contains(*u) and cone.contains(*v)
    assert cone.contains(u[0] + v[0], u[1] + v[1])
    if cone.contains(a, b):
        assert cone.contains(a + u[0], b + u[1])


@given(st.fractions(min_value=-50, max_value=0, max_denominator=20), positive)
def test_generators_are_effective(w, z):
    # w <= 0 because [B] itself is effective
    cone = effective_cone(PicardLattice2(((-2, 2), (2, 4)), (w, z)))
    assert cone.contains(1, 0)
    assert cone.contains(w, z)
    # [B] = -(w/z)[A] + (1/z)[E], expanded back in the ([A], [B]) basis
    a = -(w / z) * 1 + (1 / z) * w
    b = -(w / z) * 0 + (1 / z) * z
    assert (a, b) == (0, 1) and cone.contains(a, b)


def test_cone_data_errors():
    with pytest.raises(InvalidConeData):
        PicardLattice2(((1, 0), (0, 1)), (1, 0))
    with pytest.raises(InvalidConeData):
        effective_cone(PicardLattice2(((1, 0), (0, 1)), (1, -1)))
    with pytest.raises(InvalidConeData):
        effective_cone(PicardLattice2(((1, 0), (0, 1))))
    with pytest.raises(ValueError):
        PicardLattice2(((1, 2), (3, 1)))


def test_degree_range():
    with pytest.raises(OutOfRange):
        surface_invariants(3)
    with pytest.raises(OutOfRange):
        line_obstruction(2)
