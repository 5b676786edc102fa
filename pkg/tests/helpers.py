import sympy
from hypothesis import assume, strategies as st

from strengthlab.field import imag_part, real_part
from strengthlab.linalg import rank
from strengthlab.poly import HomogeneousPolynomial, monomial_basis


def sym_vars(n):
    return sympy.symbols(f"x0:{n}")


def sym_coeff(c):
    re, im = real_part(c), imag_part(c)
    value = sympy.Rational(int(re.numerator), int(re.denominator))
    if im:
        value += sympy.I * sympy.Rational(int(im.numerator), int(im.denominator))
    return value


def to_sympy(f):
    xs = sym_vars(f.num_vars)
    expr = sympy.Integer(0)
    for e, c in f.items():
        term = sym_coeff(c)
        for x, k in zip(xs, e):
            term *= x**k
        expr += term
    return expr


def sympy_expand_pairs(pairs, num_vars):
    """Sum of products, expanded by sympy rather than our own arithmetic."""
    return sympy.expand(sum((to_sympy(f) * to_sympy(g) for f, g in pairs), sympy.Integer(0)))


def random_form(rng, num_vars, degree, height=5, density=1.0):
    while True:
        vec = [rng.randint(-height, height) if rng.random() < density else 0 for _ in monomial_basis(num_vars, degree)]
        if any(vec):
            return HomogeneousPolynomial.from_coefficients(num_vars, degree, vec)


@st.composite
def forms(draw, num_vars=st.integers(1, 3), degree=st.integers(1, 3), height=3):
    nv = draw(num_vars)
    d = draw(degree)
    size = len(monomial_basis(nv, d))
    vec = draw(st.lists(st.integers(-height, height), min_size=size, max_size=size))
    return HomogeneousPolynomial.from_coefficients(nv, d, vec)


@st.composite
def invertible_matrices(draw, size, height=2):
    rows = draw(
        st.lists(st.lists(st.integers(-height, height), min_size=size, max_size=size), min_size=size, max_size=size)
    )
    assume(rank(rows) == size)
    return rows
