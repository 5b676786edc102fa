"""Homogeneous polynomials over Q(i) with positional variables x0..xn.

Internally a polynomial is a dict mapping exponent tuples to nonzero
coefficients (``mpq`` or :class:`~strengthlab.field.GaussianRational`).
The helpers prefixed ``t_`` work on such raw dicts and are shared with the
ideal engine, which also needs inhomogeneous systems.  The public
:class:`HomogeneousPolynomial` wraps a dict together with its ring size
and degree.

The global monomial order is graded lexicographic (grlex) with
``x0 > x1 > ... > xn``.
"""

from functools import lru_cache
from itertools import combinations_with_replacement
import re

from gmpy2 import mpq

from .errors import DegreeMismatch, ParseError, SingularMatrix, VariableOutOfRange
from .field import ONE, ZERO, GaussianRational, conj, format_coefficient, gauss, imag_part, real_part, to_field


def grlex_key(e):
    return (sum(e), e)


# --------------------------------------------------------------------------
# raw term-dict arithmetic


def t_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def t_neg(a):
    return {e: -c for e, c in a.items()}


def t_sub(a, b):
    return t_add(a, t_neg(b))


def t_scale(a, c):
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def t_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e)
            v = ca * cb if v is None else v + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def t_mul_term(a, mono, c):
    """``c * x^mono * a``."""
    if not c:
        return {}
    return {tuple(x + y for x, y in zip(e, mono)): v * c for e, v in a.items()}


def t_pow(a, k, nvars):
    result = {(0,) * nvars: ONE}
    base = a
    while k:
        if k & 1:
            result = t_mul(result, base)
        k >>= 1
        if k:
            base = t_mul(base, base)
    return result


def t_leading(a):
    e = max(a, key=grlex_key)
    return e, a[e]


def t_substitute(a, images, nvars):
    """Evaluate ``a`` at ``x_j -> images[j]`` (term dicts in ``nvars`` variables)."""
    powers = [{0: {(0,) * nvars: ONE}} for _ in images]

    def power(j, k):
        cache = powers[j]
        if k not in cache:
            top = max(cache)
            acc = cache[top]
            for p in range(top + 1, k + 1):
                acc = t_mul(acc, images[j])
                cache[p] = acc
        return cache[k]

    out = {}
    for e, c in a.items():
        term = {(0,) * nvars: c}
        for j, k in enumerate(e):
            if k:
                term = t_mul(term, power(j, k))
        out = t_add(out, term)
    return out


def t_is_real(a):
    return all(not isinstance(c, GaussianRational) for c in a.values())


@lru_cache(maxsize=None)
def monomial_basis(num_vars, degree):
    """Exponent vectors of the given degree, grlex descending."""
    if degree < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        e = [0] * num_vars
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars, degree):
    return {e: k for k, e in enumerate(monomial_basis(num_vars, degree))}


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<i>i)|(?P<op>[-+*^()−]))"
)


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.end() - len(m.group().lstrip())
        if m.group("num") is not None:
            out.append(("num", m.group("num"), start))
        elif m.group("var") is not None:
            out.append(("var", int(m.group("idx")), start))
        elif m.group("i") is not None:
            out.append(("i", "i", start))
        else:
            op = m.group("op")
            out.append(("op", "-" if op == "−" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, num_vars):
        self.toks = _tokenize(text)
        self.k = 0
        self.n = num_vars
        self.degrees = set()

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def expr(self, top=False):
        total = {}
        sign = ONE
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -ONE if val == "-" else ONE
        while True:
            term = self.term()
            if top:
                self.degrees.update(sum(e) for e in term)
            total = t_add(total, t_scale(term, sign))
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -ONE if val == "-" else ONE
                continue
            return total

    def term(self):
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = t_mul(acc, self.factor())
            else:
                return acc

    def factor(self):
        kind, val, pos = self.take()
        const = (0,) * self.n
        if kind == "num":
            return {const: mpq(val)}
        if kind == "i":
            return {const: gauss(0, 1)}
        if kind == "var":
            if val >= self.n:
                raise VariableOutOfRange(f"x{val} at position {pos} but only {self.n} variables")
            exp = 1
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 == "^":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num" or "/" in v3:
                    raise ParseError("exponent must be a nonnegative integer", p3)
                exp = int(v3)
            e = [0] * self.n
            e[val] = exp
            return {tuple(e): ONE}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_terms(text, num_vars):
    """Parse without a homogeneity check; returns a raw term dict."""
    terms, _ = _parse(text, num_vars)
    return terms


def _parse(text, num_vars):
    if num_vars < 1:
        raise ValueError("num_vars must be positive")
    p = _Parser(text, num_vars)
    terms = p.expr(top=True)
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", pos)
    return terms, p.degrees


def parse_poly(text, num_vars, degree=None):
    """Parse ``text`` into a :class:`HomogeneousPolynomial`.

    The degree is read off the monomials as written (so ``"x0 - x0"`` is the
    zero form of degree 1).  ``degree`` is only needed when the text has no
    monomials at all, e.g. ``"0"``.
    """
    terms, degrees = _parse(text, num_vars)
    terms = {e: c for e, c in terms.items() if c}
    if len(degrees) > 1:
        raise DegreeMismatch(f"mixed degrees {sorted(degrees)} in {text!r}")
    seen = degrees.pop() if degrees else 0
    if degree is not None and terms and seen != degree:
        raise DegreeMismatch(f"expected degree {degree}, got {seen}")
    if degree is None:
        degree = seen
    return HomogeneousPolynomial(num_vars, degree, terms)


# --------------------------------------------------------------------------
# printing


def format_monomial(e):
    parts = []
    for j, k in enumerate(e):
        if k == 1:
            parts.append(f"x{j}")
        elif k > 1:
            parts.append(f"x{j}^{k}")
    return "*".join(parts)


def format_terms(terms):
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=grlex_key, reverse=True):
        c = terms[e]
        negative = False
        if isinstance(c, GaussianRational):
            if not c.re and c.im < 0:
                negative, c = True, -c
        elif c < 0:
            negative, c = True, -c
        mono = format_monomial(e)
        if not mono:
            body = format_coefficient(c)
        elif c == 1:
            body = mono
        else:
            body = f"{format_coefficient(c)}*{mono}"
        if not out:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


# --------------------------------------------------------------------------


class HomogeneousPolynomial:
    """Immutable homogeneous form of fixed degree in ``num_vars`` variables."""

    __slots__ = ("num_vars", "degree", "_terms", "_hash")

    def __init__(self, num_vars, degree, terms=None):
        if num_vars < 1:
            raise ValueError("num_vars must be positive")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != num_vars:
                raise VariableOutOfRange(f"exponent {e} has wrong length for {num_vars} variables")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            if sum(e) != degree:
                raise DegreeMismatch(f"monomial {e} is not of degree {degree}")
            c = to_field(c)
            if c:
                clean[e] = c
        self.num_vars = num_vars
        self.degree = degree
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, num_vars, degree, terms):
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj.degree = degree
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, num_vars, degree):
        return cls._raw(num_vars, degree, {})

    @classmethod
    def variable(cls, j, num_vars):
        if not 0 <= j < num_vars:
            raise VariableOutOfRange(f"x{j} with {num_vars} variables")
        e = [0] * num_vars
        e[j] = 1
        return cls._raw(num_vars, 1, {tuple(e): ONE})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for j, c in enumerate(coeffs):
            c = to_field(c)
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = c
        return cls._raw(n, 1, terms)

    @classmethod
    def from_coefficients(cls, num_vars, degree, vector):
        basis = monomial_basis(num_vars, degree)
        if len(vector) != len(basis):
            raise ValueError("coefficient vector has the wrong length")
        terms = {}
        for e, c in zip(basis, vector):
            c = to_field(c)
            if c:
                terms[e] = c
        return cls._raw(num_vars, degree, terms)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, e):
        return self._terms.get(tuple(e), ZERO)

    def leading_term(self):
        return t_leading(self._terms)

    def is_real(self):
        return t_is_real(self._terms)

    def _check_ring(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return False
        if other.num_vars != self.num_vars:
            raise ValueError("polynomials live in different rings")
        return True

    def __add__(self, other):
        if not self._check_ring(other):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot add degree {self.degree} and {other.degree}")
        return HomogeneousPolynomial._raw(self.num_vars, self.degree, t_add(self._terms, other._terms))

    def __sub__(self, other):
        if not self._check_ring(other):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot subtract degree {other.degree} from {self.degree}")
        return HomogeneousPolynomial._raw(self.num_vars, self.degree, t_sub(self._terms, other._terms))

    def __neg__(self):
        return HomogeneousPolynomial._raw(self.num_vars, self.degree, t_neg(self._terms))

    def __mul__(self, other):
        if isinstance(other, HomogeneousPolynomial):
            self._check_ring(other)
            return HomogeneousPolynomial._raw(
                self.num_vars, self.degree + other.degree, t_mul(self._terms, other._terms)
            )
        try:
            c = to_field(other)
        except TypeError:
            return NotImplemented
        return HomogeneousPolynomial._raw(self.num_vars, self.degree, t_scale(self._terms, c))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        return HomogeneousPolynomial._raw(self.num_vars, self.degree * k, t_pow(self._terms, k, self.num_vars))

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        if self.num_vars != other.num_vars:
            return False
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, self.degree if self._terms else -1, frozenset(self._terms.items())))
        return self._hash

    def conjugate(self):
        return HomogeneousPolynomial._raw(self.num_vars, self.degree, {e: conj(c) for e, c in self._terms.items()})

    def real(self):
        terms = {e: real_part(c) for e, c in self._terms.items() if real_part(c)}
        return HomogeneousPolynomial._raw(self.num_vars, self.degree, terms)

    def imag(self):
        terms = {e: imag_part(c) for e, c in self._terms.items() if imag_part(c)}
        return HomogeneousPolynomial._raw(self.num_vars, self.degree, terms)

    def evaluate(self, point):
        point = [to_field(p) for p in point]
        total = ZERO
        for e, c in self._terms.items():
            v = c
            for p, k in zip(point, e):
                if k:
                    v = v * p**k
            total = total + v
        return total

    def __str__(self):
        return format_terms(self._terms)

    def __repr__(self):
        return f"HomogeneousPolynomial({self.num_vars}, {self.degree}, {str(self)!r})"


def as_poly(f, num_vars=None):
    if isinstance(f, HomogeneousPolynomial):
        return f
    if isinstance(f, str):
        if num_vars is None:
            raise ValueError("num_vars is required to parse a string")
        return parse_poly(f, num_vars)
    raise TypeError(f"expected a polynomial, got {type(f).__name__}")


def ring_arith(a, b, op):
    """``a + b`` or ``a * b``; ``op`` is ``"add"`` or ``"mul"``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def coefficient_vector(f):
    """Coefficients of ``f`` in the grlex-descending monomial basis."""
    return [f.coefficient(e) for e in monomial_basis(f.num_vars, f.degree)]


# --------------------------------------------------------------------------


class LinearChange:
    """Invertible substitution ``x_i -> sum_j matrix[i][j] * x_j``."""

    __slots__ = ("matrix", "size")

    def __init__(self, matrix):
        from .linalg import rank

        rows = [[to_field(c) for c in row] for row in matrix]
        size = len(rows)
        if size == 0 or any(len(r) != size for r in rows):
            raise ValueError("matrix must be square and nonempty")
        if rank(rows) != size:
            raise SingularMatrix("coordinate change must be invertible")
        self.matrix = tuple(tuple(r) for r in rows)
        self.size = size

    @classmethod
    def identity(cls, size):
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def permutation(cls, perm):
        """``x_i -> x_{perm[i]}``."""
        n = len(perm)
        return cls([[1 if j == perm[i] else 0 for j in range(n)] for i in range(n)])

    def inverse(self):
        from .linalg import inverse

        return LinearChange(inverse([list(r) for r in self.matrix]))

    def images(self):
        n = self.size
        out = []
        for row in self.matrix:
            terms = {}
            for j, c in enumerate(row):
                if c:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = c
            out.append(terms)
        return out


def apply_change(f, T):
    if T.size != f.num_vars:
        raise ValueError(f"change of size {T.size} on a form in {f.num_vars} variables")
    terms = t_substitute(f._terms, T.images(), f.num_vars)
    return HomogeneousPolynomial._raw(f.num_vars, f.degree, terms)
