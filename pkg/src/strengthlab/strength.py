"""Slice rank and strength of forms over the algebraic closure of Q(i).

Slice rank is read off linear spaces inside the hypersurface: f lies in an
ideal (l_1, ..., l_r) of linear forms exactly when V(f) contains the
codimension-r space they cut out.  Containment of an m-plane is tested
chart by chart on the Grassmannian (one Schubert cell per pivot set of a
reduced row echelon matrix), each chart being a polynomial system handed
to the Nullstellensatz test.

General strength questions are decided the same way on the coefficient
systems of f = sum f_h g_h, with the scaling freedom removed by fixing the
leading coefficient of each f_h.
"""

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
import logging

from .certificate import StrengthCertificate, normalized_type
from .errors import BudgetExceeded, DegreeMismatch, NoRationalPoint, NotRealTarget, ZeroSectionError
from .field import I, ONE, ZERO, GaussianRational, gauss, to_field
from .ideal import graded_membership, solvable_over_closure
from .poly import HomogeneousPolynomial, grlex_key, monomial_basis, t_mul, t_substitute, t_sub
from .solve import eval_var, find_rational_solution, rational_roots

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 24


def _require_form(f):
    if f.is_zero():
        raise ZeroSectionError("the zero form has no strength")


def _unit(nv, j):
    e = [0] * nv
    e[j] = 1
    return tuple(e)


# --------------------------------------------------------------------------
# Fano systems


@dataclass
class FanoChart:
    pivots: tuple
    unknowns: list  # (row, column) position of each unknown
    system: list  # term dicts in len(unknowns) variables

    def matrix(self, values, num_vars):
        """The echelon matrix of the plane for given unknown values."""
        rows = [[ZERO] * num_vars for _ in self.pivots]
        for r, p in enumerate(self.pivots):
            rows[r][p] = ONE
        for (r, j), v in zip(self.unknowns, values):
            rows[r][j] = v
        return rows


def grassmannian_charts(num_vars, m):
    """Pivot sets of (m+1)-row echelon matrices, in lexicographic order."""
    return list(combinations(range(num_vars), m + 1))


def fano_system(f, m, pivots):
    """Coefficients of f restricted to the m-planes of one Schubert cell."""
    nv = f.num_vars
    pset = set(pivots)
    unknowns = [(r, j) for r, p in enumerate(pivots) for j in range(p + 1, nv) if j not in pset]
    nt = m + 1
    total = nt + len(unknowns)
    slot = {pos: nt + k for k, pos in enumerate(unknowns)}
    images = []
    for j in range(nv):
        img = {}
        for r, p in enumerate(pivots):
            if j == p:
                img[_unit(total, r)] = ONE
            elif (r, j) in slot:
                e = list(_unit(total, r))
                e[slot[(r, j)]] = 1
                img[tuple(e)] = ONE
        images.append(img)
    restricted = t_substitute(f._terms, images, total)
    grouped = {}
    for e, c in restricted.items():
        grouped.setdefault(e[:nt], {})[e[nt:]] = c
    system = [p for p in grouped.values() if p]
    return FanoChart(tuple(pivots), unknowns, system)


def fano_chart(f, m):
    """Lowest-indexed chart whose m-plane system is solvable, or None."""
    for pivots in grassmannian_charts(f.num_vars, m):
        chart = fano_system(f, m, pivots)
        if solvable_over_closure(chart.system, len(chart.unknowns)):
            return chart
    return None


def fano_solvable(f, m):
    return fano_chart(f, m) is not None


def _plane_ideal(chart, values, num_vars):
    """Linear forms cutting out the plane spanned by the chart's rows."""
    rows = chart.matrix(values, num_vars)
    forms = []
    for j in range(num_vars):
        if j in chart.pivots:
            continue
        coeffs = [ZERO] * num_vars
        coeffs[j] = ONE
        for r, p in enumerate(chart.pivots):
            if rows[r][j]:
                coeffs[p] = coeffs[p] - rows[r][j]
        forms.append(HomogeneousPolynomial.linear(coeffs))
    return forms


def _membership_certificate(f, forms):
    """Certificate f = sum l_j g_j, dropping zero cofactors."""
    witness = graded_membership(f, forms)
    if not witness.member:
        raise AssertionError("target is not in the ideal of its own witness plane")
    pairs = [(l, g) for l, g in zip(forms, witness.cofactors) if not g.is_zero()]
    return StrengthCertificate(f, pairs)


def coordinate_certificate(f):
    """f = sum_j x_j g_j, grouping terms by their first variable."""
    nv = f.num_vars
    groups = {}
    for e, c in f.items():
        j = next(k for k, x in enumerate(e) if x)
        rest = list(e)
        rest[j] -= 1
        groups.setdefault(j, {})[tuple(rest)] = c
    pairs = [
        (HomogeneousPolynomial.variable(j, nv), HomogeneousPolynomial._raw(nv, f.degree - 1, g))
        for j, g in sorted(groups.items())
    ]
    return StrengthCertificate(f, pairs)


@dataclass
class SliceRankResult:
    value: int
    witness_subspace_dim: int
    witness: list = None
    chart: tuple = None
    certificate: StrengthCertificate = None

    def to_json(self):
        out = {"value": self.value, "e": self.witness_subspace_dim, "chart": list(self.chart) if self.chart else None}
        out["witness"] = [str(l) for l in self.witness] if self.witness is not None else None
        out["certificate"] = self.certificate.to_json() if self.certificate else None
        return out


def slice_rank(f, find_witness=True):
    _require_form(f)
    if f.degree < 1:
        raise DegreeMismatch("slice rank needs degree at least 1")
    nv = f.num_vars
    n = nv - 1
    chart = None
    e = -1
    for m in range(n - 1, -1, -1):
        chart = fano_chart(f, m)
        if chart is not None:
            e = m
            break
    result = SliceRankResult(n - e, e, chart=chart.pivots if chart else None)
    if not find_witness:
        return result
    if chart is None:
        forms = [HomogeneousPolynomial.variable(j, nv) for j in range(nv)]
        result.witness = forms
        if f.degree >= 2:
            result.certificate = coordinate_certificate(f)
        return result
    values = find_rational_solution(chart.system, len(chart.unknowns))
    if values is not None:
        forms = _plane_ideal(chart, values, nv)
        result.witness = forms
        # a linear form times a constant is not a genuine product
        if f.degree >= 2:
            result.certificate = _membership_certificate(f, forms)
    return result


def strength_lower_from_fano(f, m):
    """Slice rank is at least n - m + 1 when V(f) holds no m-plane."""
    n = f.num_vars - 1
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m = {m}, n = {n}")
    return None if fano_solvable(f, m) else n - m + 1


# --------------------------------------------------------------------------
# products f = g * h


def _divide_symbolic(f_terms, g, lead):
    """Divide f by g whose coefficients are polynomials in the unknowns.

    ``g`` maps x-exponents to unknown-term dicts and has leading monomial
    ``lead`` with coefficient 1.  Returns (quotient, remainder) in the same
    representation.
    """
    nunk = len(next(iter(g[lead])))
    p = {e: {(0,) * nunk: c} for e, c in f_terms.items()}
    quot, rem = {}, {}
    while p:
        m = max(p, key=grlex_key)
        c = p.pop(m)
        if all(a >= b for a, b in zip(m, lead)):
            delta = tuple(a - b for a, b in zip(m, lead))
            quot[delta] = c
            for beta, gb in g.items():
                if beta == lead:
                    continue
                e2 = tuple(a + b for a, b in zip(beta, delta))
                w = t_sub(p.get(e2, {}), t_mul(c, gb))
                if w:
                    p[e2] = w
                else:
                    p.pop(e2, None)
        else:
            rem[m] = c
    return quot, rem


def _evaluate_coeffs(poly, values):
    out = {}
    for e, cterms in poly.items():
        v = ZERO
        for u, c in cterms.items():
            term = c
            for val, k in zip(values, u):
                if k:
                    term = term * val**k
            v = v + term
        if v:
            out[e] = v
    return out


def _product_charts(f, i, budget):
    """Yield (g, lead, unknown count, system, quotient) per leading-monomial chart."""
    nv = f.num_vars
    basis = monomial_basis(nv, i)  # descending
    for idx, lead in enumerate(basis):
        lower = basis[idx + 1:]
        nunk = len(lower)
        if nunk > budget:
            raise BudgetExceeded(f"{nunk} unknowns for a degree-{i} factor", nunk, budget)
        g = {lead: {(0,) * nunk: ONE}}
        for k, beta in enumerate(lower):
            g[beta] = {_unit(nunk, k) if nunk else (): ONE}
        quot, rem = _divide_symbolic(f._terms, g, lead)
        yield g, lead, nunk, [p for p in rem.values() if p], quot


def _decide_product(f, i, budget):
    """Is f = g * h with deg g = i?  Returns (holds, certificate or None)."""
    nv, d = f.num_vars, f.degree
    for g, lead, nunk, system, quot in _product_charts(f, i, budget):
        if not solvable_over_closure(system, nunk) if nunk else any(system):
            continue
        cert = None
        values = find_rational_solution(system, nunk) if nunk else []
        if values is not None:
            gpoly = HomogeneousPolynomial._raw(nv, i, _evaluate_coeffs(g, values))
            hpoly = HomogeneousPolynomial._raw(nv, d - i, _evaluate_coeffs(quot, values))
            cert = StrengthCertificate(f, [(gpoly, hpoly)])
            if not cert.verify():
                raise AssertionError("product witness failed verification")
        return True, cert
    return False, None


@dataclass
class StrengthOneResult:
    reducible: bool
    infinite_strength: bool = False
    split: int = None
    certificate: StrengthCertificate = None

    def __bool__(self):
        return self.reducible


def strength_one_test(f, budget=DEFAULT_BUDGET):
    """Strength 1 means f factors nontrivially over the closure."""
    _require_form(f)
    d = f.degree
    if d <= 1:
        return StrengthOneResult(False, infinite_strength=True)
    for i in range(1, d // 2 + 1):
        holds, cert = _decide_product(f, i, budget)
        if holds:
            return StrengthOneResult(True, split=i, certificate=cert)
    return StrengthOneResult(False)


# --------------------------------------------------------------------------
# strength <= k


@dataclass
class StrengthDecision:
    holds: bool
    k: int
    type_vector: tuple = None
    certificate: StrengthCertificate = None
    method: str = ""
    infinite_strength: bool = False

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {
            "holds": self.holds,
            "k": self.k,
            "type": list(self.type_vector) if self.type_vector else None,
            "method": self.method,
            "infinite_strength": self.infinite_strength,
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


def normalize_type(type_vector, d):
    out = []
    for i in type_vector:
        i = int(i)
        if not 1 <= i <= d - 1:
            raise ValueError(f"type entry {i} out of range for degree {d}")
        out.append(normalized_type(i, d - i))
    return tuple(sorted(out))


def enumerate_types(d, k):
    return list(combinations_with_replacement(range(1, d // 2 + 1), k))


def _decide_linear(f, k):
    """f in (l_1..l_k) iff V(f) contains a plane of dimension n - k."""
    n = f.num_vars - 1
    if k >= n + 1:
        return True, coordinate_certificate(f)
    chart = fano_chart(f, n - k)
    if chart is None:
        return False, None
    values = find_rational_solution(chart.system, len(chart.unknowns))
    if values is None:
        if n == 2 and k == 2:
            point = find_rational_point(f)
            if point is not None:
                return True, _membership_certificate(f, point_ideal(point))
        return True, None
    return True, _membership_certificate(f, _plane_ideal(chart, values, f.num_vars))


def _bilinear_unknowns(nv, d, type_vector):
    return sum(len(monomial_basis(nv, i)) - 1 + len(monomial_basis(nv, d - i)) for i in type_vector)


def _decide_bilinear(f, type_vector, budget):
    nv, d = f.num_vars, f.degree
    worst = _bilinear_unknowns(nv, d, type_vector)
    if worst > budget:
        raise BudgetExceeded(f"{worst} unknowns for type {type_vector}", worst, budget)
    fbases = [monomial_basis(nv, i) for i in type_vector]
    gbases = [monomial_basis(nv, d - i) for i in type_vector]
    ranges = [range(len(b)) for b in fbases]
    for leads in product(*ranges):
        # equal degrees are interchangeable; keep leads nondecreasing on them
        if any(type_vector[h] == type_vector[h + 1] and leads[h] > leads[h + 1] for h in range(len(leads) - 1)):
            continue
        layout = []  # per h: list of (monomial, 'one' | unknown index) for f_h, then g_h
        nunk = 0
        for h, lead in enumerate(leads):
            fpart = [(fbases[h][lead], None)]
            for beta in fbases[h][lead + 1:]:
                fpart.append((beta, nunk))
                nunk += 1
            gpart = []
            for beta in gbases[h]:
                gpart.append((beta, nunk))
                nunk += 1
            layout.append((fpart, gpart))
        total = nv + nunk

        def embed(parts):
            out = {}
            for beta, slot in parts:
                e = list(beta) + [0] * nunk
                if slot is not None:
                    e[nv + slot] = 1
                out[tuple(e)] = ONE
            return out

        acc = {tuple(list(e) + [0] * nunk): -c for e, c in f.items()}
        for fpart, gpart in layout:
            prod_ = t_mul(embed(fpart), embed(gpart))
            for e, c in prod_.items():
                w = acc.get(e, ZERO) + c
                if w:
                    acc[e] = w
                else:
                    acc.pop(e, None)
        grouped = {}
        for e, c in acc.items():
            grouped.setdefault(e[:nv], {})[e[nv:]] = c
        system = [p for p in grouped.values() if p]
        if not solvable_over_closure(system, nunk):
            continue
        values = find_rational_solution(system, nunk)
        cert = None
        if values is not None:
            pairs = []
            for (fpart, gpart), i in zip(layout, type_vector):
                fh = {beta: (ONE if slot is None else values[slot]) for beta, slot in fpart}
                gh = {beta: values[slot] for beta, slot in gpart}
                fh = {e: c for e, c in fh.items() if c}
                gh = {e: c for e, c in gh.items() if c}
                if gh:
                    pairs.append((HomogeneousPolynomial._raw(nv, i, fh), HomogeneousPolynomial._raw(nv, d - i, gh)))
            cert = StrengthCertificate(f, pairs)
            if not cert.verify():
                raise AssertionError("bilinear witness failed verification")
        return True, cert
    return False, None


def decide_strength_leq(f, k, type_vector=None, budget=DEFAULT_BUDGET):
    """Does f have a decomposition with at most k products (of the given type)?

    Raises BudgetExceeded when some type needed for the answer is too large
    to decide; a False answer is only returned when every type was decided.
    """
    _require_form(f)
    if k < 1:
        raise ValueError("k must be positive")
    d = f.degree
    if d <= 1:
        return StrengthDecision(False, k, method="linear", infinite_strength=True)
    if type_vector is not None:
        types = [normalize_type(type_vector, d)]
        if len(types[0]) != k:
            raise ValueError(f"type {type_vector} has length {len(types[0])}, expected {k}")
    else:
        types = enumerate_types(d, k)
    exceeded = None
    for t in types:
        try:
            if all(i == 1 for i in t):
                holds, cert = _decide_linear(f, k)
                method = "fano"
            elif k == 1:
                holds, cert = _decide_product(f, t[0], budget)
                method = "division"
            else:
                holds, cert = _decide_bilinear(f, t, budget)
                method = "bilinear"
        except BudgetExceeded as exc:
            log.info("type %s skipped: %s", t, exc)
            exceeded = exc
            continue
        if holds:
            return StrengthDecision(True, k, t, cert, method)
    if exceeded is not None:
        raise exceeded
    return StrengthDecision(False, k, types[0] if type_vector is not None else None, None, "exhausted")


# --------------------------------------------------------------------------
# plane curves through a point


def _row_as_field(point):
    return [to_field(c) for c in point]


def _height_ordered_rationals(bound):
    seen = set()
    out = []
    for h in range(0, bound + 1):
        for a in range(-h, h + 1):
            for b in range(1, h + 1):
                if max(abs(a), b) != h:
                    continue
                from gmpy2 import mpq

                r = mpq(a, b)
                if r not in seen:
                    seen.add(r)
                    out.append(r)
        if h == 0:
            out.append(ZERO)
            seen.add(ZERO)
    return out


def _univariate_in_x0(f, x1, x2):
    coeffs = [ZERO] * (f.degree + 1)
    for e, c in f.items():
        v = c
        if e[1]:
            v = v * x1 ** e[1]
        if e[2]:
            v = v * x2 ** e[2]
        coeffs[e[0]] = coeffs[e[0]] + v
    return coeffs


def find_rational_point(f, height=50):
    """A point of V(f) in P^2(Q) with small coordinates, or None.

    Scans the line x2 = 0 first, then the chart x2 = 1 with x1 running over
    rationals of increasing height, solving for x0 by the rational root test.
    """
    if f.num_vars != 3:
        raise ValueError("rational point search is for plane curves")
    if not f.is_real():
        return None
    if not f.evaluate([1, 0, 0]):
        return (ONE, ZERO, ZERO)
    for x2, x1_values in ((ZERO, [ONE]), (ONE, _height_ordered_rationals(height))):
        for x1 in x1_values:
            coeffs = _univariate_in_x0(f, x1, x2)
            if not any(coeffs):
                return (ZERO, x1, x2) if x2 else (ZERO, ONE, ZERO)
            roots = rational_roots(coeffs, bound=height)
            if roots:
                return (roots[0], x1, x2)
    return None


def find_gaussian_point(f, radius=2):
    """Brute-force search over small Gaussian-integer coordinates."""
    if f.num_vars != 3:
        raise ValueError("point search is for plane curves")
    vals = [gauss(a, b) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1)]
    vals.sort(key=lambda z: (abs(z.real_part) + abs(z.imag_part) if isinstance(z, GaussianRational) else abs(z), str(z)))
    if not f.evaluate([1, 0, 0]):
        return (ONE, ZERO, ZERO)
    for x0 in vals:
        if not f.evaluate([x0, 1, 0]):
            return (x0, ONE, ZERO)
    for x1 in vals:
        for x0 in vals:
            if not f.evaluate([x0, x1, 1]):
                return (x0, x1, ONE)
    return None


def point_ideal(point):
    """Linear forms x_k - (p_k / p_j) x_j, j the first nonzero coordinate."""
    p = _row_as_field(point)
    nv = len(p)
    j = next((k for k, c in enumerate(p) if c), None)
    if j is None:
        raise ValueError("the zero vector is not a projective point")
    forms = []
    for k in range(nv):
        if k == j:
            continue
        coeffs = [ZERO] * nv
        coeffs[k] = ONE
        coeffs[j] = -(p[k] / p[j])
        forms.append(HomogeneousPolynomial.linear(coeffs))
    return forms


def d14_decompose(f, point=None, height=50, gaussian=False):
    """Plane curve f = l0*u0 + l1*u1 with l0, l1 vanishing at a point of V(f)."""
    _require_form(f)
    if f.num_vars != 3:
        raise ValueError("expected a form in 3 variables")
    if f.degree < 2:
        raise DegreeMismatch("need degree at least 2")
    if point is None:
        point = find_rational_point(f, height)
        if point is None and gaussian:
            point = find_gaussian_point(f)
        if point is None:
            raise NoRationalPoint(f"no point of height <= {height} on the curve")
    if f.evaluate(point):
        raise ValueError("point does not lie on the curve")
    return _membership_certificate(f, point_ideal(point)), tuple(to_field(c) for c in point)


# --------------------------------------------------------------------------
# real forms


def realify(cert):
    """Real certificate from a Q(i) one, at most doubling its length.

    Each product f*g contributes Re(f)Re(g) and Im(f)(-Im(g)); their sum is
    Re(f*g), and the real parts add up to the (real) target.
    """
    if not cert.target.is_real():
        raise NotRealTarget("target has non-real coefficients")
    pairs = []
    for f, g in cert.pairs:
        rf, rg = f.real(), g.real()
        jf, jg = f.imag(), -g.imag()
        if not rf.is_zero() and not rg.is_zero():
            pairs.append((rf, rg))
        if not jf.is_zero() and not jg.is_zero():
            pairs.append((jf, jg))
    out = StrengthCertificate(cert.target, pairs)
    out.check()
    return out
