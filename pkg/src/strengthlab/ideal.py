"""Gröbner bases, graded membership and Hilbert functions over Q(i).

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Möller installation of both Buchberger criteria, under the global
grlex order.  The same engine serves homogeneous ideals (membership,
Hilbert functions) and the affine systems behind the solvability queries
of the strength module.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
import threading

from .errors import DegreeMismatch, TooManyForms, ZeroSectionError
from .field import ONE, ZERO
from .linalg import rank
from .poly import (
    HomogeneousPolynomial,
    as_poly,
    coefficient_vector,
    grlex_key,
    monomial_basis,
    monomial_index,
    parse_terms,
    t_add,
    t_mul,
    t_mul_term,
    t_scale,
    t_sub,
)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _lead(p):
    return max(p, key=grlex_key)


def _monic(p):
    lm = _lead(p)
    c = p[lm]
    if c == 1:
        return p, ONE
    inv = ONE / c
    return {e: v * inv for e, v in p.items()}, inv


def _reduce(p, basis, lms, quotients=None):
    """Full normal form of ``p`` modulo monic ``basis``.

    When ``quotients`` (a list of dicts, one per basis element) is given, the
    multipliers used are accumulated there.
    """
    p = dict(p)
    rem = {}
    while p:
        m = max(p, key=grlex_key)
        c = p[m]
        for j, lm in enumerate(lms):
            if _divides(lm, m):
                delta = tuple(a - b for a, b in zip(m, lm))
                for e, v in basis[j].items():
                    e2 = tuple(a + b for a, b in zip(e, delta))
                    w = p.get(e2)
                    if w is None:
                        p[e2] = -(c * v)
                    else:
                        w = w - c * v
                        if w:
                            p[e2] = w
                        else:
                            del p[e2]
                if quotients is not None:
                    q = quotients[j]
                    w = q.get(delta)
                    q[delta] = c if w is None else w + c
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _is_constant(p):
    return len(p) == 1 and not any(next(iter(p)))


class _Buchberger:
    """Mutable state of one Buchberger run; ``track`` keeps cofactors."""

    def __init__(self, nvars, track=False, ninputs=0):
        self.nvars = nvars
        self.track = track
        self.ninputs = ninputs
        self.polys = []
        self.lms = []
        self.reps = []
        self.active = []
        self.pairs = []
        self.unit = False

    def _active_lists(self):
        return [self.polys[i] for i in self.active], [self.lms[i] for i in self.active]

    def _nf(self, p, rep):
        basis, lms = self._active_lists()
        if not self.track:
            return _reduce(p, basis, lms), None
        quots = [{} for _ in basis]
        rem = _reduce(p, basis, lms, quots)
        for q, i in zip(quots, self.active):
            if q:
                for k in range(self.ninputs):
                    if self.reps[i][k]:
                        rep[k] = t_sub(rep[k], t_mul(q, self.reps[i][k]))
        return rem, rep

    def add(self, p, rep=None):
        h, rep = self._nf(p, rep)
        if not h:
            return
        h, inv = _monic(h)
        if self.track:
            rep = [t_scale(r, inv) for r in rep]
        self._install(h, rep)

    def _install(self, h, rep):
        lm_h = _lead(h)
        idx = len(self.polys)
        self.polys.append(h)
        self.lms.append(lm_h)
        self.reps.append(rep)
        if _is_constant(h):
            self.unit = True
        lms = self.lms
        lcm_of = {g: _lcm(lms[g], lm_h) for g in self.active}
        cands = list(self.active)
        kept = []
        while cands:
            g1 = cands.pop(0)
            l1 = lcm_of[g1]
            if _coprime(lms[g1], lm_h) or not any(_divides(lcm_of[g2], l1) for g2 in cands + kept):
                kept.append(g1)
        new_pairs = [(g, idx) for g in kept if not _coprime(lms[g], lm_h)]
        survivors = []
        for (a, b, l) in self.pairs:
            if _divides(lm_h, l) and _lcm(lms[a], lm_h) != l and _lcm(lms[b], lm_h) != l:
                continue
            survivors.append((a, b, l))
        survivors.extend((a, b, _lcm(lms[a], lms[b])) for a, b in new_pairs)
        self.pairs = survivors
        self.active = [g for g in self.active if not _divides(lm_h, lms[g])] + [idx]

    def run(self, stop_on_unit=False):
        while self.pairs and not (stop_on_unit and self.unit):
            best = min(range(len(self.pairs)), key=lambda k: (grlex_key(self.pairs[k][2]), self.pairs[k][:2]))
            a, b, l = self.pairs.pop(best)
            fa, fb = self.polys[a], self.polys[b]
            da = tuple(x - y for x, y in zip(l, self.lms[a]))
            db = tuple(x - y for x, y in zip(l, self.lms[b]))
            s = t_sub(t_mul_term(fa, da, ONE), t_mul_term(fb, db, ONE))
            rep = None
            if self.track:
                rep = [
                    t_sub(t_mul_term(ra, da, ONE), t_mul_term(rb, db, ONE))
                    for ra, rb in zip(self.reps[a], self.reps[b])
                ]
            self.add(s, rep)

    def reduced(self):
        """Interreduce the active set; returns (polys, reps) sorted by LM."""
        order = sorted(self.active, key=lambda i: grlex_key(self.lms[i]))
        polys, reps = [], []
        for i in order:
            others = [j for j in order if j != i]
            basis = [self.polys[j] for j in others]
            lms = [self.lms[j] for j in others]
            p = self.polys[i]
            if self.track:
                quots = [{} for _ in others]
                g = _reduce(p, basis, lms, quots)
                rep = list(self.reps[i])
                for q, j in zip(quots, others):
                    if q:
                        for k in range(self.ninputs):
                            if self.reps[j][k]:
                                rep[k] = t_sub(rep[k], t_mul(q, self.reps[j][k]))
                reps.append(rep)
            else:
                g = _reduce(p, basis, lms)
            polys.append(g)
        return polys, reps


def groebner_terms(polys, nvars, stop_on_unit=False):
    """Reduced Gröbner basis of raw term dicts (monic, ascending LM)."""
    bb = _Buchberger(nvars)
    for p in polys:
        if p:
            bb.add(p)
            if stop_on_unit and bb.unit:
                return [{(0,) * nvars: ONE}]
    bb.run(stop_on_unit=stop_on_unit)
    if bb.unit:
        return [{(0,) * nvars: ONE}]
    return bb.reduced()[0]


def _groebner_tracked(polys, nvars):
    k = len(polys)
    bb = _Buchberger(nvars, track=True, ninputs=k)
    one = {(0,) * nvars: ONE}
    for j, p in enumerate(polys):
        rep = [dict(one) if i == j else {} for i in range(k)]
        bb.add(p, rep)
    bb.run()
    return bb.reduced()


# --------------------------------------------------------------------------


class GradedIdeal:
    """Homogeneous ideal given by generators, with a lazily cached basis."""

    def __init__(self, generators, num_vars=None):
        gens = [as_poly(g, num_vars) for g in generators]
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        nv = gens[0].num_vars
        if any(g.num_vars != nv for g in gens):
            raise ValueError("generators live in different rings")
        if any(g.is_zero() for g in gens):
            raise ZeroSectionError("generators must be nonzero")
        self.generators = tuple(gens)
        self.num_vars = nv
        self._basis = None
        self._lock = threading.Lock()

    @property
    def cached_basis(self):
        return self._basis

    def basis(self):
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    polys = groebner_terms([g._terms for g in self.generators], self.num_vars)
                    self._basis = tuple(
                        HomogeneousPolynomial._raw(self.num_vars, sum(_lead(p)), p) for p in polys
                    )
        return self._basis

    def leading_monomials(self):
        return [g.leading_term()[0] for g in self.basis()]

    def reduce(self, f):
        basis = self.basis()
        rem = _reduce(f._terms, [b._terms for b in basis], [b.leading_term()[0] for b in basis])
        return HomogeneousPolynomial._raw(f.num_vars, f.degree, rem)

    def contains(self, f):
        return self.reduce(f).is_zero()

    def to_json(self):
        return [str(g) for g in self.generators]

    @classmethod
    def from_json(cls, items, num_vars):
        return cls(items, num_vars)

    def __repr__(self):
        return f"GradedIdeal({[str(g) for g in self.generators]})"


def _as_ideal(ideal):
    if isinstance(ideal, GradedIdeal):
        return ideal
    return GradedIdeal(ideal)


def groebner(ideal):
    """Reduced Gröbner basis (grlex) as a list of homogeneous polynomials."""
    return list(_as_ideal(ideal).basis())


def is_reduced_basis(basis):
    lms = [b.leading_term()[0] for b in basis]
    for i, b in enumerate(basis):
        if b.leading_term()[1] != 1:
            return False
        for j, lm in enumerate(lms):
            if i != j and any(_divides(lm, e) for e, _ in b.items()):
                return False
    return True


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipWitness:
    member: bool
    cofactors: tuple = None

    def verify(self, f, factors):
        if not self.member:
            return True
        total = HomogeneousPolynomial.zero(f.num_vars, f.degree)
        for fh, gh in zip(factors, self.cofactors):
            if not gh.is_zero():
                total = total + fh * gh
        return total == f


def _mult_rows(factors, d):
    """Coefficient vectors of ``monomial * factor`` spanning the degree-d piece."""
    rows = []
    for fh in factors:
        if fh.is_zero() or fh.degree > d:
            continue
        for mono in monomial_basis(fh.num_vars, d - fh.degree):
            prod = HomogeneousPolynomial._raw(fh.num_vars, d, t_mul_term(fh._terms, mono, ONE))
            rows.append(coefficient_vector(prod))
    return rows


def membership_dense(f, factors):
    """Independent oracle: is ``f`` in the span of ``monomial * factor``?"""
    rows = _mult_rows(factors, f.degree)
    if not rows:
        return f.is_zero()
    return rank(rows + [coefficient_vector(f)]) == rank(rows)


def graded_membership(f, fixed_factors, cross_check=True):
    """Decide ``f in (fixed_factors)`` and return cofactors when it is.

    Division by a cofactor-tracking Gröbner basis; with ``cross_check`` the
    answer is compared against :func:`membership_dense`.
    """
    if f.is_zero():
        raise ZeroSectionError("membership is only asked for nonzero forms")
    factors = [as_poly(g) for g in fixed_factors]
    for g in factors:
        if g.num_vars != f.num_vars:
            raise ValueError("factor lives in a different ring")
        if g.degree > f.degree and not g.is_zero():
            raise DegreeMismatch(f"factor of degree {g.degree} exceeds target degree {f.degree}")
    live = [k for k, g in enumerate(factors) if not g.is_zero()]
    nv = f.num_vars
    if live:
        basis, reps = _groebner_tracked([factors[k]._terms for k in live], nv)
        # divide by the largest leading monomials first
        basis, reps = basis[::-1], reps[::-1]
        lms = [_lead(b) for b in basis]
        quots = [{} for _ in basis]
        rem = _reduce(f._terms, basis, lms, quots)
    else:
        rem = dict(f._terms)
    member = not rem
    if cross_check and member != membership_dense(f, factors):
        raise AssertionError("division and dense linear algebra disagree on membership")
    if not member:
        return MembershipWitness(False, None)
    cof_terms = [{} for _ in live]
    for q, rep in zip(quots, reps):
        if q:
            for slot in range(len(live)):
                if rep[slot]:
                    cof_terms[slot] = t_add(cof_terms[slot], t_mul(q, rep[slot]))
    cofactors = []
    for k, g in enumerate(factors):
        deg = f.degree - g.degree if g.degree <= f.degree else 0
        terms = {}
        if k in live:
            raw = cof_terms[live.index(k)]
            terms = {e: c for e, c in raw.items() if sum(e) == deg}
        cofactors.append(HomogeneousPolynomial._raw(nv, deg, terms))
    witness = MembershipWitness(True, tuple(cofactors))
    if not witness.verify(f, factors):
        raise AssertionError("cofactors failed exact re-expansion")
    return witness


# --------------------------------------------------------------------------


def _standard_count(lms, nvars, d):
    return sum(1 for e in monomial_basis(nvars, d) if not any(_divides(lm, e) for lm in lms))


def hilbert_function(ideal, d):
    """Dimension of the degree-``d`` piece of the ideal (standard-monomial count)."""
    ideal = _as_ideal(ideal)
    total = comb(ideal.num_vars - 1 + d, d)
    return total - _standard_count(ideal.leading_monomials(), ideal.num_vars, d)


def hilbert_quotient(ideal, d):
    ideal = _as_ideal(ideal)
    return _standard_count(ideal.leading_monomials(), ideal.num_vars, d)


def ideal_dim_by_rank(ideal, d):
    """Same number as :func:`hilbert_function`, from the generator products."""
    ideal = _as_ideal(ideal)
    rows = _mult_rows(ideal.generators, d)
    return rank(rows) if rows else 0


def complete_intersection_quotient(num_vars, degrees, d):
    """Coefficient of t^d in prod(1 - t^i) / (1 - t)^num_vars."""
    n = num_vars - 1
    total = 0
    for size in range(len(degrees) + 1):
        for subset in combinations(degrees, size):
            shift = d - sum(subset)
            if shift >= 0:
                total += (-1) ** size * comb(n + shift, n)
    return total


def krull_dimension(leading_monomials, nvars):
    """Affine dimension of R/in(I): largest variable set missing every LM's support."""
    supports = [frozenset(j for j, x in enumerate(lm) if x) for lm in leading_monomials]
    if any(not s for s in supports):
        return 0
    best = 0
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return best


@dataclass(frozen=True)
class RegularSequenceReport:
    is_regular: bool
    codimension: int
    expected_codimension: int
    hilbert_consistent: bool = None


def is_regular_sequence(forms, check_degree=None):
    forms = [as_poly(f) for f in forms]
    if not forms:
        raise ValueError("need at least one form")
    nv = forms[0].num_vars
    k = len(forms)
    if k > nv:
        raise TooManyForms(f"{k} forms in {nv} variables")
    ideal = GradedIdeal(forms)
    dim = krull_dimension(ideal.leading_monomials(), nv)
    codim = nv - dim
    regular = codim == k
    consistent = None
    if k <= 3:
        degrees = [f.degree for f in forms]
        top = check_degree if check_degree is not None else sum(degrees) + 2
        consistent = all(
            hilbert_quotient(ideal, d) == complete_intersection_quotient(nv, degrees, d) for d in range(top + 1)
        )
        if regular and not consistent:
            raise AssertionError("regular sequence with a non-complete-intersection Hilbert function")
    return RegularSequenceReport(regular, codim, k, consistent)


# --------------------------------------------------------------------------


def solvable_over_closure(system, num_unknowns=None):
    """Weak Nullstellensatz: is there a common zero over the algebraic closure?

    ``system`` holds raw term dicts or strings in the unknowns ``x0..``.
    """
    polys = []
    for p in system:
        if isinstance(p, str):
            if num_unknowns is None:
                raise ValueError("num_unknowns is required for string input")
            p = parse_terms(p, num_unknowns)
        elif isinstance(p, HomogeneousPolynomial):
            p = p._terms
        if p:
            polys.append(p)
    if not polys:
        return True
    nv = len(next(iter(polys[0])))
    if any(_is_constant(p) for p in polys):
        return False
    basis = groebner_terms(polys, nv, stop_on_unit=True)
    return not (len(basis) == 1 and _is_constant(basis[0]))
