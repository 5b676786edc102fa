"""Small exact solvers used to turn solvability into explicit witnesses."""

from gmpy2 import mpq

from .field import I, ONE, ZERO, GaussianRational, denominator_lcm, is_real
from .ideal import groebner_terms, solvable_over_closure

# tried in order for each unknown before falling back to rational roots
CANDIDATES = (
    ZERO, ONE, -ONE, mpq(2), mpq(-2), I, -I, ONE + I, ONE - I, -ONE + I, -ONE - I,
    mpq(3), mpq(-3), mpq(1, 2), mpq(-1, 2), 2 * I, -2 * I,
)


def _divisors_upto(value, bound):
    value = abs(int(value))
    return [q for q in range(1, min(value, bound) + 1) if value % q == 0]


def rational_roots(coeffs, bound=None):
    """Rational roots of sum coeffs[k] * t^k (rational coefficients), sorted.

    With ``bound`` only roots whose numerator and denominator are at most
    ``bound`` in absolute value are reported.
    """
    coeffs = [mpq(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = []
    shift = 0
    while not coeffs[shift]:
        shift += 1
    if shift:
        roots.append(ZERO)
    coeffs = coeffs[shift:]
    if len(coeffs) == 1:
        return roots
    scale = denominator_lcm(coeffs)
    ints = [int(c * scale) for c in coeffs]
    a0, an = ints[0], ints[-1]
    cap = bound if bound is not None else max(abs(a0), abs(an))
    found = set()
    for p in _divisors_upto(a0, cap):
        for q in _divisors_upto(an, cap):
            for s in (p, -p):
                r = mpq(s, q)
                if r in found:
                    continue
                v = ZERO
                for c in reversed(ints):
                    v = v * r + c
                if not v:
                    found.add(r)
    return sorted(roots + list(found))


def eval_var(p, j, value):
    """Substitute unknown ``j`` by ``value`` in a term dict (the slot stays, exponent 0)."""
    out = {}
    for e, c in p.items():
        k = e[j]
        if k:
            c = c * value**k
            e = e[:j] + (0,) + e[j + 1:]
        if not c:
            continue
        w = out.get(e)
        if w is None:
            out[e] = c
        else:
            w = w + c
            if w:
                out[e] = w
            else:
                del out[e]
    return out


def _univariate_roots(system, nvars, j):
    """Rational roots of a basis element that involves only unknown ``j``."""
    basis = groebner_terms(system, nvars, stop_on_unit=True)
    for b in basis:
        if all(all(x == 0 for i, x in enumerate(e) if i != j) for e in b):
            if all(is_real(c) for c in b.values()):
                top = max(e[j] for e in b)
                coeffs = [ZERO] * (top + 1)
                for e, c in b.items():
                    coeffs[e[j]] = c
                return rational_roots(coeffs, bound=1000)
    return []


def find_rational_solution(system, nvars, candidates=CANDIDATES):
    """Greedy search for a common zero with coordinates in Q(i).

    Each unknown in turn is fixed to the first candidate that keeps the
    system solvable over the closure; when no small candidate works, rational
    roots of a univariate basis element are tried.  Returns the list of
    values or None (a failed search says nothing about solvability).
    """
    system = [p for p in system if p]
    if not _solvable(system):
        return None
    values = []
    for j in range(nvars):
        chosen = None
        tried = []
        for v in candidates:
            trial = [eval_var(p, j, v) for p in system]
            tried.append(v)
            if _solvable(trial):
                chosen, system = v, trial
                break
        if chosen is None:
            for v in _univariate_roots(system, nvars, j):
                if v in tried:
                    continue
                trial = [eval_var(p, j, v) for p in system]
                if _solvable(trial):
                    chosen, system = v, trial
                    break
        if chosen is None:
            return None
        values.append(chosen)
    if any(p for p in system):
        return None
    return values


def _solvable(system):
    system = [p for p in system if p]
    if not system:
        return True
    return solvable_over_closure(system)
