"""Strength decompositions f = sum f_h * g_h and their exact verification.

``verify_pairs`` expands the products with its own dense loop instead of the
polynomial arithmetic used to build certificates, so a bug on the
construction side cannot vouch for itself.
"""

from dataclasses import dataclass
import json

from .errors import CertificateError
from .field import ZERO, to_field
from .poly import HomogeneousPolynomial, parse_poly


def _expand(pairs, num_vars):
    acc = {}
    for f, g in pairs:
        for ea, ca in f.items():
            for eb, cb in g.items():
                key = tuple(ea[j] + eb[j] for j in range(num_vars))
                acc[key] = acc.get(key, ZERO) + ca * cb
    return {e: c for e, c in acc.items() if c}


def verify_pairs(target, pairs):
    """True when the products sum exactly to ``target``."""
    expected = {e: to_field(c) for e, c in target.items()}
    return _expand(pairs, target.num_vars) == expected


def normalized_type(f_deg, g_deg):
    return min(f_deg, g_deg)


@dataclass(frozen=True)
class StrengthCertificate:
    target: HomogeneousPolynomial
    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((f, g) for f, g in self.pairs))

    @property
    def type_vector(self):
        return tuple(normalized_type(f.degree, g.degree) for f, g in self.pairs)

    @property
    def length(self):
        return len(self.pairs)

    def check(self):
        """Raise CertificateError unless every structural and algebraic condition holds."""
        d = self.target.degree
        nv = self.target.num_vars
        for f, g in self.pairs:
            if f.num_vars != nv or g.num_vars != nv:
                raise CertificateError("factor lives in a different ring")
            if f.is_zero() or g.is_zero():
                raise CertificateError("zero factor in a decomposition")
            if f.degree + g.degree != d:
                raise CertificateError(f"factor degrees {f.degree}+{g.degree} do not add to {d}")
            if not 1 <= min(f.degree, g.degree) <= d // 2:
                raise CertificateError("constant factor is not a genuine product")
        if not verify_pairs(self.target, self.pairs):
            raise CertificateError("products do not sum to the target")
        return True

    def verify(self):
        try:
            return self.check()
        except CertificateError:
            return False

    def is_real(self):
        return all(f.is_real() and g.is_real() for f, g in self.pairs)

    def to_json(self):
        return {
            "target": str(self.target),
            "num_vars": self.target.num_vars,
            "type": list(self.type_vector),
            "pairs": [{"f": str(f), "g": str(g)} for f, g in self.pairs],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data, num_vars=None):
        if isinstance(data, str):
            data = json.loads(data)
        nv = data.get("num_vars", num_vars)
        if nv is None:
            raise ValueError("certificate JSON needs num_vars")
        target = parse_poly(data["target"], nv)
        pairs = [(parse_poly(p["f"], nv), parse_poly(p["g"], nv)) for p in data["pairs"]]
        return cls(target, pairs)

    def __str__(self):
        return " + ".join(f"({f})*({g})" for f, g in self.pairs) or "0"
