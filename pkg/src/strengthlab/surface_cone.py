"""Rank-2 Picard lattice arithmetic for surfaces in P^3 through a conic.

On a surface S of degree d containing a smooth conic D, with Pic(S) free on
D and the hyperplane class H, the residual curve E = H - D has negative
self-intersection, which pins down the effective cone.  A line class
aD + bH must satisfy 2a + bd = 1 and lie in that cone; ``line_obstruction``
checks the (finite) candidate list and records why each one fails.
"""

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import InvalidConeData, OutOfRange

ASSUMPTIONS = (
    "Pic(S) is freely generated by the conic class D and the hyperplane class H",
    "the residual curve E in |H - D| is integral with E^2 < 0 and E != D",
)


@dataclass(frozen=True)
class PicardLattice2:
    gram: tuple  # ((A.A, A.B), (A.B, B.B))
    E_coords: tuple = None  # (w, z) with [E] = w[A] + z[B]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        if len(g) != 2 or any(len(r) != 2 for r in g) or g[0][1] != g[1][0]:
            raise ValueError("gram must be a symmetric 2x2 integer matrix")
        object.__setattr__(self, "gram", g)
        if self.E_coords is not None:
            w, z = (mpq(x) for x in self.E_coords)
            if z == 0:
                raise InvalidConeData("z = 0 would make [E] proportional to [A]")
            object.__setattr__(self, "E_coords", (w, z))

    def intersect(self, u, v):
        g = self.gram
        return u[0] * v[0] * g[0][0] + (u[0] * v[1] + u[1] * v[0]) * g[0][1] + u[1] * v[1] * g[1][1]

    @classmethod
    def conic_surface(cls, d):
        """Lattice on (D, H) for a degree-d surface through a conic, with E = H - D."""
        _require_degree(d)
        return cls(((6 - 2 * d, 2), (2, d)), (-1, 1))


@dataclass(frozen=True)
class EffectiveCone:
    w: object
    z: object

    def contains(self, a, b):
        a, b = mpq(a), mpq(b)
        return b >= 0 and a * self.z - b * self.w >= 0

    def inequalities(self):
        return [f"b >= 0", f"{self.z}*a - ({self.w})*b >= 0"]

    def to_json(self):
        return {"w": str(self.w), "z": str(self.z), "inequalities": self.inequalities()}


def effective_cone(lattice):
    if lattice.E_coords is None:
        raise InvalidConeData("E coordinates are required")
    w, z = lattice.E_coords
    if z <= 0:
        raise InvalidConeData("z must be positive since B is effective")
    return EffectiveCone(w, z)


@dataclass(frozen=True)
class SurfaceInvariants:
    d: int
    D_sq: int
    D_H: int
    H_sq: int
    E_sq: int

    def to_json(self):
        return {"d": self.d, "D_sq": self.D_sq, "D_H": self.D_H, "H_sq": self.H_sq, "E_sq": self.E_sq}


def _require_degree(d):
    if d < 4:
        raise OutOfRange("the conic argument needs d >= 4 (so that D^2 < 0)")


def e_squared_routes(d):
    """E^2 from the lattice, and from adjunction on the plane curve E of degree d - 2."""
    lattice = PicardLattice2(((6 - 2 * d, 2), (2, d)))
    lattice_route = lattice.intersect((-1, 1), (-1, 1))
    adjunction_route = (d - 2) * (d - 5) - (d - 4) * (d - 2)
    return lattice_route, adjunction_route


def surface_invariants(d):
    _require_degree(d)
    via_lattice, via_adjunction = e_squared_routes(d)
    if via_lattice != via_adjunction:
        raise AssertionError(f"E^2 routes disagree at d={d}: {via_lattice} vs {via_adjunction}")
    return SurfaceInvariants(d, 6 - 2 * d, 2, d, via_lattice)


def line_obstruction(d):
    """Certificate that no integral class aD + bH has degree 1 and is effective."""
    _require_degree(d)
    cone = effective_cone(PicardLattice2.conic_surface(d))
    # a + b >= 0 with 2a = 1 - bd forces b(d - 2) <= 1
    b_max = 1 // (d - 2)
    violations = []
    for b in range(0, b_max + 2):
        twice_a = 1 - b * d
        entry = {"b": b, "two_a": twice_a}
        if twice_a % 2:
            entry["violation"] = "parity"
            entry["detail"] = f"2a = {twice_a} is odd"
        else:
            a = twice_a // 2
            entry["a"] = a
            if not cone.contains(a, b):
                entry["violation"] = "cone"
                entry["detail"] = f"a + b = {a + b} < 0"
            else:
                entry["violation"] = None
        violations.append(entry)
    feasible = [v for v in violations if v["violation"] is None]
    return {
        "d": d,
        "candidates_checked": len(violations),
        "violations": violations,
        "bound": f"b >= 0 and a + b >= 0 force b*(d-2) <= 1, so b <= {b_max}; b < 0 is outside the cone",
        "infeasible": not feasible,
        "assumptions": list(ASSUMPTIONS),
    }
