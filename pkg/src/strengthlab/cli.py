"""Command-line front end.  Every command produces one JSON report.

Exit codes: 0 success, 1 corpus failures, 2 mathematical infeasibility
(for example no rational point), 3 budget exceeded, 64 usage error.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
import json
import logging
import os
import random
import re
import sys

from . import cohomology as coh
from . import loci
from .certificate import StrengthCertificate
from .errors import BudgetExceeded, NoRationalPoint, StrengthLabError
from .ideal import GradedIdeal, hilbert_function, hilbert_quotient, ideal_dim_by_rank, is_regular_sequence
from .kernels import BACKEND
from .multiplication import build_mult_map, image_dim, koszul_formula_dim
from .poly import parse_poly
from .quadratic import QuadraticForm, quadratic_real_strength_bounds, quadratic_strength, real_one_term_possible
from .strength import d14_decompose, decide_strength_leq, realify, slice_rank, strength_one_test
from .surface_cone import PicardLattice2, effective_cone, line_obstruction, surface_invariants

log = logging.getLogger("strengthlab")

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_INFEASIBLE = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# input helpers

_VAR = re.compile(r"x(\d+)")


def _num_vars(n, *texts):
    if n is not None:
        return n + 1
    found = [int(m) for t in texts for m in _VAR.findall(t)]
    if not found:
        raise UsageError("cannot infer the number of variables; pass -n")
    return max(found) + 1


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _gram(text):
    return [[x.strip() for x in row.split(",")] for row in text.split(";") if row.strip()]


def _seed(args):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("STRENGTHLAB_SEED")
    return int(env) if env else 0


def _agree(formula, oracle):
    return {"formula_value": formula, "oracle_value": oracle, "agree": formula == oracle}


# --------------------------------------------------------------------------
# command handlers: each returns (inputs, result, provenance)


def cmd_slice_rank(args):
    nv = _num_vars(args.n, args.f)
    f = parse_poly(args.f, nv)
    res = slice_rank(f)
    return {"f": str(f), "n": nv - 1}, res.to_json(), None


def cmd_decide(args):
    nv = _num_vars(args.n, args.f)
    f = parse_poly(args.f, nv)
    t = _int_list(args.type) if args.type else None
    res = decide_strength_leq(f, args.k, t, budget=args.budget)
    return {"f": str(f), "n": nv - 1, "k": args.k, "type": t, "budget": args.budget}, res.to_json(), None


def cmd_one(args):
    nv = _num_vars(args.n, args.f)
    f = parse_poly(args.f, nv)
    res = strength_one_test(f)
    out = {
        "reducible": res.reducible,
        "infinite_strength": res.infinite_strength,
        "split": res.split,
        "certificate": res.certificate.to_json() if res.certificate else None,
    }
    return {"f": str(f), "n": nv - 1}, out, None


def cmd_quad(args):
    if args.gram:
        Q = QuadraticForm(_gram(args.gram))
    elif args.f:
        Q = QuadraticForm.from_polynomial(parse_poly(args.f, _num_vars(args.n, args.f)))
    else:
        raise UsageError("pass --gram or -f")
    bounds = quadratic_real_strength_bounds(Q)
    out = {
        "rank": Q.rank,
        "signature": list(Q.signature),
        "complex_strength": quadratic_strength(Q),
        "real_lower": bounds.lower,
        "real_upper": bounds.upper,
        "real_one_term_possible": real_one_term_possible(Q),
        "certificate": bounds.certificate.to_json(),
    }
    return {"form": str(Q.to_polynomial())}, out, None


def _load_cert(text):
    if text.lstrip().startswith("{"):
        return StrengthCertificate.from_json(text)
    with open(text) as fh:
        return StrengthCertificate.from_json(fh.read())


def cmd_realify(args):
    cert = _load_cert(args.cert)
    out = realify(cert)
    res = out.to_json()
    res["length"] = out.length
    res["input_length"] = cert.length
    res["verified"] = out.verify()
    return {"cert": cert.to_json()}, res, None


def cmd_d14(args):
    nv = _num_vars(args.n, args.f)
    f = parse_poly(args.f, nv)
    point = _int_list(args.point) if args.point else None
    cert, p = d14_decompose(f, point=point, height=args.height, gaussian=args.gaussian)
    res = cert.to_json()
    res["point"] = [str(c) for c in p]
    res["verified"] = cert.verify()
    return {"f": str(f), "point": args.point, "gaussian": args.gaussian}, res, None


def cmd_hilbert(args):
    gens = [g for g in args.gens.split(";") if g.strip()]
    nv = _num_vars(args.n, *gens)
    ideal = GradedIdeal([parse_poly(g, nv) for g in gens])
    count = hilbert_function(ideal, args.d)
    by_rank = ideal_dim_by_rank(ideal, args.d)
    res = {"ideal_dim": count, "quotient_dim": hilbert_quotient(ideal, args.d)}
    if len(gens) <= nv:
        rep = is_regular_sequence(list(ideal.generators))
        res["regular"] = rep.is_regular
        res["codimension"] = rep.codimension
    prov = {"ideal_dim": _agree(count, by_rank)}
    return {"gens": ideal.to_json(), "d": args.d}, res, prov


def cmd_multmap(args):
    W_text = [w for w in args.w.split(",") if w.strip()]
    nv = _num_vars(args.n, *W_text)
    W = [parse_poly(w, nv) for w in W_text]
    mmap = build_mult_map(W, args.d)
    rank = image_dim(mmap)
    e = W[0].degree
    m = len(W)
    space = coh.SpaceDescriptor((nv - 1,))
    h_values = [coh.h_twist(space, coh.LineBundleClass((args.d - k * e,)), 0) for k in range(1, m + 1)]
    formula = koszul_formula_dim(m, h_values)
    res = {"rank": rank, "koszul": formula, "shape": list(mmap.shape), "h_values": h_values}
    return {"W": [str(w) for w in W], "d": args.d, "n": nv - 1}, res, {"image_dim": _agree(formula, rank)}


def cmd_cohomology(args):
    space = coh.SpaceDescriptor(_int_list(args.space))
    bundle = coh.LineBundleClass(_int_list(args.bundle))
    h = coh.h_twist(space, bundle, args.i)
    return {"space": list(space.factor_dims), "bundle": list(bundle.multidegree), "i": args.i}, {"h": h}, None


def cmd_x3(args):
    space = coh.SpaceDescriptor(_int_list(args.space))
    M = coh.LineBundleClass(_int_list(args.M))
    L = coh.LineBundleClass(_int_list(args.L))
    check = coh.x3_hypotheses(space, M, L)
    res = check.to_json()
    res["bound"] = check.m if check.holds else None
    return {"space": list(space.factor_dims), "M": list(M.multidegree), "L": list(L.multidegree)}, res, None


def cmd_loci_dims(args):
    i, j = sorted((args.i, args.j))
    d = args.d
    z = loci.dim_Z(i, j)
    gamma, exceeds = loci.dim_Gamma(i, j, d)
    res = {
        "dim_Z": z,
        "dim_Gamma": gamma,
        "gamma_exceeds_linear_system": exceeds,
        "dim_S": loci.dim_decomposition_set(i, j),
        "count_types_k2": loci.count_types(d, 2),
    }
    prov = None
    if args.samples:
        rng = random.Random(args.seed_value)
        oracle = loci.fiber_dim_oracle(loci.LociQuery(2, d, (i, j)), samples=args.samples, rng=rng)
        res["oracle_dim_Z"] = oracle
        prov = {"dim_Z": _agree(z, oracle)}
    return {"i": i, "j": j, "d": d, "samples": args.samples}, res, prov


def cmd_cone_obstruct(args):
    return {"d": args.d}, line_obstruction(args.d), None


def cmd_cone_invariants(args):
    return {"d": args.d}, surface_invariants(args.d).to_json(), None


def cmd_cone_member(args):
    lattice = PicardLattice2(((0, 0), (0, 0)), (args.w, args.z))
    cone = effective_cone(lattice)
    res = cone.to_json()
    res["effective"] = cone.contains(args.a, args.b)
    return {"w": args.w, "z": args.z, "a": args.a, "b": args.b}, res, None


# --------------------------------------------------------------------------
# parser


def _add_common(p):
    p.add_argument("--seed", type=int, default=None, help="random seed (default: $STRENGTHLAB_SEED or 0)")


def _poly_args(p, need_f=True):
    p.add_argument("-n", type=int, default=None, help="ambient dimension of P^n (default: inferred)")
    if need_f:
        p.add_argument("-f", required=True, help="polynomial, e.g. 'x0*x1+x2*x3'")


def build_parser():
    parser = _Parser(prog="strengthlab", description=__doc__.splitlines()[0])
    _add_common(parser)
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, helptext, into=sub):
        p = into.add_parser(name, help=helptext)
        _add_common(p)
        p.set_defaults(func=func, command_name=name)
        return p

    def add_slice(into):
        p = add("slice-rank", cmd_slice_rank, "slice rank via Fano systems", into)
        _poly_args(p)

    def add_quad(into):
        p = add("quad", cmd_quad, "rank, signature and strength of a quadratic form", into)
        p.add_argument("--gram", help="rows separated by ';', entries by ','")
        _poly_args(p, need_f=False)
        p.add_argument("-f", default=None)

    def add_realify(into):
        p = add("realify", cmd_realify, "real certificate from a Q(i) certificate", into)
        p.add_argument("--cert", required=True, help="certificate JSON file or inline JSON")

    add_slice(sub)
    add_quad(sub)
    add_realify(sub)

    strength = sub.add_parser("strength", help="strength decisions and certificates")
    strength.set_defaults(func=None, command_name="strength")
    ssub = strength.add_subparsers(dest="strength_command", parser_class=_Parser)
    add_slice(ssub)
    add_quad(ssub)
    add_realify(ssub)
    p = add("decide", cmd_decide, "decide strength <= k", ssub)
    _poly_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--type", default=None, help="type vector, e.g. 1,1")
    p.add_argument("--budget", type=int, default=24, help="maximum number of unknowns")
    p = add("one", cmd_one, "strength-one (reducibility) test", ssub)
    _poly_args(p)
    p = add("d14", cmd_d14, "two-slice decomposition of a plane curve through a point", ssub)
    _poly_args(p)
    p.add_argument("--point", default=None, help="point on the curve, e.g. 1,-1,0")
    p.add_argument("--height", type=int, default=50)
    p.add_argument("--gaussian", action="store_true", help="also search small Gaussian-integer points")

    p = add("hilbert", cmd_hilbert, "Hilbert function of a homogeneous ideal")
    _poly_args(p, need_f=False)
    p.add_argument("--gens", required=True, help="generators separated by ';'")
    p.add_argument("-d", type=int, required=True)

    p = add("multmap", cmd_multmap, "rank of a multiplication map vs the Koszul formula")
    p.add_argument("-n", "--n", dest="n", type=int, default=None, help="ambient dimension of P^n")
    p.add_argument("-d", "--d", dest="d", type=int, required=True)
    p.add_argument("--w", required=True, help="W basis separated by ','")

    p = add("cohomology", cmd_cohomology, "h^i of a line bundle on a product of projective spaces")
    p.add_argument("--space", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--i", type=int, required=True)

    p = add("x3-check", cmd_x3, "cohomological hypotheses of the Koszul strength bound")
    p.add_argument("--space", required=True)
    p.add_argument("--M", required=True)
    p.add_argument("--L", required=True)

    lp = sub.add_parser("loci", help="dimension formulas")
    lp.set_defaults(func=None, command_name="loci")
    lsub = lp.add_subparsers(dest="loci_command", parser_class=_Parser)
    p = add("dims", cmd_loci_dims, "formula values and the sampled oracle", lsub)
    p.add_argument("-i", type=int, required=True)
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--samples", type=int, default=5, help="oracle samples (0 to skip)")

    cp = sub.add_parser("cone", help="Picard lattice computations")
    cp.set_defaults(func=None, command_name="cone")
    csub = cp.add_subparsers(dest="cone_command", parser_class=_Parser)
    p = add("obstruct", cmd_cone_obstruct, "no line on a general surface through a conic", csub)
    p.add_argument("-d", type=int, required=True)
    p = add("invariants", cmd_cone_invariants, "intersection numbers", csub)
    p.add_argument("-d", type=int, required=True)
    p = add("member", cmd_cone_member, "effective-cone membership", csub)
    for name in ("w", "z", "a", "b"):
        p.add_argument(f"--{name}", required=True)

    p = add("corpus", None, "run a corpus of cases")
    p.add_argument("path", nargs="?", default=None, help="JSONL corpus (default: bundled)")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _command_path(args):
    parts = [args.command]
    for attr in ("strength_command", "loci_command", "cone_command"):
        v = getattr(args, attr, None)
        if v:
            parts.append(v)
    return " ".join(p for p in parts if p)


def run(argv):
    """Parse ``argv`` and execute; returns (report dict, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return {"command": None, "error": {"type": "usage", "message": str(exc)}, "exit_status": EXIT_USAGE}, EXIT_USAGE
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else 0
        return None, code
    if args.command is None:
        return {"command": None, "error": {"type": "usage", "message": "missing subcommand"}, "exit_status": EXIT_USAGE}, EXIT_USAGE
    if args.command == "corpus":
        return corpus_run(args.path, jobs=args.jobs)
    command = _command_path(args)
    if getattr(args, "func", None) is None:
        return {"command": command, "error": {"type": "usage", "message": "missing subcommand"}, "exit_status": EXIT_USAGE}, EXIT_USAGE
    seed = _seed(args)
    args.seed_value = seed
    report = {"command": command, "seed": seed, "backend": BACKEND}
    try:
        inputs, result, provenance = args.func(args)
        code = EXIT_OK
        report.update(inputs=inputs, result=result)
        if provenance:
            report["provenance"] = provenance
    except NoRationalPoint as exc:
        code = EXIT_INFEASIBLE
        report.update(result=None, error={"type": "NoRationalPoint", "message": str(exc)})
    except BudgetExceeded as exc:
        code = EXIT_BUDGET
        report.update(result=None, error={"type": "BudgetExceeded", "message": str(exc), "unknowns": exc.unknowns, "budget": exc.budget})
    except (UsageError, StrengthLabError, ValueError, OSError) as exc:
        code = EXIT_USAGE
        report.update(result=None, error={"type": type(exc).__name__, "message": str(exc)})
    report["exit_status"] = code
    return report, code


# --------------------------------------------------------------------------
# corpus


def bundled_corpus_path():
    return str(resources.files("strengthlab").joinpath("data/corpus.jsonl"))


def subset_match(expected, actual):
    """Every key of ``expected`` is present in ``actual`` with a matching value."""
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and subset_match(v, actual[k]) for k, v in expected.items())
    if isinstance(expected, list):
        return isinstance(actual, list) and len(expected) == len(actual) and all(subset_match(e, a) for e, a in zip(expected, actual))
    return expected == actual


def _run_case(case):
    report, code = run(case["args"])
    expected = case.get("expected", {})
    exp_code = expected.get("exit_status", 0)
    exp_result = {k: v for k, v in expected.items() if k != "exit_status"}
    ok = code == exp_code and subset_match(exp_result, (report or {}).get("result") or {})
    return {"id": case["id"], "tag": case.get("tag"), "passed": ok, "exit_status": code, "result": (report or {}).get("result")}


def corpus_run(path=None, jobs=1):
    path = path or bundled_corpus_path()
    cases, malformed, warnings = [], [], []
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        return {"command": "corpus", "error": {"type": "OSError", "message": str(exc)}, "exit_status": EXIT_USAGE}, EXIT_USAGE
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            case = json.loads(line)
            if not isinstance(case, dict) or not {"id", "args"} <= case.keys() or not isinstance(case["args"], list):
                raise ValueError("case needs 'id' and a list 'args'")
            cases.append(case)
        except ValueError as exc:
            malformed.append({"line": lineno, "message": str(exc)})
    if not cases and not malformed:
        warnings.append("empty corpus: nothing to run")
        log.warning("empty corpus %s", path)
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_case, cases))
    else:
        outcomes = [_run_case(c) for c in cases]
    outcomes.sort(key=lambda o: str(o["id"]))
    failed = [o for o in outcomes if not o["passed"]]
    code = EXIT_FAILURES if failed or malformed else EXIT_OK
    report = {
        "command": "corpus",
        "inputs": {"path": os.path.basename(path)},
        "result": {
            "cases": len(outcomes),
            "passed": len(outcomes) - len(failed),
            "failed": [o["id"] for o in failed],
            "malformed": malformed,
            "outcomes": outcomes,
        },
        "warnings": warnings,
        "exit_status": code,
    }
    return report, code


# --------------------------------------------------------------------------


def render_text(report, indent=0):
    lines = []
    pad = "  " * indent
    if isinstance(report, dict):
        for k in sorted(report):
            v = report[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(report, list):
        for v in report:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    return "\n".join(lines)


def _wants_text(argv):
    for k, a in enumerate(argv):
        if a == "--format=text" or (a == "--format" and argv[k + 1:k + 2] == ["text"]):
            return True
    return False


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    argv = sys.argv[1:] if argv is None else argv
    report, code = run(argv)
    if report is not None:
        if _wants_text(argv):
            print(render_text(report))
        else:
            print(json.dumps(report, sort_keys=True, indent=2))
        if report.get("error", {}).get("type") == "usage":
            print(f"usage error: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
