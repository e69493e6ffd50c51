"""Command-line front end.

Exit codes: 0 the property holds, 1 it is refuted (a witness is reported),
2 invalid input, 3 inconclusive or an internal cross-check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from fractions import Fraction

from . import hyperbolic as hyp
from .errors import CrossCheckFailure, ParseError, RealFibError
from .interlace import PairVerdict, RationalMapP1, classify_forms, mobius_power_map, real_ramification
from .koszul import (CommutingPencilSystem, check_symmetry_theorem, curve_pencil_system, exactness_probe,
                     koszul, random_symmetric_system, wedge_compose)
from .linalg import det, signature
from .livsic import (Component, LivsicDual, LivsicTensor, cycle_degree, evaluate_at_center, hodge_dual,
                     membership)
from .parsing import infer_variables, parse_poly
from .polys import UniPoly, format_poly, format_unipoly, restrict_to_line, squarefree_part
from .realroots import hermite_matrix, is_real_rooted, isolate_real_roots, sturm_count
from .report import Report
from .tracetest import FiberVerdict, FinitePresentation, map_to_presentation, real_fibered_certificate, trace_form

OK, REFUTED, INVALID, INCONCLUSIVE = 0, 1, 2, 3

log = logging.getLogger(__name__)


# input helpers

def rational(x) -> Fraction:
    """A rational constant, given as a number or a constant expression."""
    if isinstance(x, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise ValueError("floating point input is not accepted; use p/q")
    p = parse_poly(str(x), ())
    return p()


def matrix(x) -> list[list[Fraction]]:
    if not isinstance(x, list) or not x or not all(isinstance(r, list) for r in x):
        raise ValueError(f"expected a matrix, got {x!r}")
    return [[rational(e) for e in row] for row in x]


def point(text: str) -> list[Fraction]:
    text = text.strip()
    if text.startswith("["):
        return [rational(c) for c in json.loads(text)]
    return [rational(c) for c in text.split(",")]


def load_json(text: str):
    """Inline JSON, or the contents of a file of that name."""
    if os.path.isfile(text):
        with open(text) as fh:
            return json.load(fh)
    return json.loads(text)


def fmt_matrix(M, variables=None):
    if variables is None:
        return [[str(e) for e in row] for row in M]
    return [[format_poly(e, variables) for e in row] for row in M]


def linear_form(text: str, nvars: int) -> list[Fraction]:
    names = tuple(f"x{i}" for i in range(nvars))
    p = parse_poly(text, names)
    if not p.is_zero() and not (p.is_homogeneous() and p.total_degree == 1):
        raise ValueError(f"{text!r} is not a linear form")
    return [p.coeff(tuple(int(i == j) for j in range(nvars))) for i in range(nvars)]


BINARY = ("s", "t")


# subcommands; each returns (Report, exit code)

def cmd_realroots(args):
    p = parse_poly(args.p)
    if p.nvars > 1:
        raise ValueError("realroots needs a univariate polynomial")
    u = p.to_unipoly(0) if p.nvars == 1 else UniPoly((p(),))
    var = infer_variables([args.p]) or ("t",)
    cert = is_real_rooted(u)
    certs = {
        "distinct_real_roots": cert.distinct_real_roots,
        "distinct_complex_roots": cert.distinct_complex_roots,
        "method": cert.method,
        "isolating_intervals": [list(iv) for iv in isolate_real_roots(u)],
    }
    q = squarefree_part(u)
    if q.degree >= 1:
        H = hermite_matrix(q)
        certs["hermite_matrix"] = fmt_matrix(H)
        certs["hermite_signature"] = signature(H).as_tuple()
    rep = Report("realroots", {"p": format_unipoly(u, var[0])}, {"roots": cert.verdict}, certs)
    return rep, OK if cert.all_real else REFUTED


def _pair_report(command, inputs, f, g, extra=None):
    cls = classify_forms(f, g)
    certs = dict(extra or {})
    certs["f"] = format_poly(f, BINARY)
    certs["g"] = format_poly(g, BINARY)
    if cls.verdict is PairVerdict.COMMON_ZERO:
        return Report(command, inputs, {"pair": cls.verdict}, certs), REFUTED
    certs["bezoutian"] = fmt_matrix(cls.bezoutian)
    certs["signature"] = cls.signature.as_tuple()
    certs["determinant"] = det(cls.bezoutian)
    certs["pencil_samples"] = cls.samples
    if cls.witness is not None:
        certs["witness"] = list(cls.witness)
    certs["real_ramification"] = [str(pt) for pt in real_ramification(RationalMapP1(f, g))]
    return Report(command, inputs, {"pair": cls.verdict}, certs), OK if cls.real_fibered else REFUTED


def cmd_interlace(args):
    f = parse_poly(args.f, BINARY)
    g = parse_poly(args.g, BINARY)
    return _pair_report("interlace", {"f": args.f, "g": args.g}, f, g)


def _hyp_form(args):
    if args.f is None:
        return None, None
    variables = infer_variables([args.f])
    return parse_poly(args.f, variables), variables


def cmd_hyp_search(args):
    f, _ = _hyp_form(args)
    pencil = [matrix(A) for A in load_json(args.pencil)] if args.pencil else None
    if f is None and pencil is None:
        raise ValueError("give --f, --pencil or both")
    e = point(args.e)
    budget = args.budget if args.budget is not None else 200
    v = hyp.hyperbolicity_search(f, e, budget=budget, seed=args.seed, pencil=pencil)
    certs = {"samples": v.samples, "reason": v.reason}
    if v.witness is not None:
        certs["witness_direction"] = list(v.witness)
    inputs = {"f": args.f, "e": e, "pencil": args.pencil, "budget": budget}
    code = {hyp.HypStatus.CERTIFIED: OK, hyp.HypStatus.REFUTED: REFUTED}.get(v.status, INCONCLUSIVE)
    return Report("hyperbolic search", inputs, {"hyperbolicity": v.status}, certs, seed=args.seed), code


def cmd_hyp_direction(args):
    f, variables = _hyp_form(args)
    e, x = point(args.e), point(args.x)
    ok = hyp.direction_test(f, e, x)
    line = restrict_to_line(f, e, x)
    cert = is_real_rooted(line) if line.degree > 0 else None
    certs = {"restriction": format_unipoly(line, "t")}
    if cert is not None:
        certs["distinct_real_roots"] = cert.distinct_real_roots
        certs["distinct_complex_roots"] = cert.distinct_complex_roots
    rep = Report("hyperbolic direction", {"f": args.f, "e": e, "x": x},
                 {"direction": "AllRealRoots" if ok else "NotAllReal"}, certs)
    return rep, OK if ok else REFUTED


def _curve_param(args):
    if args.param:
        return [parse_poly(p, BINARY) for p in args.param]
    if args.curve == "twisted-cubic":
        return list(hyp.twisted_cubic())
    return list(hyp.rational_normal_curve(args.degree))


def cmd_hyp_project(args):
    param = _curve_param(args)
    forms = [linear_form(c, len(param)) for c in args.center]
    cc = hyp.CurveCenter(tuple(param), tuple(forms))
    m = hyp.project_curve(cc)
    inputs = {"param": [format_poly(p, BINARY) for p in param], "center": args.center}
    return _pair_report("hyperbolic project-curve", inputs, m.f, m.g)


def cmd_hyp_intersect(args):
    names = ("x0", "x1", "x2")
    f, g = parse_poly(args.f, names), parse_poly(args.g, names)
    res = hyp.curve_pair_real_intersections(f, g, seed=args.seed)
    verdict = "AllReal" if res.real_count == res.total_count else "NonRealPoints"
    certs = {"real_count": res.real_count, "total_count": res.total_count, "bezout_bound": res.bezout_bound,
             "transversal": res.transversal, "seeds": res.seeds}
    rep = Report("hyperbolic intersect", {"f": args.f, "g": args.g}, {"intersection": verdict}, certs,
                 seed=args.seed)
    return rep, OK if verdict == "AllReal" else REFUTED


def cmd_hyp_parity(args):
    par, reason = hyp.dividing_parity(args.genus, args.components)
    rep = Report("hyperbolic parity", {"genus": args.genus, "components": args.components},
                 {"dividing": par}, {"reason": reason})
    return rep, OK if par is hyp.Parity.POSSIBLE else REFUTED


def _veronese(command, center, budget, seed):
    res = hyp.veronese_refutation(center, budget=budget, seed=seed)
    inputs = {"center": [[Fraction(c) for c in row] for row in center], "budget": budget}
    certs = {"witness_point": res.witness, "real_count": res.real_count, "total_count": res.total_count,
             "samples": res.samples}
    rep = Report(command, inputs, {"veronese": res.status}, certs, seed=seed)
    return rep, REFUTED if res.status is hyp.VeroneseStatus.FOUND else INCONCLUSIVE


def cmd_hyp_veronese(args):
    if args.center:
        center = [[rational(c) for c in row] for row in load_json(args.center)]
    else:
        center = hyp.random_veronese_center(random.Random(args.seed))
    budget = args.budget if args.budget is not None else 100
    return _veronese("hyperbolic veronese", center, budget, args.seed)


# determinantal representations

def load_tensor(data):
    if "pencil" in data:
        return LivsicTensor.from_pencil([matrix(A) for A in data["pencil"]])
    d, k = int(data["d"]), int(data["k"])
    kind = data.get("form", "primal")
    cls = {"primal": LivsicTensor, "dual": LivsicDual}[kind]
    coeffs = {tuple(int(i) for i in c["key"]): matrix(c["matrix"]) for c in data["coeffs"]}
    n = len(next(iter(coeffs.values())))
    return cls(d, k, n, coeffs)


def load_component(c) -> Component:
    label = c.get("label", "?")
    if "point" in c:
        return Component.point(label, [rational(x) for x in c["point"]], int(c.get("degree", 1)))
    if "hyperplane" in c:
        return Component.hyperplane(label, [rational(x) for x in c["hyperplane"]])
    if "forms" in c:
        variables = infer_variables(c["forms"])
        return Component.curve(label, [parse_poly(p, variables) for p in c["forms"]], int(c["degree"]))
    raise ValueError(f"component {label} needs point, hyperplane or forms")


def cmd_detrep_member(args):
    gamma = load_tensor(load_json(args.tensor))
    if isinstance(gamma, LivsicDual):
        gamma = hodge_dual(gamma)
    p = point(args.point)
    member, dim = membership(gamma, p)
    rep = Report("detrep member", {"tensor": args.tensor, "point": p},
                 {"member": member}, {"kernel_dim": dim})
    return rep, OK if member else REFUTED


def cmd_detrep_cycle(args):
    gamma = load_tensor(load_json(args.tensor))
    if isinstance(gamma, LivsicDual):
        gamma = hodge_dual(gamma)
    comps = [load_component(c) for c in load_json(args.components)]
    samples = args.samples if args.samples is not None else 25
    rep = cycle_degree(gamma, comps, samples=samples, seed=args.seed)
    out = Report("detrep cycle", {"tensor": args.tensor, "components": args.components, "samples": samples},
                 {"admissible": rep.admissible},
                 {"components": rep.components, "degree": rep.total, "n": rep.n}, seed=args.seed)
    return out, OK if rep.admissible else REFUTED


def cmd_detrep_center(args):
    T = load_tensor(load_json(args.tensor))
    if isinstance(T, LivsicTensor):
        T = hodge_dual(T)
    W = matrix(load_json(args.W))
    ev = evaluate_at_center(T, W)
    rep = Report("detrep center", {"tensor": args.tensor, "W": W},
                 {"center": ev.verdict or "NotSymmetric"}, {"matrix": fmt_matrix(ev.matrix)})
    return rep, OK if ev.verdict == "PositiveDefinite" else REFUTED


# Koszul construction

def load_system(data) -> CommutingPencilSystem:
    d, k = int(data["d"]), int(data["k"])
    names = tuple(f"z{j}" for j in range(d + 1))
    mats = [[[parse_poly(str(e), names) for e in row] for row in T] for T in data["matrices"]]
    return CommutingPencilSystem.from_poly_matrices(d, k, mats)


def cmd_koszul(args):
    if args.system:
        system = load_system(load_json(args.system))
        inputs = {"system": args.system}
    else:
        rs = random_symmetric_system(random.Random(args.seed), args.d, args.k, args.n)
        system = rs.system
        inputs = {"random": True, "d": system.d, "k": system.k, "n": system.n}
    cx = koszul(system)
    T = wedge_compose(system)
    samples = args.samples if args.samples is not None else 25
    ex = exactness_probe(cx, samples=samples, seed=args.seed)
    symmetric = system.is_entrywise_symmetric()
    verdicts = {"composes_to_zero": True, "exact_off_variety": ex.ok}
    certs = {
        "d": system.d, "k": system.k, "n": system.n,
        "composition_sign": T.composition_sign,
        "tensor": {",".join(map(str, J)): fmt_matrix(M) for J, M in sorted(T.coeffs.items())},
        "violations": [[list(p), why] for p, why in ex.violations],
        "samples": samples,
    }
    ok = ex.ok
    if symmetric:
        verdicts["symmetric"] = check_symmetry_theorem(system, seed=args.seed)
        W = load_json(args.center) if args.center else [[int(i == a) for i in range(system.d + 1)]
                                                          for a in range(1, system.r + 1)]
        ev = evaluate_at_center(T, matrix(W))
        certs["center"] = fmt_matrix(ev.matrix)
        verdicts["center"] = ev.verdict or "NotSymmetric"
    return Report("koszul", inputs, verdicts, certs, seed=args.seed), OK if ok else REFUTED


# trace forms

def cmd_tracetest(args):
    if args.q:
        variables = infer_variables([args.q])
        if "t" not in variables:
            raise ValueError("q must involve the fiber variable t")
        base = tuple(v for v in variables if v != "t")
        q = parse_poly(args.q, ("t",) + base)
        fp = FinitePresentation.from_poly(q, 0)
        inputs = {"q": args.q}
    elif args.f and args.g:
        m = RationalMapP1(parse_poly(args.f, BINARY), parse_poly(args.g, BINARY))
        fp = map_to_presentation(m)
        base = ("z",)
        inputs = {"f": args.f, "g": args.g}
    else:
        raise ValueError("give --q, or --f and --g")
    return _trace_report("tracetest", inputs, fp, base, args.seed)


def _trace_report(command, inputs, fp, base, seed):
    cert = real_fibered_certificate(fp, seed=seed)
    certs = {
        "q": [format_poly(c, base) for c in fp.q],
        "trace_form": fmt_matrix(trace_form(fp), base),
    }
    if cert.note:
        certs["note"] = cert.note
    if cert.witness is not None:
        certs["witness"] = dict(zip(base, cert.witness))
        certs["witness_signature"] = cert.witness_signature
        certs["real_fiber_points"] = cert.real_fiber_points
    code = {FiberVerdict.REAL_FIBERED: OK, FiberVerdict.NOT_REAL_FIBERED: REFUTED}[cert.verdict] \
        if cert.verdict is not FiberVerdict.INCONCLUSIVE else INCONCLUSIVE
    return Report(command, inputs, {"fibered": cert.verdict}, certs, seed=seed), code


# demos

def demo_twisted_cubic(args):
    center = ["x0-4*x2", "x1-x3"]
    param = hyp.twisted_cubic()
    forms = [linear_form(c, 4) for c in center]
    m = hyp.project_curve(hyp.CurveCenter(param, tuple(forms)))
    rep, code = _pair_report("demo twisted-cubic", {"center": center}, m.f, m.g)
    cs = curve_pencil_system(param, forms)
    ev = evaluate_at_center(cs.symmetric_tensor(), cs.center)
    rep.certificates["tensor_at_center"] = fmt_matrix(ev.matrix)
    rep.verdicts["tensor_at_center"] = ev.verdict
    if ev.verdict != "PositiveDefinite":
        code = REFUTED
    return rep, code


def demo_mobius(args):
    m = mobius_power_map(args.k)
    return _pair_report(f"demo mobius {args.k}", {"k": args.k}, m.f, m.g)


def demo_tv_screen(args):
    par, reason = hyp.dividing_parity(3, 1)
    rep = Report("demo tv-screen", {"genus": 3, "components": 1}, {"dividing": par}, {"reason": reason})
    return rep, OK if par is hyp.Parity.POSSIBLE else REFUTED


def demo_edge_quartic(args):
    F = hyp.edge_quartic()
    signs = [F(*p) for p in hyp.EDGE_BASE_POINTS]
    count = args.samples if args.samples is not None else 20
    rows = []
    ok = all(v < 0 for v in signs)
    for lam, mu in hyp.edge_pencil_members(args.seed, count):
        res = hyp.curve_pair_real_intersections(F, hyp.edge_pencil_member(lam, mu), seed=args.seed)
        rows.append({"member": [lam, mu], "real": res.real_count, "total": res.total_count})
        ok = ok and res.real_count == res.total_count == 8
    rep = Report("demo edge-quartic", {"members": count},
                 {"all_real": ok}, {"base_point_values": signs, "intersections": rows}, seed=args.seed)
    return rep, OK if ok else REFUTED


def demo_veronese(args):
    center = hyp.random_veronese_center(random.Random(args.seed))
    budget = args.budget if args.budget is not None else 100
    return _veronese("demo veronese", center, budget, args.seed)


def demo_double_cover(args):
    q = parse_poly("t^2 - z^2 - 1", ("t", "z"))
    fp = FinitePresentation.from_poly(q, 0)
    rep, code = _trace_report("demo double-cover", {"q": "t^2 - z^2 - 1"}, fp, ("z",), args.seed)
    # the real locus of t^2 = z^2 + 1 is one component over every real z, two sheets
    n_real = sturm_count(fp.at([Fraction(0)]))
    rep.certificates["real_fiber_points_at_z0"] = n_real
    rep.verdicts["two_s_plus_r"] = n_real == 2 * 1 + 0 == fp.m
    return rep, code if n_real == fp.m else REFUTED


DEMOS = {
    "twisted-cubic": (demo_twisted_cubic, "projected twisted cubic and its Bezoutian"),
    "edge-quartic": (demo_edge_quartic, "real intersections with conics of a pencil"),
    "tv-screen": (demo_tv_screen, "genus 3 with one oval cannot be hyperbolic"),
    "mobius": (demo_mobius, "k-th map of the Moebius ladder"),
    "veronese": (demo_veronese, "refute hyperbolicity of the Veronese surface"),
    "double-cover": (demo_double_cover, "trace form of t^2 = z^2 + 1"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--timing", action="store_true", help="record wall time in the report")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="realfib", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realroots", parents=[common], help="real-rootedness of a univariate polynomial")
    p.add_argument("--p", required=True)
    p.set_defaults(func=cmd_realroots)

    p = sub.add_parser("interlace", parents=[common], help="classify a pair of binary forms")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(func=cmd_interlace)

    h = sub.add_parser("hyperbolic", help="hyperbolicity of forms and curves")
    hs = h.add_subparsers(dest="action", required=True)
    p = hs.add_parser("search", parents=[common], help="look for a non-real direction")
    p.add_argument("--f")
    p.add_argument("--e", required=True, help="base point, e.g. 1,0,0")
    p.add_argument("--pencil", help="JSON list of matrices (inline or a file)")
    p.set_defaults(func=cmd_hyp_search)
    p = hs.add_parser("direction", parents=[common], help="test one direction exactly")
    p.add_argument("--f", required=True)
    p.add_argument("--e", required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_hyp_direction)
    p = hs.add_parser("project-curve", parents=[common], help="project a rational curve from a center")
    p.add_argument("--param", action="append", help="binary form in s,t; repeat once per coordinate")
    p.add_argument("--curve", choices=["twisted-cubic", "normal"], default="twisted-cubic")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--center", action="append", required=True, help="linear form in x0..xd; give two")
    p.set_defaults(func=cmd_hyp_project)
    p = hs.add_parser("intersect", parents=[common], help="real points of two plane curves in x0,x1,x2")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(func=cmd_hyp_intersect)
    p = hs.add_parser("parity", parents=[common], help="dividing-type parity obstruction")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--components", type=int, required=True)
    p.set_defaults(func=cmd_hyp_parity)
    p = hs.add_parser("veronese", parents=[common], help="search a Veronese center for a refutation")
    p.add_argument("--center", help="JSON 3x6 matrix; random when omitted")
    p.set_defaults(func=cmd_hyp_veronese)

    dr = sub.add_parser("detrep", help="determinantal tensors")
    ds = dr.add_subparsers(dest="action", required=True)
    p = ds.add_parser("member", parents=[common], help="kernel of the tensor at a point")
    p.add_argument("--tensor", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_detrep_member)
    p = ds.add_parser("cycle", parents=[common], help="cycle degree over given components")
    p.add_argument("--tensor", required=True)
    p.add_argument("--components", required=True)
    p.set_defaults(func=cmd_detrep_cycle)
    p = ds.add_parser("center", parents=[common], help="evaluate a dual tensor at a center")
    p.add_argument("--tensor", required=True)
    p.add_argument("--W", required=True, help="JSON matrix whose rows span the center")
    p.set_defaults(func=cmd_detrep_center)

    p = sub.add_parser("koszul", parents=[common], help="wedge composition of a commuting pencil system")
    p.add_argument("--system", help="JSON {d, k, matrices}; entries are linear forms in z0..zd")
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--center", help="JSON matrix for the center evaluation")
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("tracetest", parents=[common], help="trace-form test of real fiberedness")
    p.add_argument("--q")
    p.add_argument("--f")
    p.add_argument("--g")
    p.set_defaults(func=cmd_tracetest)

    dm = sub.add_parser("demo", help="worked examples")
    dms = dm.add_subparsers(dest="action", required=True)
    for name, (fn, text) in DEMOS.items():
        p = dms.add_parser(name, parents=[common], help=text)
        if name == "mobius":
            p.add_argument("k", type=int)
        p.set_defaults(func=fn)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return INVALID if e.code else OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except CrossCheckFailure as e:
        print(f"cross-check failure: {e}", file=sys.stderr)
        return INCONCLUSIVE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return INVALID
    except (RealFibError, ValueError, KeyError, TypeError, IndexError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return INVALID
    if args.timing:
        report.timing = round(time.perf_counter() - start, 6)
    print(report.to_json() if args.json else report.text(), file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
