"""``arithcx`` command line.

Exit status: 0 on success, 1 when ``verify-family`` finds a failing member,
2 on invalid input, 3 when no known family or stable signature exists (a partial
report is still printed).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .bej import (
    NoKnownFamily,
    SignatureMismatch,
    VarietyPoint,
    build_system,
    classify_V12,
    fiber_projection,
    is_member,
)
from .cfrac import (
    PeriodicCF,
    equivalence_matrix,
    evaluate,
    expand,
    format_cf,
    induced_quadratic,
    parse_cf,
)
from .classgroup import FormClassGroup, check_discriminant, order_info
from .curves import corroborate, curve_from_b, point_search
from .euler_dim import DEFAULT_MAX_DEG, DEFAULT_WINDOW, NoStableSignature, complexity_report
from .pell import PellConic, fundamental_pell, on_conic, solutions_up_to
from .qi import format_surd, minimal_polynomial, normalize_surd, parse_surd
from .sympoly import render, symbolic_equivalence_matrix

SCHEMA_VERSION = 1

SOFT_ERRORS = (NoKnownFamily, NoStableSignature, SignatureMismatch)


class Reported(Exception):
    """Soft failure carrying the partial report built so far."""

    def __init__(self, exc, partial):
        super().__init__(str(exc))
        self.exc = exc
        self.partial = partial


def _surd(words):
    return parse_surd(" ".join(words))


def _cf(words):
    return parse_cf(" ".join(words))


# --- commands: each returns (payload dict, text lines) ---------------------


def cmd_expand(args):
    theta = _surd(args.theta)
    cf = expand(theta)
    out = {
        "theta": format_surd(theta),
        "expansion": format_cf(cf),
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
        "signature": list(cf.signature),
    }
    return out, [out["expansion"]]


def cmd_eval(args):
    cf = _cf(args.cf)
    theta = evaluate(cf)
    out = {"expansion": format_cf(cf), "value": format_surd(theta), "quadruple": list(theta.fields), "float": float(theta)}
    return out, [out["value"]]


def cmd_matrix(args):
    if args.symbolic:
        n, k = args.symbolic
        e = symbolic_equivalence_matrix(n, k)
        out = {
            "N": n,
            "k": k,
            "E": [[render(e.e11), render(e.e12)], [render(e.e21), render(e.e22)]],
        }
        text = [f"E11 = {out['E'][0][0]}", f"E12 = {out['E'][0][1]}", f"E21 = {out['E'][1][0]}", f"E22 = {out['E'][1][1]}"]
        return out, text
    if not args.cf:
        raise ValueError("matrix needs a continued fraction or --symbolic N k")
    cf = _cf(args.cf)
    e = equivalence_matrix(cf)
    poly = induced_quadratic(e)
    out = {
        "expansion": format_cf(cf),
        "E": [list(r) for r in e.rows()],
        "det": e.det,
        "induced_quadratic": list(poly.coeffs),
    }
    text = [f"E = {out['E']}", f"det = {e.det}", f"A, B, C = {tuple(poly.coeffs)}"]
    return out, text


def _system_lines(sys_):
    data = sys_.to_json()
    lines = [f"V_({sys_.n},{sys_.k}) in {', '.join(data['variables'])}"]
    if data["coefficients"] is not None:
        lines.append(f"A, B, C = {tuple(data['coefficients'])}")
    lines.extend(f"{eq} = 0" for eq in data["equations"])
    return data, lines


def cmd_bej_build(args):
    if args.symbolic:
        coeffs = None
    elif args.coeffs and len(args.coeffs) == 3:
        coeffs = args.coeffs
    else:
        raise ValueError("bej-build needs A B C or --symbolic")
    return _system_lines(build_system(args.n, args.k, coeffs))


def cmd_bej_check(args):
    theta = _surd(args.theta)
    poly = minimal_polynomial(theta)
    cf = _cf([args.point]) if args.point else expand(theta)
    n, k = cf.signature
    system = build_system(n, k, poly)
    pt = VarietyPoint.from_cf(cf)
    member = is_member(system, pt)
    out = {
        "theta": format_surd(theta),
        "minimal_polynomial": list(poly.coeffs),
        "point": format_cf(cf),
        "signature": [n, k],
        "residuals": list(system.residuals(pt)),
        "member": member,
    }
    lines = [f"point {out['point']} on V_({n},{k}) for A, B, C = {tuple(poly.coeffs)}: {'member' if member else 'not a member'}"]
    if member:
        proj = fiber_projection(system, pt)
        conic = PellConic.from_poly(poly, k)
        out["projection"] = list(proj)
        out["conic"] = conic.to_json()
        out["on_conic"] = on_conic(conic, proj)
        lines.append(f"projection (E21, E22) = {proj}, on conic: {out['on_conic']}")
    else:
        lines.append(f"residuals {out['residuals']}")
    return out, lines


def cmd_bej_classify(args):
    comps = classify_V12(args.coeffs)
    out = {"coefficients": list(args.coeffs), "components": [c.to_json() for c in comps], "count": len(comps)}
    lines = [f"{len(comps)} component(s)"]
    lines.extend(f"  {c.kind}: {c.parametrization} (dim {c.dimension})" for c in comps)
    return out, lines


def cmd_pell(args):
    if args.conic:
        conic = PellConic(*args.conic, args.parity)
        pts = solutions_up_to(conic, args.bound, canonical=args.canonical)
        out = {**conic.to_json(), "bound": args.bound, "solutions": [list(p) for p in pts]}
        lines = [f"{conic}: {len(pts)} point(s) with |x|, |y| <= {args.bound}"]
        lines.extend(f"  {p}" for p in pts)
        return out, lines
    if args.D is None:
        raise ValueError("pell needs D or --conic A B C")
    sol = fundamental_pell(args.D, args.sign)
    out = {"D": args.D, "sign": args.sign, "solution": None if sol is None else {"x": sol[0], "y": sol[1]}}
    eq = f"y^2 - {args.D}x^2 = {args.sign}"
    lines = [f"{eq}: no solution" if sol is None else f"{eq}: x = {sol[0]}, y = {sol[1]}"]
    return out, lines


def _complexity(args, partial):
    theta = _surd(args.theta)
    cf = expand(theta)
    partial.update(theta=format_surd(theta), expansion=format_cf(cf), signature=list(cf.signature))
    return complexity_report(theta, args.window, args.max_deg)


def cmd_complexity(args):
    partial = {}
    try:
        rep = _complexity(args, partial)
    except SOFT_ERRORS as exc:
        raise Reported(exc, partial) from exc
    lines = [f"complexity {rep['complexity']} ({rep['method']})", f"expansion {rep['expansion']}", f"family {rep['family']}"]
    lines.extend(f"note: {n}" for n in rep["notes"])
    return rep, lines


def cmd_rank(args):
    partial = {}
    try:
        rep = _complexity(args, partial)
    except SOFT_ERRORS as exc:
        raise Reported(exc, partial) from exc
    out = {
        "theta": rep["theta"],
        "rank": rep["predicted_rank"],
        "complexity": rep["complexity"],
        "method": rep["method"],
        "note": "predicted rank is complexity - 1; not a Mordell-Weil computation",
    }
    return out, [f"rank {out['rank']} (complexity {out['complexity']}, {out['method']})"]


def cmd_classgroup(args):
    check_discriminant(args.D)
    out = FormClassGroup(args.D).to_json()
    lines = [f"D = {args.D}: h+ = {out['h_plus']}, group {_group_text(out['group'])}, sha {_group_text(out['sha'])}"]
    for c in out["cycles"]:
        lines.append("  " + " -> ".join(str(tuple(f)) for f in c))
    return out, lines


def _group_text(divisors):
    return " + ".join(f"Z/{d}" for d in divisors) if divisors else "trivial"


def cmd_sha(args):
    theta = _surd(args.theta)
    info = order_info(theta)
    grp = FormClassGroup(info["discriminant"])
    sha = grp.structure.direct_sum(grp.structure)
    out = {
        "theta": format_surd(theta),
        **info,
        "h_plus": grp.h_plus,
        "class_group_divisors": list(grp.structure.divisors),
        "sha_divisors": list(sha.divisors),
        "sha_order": sha.order,
    }
    lines = [f"D = {info['discriminant']}: h+ = {grp.h_plus}, Sha = {_group_text(out['sha_divisors'])} (order {sha.order})"]
    if not info["module_is_order"]:
        lines.append("note: Z + Z*theta is not closed under multiplication; using the order of its discriminant")
    return out, lines


def euler_cm_members(b_max):
    for b in range(1, b_max + 1):
        got = expand(normalize_surd(0, 1, 1, b * b + 2))
        yield b, got, PeriodicCF((b,), (b, 2 * b))


def euler_q_members(b_max):
    for b in range(3, b_max + 1, 2):
        got = expand(normalize_surd(b, 1, 2, b * b - 4))
        # b = 3 expands minimally to [2; (1)]; compare on the (1, 2) representative
        yield b, got.with_signature(1, 2), PeriodicCF((b - 1,), (1, b - 2))


def cmd_verify_family(args):
    gen = euler_cm_members if args.family == "euler-cm" else euler_q_members
    rows = [{"b": b, "expansion": format_cf(got), "expected": format_cf(want), "pass": got == want} for b, got, want in gen(args.b_max)]
    ok = all(r["pass"] for r in rows)
    out = {"family": args.family, "b_max": args.b_max, "members": rows, "all_pass": ok}
    fails = [r for r in rows if not r["pass"]]
    lines = [f"{args.family}: {len(rows) - len(fails)}/{len(rows)} members pass"]
    lines.extend(f"  FAIL b={r['b']}: {r['expansion']} != {r['expected']}" for r in fails)
    return out, lines, (0 if ok else 1)


def cmd_corroborate(args):
    out = corroborate(args.b, args.height_bound)
    n_tors = sum(1 for p in out["points"] if p[2] != "nontorsion")
    lines = [f"b = {args.b}, roots {tuple(out['model_roots'])}: {len(out['points'])} point(s) up to height {args.height_bound}, {n_tors} torsion"]
    lines.extend(f"  {'O' if p[0] == 'inf' else (p[0], p[1])} order {p[2]}" for p in out["points"])
    lines.append(f"all torsion: {out['all_torsion']}")
    return out, lines


def cmd_report(args):
    from . import plotting

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    def table(name, header, rows):
        path = outdir / name
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
        written.append(str(path))

    cm = [(b, *got.entries) for b, got, _ in euler_cm_members(args.b_max)]
    table("euler_cm.csv", ["b", "b1", "a1", "a2"], cm)
    written.append(str(plotting.plot_family_entries(cm, ["b1", "a1", "a2"], outdir / "euler_cm.png", "sqrt(b^2 + 2)")))

    q = [(b, *got.entries) for b, got, _ in euler_q_members(2 * args.b_max + 1)]
    table("euler_q.csv", ["b", "b1", "a1", "a2"], q)
    written.append(str(plotting.plot_family_entries(q, ["b1", "a1", "a2"], outdir / "euler_q.png", "(b + sqrt(b^2 - 4))/2")))

    ds, rows = [], []
    for D in range(5, args.d_max + 1):
        try:
            check_discriminant(D)
        except ValueError:
            continue
        g = FormClassGroup(D)
        ds.append(D)
        rows.append((D, g.h_plus, " ".join(map(str, g.structure.divisors)) or "1"))
    table("class_numbers.csv", ["D", "h_plus", "group"], rows)
    written.append(str(plotting.plot_class_numbers(ds, [r[1] for r in rows], outdir / "class_numbers.png")))

    theta = parse_surd(args.theta)
    cf = expand(theta)
    poly = minimal_polynomial(theta)
    conic = PellConic.from_poly(poly, cf.signature[1])
    pts = solutions_up_to(conic, args.bound)
    table("conic_points.csv", ["x", "y"], pts)
    proj = [fiber_projection(build_system(*cf.signature, poly), VarietyPoint.from_cf(cf))]
    written.append(str(plotting.plot_conic_points(conic, pts, outdir / "conic_points.png", proj)))

    rep = corroborate(args.curve_b, args.height_bound)
    table("curve_points.csv", ["X", "Y", "order"], rep["points"])
    curve = curve_from_b(args.curve_b)
    written.append(str(plotting.plot_curve_points(curve, point_search(curve, args.height_bound), outdir / "curve_points.png")))

    out = {"out": str(outdir), "files": written}
    return out, written


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="arithcx", description="Continued fractions, BEJ varieties, complexity and class groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    surd_help = 'surd as "a b c d" or e.g. "sqrt(11)", "(3+sqrt(5))/2"'
    sp = add("expand", cmd_expand, "continued fraction of a quadratic surd")
    sp.add_argument("theta", nargs="+", help=surd_help)

    sp = add("eval", cmd_eval, "value of a periodic continued fraction")
    sp.add_argument("cf", nargs="+", help='e.g. "[3; (3, 6)]"')

    sp = add("matrix", cmd_matrix, "equivalence matrix E and its induced quadratic")
    sp.add_argument("cf", nargs="*")
    sp.add_argument("--symbolic", nargs=2, type=int, metavar=("N", "k"))

    sp = add("bej-build", cmd_bej_build, "defining equations of V_(N,k)")
    sp.add_argument("n", type=int, metavar="N")
    sp.add_argument("k", type=int)
    sp.add_argument("coeffs", nargs="*", type=int, metavar="A B C")
    sp.add_argument("--symbolic", action="store_true")

    sp = add("bej-check", cmd_bej_check, "membership and fiber projection of an expansion point")
    sp.add_argument("theta", nargs="+", help=surd_help)
    sp.add_argument("--point", help="continued fraction to test instead of the expansion of theta")

    sp = add("bej-classify", cmd_bej_classify, "irreducible components of V_(1,2) for given A, B, C")
    sp.add_argument("coeffs", nargs=3, type=int, metavar="A B C")

    sp = add("pell", cmd_pell, "fundamental Pell solution or conic points")
    sp.add_argument("D", nargs="?", type=int)
    sp.add_argument("--sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--conic", nargs=3, type=int, metavar=("A", "B", "C"))
    sp.add_argument("--parity", type=int, default=0, help="k mod 2 for --conic")
    sp.add_argument("--bound", type=int, default=100)
    sp.add_argument("--canonical", action="store_true", help="report one of each +/- pair")

    for name, func, help_ in (("complexity", cmd_complexity, "arithmetic complexity"), ("rank", cmd_rank, "predicted rank")):
        sp = add(name, func, help_)
        sp.add_argument("theta", nargs="+", help=surd_help)
        sp.add_argument("--window", type=int, default=DEFAULT_WINDOW)
        sp.add_argument("--max-deg", type=int, default=DEFAULT_MAX_DEG)

    sp = add("classgroup", cmd_classgroup, "narrow class group of discriminant D")
    sp.add_argument("D", type=int)

    sp = add("sha", cmd_sha, "Sha = Cl + Cl for the order of theta")
    sp.add_argument("theta", nargs="+", help=surd_help)

    sp = add("verify-family", cmd_verify_family, "check a closed-form expansion family")
    sp.add_argument("family", choices=("euler-cm", "euler-q"))
    sp.add_argument("--b-max", type=int, default=50)

    sp = add("corroborate-curve", cmd_corroborate, "rational point search on curve_from_b(b)")
    sp.add_argument("b", type=int)
    sp.add_argument("--height-bound", type=int, default=200)

    sp = add("report", cmd_report, "write CSV tables and PNG figures to a directory")
    sp.add_argument("--out", required=True)
    sp.add_argument("--theta", default="sqrt(11)", help="surd whose Pell conic is plotted")
    sp.add_argument("--b-max", type=int, default=50)
    sp.add_argument("--d-max", type=int, default=500)
    sp.add_argument("--bound", type=int, default=200, help="box for conic points")
    sp.add_argument("--curve-b", type=int, default=7)
    sp.add_argument("--height-bound", type=int, default=200)
    return p


def _emit(stream, fmt, payload, lines):
    if fmt == "json":
        stream.write(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n")
    else:
        stream.write("\n".join(lines) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    try:
        result = args.func(args)
    except Reported as rep:
        err = {"error": type(rep.exc).__name__, "message": str(rep.exc)}
        lines = [f"{k}: {v}" for k, v in rep.partial.items()] + [f"{err['error']}: {err['message']}"]
        _emit(sys.stdout, fmt, {**rep.partial, **err}, lines)
        return 3
    except SOFT_ERRORS as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        _emit(sys.stdout, fmt, err, [f"{err['error']}: {err['message']}"])
        return 3
    except (ValueError, ArithmeticError) as exc:
        print(f"arithcx {args.command}: error: {exc}", file=sys.stderr)
        return 2
    payload, lines, *status = result
    _emit(sys.stdout, fmt, payload, lines)
    return status[0] if status else 0


if __name__ == "__main__":
    sys.exit(main())
