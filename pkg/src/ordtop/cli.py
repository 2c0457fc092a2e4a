"""Single command-line entry point.

Verbs mirror the modules: field, matrix, rp, group, order, uniformity,
plus the suite runner and report merger.  Structured inputs come as
JSON from a file argument or stdin ("-"); --json switches the output to
machine-readable form.  Exit codes: 0 success, 1 failed checks, 2 usage
or input errors.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import exact_field as xf
from . import group_topology as gt
from . import matrix_group as mg
from . import order_lab as ol
from . import reduced_power as rp
from . import report as report_mod
from . import uniformity_lab as ul
from .suites import UnknownSuiteError, run_suite


def _read_payload(arg: str):
    if arg == "-":
        return json.loads(sys.stdin.read())
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        return json.loads(arg)


def _emit(args, data, plain=None):
    if getattr(args, "json", False):
        print(json.dumps(data, sort_keys=True, default=str))
    else:
        print(plain if plain is not None else json.dumps(data, default=str))


# --- field ------------------------------------------------------------------

def cmd_field(args):
    if args.action == "eval":
        value = xf.parse_element(args.expr[0])
        _emit(args, {"value": xf.format_element(value)},
              xf.format_element(value))
    elif args.action == "compare":
        a = xf.parse_element(args.expr[0])
        b = xf.parse_element(args.expr[1])
        out = xf.compare(a, b)
        _emit(args, {"compare": out}, out)
    elif args.action == "invert":
        value = xf.parse_element(args.expr[0]).invert()
        _emit(args, {"value": xf.format_element(value)},
              xf.format_element(value))
    elif args.action == "leading":
        exps, coeff = xf.parse_element(args.expr[0]).leading_term()
        _emit(args, {"exponents": list(exps), "coefficient": str(coeff)},
              f"exponents={list(exps)} coefficient={coeff}")
    return 0


# --- matrix -----------------------------------------------------------------

def cmd_matrix(args):
    if args.action == "shrink":
        eps = xf.parse_element(args.args[0])
        n = int(args.args[1])
        delta = mg.shrink_radius(eps, n)
        _emit(args, {"delta": xf.format_element(delta)},
              xf.format_element(delta))
        return 0
    payload = _read_payload(args.args[0])
    if args.action == "inv":
        m = mg.Matrix([[xf.parse_element(c) for c in row] for row in payload])
        out = mg.mat_inv(m)
        _emit(args, [[xf.format_element(c) for c in row] for row in out.rows])
    elif args.action == "det":
        m = mg.Matrix([[xf.parse_element(c) for c in row] for row in payload])
        d = mg.det(m)
        _emit(args, {"det": xf.format_element(d)}, xf.format_element(d))
    elif args.action == "mul":
        a = mg.Matrix([[xf.parse_element(c) for c in row]
                       for row in payload["a"]])
        b = mg.Matrix([[xf.parse_element(c) for c in row]
                       for row in payload["b"]])
        out = mg.mat_mul(a, b)
        _emit(args, [[xf.format_element(c) for c in row] for row in out.rows])
    elif args.action == "ball":
        m = mg.Matrix([[xf.parse_element(c) for c in row]
                       for row in payload["matrix"]])
        eps = xf.parse_element(payload["eps"])
        member = mg.ball_member(m, eps)
        _emit(args, {"member": member}, "member" if member else "outside")
    return 0


# --- reduced power ------------------------------------------------------------

def _seq(data) -> rp.EventualSeq:
    if isinstance(data, str):
        return rp.from_json(data)
    return rp.from_json(json.dumps(data))


def cmd_rp(args):
    if args.action == "compare":
        x = _seq(_read_payload(args.args[0]))
        y = _seq(_read_payload(args.args[1]))
        out = rp.compare_ev(x, y)
        _emit(args, {"compare": out}, out)
    elif args.action == "metric":
        x = _seq(_read_payload(args.args[0]))
        y = _seq(_read_payload(args.args[1]))
        d = rp.star_metric(x, y)
        _emit(args, json.loads(rp.to_json(d)), rp.to_json(d))
    elif args.action == "interleave":
        payload = _read_payload(args.args[0])
        instances = [(_seq(item["center"]), _seq(item["radius"]))
                     for item in payload["instances"]]
        out = rp.interleave(instances, payload.get("cuts", []))
        _emit(args, {
            "witness": json.loads(rp.to_json(out.witness)),
            "certified": len(out.certificates),
        }, rp.to_json(out.witness))
    elif args.action == "baire":
        payload = _read_payload(args.args[0])
        ball = rp.Ball(_seq(payload["ball"]["center"]),
                       _seq(payload["ball"]["radius"]))
        forbidden = [rp.Ball(_seq(item["center"]), _seq(item["radius"]))
                     for item in payload.get("forbidden", [])]
        out = rp.baire_witness(ball, forbidden)
        _emit(args, {
            "witness": json.loads(rp.to_json(out.point)),
            "avoided": len(out.certificates),
        }, rp.to_json(out.point))
    return 0


# --- group ---------------------------------------------------------------------

def _group_from(payload):
    gens = tuple(payload.get("generators", ("a", "b")))
    if payload.get("abelian"):
        return gt.FreeAbelianGroup(gens)
    return gt.FreeGroup(gens)


def cmd_group(args):
    if args.action == "lemma-suite":
        return cmd_suite(argparse.Namespace(
            name="rd-lemmas", seed=args.seed, scale=args.scale,
            json=args.json, out=None))
    payload = _read_payload(args.args[0])
    group = _group_from(payload)
    if args.action == "sym-member":
        sets = [gt.SubsetSpec.from_texts(group, texts)
                for texts in payload["sets"]]
        word = group.parse(payload["word"])
        res = gt.sym_member(word, sets, payload.get("horizon", len(sets)))
        if res.is_member:
            _emit(args, {
                "member": True,
                "n": res.n,
                "sigma": list(res.sigma),
                "factors": [group.format(f) for f in res.factors],
            }, f"Yes(n={res.n}, sigma={res.sigma})")
        else:
            _emit(args, {"member": False, "horizon": res.horizon},
                  f"NoUpTo({res.horizon})")
    elif args.action == "vphi":
        phi = gt.PhiMap(
            gt.SubsetSpec.from_texts(group, payload["default"]),
            {group.parse(k): gt.SubsetSpec.from_texts(group, v)
             for k, v in payload.get("exceptions", {}).items()})
        support = [group.parse(t) for t in payload.get("support", ["e"])]
        out = gt.v_phi(phi, support, group)
        words = sorted(group.format(w) for w in out.words)
        _emit(args, {"words": words}, ", ".join(words) or "e")
    elif args.action == "iofv":
        group_out, spec = gt.i_of_entourage(
            [tuple(p) for p in payload["pairs"]],
            abelian=payload.get("abelian", False))
        words = sorted(group_out.format(w) for w in spec.words)
        _emit(args, {"words": words}, ", ".join(words))
    return 0


# --- order -----------------------------------------------------------------------

def _poset_from(data) -> ol.FinitePoset:
    elements = [tuple(e) if isinstance(e, list) else e
                for e in data["elements"]]
    le = {(tuple(a) if isinstance(a, list) else a,
           tuple(b) if isinstance(b, list) else b) for a, b in data["le"]}
    return ol.FinitePoset(elements, le)


def cmd_order(args):
    payload = _read_payload(args.args[0])
    if args.action == "check-map":
        d = _poset_from(payload["domain"])
        e = _poset_from(payload["codomain"])
        f = {k: v for k, v in payload["map"].items()}
        mono = ol.check_monotone(f, d, e)
        cof = ol.check_cofinal(f, d, e)
        _emit(args, {"monotone": mono, "cofinal": cof},
              f"monotone={mono} cofinal={cof}")
    elif args.action == "ad-embed":
        branches = [ol.Branch(b["preperiod"], b["period"])
                    for b in payload["branches"]]
        depth = payload.get("depth") or ol.disambiguation_depth(branches)
        s = [branches[i] for i in payload["s"]]
        t = [branches[i] for i in payload["t"]]
        le = ol.ad_join(s, depth).le(ol.ad_join(t, depth))
        subset = ol.branch_subset(s, t)
        _emit(args, {"join_le": le, "branch_subset": subset, "depth": depth},
              f"join_le={le} branch_subset={subset}")
        return 0 if le == subset else 1
    elif args.action == "diagonal":
        rows = [tuple(row) for row in payload["rows"]]
        z, cert = ol.diagonal_witness(rows)
        _emit(args, {"z": list(z),
                     "certificate": [list(c) for c in cert]},
              f"z={list(z)}")
    elif args.action == "box":
        f = ol.FnSeq(tuple(payload["f"]["values"]),
                     payload["f"].get("tail", 1))
        vector = {int(k): Fraction(v)
                  for k, v in payload["vector"].items()}
        member = ol.box_nbhd(f).contains(vector)
        _emit(args, {"member": member}, "member" if member else "outside")
    return 0


# --- uniformity ---------------------------------------------------------------------

def _space_from(data) -> ul.MetricSpacePresentation:
    kind = data.get("kind", "convergent_sequence")
    if kind == "convergent_sequence":
        decomposition = None
        if "decomposition" in data:
            decomposition = [frozenset(Fraction(p) for p in part)
                             for part in data["decomposition"]]
        return ul.convergent_sequence(data.get("n_max", 100), decomposition)
    if kind == "metric_fan":
        return ul.metric_fan(data.get("spokes", 3), data.get("depth", 5))
    if kind == "table":
        table = {tuple(k.split("|")): Fraction(v)
                 for k, v in data["distances"].items()}
        decomposition = [frozenset(part) for part in data["decomposition"]]
        return ul.finite_table_space(data["points"], table, decomposition)
    raise ValueError(f"unknown space kind {kind!r}")


def _alpha_from(data) -> ol.FnSeq:
    return ol.FnSeq(tuple(data["values"]), data.get("tail", 0))


def cmd_uniformity(args):
    payload = _read_payload(args.args[0])
    space = _space_from(payload["space"])
    if args.action == "u-alpha":
        alpha = _alpha_from(payload["alpha"])
        x, y = (Fraction(p) for p in payload["pair"])
        member = ul.u_alpha_member(space, alpha, x, y)
        _emit(args, {"member": member}, "member" if member else "outside")
    elif args.action == "cofinal-search":
        radii = {Fraction(k): Fraction(v)
                 for k, v in payload["radii"].items()}
        if "default_radius" in payload:
            for p in space.points:
                radii.setdefault(p, Fraction(payload["default_radius"]))
        target = ul.SpacedDiagonalNeighbourhood(space, radii)
        out = ul.base_cofinal_search(space, target)
        if isinstance(out, ul.FailureUpTo):
            _emit(args, {"failure": {"piece": out.piece,
                                     "slack": str(out.slack)}},
                  f"failure at piece {out.piece}")
            return 1
        bad = ul.audit_entourage_containment(
            space, ul.UAlphaEntourage(space, out), target)
        _emit(args, {"alpha": {"values": list(out.values),
                               "tail": out.tail},
                     "audit_violations": len(bad)},
              f"alpha={list(out.values)} tail={out.tail} audit={len(bad)}")
        return 0 if not bad else 1
    elif args.action == "countable-base":
        zero = Fraction(0)
        bases = {p: ul.principal_base(p) for p in space.points if p != zero}
        bases[zero] = ul.tail_base(space)
        f = {p: ol.FnSeq((payload.get("f_isolated", 1),), 1)
             for p in space.points}
        f[zero] = ol.FnSeq((payload.get("f_limit", 1),),
                           payload.get("f_limit", 1))
        ent = ul.countable_base(space, bases, f)
        x, y = (Fraction(p) for p in payload["pair"])
        member = ent.contains(x, y)
        _emit(args, {"member": member}, "member" if member else "outside")
    return 0


# --- suites and reports ----------------------------------------------------------------

def cmd_suite(args):
    try:
        result = run_suite(args.name, seed=args.seed, scale=args.scale)
    except UnknownSuiteError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    text = report_mod.canonical_json(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if getattr(args, "json", False):
        print(text, end="")
    else:
        status = "pass" if result.ok else "FAIL"
        print(f"{result.suite}: {result.cases} cases, "
              f"{len(result.failures)} failures, {result.wall_ms:.0f} ms "
              f"[{status}]")
        for failure in result.failures[:10]:
            print(f"  {failure['case']}: {failure['detail']}")
            print(f"    repro: {failure['repro']}")
    return 0 if result.ok else 1


def cmd_report(args):
    from .suites import SuiteReport

    reports = []
    for path in args.inputs:
        for item in _read_payload(path):
            reports.append(SuiteReport(
                suite=item["suite"], seed=item["seed"], scale=item["scale"],
                cases=item["cases"], failures=item["failures"]))
    text = report_mod.emit_report(
        reports,
        json_path=args.out and f"{args.out}/report.json",
        md_path=args.out and f"{args.out}/report.md")
    if getattr(args, "json", False):
        print(text, end="")
    else:
        print(report_mod.markdown_table(reports), end="")
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordtop",
        description="Exact-arithmetic laboratory for ordered towers, "
                    "reduced powers, group neighbourhoods and entourage bases.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")

    p = sub.add_parser("field", help="tower field arithmetic")
    p.add_argument("action", choices=["eval", "compare", "invert", "leading"])
    p.add_argument("expr", nargs="+")
    common(p)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("matrix", help="exact linear algebra")
    p.add_argument("action", choices=["inv", "det", "mul", "ball", "shrink"])
    p.add_argument("args", nargs="+",
                   help="JSON payload (file, inline or '-'), or EPS N for shrink")
    common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("rp", help="reduced power fragment")
    p.add_argument("action",
                   choices=["compare", "metric", "interleave", "baire"])
    p.add_argument("args", nargs="+")
    common(p)
    p.set_defaults(func=cmd_rp)

    p = sub.add_parser("group", help="free-group neighbourhood calculus")
    p.add_argument("action",
                   choices=["sym-member", "vphi", "iofv", "lemma-suite"])
    p.add_argument("args", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("order", help="directed-set machinery")
    p.add_argument("action", choices=["check-map", "ad-embed", "diagonal", "box"])
    p.add_argument("args", nargs="+")
    common(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("uniformity", help="entourage bases")
    p.add_argument("action",
                   choices=["u-alpha", "cofinal-search", "countable-base"])
    p.add_argument("args", nargs="+")
    common(p)
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("suite", help="run a named property suite")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--out", help="write canonical JSON here")
    common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("report", help="merge suite reports")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", help="directory for report.json and report.md")
    common(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
