"""Command-line front end.

Subcommands: group | hs | graph | expr | construct-rho | selftest.
Reports are canonical JSON by default (--table for humans); rationals are
always exact strings. The exit code is 0 iff every check passes, 1 on a
failed check, 2 on bad input.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from . import acceptance, serialize
from .errors import EulerTraceError
from .exprs import (UNKNOWN, DirectProduct, eval_beta, eval_chi2, eval_e,
                    chi2_centralizer_at, complete_euler_at, is_fp, is_undefined,
                    realize_rational)
from .graphs import verify_formula1_graph
from .groups import power_conjugacy_check
from .groupring import (augmentation_dim, hs_trace, kaplansky_trace,
                        restrict_matrix, tensor_matrix)
from .rat import format_rational, parse_rational
from .reports import Check, Report, digest_file, value_check


def _render_value(v) -> str:
    if is_undefined(v):
        return f"undefined: {v.reason}"
    if v is UNKNOWN:
        return "unknown"
    return format_rational(v)


def cmd_group(args) -> Report:
    report = Report(command=f"group {args.path}",
                    inputs={args.path: digest_file(args.path)})
    G = serialize.parse_group(serialize.load_json(args.path))
    classes = G.conjugacy_classes()
    rows = []
    all_hold = True
    for idx, cls in enumerate(classes):
        diag = power_conjugacy_check(G, cls.representative, args.prime_bound)
        all_hold = all_hold and diag.holds
        rows.append({
            "id": idx,
            "representative": cls.representative,
            "label": G.element_label(cls.representative),
            "size": cls.size,
            "centralizer_order": G.centralizer_order(cls.representative),
            "power_conjugacy": {"holds": diag.holds, "witness_N": diag.witness_N},
        })
    report.results = {
        "order": G.order,
        "associativity": "fully checked" if G.assoc_fully_checked else "spot checked",
        "class_count": len(classes),
        "classes": rows,
    }
    if not G.assoc_fully_checked:
        report.warnings.append("order above the full-associativity limit; table was spot checked")
    report.add(value_check("class_equation", sum(c.size for c in classes), G.order,
                           "class sizes partition the group"))
    report.add(Check("orbit_stabilizer", "centralizer * class size", "group order",
                     all(r["centralizer_order"] * r["size"] == G.order for r in rows),
                     "counted independently per class"))
    report.add(Check("power_conjugacy", "holds for every class", "expected",
                     all_hold, "power maps permute conjugacy classes of a finite group"))
    return report


def _hs_results(M, raw):
    trace = hs_trace(M, raw=raw)
    G = M.group
    return trace, {
        "group_order": G.order,
        "size": M.size,
        "trace": [
            {"class": idx, "representative": cls.representative,
             "label": G.element_label(cls.representative),
             "value": format_rational(trace.at(idx))}
            for idx, cls in enumerate(G.conjugacy_classes())
        ],
        "kaplansky": format_rational(kaplansky_trace(M, raw=raw)),
        "augmentation_dim": format_rational(augmentation_dim(M, raw=raw)),
    }


def cmd_hs(args) -> Report:
    report = Report(command=f"hs {args.path}",
                    inputs={args.path: digest_file(args.path)})
    M = serialize.parse_matrix(serialize.load_json(args.path), _dir_of(args.path))
    idem = M.is_idempotent()
    report.add(Check("idempotency", "M*M", "M", idem, "exact convolution arithmetic"))
    if not idem and not args.raw:
        report.warnings.append("matrix is not idempotent; rerun with --raw to evaluate anyway")
        return report
    if not idem:
        report.warnings.append("raw evaluation: values are not a module invariant")
    trace, results = _hs_results(M, args.raw or not idem)
    report.results = results
    report.add(value_check("sum_rule", trace.total(), augmentation_dim(M, raw=True),
                           "class sum equals the augmented trace"))
    report.add(Check("infinite_order_vanishing", "vacuous", "vacuous", True,
                     "finite group: no infinite-order elements"))
    if args.restrict:
        subset = [int(x) for x in args.restrict.split(",") if x != ""]
        res = restrict_matrix(M, subset)
        hs_h = hs_trace(res.matrix, raw=args.raw)
        G, H, inc = M.group, res.subgroup, res.inclusion
        report.results["restriction"] = {
            "index": res.index,
            "subgroup_order": H.order,
            "coset_representatives": list(res.coset_reps),
        }
        for idx, cls in enumerate(H.conjugacy_classes()):
            s = cls.representative
            factor = Fraction(G.centralizer_order(inc(s)), H.centralizer_order(s))
            report.add(value_check(
                f"restriction_class_{idx}", hs_h.at(idx),
                factor * trace.at(G.class_of(inc(s))),
                "finite-index restriction formula"))
    if args.tensor:
        N = serialize.parse_matrix(serialize.load_json(args.tensor), _dir_of(args.tensor))
        report.inputs[args.tensor] = digest_file(args.tensor)
        tp = tensor_matrix(M, N)
        hs_t = hs_trace(tp.matrix, raw=args.raw)
        hs_n = hs_trace(N, raw=args.raw)
        for idx, cls in enumerate(tp.group.conjugacy_classes()):
            a, b = tp.split_index(cls.representative)
            report.add(value_check(
                f"tensor_class_{idx}", hs_t.at(idx),
                trace.at(M.group.class_of(a)) * hs_n.at(N.group.class_of(b)),
                "Kunneth product of class functions"))
    return report


def cmd_graph(args) -> Report:
    report = Report(command=f"graph {args.path}",
                    inputs={args.path: digest_file(args.path)})
    g = serialize.parse_graph(serialize.load_json(args.path), _dir_of(args.path))
    v = verify_formula1_graph(g)
    table = v.table
    report.results = {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "e": format_rational(v.e_value),
        "global_sum": format_rational(v.global_sum),
        "fusion_classes": [
            {
                "id": idx,
                "representative": list(cls.representative),
                "vertex_classes": [list(n) for n in cls.vertex_classes],
                "edge_classes": [list(n) for n in cls.edge_classes],
                "complete_euler": format_rational(v.euler.at(idx)),
                "centralizer_chi2": format_rational(v.per_class[idx][2]),
            }
            for idx, cls in enumerate(table.classes)
        ],
        "condition_F": v.condition_f,
    }
    report.warnings.extend(v.warnings)
    report.add(value_check("identity_class_equals_e", v.euler.at(0), v.e_value,
                           "identity fusion class carries e"))
    report.add(value_check("global_sum", v.global_sum, v.expected_global,
                           "each vertex or edge class function sums to 1"))
    if args.verify:
        for idx, lhs, rhs, _ in v.per_class:
            report.add(value_check(
                f"euler_vs_centralizer_{idx}", lhs, rhs,
                "pushforward values against fixed-tree centralizer values"))
    return report


def cmd_expr(args) -> Report:
    report = Report(command=f"expr {args.path}",
                    inputs={args.path: digest_file(args.path)})
    parsed = serialize.parse_expr(serialize.load_json(args.path), _dir_of(args.path))
    e = parsed.expr
    beta = eval_beta(e)
    report.results = {
        "chi2": _render_value(eval_chi2(e)),
        "e": _render_value(eval_e(e)),
        "beta": ("unknown" if beta is UNKNOWN
                 else [format_rational(b) for b in beta]),
        "type_fp_certified": is_fp(e),
        "marks": sorted(parsed.marks),
    }
    if isinstance(e, DirectProduct):
        whole = eval_chi2(e)
        factors = [eval_chi2(f) for f in e.factors]
        if not is_undefined(whole) and not any(is_undefined(v) for v in factors):
            product = Fraction(1)
            for v in factors:
                product *= v
            report.add(value_check("product_multiplicativity", whole, product,
                                   "factorwise chi2 values multiply"))
    if args.mark:
        if args.mark not in parsed.marks:
            raise EulerTraceError(f"no mark named {args.mark!r} in {args.path}")
        m = parsed.marks[args.mark]
        lhs = complete_euler_at(e, m)
        rhs = chi2_centralizer_at(e, m)
        report.results["mark"] = {
            "name": args.mark,
            "complete_euler": _render_value(lhs),
            "centralizer_chi2": _render_value(rhs),
        }
        report.add(Check("euler_vs_centralizer", _render_value(lhs), _render_value(rhs),
                         (not is_undefined(lhs)) and (not is_undefined(rhs)) and lhs == rhs,
                         "structural evaluation of both invariants"))
    return report


def cmd_construct_rho(args) -> Report:
    rho = parse_rational(args.rho)
    report = Report(command=f"construct-rho {args.rho}",
                    inputs={"rho": format_rational(rho)})
    r = realize_rational(rho)
    report.results = {
        "rho": format_rational(rho),
        "expression": serialize.expr_to_json(r.expr),
        "mark": "t x identity",
        "annotations": list(r.annotations),
    }
    report.add(value_check("amalgam_centralizer_chi2", r.amalgam_centralizer_chi2,
                           Fraction(-1, 2), "declared fixed-tree data of the amalgam"))
    report.add(value_check("complete_euler", r.euler_value, rho,
                           "fusion pushforward through the product"))
    report.add(value_check("centralizer_chi2", r.centralizer_chi2, rho,
                           "centralizer splitting through the product"))
    return report


def cmd_selftest(args) -> Report:
    report = Report(command="selftest", inputs={"seed": str(args.seed)})
    results = acceptance.run_criteria(seed=args.seed, name_filter=args.filter)
    golden = _golden_checks()
    if args.filter:
        results.extend(c for c in golden if args.filter in c.name)
    else:
        results.extend(golden)
    if not results:
        report.add(Check("filter_matched", "0 criteria", "at least 1", False,
                         f"nothing matches --filter {args.filter!r}"))
    for c in results:
        report.add(Check(c.name, "pass" if c.passed else "fail", "pass",
                         c.passed, c.detail))
    report.results = {"criteria_run": len(results)}
    return report


def _golden_checks():
    """Validate the shipped model files; editing them yields a named failure."""
    import importlib.resources as resources

    expectations = {
        "psl2z.json": Fraction(-1, 6),
        "sl2z.json": Fraction(-1, 12),
        "dinfty.json": Fraction(0),
    }
    out = []
    for name, expected in sorted(expectations.items()):
        try:
            text = resources.files("eulertrace.data").joinpath(name).read_text()
            import json

            g = serialize.parse_graph(json.loads(text))
            v = verify_formula1_graph(g)
            ok = (v.e_value == expected and v.all_equal)
            detail = f"e = {format_rational(v.e_value)}, expected {format_rational(expected)}"
        except Exception as err:  # a corrupted file must fail by name, not crash
            ok, detail = False, f"{type(err).__name__}: {err}"
        out.append(acceptance.Criterion(f"golden:{name}", ok, detail))
    return out


def _dir_of(path: str) -> str:
    import os

    return os.path.dirname(path) or "."


def build_parser() -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    mode = output.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="table", action="store_false", default=False,
                      help="canonical JSON output (the default)")
    mode.add_argument("--table", dest="table", action="store_true",
                      help="human-readable table output")
    parser = argparse.ArgumentParser(
        prog="euler-trace",
        description="Exact trace class functions and Euler characteristics.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("group", parents=[output],
                       help="orders, classes, centralizers, power diagnostics")
    p.add_argument("path")
    p.add_argument("--prime-bound", type=int, default=100)
    p.set_defaults(fn=cmd_group)

    p = sub.add_parser("hs", parents=[output],
                       help="trace class function of an idempotent matrix")
    p.add_argument("path")
    p.add_argument("--restrict", metavar="ELEMS",
                   help="comma-separated subgroup element indices")
    p.add_argument("--tensor", metavar="PATH", help="second matrix file")
    p.add_argument("--raw", action="store_true",
                   help="evaluate the formula even for non-idempotent matrices")
    p.set_defaults(fn=cmd_hs)

    p = sub.add_parser("graph", parents=[output],
                       help="fusion table and Euler data of a graph of groups")
    p.add_argument("path")
    p.add_argument("--verify", action="store_true",
                   help="compare both sides on every fusion class")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("expr", parents=[output], help="evaluate a group expression file")
    p.add_argument("path")
    p.add_argument("--mark", metavar="NAME", help="evaluate both sides at a named mark")
    p.set_defaults(fn=cmd_expr)

    p = sub.add_parser("construct-rho", parents=[output],
                       help="realize a rational as both invariants")
    # let negative rationals like -22/5 through as positionals
    p._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")
    p.add_argument("rho", help="target value, e.g. 3/7 or -22/5")
    p.set_defaults(fn=cmd_construct_rho)

    p = sub.add_parser("selftest", parents=[output], help="run the acceptance suite")
    p.add_argument("--filter", metavar="SUBSTRING", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except EulerTraceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render("table" if args.table else "json"))
    return 0 if report.ok() else 1


if __name__ == "__main__":
    sys.exit(main())
