"""Command-line front end.

    hypersym orders  --d 3 --N 6 [--expand] [--json]
    hypersym group   --d 3 --type K4+T2 | --support file.json [--json]
    hypersym smooth  --d 3 --targets 3,3,1 [--witness] [--json]
    hypersym witness --d 3 --N 6 --order 48 [--json]
    hypersym cubic4  [--json]

Exit codes: 0 success, 2 usage error, 3 budget or factorization limit,
4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .abelian import RHO_SEED
from .classify import (
    REFERENCE_CUBIC_FOURFOLDS,
    cubic4_report,
    expand_orders,
    order_report,
    witness_for_order,
)
from .config import Budgets
from .diagact import (
    DiagonalAutomorphism,
    InfiniteGroup,
    acts_with_character,
    pgl_order,
    simple_symmetry_group,
    symmetry_group,
)
from .errors import BudgetExceeded, FactorizationLimit, VerificationFailure
from .polyforms import (
    IndexVector,
    SimpleType,
    Support,
    format_polynomial,
    graph_decompose,
    necessary_smoothness_check,
    parse_polynomial,
    simple_support,
    singular_witness,
    violating_pairs,
)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


def _envelope(command: str, argv: list[str], d, N, result: dict) -> dict:
    return {
        "command": command,
        "argv": argv,
        "d": d,
        "N": N,
        "result": result,
        "version": __version__,
        "seed": RHO_SEED,
    }


def _group_payload(res) -> dict:
    if isinstance(res, InfiniteGroup):
        return {"finite": False, "direction": list(res.direction)}
    return {
        "finite": True,
        "invariant_factors": list(res.group.invariant_factors),
        "order": res.group.order,
        "generators": [
            {"automorphism": str(g), "pgl_order": pgl_order(g), "character": c}
            for g, c in zip(res.generators, res.scalar_character)
        ],
    }


def _group_text(res) -> list[str]:
    if isinstance(res, InfiniteGroup):
        return [f"InfiniteGroup: torus direction ({','.join(map(str, res.direction))})"]
    if len(res.generators) == 1:
        g, c = res.generators[0], res.scalar_character[0]
        return [f"{res.group}, generator {g}", f"order {res.group.order}, pgl order {pgl_order(g)}, character {c}"]
    lines = [f"{res.group} (order {res.group.order})"]
    for g, c in zip(res.generators, res.scalar_character):
        lines.append(f"generator {g}: pgl order {pgl_order(g)}, character {c}")
    return lines


def cmd_orders(args, budgets: Budgets) -> tuple[dict, list[str]]:
    if args.d < 3 or args.N < 3:
        raise ValueError("orders needs d >= 3 and N >= 3")
    report = order_report(args.d, args.N, with_witnesses=False)
    prov = report.provenance()
    payload = {
        "maximal_orders": report.maximal_orders,
        "provenance": [
            {
                "order": m,
                "cases": [{"case": c.case_tag, "parameters": list(c.parameters)} for c in prov[m]],
            }
            for m in report.maximal_orders
        ],
    }
    lines = [" ".join(map(str, report.maximal_orders)), "provenance:"]
    for m in report.maximal_orders:
        lines.append(f"  {m}: " + "; ".join(c.describe() for c in prov[m]))
    if args.expand:
        expanded = expand_orders(report.maximal_orders, budgets.trial_division_bound)
        payload["expanded"] = expanded
        lines.append("all orders: " + " ".join(map(str, expanded)))
    return payload, lines


def cmd_group(args, budgets: Budgets) -> tuple[dict, list[str]]:
    if args.type:
        if args.d is None:
            raise ValueError("--type needs --d")
        t = SimpleType.parse(args.type)
        res = simple_symmetry_group(args.d, t)
        direct = symmetry_group(simple_support(args.d, t))
        if isinstance(direct, InfiniteGroup) or direct.group != res.group:
            raise VerificationFailure(f"structure mismatch for {t}: {res.group} vs {direct}")
        payload = {"type": str(t), "group": _group_payload(res)}
        lines = [f"type {t}: " + format_polynomial(simple_support(args.d, t))] + _group_text(res)
        return payload, lines

    data = json.loads(Path(args.support).read_text())
    s = Support.from_json(data, d=args.d)
    if args.d is not None and s.d != args.d:
        raise ValueError(f"support has degree {s.d}, but --d {args.d} was given")
    res = symmetry_group(s)
    payload = {"support": s.to_json(), "group": _group_payload(res)}
    lines = [format_polynomial(s)] + _group_text(res)
    if s.d >= 3:
        bad = necessary_smoothness_check(s, max_b=2, budget=budgets.smoothness_pairs)
        payload["necessary_check"] = None if bad is None else {"A": sorted(bad[0]), "B": sorted(bad[1])}
        lines.append(
            "necessary smoothness check: pass"
            if bad is None
            else f"necessary smoothness check: fails for A={sorted(bad[0])}, B={sorted(bad[1])} (not smooth)"
        )
    return payload, lines


def _parse_targets(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ValueError(f"targets must be comma-separated integers, got {text!r}") from None


def cmd_smooth(args, budgets: Budgets) -> tuple[dict, list[str]]:
    iv = IndexVector(args.d, _parse_targets(args.targets))
    t = graph_decompose(iv)
    if t is not None:
        return {"smooth": True, "type": str(t)}, [f"SMOOTH type {t}"]
    a, b = next(iter(violating_pairs(iv)))
    c = iv.targets[a - 1]
    payload = {"smooth": False, "pair": [a, b], "shared_target": c}
    if not args.witness:
        return payload, [f"SINGULAR (x{a} and x{b} both point to x{c})"]
    from .oracle import verify_singular_point

    w = singular_witness(iv)
    if not verify_singular_point(iv, w, mode="exact"):
        raise VerificationFailure(f"witness {w} does not kill every partial derivative")
    payload["witness"] = {
        "text": str(w),
        "angles": [None if x is None else str(x) for x in w.point],
    }
    return payload, [f"SINGULAR at {w}"]


def _verify_printed(d: int, poly_text: str, aut_text: str, n: int, n_vars: int) -> int:
    s = parse_polynomial(poly_text, n_vars)
    g = DiagonalAutomorphism.parse(aut_text)
    c = acts_with_character(g, s)
    if s.d != d or pgl_order(g) != n:
        raise VerificationFailure(f"printed witness {aut_text} on {poly_text} does not re-verify")
    return c


def cmd_witness(args, budgets: Budgets) -> tuple[dict, list[str]]:
    if args.order < 1:
        raise ValueError("--order must be positive")
    w = witness_for_order(args.d, args.N, args.order)
    if w is None:
        msg = f"NONE: no simple polynomial in {args.N} variables has a diagonal automorphism of order {args.order}"
        return {"found": False, "order": args.order}, [msg]
    poly = format_polynomial(w.support(args.d))
    aut = str(w.automorphism)
    c = _verify_printed(args.d, poly, aut, args.order, args.N)
    payload = {
        "found": True,
        "order": args.order,
        "type": str(w.simple_type),
        "polynomial": poly,
        "automorphism": aut,
        "character": c,
        "pgl_order": pgl_order(w.automorphism),
    }
    lines = [
        f"order {args.order} for d={args.d}, N={args.N}",
        f"type: {w.simple_type}",
        f"polynomial: {poly}",
        f"automorphism: {aut}",
        f"verification: character {c} mod {w.automorphism.n}, pgl order {pgl_order(w.automorphism)}",
    ]
    return payload, lines


def cmd_cubic4(args, budgets: Budgets) -> tuple[dict, list[str]]:
    rep = cubic4_report()
    rows = []
    for n in rep.report.maximal_orders:
        w = rep.report.witnesses[n]
        poly = format_polynomial(w.support(3))
        _verify_printed(3, poly, str(w.automorphism), n, 6)
        rows.append({
            "order": n,
            "type": str(w.simple_type),
            "polynomial": poly,
            "automorphism": str(w.automorphism),
            "matches_reference": rep.reference_match.get(n, False),
            "admitting_types": [str(t) for t in rep.admitting_types[n]],
        })
    payload = {"maximal_orders": rep.report.maximal_orders, "rows": rows, "unique": rep.unique()}
    lines = ["maximal orders: " + " ".join(map(str, rep.report.maximal_orders)), ""]
    lines.append(f"{'order':>5}  {'type':<6}  {'cubic polynomial':<58}  automorphism")
    for r in rows:
        lines.append(f"{r['order']:>5}  {r['type']:<6}  {r['polynomial']:<58}  {r['automorphism']}")
    lines += ["", "types on 6 variables admitting each order:"]
    for r in rows:
        lines.append(f"{r['order']:>5}: {', '.join(r['admitting_types'])}")
    refs = {n for n, _, _ in REFERENCE_CUBIC_FOURFOLDS}
    agree = sum(r["matches_reference"] for r in rows if r["order"] in refs)
    lines += ["", f"witnesses projectively equal to the published ones: {agree}/{len(refs)}"]
    lines.append("unique type for every order: " + ("yes" if rep.unique() else "NO"))
    return payload, lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypersym", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orders", help="possible automorphism orders for (d, N)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--expand", action="store_true", help="also list every divisor")

    p = sub.add_parser("group", help="diagonal symmetry group of a type or support")
    p.add_argument("--d", type=int)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--type", help='simple type such as "K4+T2"')
    src.add_argument("--support", help="JSON file of exponent vectors")

    p = sub.add_parser("smooth", help="smoothness of F_I for an index vector")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--targets", required=True, help="comma-separated 1-based targets, e.g. 3,3,1")
    p.add_argument("--witness", action="store_true", help="print a verified singular point")

    p = sub.add_parser("witness", help="explicit automorphism of a given order")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--order", type=int, required=True)

    sub.add_parser("cubic4", help="orders of automorphisms of smooth cubic fourfolds")

    for action in sub.choices.values():
        action.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


COMMANDS = {
    "orders": cmd_orders,
    "group": cmd_group,
    "smooth": cmd_smooth,
    "witness": cmd_witness,
    "cubic4": cmd_cubic4,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        budgets = Budgets.from_env()
        payload, lines = COMMANDS[args.command](args, budgets)
    except VerificationFailure as exc:
        print(f"hypersym: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (BudgetExceeded, FactorizationLimit) as exc:
        print(f"hypersym: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"hypersym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        env = _envelope(args.command, argv, getattr(args, "d", None), getattr(args, "N", None), payload)
        print(json.dumps(env, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
