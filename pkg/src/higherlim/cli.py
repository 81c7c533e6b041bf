"""Command-line front end.

Exit status: 0 on success, 1 for bad input, 2 when an internal invariant
fails (a bug, never a user error).
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import inductive_check, vanishing_bounds
from .check import FIELDS, run_checks
from .diagram import fibrant_replacement, higher_limits
from .errors import InputError, InvariantError
from .exactla import Field
from .instance import load_instance, write_instance
from .oracle import oracle_higher_limits
from .poset import labelling, maximal_tree, to_dot
from .randgen import random_instance, random_tree_instance


def format_dims(h: list[int]) -> str:
    if not h:
        return "H^*=0"
    return " ".join(f"H^{k}={x}" for k, x in enumerate(h))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _need_functor(F, path):
    if F is None:
        raise InputError(f"{path} has no functor section")
    return F


def cmd_compute(args) -> int:
    _, P, F = load_instance(args.file)
    F = _need_functor(F, args.file)
    if args.at is not None and args.at not in P:
        raise InputError(f"unknown element {args.at!r}")
    payload: dict = {"method": args.method, "at": args.at}
    lines = []
    fib = ora = None
    if args.method in ("fibrant", "both"):
        R = fibrant_replacement(F, cutoff=args.cutoff)
        fib = higher_limits(F, at=args.at, replacement=R)
        payload["fibrant"] = fib
        payload["replacement"] = R.report()
    if args.method in ("oracle", "both"):
        ora = oracle_higher_limits(F, at=args.at)
        payload["oracle"] = ora
    if args.method == "both":
        if fib != ora:
            raise InvariantError(f"backends disagree: fibrant {format_dims(fib)} vs oracle {format_dims(ora)}")
        lines.append(f"{format_dims(fib)}; backends agree")
    else:
        lines.append(format_dims(fib if fib is not None else ora))
    if "replacement" in payload:
        lines.append("")
        lines.append(f"{'element':<12}{'case':<12}{'dims':<16}{'height':<8}matching ranks")
        for row in payload["replacement"]:
            h = "-inf" if row["height"] is None else str(row["height"])
            lines.append(f"{row['element']:<12}{row['case']:<12}{str(row['dims']):<16}{h:<8}{row['matching_ranks']}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_label(args) -> int:
    _, P, _ = load_instance(args.file)
    lab = labelling(P)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(P, lab, maximal_tree(P)))
    lines = [f"{p:<12}d={P.degree[p]:<4}B={lab[p]}" for p in P.elements]
    lines.append(f"sup B = {lab.sup_label}")
    _emit(args, {"labels": lab.label, "degrees": dict(P.degree), "sup_B": lab.sup_label}, "\n".join(lines))
    return 0


def cmd_bounds(args) -> int:
    _, P, F = load_instance(args.file)
    rep = vanishing_bounds(P, F, tree_trials=args.tree_trials, seed=args.seed)
    payload = rep.to_dict()
    lines = [
        f"sup B            {rep.sup_B}",
        f"length           {rep.max_degree}",
        f"2#D+1            {rep.tree_bound}   (D = {sorted(rep.tree.degree_set)})",
    ]
    if F is not None:
        h = payload["realized_height"]
        lines.append(f"height of RF     {'-inf' if h is None else h}")
    v = rep.vanishing_degree
    payload["vanishing_degree"] = None if v == float("-inf") else int(v)
    lines.append("H^k = 0 for all k" if v == float("-inf") else f"H^k = 0 for all k > {int(v)}")
    if args.inductive is not None:
        res = inductive_check(_need_functor(F, args.file), args.inductive, verify=True)
        payload["inductive"] = res.to_dict()
        c1, c2, c3 = res.conditions
        lines.append(f"inductive n={args.inductive}: (1)={c1} (2)={c2} (3)={c3}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_check(args) -> int:
    fields = [Field.parse(args.field)] if args.field else list(FIELDS)
    summary = run_checks(args.trials, args.seed, args.max_elements, args.max_dim, fields)
    payload = {"trials": summary.trials, "ok": summary.ok,
               "failures": summary.failures, "errors": {str(k): v for k, v in summary.errors.items()}}
    _emit(args, payload, "\n".join(summary.lines()))
    return 0 if summary.ok else 2


def cmd_random(args) -> int:
    field = Field.parse(args.field)
    if args.tree:
        F = random_tree_instance(args.seed, args.max_elements, args.max_dim, field)
    else:
        F = random_instance(args.seed, args.max_elements, args.max_dim, field, atoms=args.atoms)
    write_instance(F, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="higherlim", description="Higher limits of functors on finite posets.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="higher limits of an instance")
    c.add_argument("file")
    c.add_argument("--method", choices=("fibrant", "oracle", "both"), default="fibrant")
    c.add_argument("--at", metavar="ELEM", help="compute over the elements strictly below ELEM")
    c.add_argument("--cutoff", type=int, metavar="M", help="use truncated cocylinders only up to degree M")
    c.set_defaults(func=cmd_compute)

    lab = sub.add_parser("label", help="labelling function of a poset")
    lab.add_argument("file")
    lab.add_argument("--dot", metavar="OUT", help="write the Hasse diagram in DOT format")
    lab.set_defaults(func=cmd_label)

    b = sub.add_parser("bounds", help="vanishing bounds report")
    b.add_argument("file")
    b.add_argument("--tree-trials", type=int, default=16)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--inductive", type=int, metavar="N", help="also evaluate the inductive criterion for N")
    b.set_defaults(func=cmd_bounds)

    ch = sub.add_parser("check", help="randomized differential testing")
    ch.add_argument("--trials", type=int, default=100)
    ch.add_argument("--seed", type=int, default=0)
    ch.add_argument("--max-elements", type=int, default=8)
    ch.add_argument("--max-dim", type=int, default=3)
    ch.add_argument("--field", help="Q or Fp:P (default: cycle through Q, Fp:2, Fp:5)")
    ch.set_defaults(func=cmd_check)

    r = sub.add_parser("random", help="write a random instance file")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--max-elements", type=int, default=8)
    r.add_argument("--max-dim", type=int, default=3)
    r.add_argument("--field", default="Q")
    r.add_argument("--atoms", type=int)
    r.add_argument("--tree", action="store_true", help="generate a filtered tree with random maps")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_random)

    for p in (c, lab, b, ch):
        p.add_argument("--json", action="store_true", help="machine-readable output")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


run = main

if __name__ == "__main__":
    sys.exit(main())
