"""``treewalk`` command-line interface.

Exit status: 0 on success, 2 on usage errors, 1 on computation errors.
Results go to stdout as JSON (one object per line) or CSV; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import hitting, surgery, verify
from .families import KINDS, FamilyError, FamilySpec, generate
from .tree import Tree, TreeError, canonical_code, diameter, read_tree, spine_decompose


def exact(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal(x) -> float:
    return float(Fraction(x))


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {text!r}") from None
    return a, b


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def load_tree(path: str) -> Tree:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="ascii") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise TreeError(f"cannot read tree file {path!r}: {exc}") from None
    return read_tree(text)


# -- handlers: each returns a list of flat records ----------------------------


def cmd_hit(args) -> list[dict]:
    t = load_tree(args.tree)
    if args.method == "solve":
        times = list(hitting.hit_oracle(t, args.target).times)
    elif args.source is not None:
        times = None
    else:
        times = hitting.hitting_to(t, args.target)
    if args.source is not None:
        value = times[args.source] if times is not None else hitting.hit_formula(t, args.source, args.target)
        return [{"source": args.source, "target": args.target, "method": args.method, "hitting": exact(value)}]
    return [{"source": v, "target": args.target, "method": args.method, "hitting": exact(x)} for v, x in enumerate(times)]


def cmd_meet(args) -> list[dict]:
    t = load_tree(args.tree)
    value, argmax = hitting.jmax(t)
    tm = Fraction(value, 2 * (t.n - 1))
    rec = {"jmax": exact(value), "tmeet": exact(tm), "tmeet_decimal": decimal(tm), "argmax": argmax}
    if args.best:
        best, argmin = hitting.t_bestmeet(t)
        rec.update({"bestmeet": exact(best), "bestmeet_decimal": decimal(best), "argmin": argmin})
    return [rec]


def cmd_family(args):
    spec = FamilySpec(args.kind, args.n, args.d, args.l, args.r, args.k)
    t, marks = generate(spec)
    if args.emit == "tree":
        return t.to_text()
    value, _ = hitting.jmax(t)
    tm = Fraction(value, 2 * (t.n - 1))
    return [{"jmax": exact(value), "tmeet": exact(tm), "tmeet_decimal": decimal(tm)}]


def cmd_surgery(args):
    t = load_tree(args.tree)
    if args.op == "sigma":
        out = surgery.sigma(t, args.path, args.y)
    elif args.op == "tau":
        out = surgery.tau(t, spine_decompose(t), args.move, args.move2)
    else:
        out = surgery.move_leaf(t, args.z, args.x)
    if args.emit == "tree":
        return out.to_text()
    return [
        {
            "n": out.n,
            "edges": [list(e) for e in out.edges],
            "jmax_before": exact(hitting.jmax(t)[0]),
            "jmax_after": exact(hitting.jmax(out)[0]),
        }
    ]


def cmd_verify(args) -> list[dict]:
    mode = args.mode
    if mode == "order":
        return [r.to_dict() for r in verify.verify_fixed_order(args.n)]
    if mode == "rooted":
        rs = [args.r] if args.r is not None else range(2, args.n)
        return [verify.verify_rooted_broom(args.n, r).to_dict() for r in rs]
    fn = verify.verify_max if mode == "max" else verify.verify_min
    ds = [args.d] if args.d is not None else range(3, args.n)
    return [fn(args.n, d).to_dict() for d in ds]


def cmd_enumerate(args) -> list[dict]:
    if args.d is not None:
        trees = list(verify.enumerate_trees_diameter(args.n, args.d))
    else:
        trees = list(verify.enumerate_trees(args.n))
    if args.count_only:
        return [{"n": args.n, "d": args.d, "count": len(trees)}]
    return [
        {
            "code": canonical_code(t).decode(),
            "n": t.n,
            "diameter": diameter(t),
            "edges": [list(e) for e in t.edges],
        }
        for t in trees
    ]


def cmd_simulate(args) -> list[dict]:
    t = load_tree(args.tree)
    mean, stderr = hitting.mc_hitting(t, args.source, args.target, args.walks, args.seed, args.shards)
    exact_value = hitting.hit_formula(t, args.source, args.target)
    return [
        {
            "source": args.source,
            "target": args.target,
            "walks": args.walks,
            "seed": args.seed,
            "mean": mean,
            "stderr": stderr,
            "exact": exact(exact_value),
            "z_score": (mean - exact_value) / stderr if stderr > 0 else 0.0,
        }
    ]


def cmd_lemmas(args) -> list[dict]:
    t = load_tree(args.tree)
    return [{"check": c.name, "status": c.status, "detail": c.detail} for c in verify.lemma_suite(t)]


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treewalk", description="Exact random-walk times on trees.")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default json)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hit", help="hitting times to a target")
    s.add_argument("--tree", required=True)
    s.add_argument("--target", type=int, required=True)
    s.add_argument("--source", type=int)
    s.add_argument("--method", choices=("formula", "solve"), default="formula")
    s.set_defaults(func=cmd_hit)

    s = sub.add_parser("meet", help="maximum joining time and meeting time")
    s.add_argument("--tree", required=True)
    s.add_argument("--best", action="store_true", help="also report the best (minimum) meeting time")
    s.set_defaults(func=cmd_meet)

    s = sub.add_parser("family", help="build a named family member")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--emit", choices=("tree", "value"), default="value")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("surgery", help="apply a leaf surgery")
    ops = s.add_subparsers(dest="op", required=True)
    o = ops.add_parser("sigma")
    o.add_argument("--path", type=_int_list, required=True, help="maximal path, e.g. 0,1,2,3")
    o.add_argument("--y", type=int, required=True)
    o = ops.add_parser("tau")
    o.add_argument("--move", type=_pair, required=True, help="i,j: move a leaf from v_i to v_j")
    o.add_argument("--move2", type=_pair)
    o = ops.add_parser("move")
    o.add_argument("--z", type=int, required=True)
    o.add_argument("--x", type=int, required=True)
    for o in ops.choices.values():
        o.add_argument("--tree", required=True)
        o.add_argument("--emit", choices=("json", "tree"), default="json")
    s.set_defaults(func=cmd_surgery)

    s = sub.add_parser("verify", help="exhaustive extremal checks")
    s.add_argument("mode", choices=("max", "min", "order", "rooted"))
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--d", type=int)
    g.add_argument("--r", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="list non-isomorphic trees")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("simulate", help="Monte Carlo hitting-time estimate")
    s.add_argument("--tree", required=True)
    s.add_argument("--source", type=int, required=True)
    s.add_argument("--target", type=int, required=True)
    s.add_argument("--walks", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--shards", type=int, default=1)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("lemmas", help="check the joining-time identities on a tree")
    s.add_argument("--tree", required=True)
    s.set_defaults(func=cmd_lemmas)
    return p


def _usage_conflicts(args) -> Optional[str]:
    if args.command == "verify":
        if args.mode in ("max", "min") and args.r is not None:
            return f"verify {args.mode} takes --d, not --r"
        if args.mode == "rooted" and args.d is not None:
            return "verify rooted takes --r, not --d"
        if args.mode == "order" and (args.d is not None or args.r is not None):
            return "verify order takes only --n"
    return None


def render(records, fmt: str) -> str:
    if isinstance(records, str):
        return records
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    buf = io.StringIO()
    fields: list[str] = []
    for r in records:
        for k in r:
            if k not in fields:
                fields.append(k)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: _csv_cell(v) for k, v in r.items()})
    return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, list):
        return ";".join("-".join(map(str, x)) if isinstance(x, list) else str(x) for x in v)
    return v


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    conflict = _usage_conflicts(args)
    if conflict:
        parser.print_usage(sys.stderr)
        print(f"treewalk: error: {conflict}", file=sys.stderr)
        return 2
    try:
        records = args.func(args)
    except (TreeError, FamilyError, verify.VerificationError, ValueError) as exc:
        print(f"treewalk: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(records, args.format))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
