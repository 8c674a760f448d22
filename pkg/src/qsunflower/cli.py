"""Command-line front end: ``construct``, ``verify``, ``bounds``, ``enumerate``.

Exit codes: 0 success / proven sunflower-free, 1 sunflower found or nesting
check failed, 2 bad parameters or malformed input, 3 enumeration budget
exceeded, 4 search stopped by budget without a verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import __version__
from .bounds import bound_sandwich, lower_bound_exponent, upper_bound
from .constructions import (
    construct_A,
    construct_B,
    construct_example1,
    construct_G,
    construct_partite,
    params_A,
    params_B,
    predicted_sizes,
)
from .errors import BudgetExceeded, ParameterError
from .field import FieldSpec, prime_power
from .gaussian import gauss_bracket, gaussian
from .geometry import Subspace, enumerate_subspaces
from .rank_metric import cover_free_size
from .io import FormatError, dumps, family_from_dict, family_to_dict, read_family, tree_from_dict, write_text
from .verify import GENERAL, SETLIKE, find_sunflower, verify_nesting

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_BUDGET, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
TYPES = ("a", "b", "g", "partite", "example1")


class _Log:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.t0 = time.monotonic()

    def __call__(self, event: str, **fields) -> None:
        if self.enabled:
            rec = {"event": event, "elapsed": round(time.monotonic() - self.t0, 3), **fields}
            print(json.dumps(rec), file=sys.stderr, flush=True)


def field_of_order(q: int) -> FieldSpec:
    try:
        prime_power(q)
        return FieldSpec.of_order(q)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ParameterError(f"construction {args.type} needs {', '.join(missing)}")


def _predicted(args, q: int) -> dict:
    """Predicted size and known lower bound before anything is materialized."""
    t, s, k = args.type, args.s, args.k
    if t in ("a", "b"):
        params = params_A(s, k) if t == "a" else params_B(s, k)
        pred = predicted_sizes(params, q)
        return {
            "size": pred.total,
            "lower_bound": pred.bound,
            "level_sizes": list(pred.sizes),
        }
    if t == "g":
        if k % 2 or k < 2 or s < 4:
            raise ParameterError(f"family G needs even k >= 2 and s >= 4, got s={s}, k={k}")
        size = cover_free_size((s + 1) * k // 2 - 1, k, k // 2 + 1, q)
        return {"size": size, "lower_bound": q ** ((s - 1) * k * k // 4 + (s - 2) * k // 2 - 1)}
    if t == "partite":
        if s < 3 or k < 1:
            raise ParameterError(f"partite family needs s >= 3 and k >= 1, got s={s}, k={k}")
        size = gauss_bracket(s - 1, q) ** k
        return {"size": size, "lower_bound": size}
    size = q**4 + q**2 + q + 1
    return {"size": size, "lower_bound": size}


def cmd_construct(args, log: _Log) -> int:
    if args.type == "example1":
        args.s, args.k = 3, 2
    else:
        _need(args, "s", "k")
    F = field_of_order(args.q)
    pred = _predicted(args, F.q)
    log("predicted", **{k: v if isinstance(v, list) else str(v) for k, v in pred.items()})
    if pred["size"] > args.budget_enum:
        raise BudgetExceeded(f"predicted size {pred['size']} exceeds --budget-enum {args.budget_enum}")
    s, k = args.s, args.k
    tree = None
    if args.dry_run:
        members = []
    elif args.type in ("a", "b"):
        build = construct_A if args.type == "a" else construct_B
        tree = build(s, k, F, workers=args.workers)
        members = sorted(tree.leaves(), key=Subspace.key)
    elif args.type == "g":
        members = construct_G(s, k, F)
    elif args.type == "partite":
        members = construct_partite(s, k, F)
    else:
        members = construct_example1(F)
    log("constructed", size=len(members))

    n = tree.params.n if tree is not None else (members[0].n if members else None)
    report = {
        "size": str(len(members)) if not args.dry_run else None,
        "predicted_size": str(pred["size"]),
        "lower_bound": str(pred["lower_bound"]),
        "upper_bound": str(upper_bound(s, k, F.q)),
    }
    if tree is not None:
        report["level_sizes"] = [str(x) for x in tree.level_sizes()]
    elif "level_sizes" in pred:
        report["level_sizes"] = [str(x) for x in pred["level_sizes"]]

    name = {"a": "A", "b": "B", "g": "G"}.get(args.type, args.type)
    print(f"construction {name} s={s} k={k} q={F.q}")
    if not args.dry_run:
        print(f"size: {len(members)}")
    print(f"predicted size: {pred['size']}")
    print(f"lower bound: {pred['lower_bound']}")
    print(f"upper bound: {report['upper_bound']}")
    if "level_sizes" in report:
        print("level sizes (bottom to top): " + " ".join(report["level_sizes"]))

    if args.out and not args.dry_run:
        data = family_to_dict(members, F, n, k, name, s, tree=tree, report=report)
        write_text(args.out, dumps(data))
        log("written", path=args.out)
    return EXIT_OK


def _bounds_report(members: list[Subspace], s: int, q: int) -> dict | None:
    if not members or s < 3:
        return None
    k = members[0].dim
    out = {"actual": str(len(members)), "upper": str(upper_bound(s, k, q))}
    if k >= 2:
        out["lower"] = str(q ** lower_bound_exponent(s, k))
    return out


def cmd_verify(args, log: _Log) -> int:
    data = read_family(args.in_path)
    try:
        F, n, members, header = family_from_dict(data)
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from exc
    s = args.s if args.s is not None else header.get("s")
    if s is None:
        raise FormatError("no --s given and the family file has no s")
    log("loaded", size=len(members), n=n, s=s)
    if args.nesting:
        if "tree" not in data:
            raise FormatError("--nesting needs a family file with a tree")
        tree = tree_from_dict(data["tree"], F)
        cert = verify_nesting(tree, leaf_pairs=args.leaf_pairs, workers=args.workers)
    else:
        cert = find_sunflower(
            members, s, mode=args.mode, budget_pairs=args.budget_pairs, budget_subsets=args.budget_subsets
        )
    cert.bounds = _bounds_report(members, s, F.q)
    log("verified", outcome=cert.outcome, status=cert.status)
    text = dumps(cert.to_dict(), compact=False)
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)
    if cert.outcome in ("witness", "fail"):
        return EXIT_FOUND
    if cert.status != "exhaustive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_bounds(args, log: _Log) -> int:
    field_of_order(args.q)
    try:
        rep = bound_sandwich(args.s, args.k, args.q)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    if args.json:
        d = rep.to_dict()
        d["ratios"] = {k: str(v) for k, v in rep.ratios().items()}
        sys.stdout.write(dumps(d, compact=False))
        return EXIT_OK
    cap = rep.cap
    print(f"s={rep.s} k={rep.k} q={rep.q} regime {rep.regime}")
    print(f"lower bound: {rep.lower}")
    print(f"upper product: {rep.product}")
    print(f"upper cap: {cap.numerator}/{cap.denominator}" if cap.denominator != 1 else f"upper cap: {cap}")
    r = rep.ratios()
    print(f"lower <= product <= cap: {rep.holds}")
    if rep.regime == "s>=k+1":
        print(f"1 <= lower / q^((s-1)C(k+1,2)-k): {r['lower/base'] >= 1}")
    print(f"lower / q^((s-1)C(k+1,2)-k) = {r['lower/base']}")
    print(f"product / q^((s-1)C(k+1,2)-k) = {r['product/base']} <= (q/(q-1))^k = {r['cap/base']}: "
          f"{r['product/base'] <= r['cap/base']}")
    return EXIT_OK


def cmd_enumerate(args, log: _Log) -> int:
    F = field_of_order(args.q)
    if not 0 <= args.m <= args.n:
        raise ParameterError(f"need 0 <= m <= n, got n={args.n}, m={args.m}")
    stream = enumerate_subspaces(args.n, args.m, F, cap=args.budget_enum)
    if args.list:
        count = 0
        for S in stream:
            sys.stdout.write(dumps(S.to_record()))
            count += 1
    else:
        count = sum(1 for _ in stream)
        print(count)
    assert count == gaussian(args.n, args.m, F.q)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsunflower", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json-log", action="store_true", help="machine-readable progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a sunflower-free family")
    c.add_argument("--type", choices=TYPES, required=True)
    c.add_argument("--s", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--out")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--budget-enum", type=int, default=10**6)
    c.add_argument("--dry-run", action="store_true", help="only print predicted sizes")

    v = sub.add_parser("verify", help="search a family file for sunflowers")
    v.add_argument("--in", dest="in_path", required=True)
    v.add_argument("--s", type=int)
    v.add_argument("--mode", choices=(GENERAL, SETLIKE), default=GENERAL)
    v.add_argument("--budget-pairs", type=int, default=10**7)
    v.add_argument("--budget-subsets", type=int, default=10**8)
    v.add_argument("--nesting", action="store_true", help="run the per-level nesting checks instead")
    v.add_argument("--leaf-pairs", type=int, default=10**5)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--out")

    b = sub.add_parser("bounds", help="exact lower/upper bounds")
    b.add_argument("--s", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--json", action="store_true")

    e = sub.add_parser("enumerate", help="count or list the m-subspaces of V(n, q)")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--list", action="store_true")
    e.add_argument("--budget-enum", type=int, default=10**7)
    return parser


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "bounds": cmd_bounds, "enumerate": cmd_enumerate}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    log = _Log(args.json_log)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, log)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
