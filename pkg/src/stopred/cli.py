"""Command-line entry point.

Exit status: 0 success, 1 domain error (violated precondition, budget),
2 I/O or parse error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bounds, codes, construct, cover, tables
from .errors import BudgetExceeded, ConstructionError, ParseError, PreconditionError


def _read_matrix(path: str):
    text = Path(path).read_text()
    fmt = "alist" if path.endswith(".alist") else None
    return codes.load_matrix(text, fmt)


def _code(spec: str) -> codes.LinearCode:
    if spec in codes.BUILTIN_CODES:
        return codes.builtin(spec)
    return codes.from_parity_check(_read_matrix(spec), name=Path(spec).stem)


def _levels(text: str) -> list[int]:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _note(res: bounds.BoundResult) -> None:
    for msg in res.notes:
        print(msg, file=sys.stderr)


def cmd_info(args) -> None:
    code = _code(args.code)
    census = code.dual_census(args.threads)
    print(f"n={code.n}")
    print(f"k={code.k}")
    print(f"d={code.min_distance(args.threads)}")
    print(f"r={code.r}")
    print(f"d_perp={census.d_min}")
    print(f"min_weight_dual_count={census.count}")


def cmd_bound(args) -> None:
    res = bounds.bound_stopping_redundancy(_code(args.code), args.method)
    _note(res)
    print(res.total)
    if args.verbose:
        print(f"t*={res.t_star} kappa={res.kappa} variant={res.variant.value}", file=sys.stderr)


def cmd_hierarchy(args) -> None:
    code = _code(args.code)
    levels = _levels(args.l)
    for l in levels:
        res = bounds.bound_hierarchy(code, l)
        _note(res)
        print(res.total if len(levels) == 1 else f"{l} {res.total}")


def cmd_hybrid(args) -> None:
    res = bounds.bound_hybrid(_code(args.code), args.tau, args.l, workers=args.threads)
    _note(res)
    print(res.total)


def cmd_stopdist(args) -> None:
    M = _read_matrix(args.matrix)
    limit = args.limit if args.limit is not None else M.n
    sd = cover.stopping_distance(M, limit, workers=args.threads)
    if sd.witness:
        print("stopping set: " + " ".join(map(str, sd.witness)), file=sys.stderr)
    print(sd)


def cmd_construct(args) -> None:
    code = _code(args.code)
    if args.strategy == "randomized":
        t = args.t if args.t is not None else 2 * code.r
        M, rep = construct.randomized_extend(code, args.l, t, args.seed, workers=args.threads)
    else:
        M, rep = construct.greedy_extend(code, args.l, args.strategy, args.seed, workers=args.threads)
    fmt = args.format or ("alist" if args.out.endswith(".alist") else "plain")
    text = codes.save_alist(M) if fmt == "alist" else codes.save_plain(M)
    Path(args.out).write_text(text)
    print(f"rows={rep.rows}")
    print(f"rank={rep.rank}")
    print(f"stopping_distance={rep.stopping_distance}")
    print(f"all_rows_in_dual={str(rep.all_rows_in_dual).lower()}")
    if rep.delta_after_step1 is not None:
        print(f"delta_after_step1={rep.delta_after_step1}")
    if not rep.passed:
        raise PreconditionError("constructed matrix failed verification")


def cmd_tables(args) -> None:
    header, rows = tables.build(args.which, workers=args.threads, with_baseline=args.with_baseline)
    sys.stdout.write(tables.render(header, rows, args.format))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stopred", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads (results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="code parameters")
    s.add_argument("code", help="golay24, qr48, or a parity-check matrix file")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("bound", help="stopping redundancy upper bound")
    s.add_argument("--code", required=True)
    s.add_argument("--method", choices=["tau0", "cor1", "cor2"], default="cor2")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("hierarchy", help="l-th stopping redundancy upper bound")
    s.add_argument("--code", required=True)
    s.add_argument("--l", required=True, help="level or range such as 4-8")
    s.set_defaults(func=cmd_hierarchy)

    s = sub.add_parser("hybrid", help="hierarchy bound after fixing the first tau rows of H")
    s.add_argument("--code", required=True)
    s.add_argument("--tau", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.set_defaults(func=cmd_hybrid)

    s = sub.add_parser("stopdist", help="stopping distance of a matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--limit", type=int)
    s.set_defaults(func=cmd_stopdist)

    s = sub.add_parser("construct", help="build a verified redundant parity-check matrix")
    s.add_argument("--code", required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--strategy", choices=["max_coverage", "lexicographic", "randomized"], default="max_coverage")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--t", type=int, help="random rows drawn up front (randomized only; default 2r)")
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=["alist", "plain"])
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("tables", help="reproduce a comparison table")
    s.add_argument("--which", type=int, choices=[2, 3, 4, 5], required=True)
    s.add_argument("--format", choices=["csv", "markdown"], default="csv")
    s.add_argument("--with-baseline", action="store_true", help="tables 3/4: add the partial-sum column")
    s.set_defaults(func=cmd_tables)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        args.threads = 1
    try:
        args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, BudgetExceeded, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
