"""Command line access to the chain machinery."""

from __future__ import annotations

import argparse
import sys

from . import builder
from .dyck import (
    area,
    class_from_partition,
    defc,
    dinv,
    format_vector,
    parse_vector,
    partition_from_class,
    reduce,
)
from .flagpole import count_flagpole, count_flagpole_bruteforce, gflag_lower_bound
from .partitions import count_partitions, format_partition, parse_partition
from .poly import cat_n
from .tails import absorption_counts, plateau, s_vectors, tail_elements, ti, ti2
from .verify import cat_n_mu, report_lines


def _cmd_stats(args: argparse.Namespace) -> int:
    for word in args.vector:
        try:
            v = parse_vector(word)
        except ValueError:
            try:
                v = class_from_partition(parse_partition(word))
            except ValueError as exc:
                print(f"cannot parse {word}: {exc}", file=sys.stderr)
                return 1
        r = reduce(v)
        p = partition_from_class(r)
        print(
            f"{word}: reduced {format_vector(r)} partition {format_partition(p)}"
            f" len {len(r)} area {area(v)} dinv {dinv(v)} defc {defc(v)}"
        )
    return 0


def _cmd_tail(args: argparse.Namespace) -> int:
    mu = parse_partition(args.mu)
    if args.plateau is not None:
        rows = plateau(mu, args.plateau)
    else:
        rows = tail_elements(mu, args.count)
    for v in rows:
        print(f"{format_vector(v)} dinv {dinv(v)}")
    return 0


def _cmd_ti2(args: argparse.Namespace) -> int:
    mu = parse_partition(args.mu)
    t = ti(mu)
    t2 = ti2(mu)
    print(f"base {format_vector(t)} dinv {dinv(t)} len {len(t)}")
    print(f"extended {format_vector(t2)} dinv {dinv(t2)} len {len(t2)}")
    if t2 != t:
        try:
            summ = s_vectors(t2)
        except ValueError:
            return 0
        for j, (s, d) in enumerate(zip(summ.s_vectors, summ.dinvs)):
            print(f"stage {j}: {format_vector(s)} dinv {d}")
    return 0


def _cmd_flagpole(args: argparse.Namespace) -> int:
    stop = args.stop if args.stop is not None else args.start
    header = ["n", "count"]
    if args.brute:
        header.append("check")
    header += ["bound", "p(n)"]
    print(" ".join(header))
    for n in range(args.start, stop + 1):
        row = [str(n), str(count_flagpole(n))]
        if args.brute:
            row.append(str(count_flagpole_bruteforce(n)))
        row += [str(gflag_lower_bound(n)), str(count_partitions(n))]
        print(" ".join(row))
    return 0


def _cmd_build(args: argparse.Namespace) -> int:
    coll = builder.seed_base_collection(force_search=args.force_search)
    if args.k > coll.k_max:
        coll = builder.extend_all(coll, args.k, mode=args.mode)
    builder.save_collection(coll, args.out)
    print(f"built {len(coll.chains)} chains to deficit {coll.k_max} -> {args.out}")
    return 0


def _load(path: str):
    try:
        return builder.load_collection(path)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot load {path}: {exc}", file=sys.stderr)
        return None


def _cmd_verify(args: argparse.Namespace) -> int:
    coll = _load(args.path)
    if coll is None:
        return 1
    rows = builder.validate_collection(coll, opposite_n=args.opposite)
    fails = 0
    for ctx, r in rows:
        line = f"{ctx}: {report_lines([r])[0]}"
        if not r.ok:
            fails += 1
            print(line)
        elif args.verbose:
            print(line)
    print(f"{len(rows) - fails}/{len(rows)} checks passed")
    return 1 if fails else 0


def _cmd_catalan(args: argparse.Namespace) -> int:
    if args.mu is None:
        print(cat_n(args.n))
        return 0
    mu = parse_partition(args.mu)
    coll = builder.seed_base_collection()
    if sum(mu) > coll.k_max:
        coll = builder.extend_all(coll, sum(mu), mode="flagpole")
    if mu not in coll.chains:
        print(f"no chain stored for {args.mu}", file=sys.stderr)
        return 1
    print(cat_n_mu(args.n, coll.chains[mu]))
    return 0


def _cmd_absorb(args: argparse.Namespace) -> int:
    stop = args.stop if args.stop is not None else args.start
    print("k leftover2 leftover1 ratio")
    for k in range(args.start, stop + 1):
        second, first = absorption_counts(k)
        print(f"{k} {second} {first} {second / first:.4f}")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    coll = _load(args.path)
    if coll is None:
        return 1
    for mu in coll.members():
        chain = coll.chains[mu]
        gens = " ".join(format_vector(g) for g in chain.generators)
        print(
            f"{format_partition(mu)} partner {format_partition(coll.pairing[mu])}"
            f" start {chain.start_dinv} generators {gens}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qtchains",
        description="Chain decompositions of deficit classes of Dyck vectors.",
    )
    ap.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="accepted for compatibility; work always runs sequentially",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="statistics of one or more vectors")
    p.add_argument("vector", nargs="+")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("tail", help="elements of the orbit indexed by a partition")
    p.add_argument("mu")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--plateau", type=int, default=None, help="list one length plateau instead")
    p.set_defaults(func=_cmd_tail)

    p = sub.add_parser("ti2", help="extended orbit base and its stage vectors")
    p.add_argument("mu")
    p.set_defaults(func=_cmd_ti2)

    p = sub.add_parser("flagpole", help="counts of pole partitions by size")
    p.add_argument("start", type=int)
    p.add_argument("stop", type=int, nargs="?", default=None)
    p.add_argument("--brute", action="store_true", help="add the direct count column")
    p.set_defaults(func=_cmd_flagpole)

    p = sub.add_parser("build", help="build the chain collection up to a deficit")
    p.add_argument("k", type=int)
    p.add_argument("--out", default="chains.json")
    p.add_argument("--mode", choices=("flagpole", "generalized"), default="flagpole")
    p.add_argument("--force-search", action="store_true", help="ignore the frozen seed file")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="validate a stored collection")
    p.add_argument("path")
    p.add_argument("--opposite", type=int, default=0, metavar="N", help="also compare path sums up to N")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("catalan", help="the full path sum polynomial, or one chain's share")
    p.add_argument("n", type=int)
    p.add_argument("--mu", default=None)
    p.set_defaults(func=_cmd_catalan)

    p = sub.add_parser("absorb", help="orbit absorption counts below the coverage bound")
    p.add_argument("start", type=int)
    p.add_argument("stop", type=int, nargs="?", default=None)
    p.set_defaults(func=_cmd_absorb)

    p = sub.add_parser("export", help="readable dump of a stored collection")
    p.add_argument("path")
    p.set_defaults(func=_cmd_export)
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
