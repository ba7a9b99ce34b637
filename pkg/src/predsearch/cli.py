"""Command-line harness: generate workloads, benchmark structures, verify answers.

Subcommands:

* ``gen``     writes a keys file (sorted decimal, one per line) or a weights
              file (``key<TAB>weight`` per line) for a chosen workload kind;
* ``bench``   builds a structure, runs a query stream, checks every answer
              against the brute-force oracle and emits a report (JSON or CSV);
* ``verify``  sweeps every universe key (16-bit universes at most) or replays
              a scripted access file, exiting nonzero on the first mismatch.

Exit codes: 0 success, 1 usage or parameter problem, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from typing import Optional, Sequence

from .core import (
    KeySet,
    ParameterError,
    UniverseSpec,
    WeightedDistribution,
    entropy,
    oracle_predecessor,
    output_distribution,
)
from .hashfront import HashFront, ThresholdMode
from .layered import LayeredStructure, WorkingSetLayered
from .workload import (
    KINDS,
    RNG_NAME,
    WorkloadSpec,
    generate_distribution,
    sample_keys,
    sample_queries,
)
from .xfast import XFastTrie
from .yfast import YFastTrie

STRUCTURES = ("xfast", "yfast", "hashfront-a", "hashfront-b", "layered", "layered-ws")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2

#: Report schema; field names and order are stable across releases.
REPORT_FIELDS = (
    "structure",
    "epsilon",
    "universe_bits",
    "n",
    "support_size",
    "dist_kind",
    "dist_param",
    "keys_file",
    "dist_file",
    "query_file",
    "seed",
    "rng",
    "query_count",
    "input_entropy",
    "output_entropy",
    "table_size",
    "hashfront_hit_rate",
    "mean_layers_probed",
    "max_layers_probed",
    "oracle_mismatches",
    "wall_ns_per_query",
)


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on bad flags; the contract wants 1."""

    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# file formats


def read_keys(path: str) -> KeySet:
    keys: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            if not text.isdigit():
                raise ParameterError(f"{path}:{lineno}: not an unsigned decimal key: {text!r}")
            k = int(text)
            if keys and k <= keys[-1]:
                raise ParameterError(f"{path}:{lineno}: keys must be sorted ascending without duplicates")
            keys.append(k)
    if not keys:
        raise ParameterError(f"{path}: no keys")
    return KeySet(keys)


def write_keys(path: str, keys: KeySet) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for k in keys:
            fh.write(f"{k}\n")


def read_weights(path: str) -> WeightedDistribution:
    weights: dict[int, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.rstrip("\n")
            if not text.strip():
                continue
            parts = text.split("\t")
            if len(parts) != 2 or not parts[0].isdigit():
                raise ParameterError(f"{path}:{lineno}: expected 'key<TAB>weight', got {text!r}")
            key = int(parts[0])
            try:
                w = float(parts[1])
            except ValueError:
                raise ParameterError(f"{path}:{lineno}: bad weight {parts[1]!r}") from None
            if not math.isfinite(w) or w < 0.0:
                raise ParameterError(f"{path}:{lineno}: weight must be finite and >= 0")
            if key in weights:
                raise ParameterError(f"{path}:{lineno}: duplicate key {key}")
            weights[key] = w
    if not weights:
        raise ParameterError(f"{path}: no weights")
    return WeightedDistribution(weights)


def write_weights(path: str, dist: WeightedDistribution) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, w in dist.items():
            fh.write(f"{key}\t{w!r}\n")


def read_queries(path: str) -> list[int]:
    queries: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            if not text.isdigit():
                raise ParameterError(f"{path}:{lineno}: not an unsigned decimal key: {text!r}")
            queries.append(int(text))
    return queries


# instance assembly


def _load_instance(args) -> tuple[UniverseSpec, KeySet, WeightedDistribution, str, Optional[float]]:
    universe = UniverseSpec(args.universe_bits)
    if args.keys:
        keys = read_keys(args.keys)
    elif args.n is not None:
        keys = sample_keys(universe, args.n, args.seed)
    else:
        raise ParameterError("provide --keys FILE or --n COUNT")
    universe.check_key(keys.keys[-1])
    if args.dist:
        dist = read_weights(args.dist)
        dist_kind: str = "file"
        dist_param: Optional[float] = None
    else:
        kind = args.dist_kind or "uniform"
        spec = WorkloadSpec(kind=kind, support=keys.keys, ratio=args.ratio, s=args.s)
        dist = generate_distribution(spec)
        dist_kind = kind
        dist_param = {"geometric": args.ratio, "zipf": args.s}.get(kind)
    universe.check_key(dist.support[-1])
    return universe, keys, dist, dist_kind, dist_param


def build_structure(name: str, keys: KeySet, dist: WeightedDistribution,
                    universe: UniverseSpec, epsilon: Optional[float]):
    if name in ("hashfront-a", "hashfront-b"):
        if epsilon is None:
            raise ParameterError("--epsilon is required for hash-front structures")
        mode = ThresholdMode.mode_a(epsilon) if name.endswith("a") else ThresholdMode.mode_b(epsilon)
        return HashFront(keys, dist, universe, mode)
    if name == "xfast":
        return XFastTrie(keys, universe)
    if name == "yfast":
        return YFastTrie(keys, universe)
    if name == "layered":
        return LayeredStructure(keys, dist, universe)
    if name == "layered-ws":
        return WorkingSetLayered(keys, universe)
    raise ParameterError(f"unknown structure {name!r}")


# subcommands


def _audit_structure(structure, n: int) -> Optional[str]:
    """Post-run structural invariant check; returns a complaint or None."""
    if isinstance(structure, WorkingSetLayered):
        try:
            structure.audit()
        except AssertionError as exc:
            return str(exc)
    elif isinstance(structure, HashFront):
        capacity = structure.mode.table_capacity(structure.universe.bits)
        if len(structure.table) > capacity:
            return f"front table holds {len(structure.table)} entries, bound {capacity}"
    elif isinstance(structure, LayeredStructure):
        if sum(structure.layer_sizes()) != n:
            return "layers do not partition the key set"
    elif isinstance(structure, YFastTrie):
        sizes = structure.bucket_sizes()
        lo, hi = structure.size_band()
        if len(sizes) > 1 and not all(lo <= s <= hi for s in sizes):
            return f"bucket sizes {min(sizes)}..{max(sizes)} outside [{lo}, {hi}]"
    return None


def cmd_gen(args) -> int:
    if args.dist_kind:
        if not args.support:
            raise ParameterError("gen --dist-kind needs --support KEYS_FILE")
        support = read_keys(args.support)
        spec = WorkloadSpec(kind=args.dist_kind, support=support.keys,
                            ratio=args.ratio, s=args.s)
        write_weights(args.out, generate_distribution(spec))
    else:
        if args.universe_bits is None or args.n is None:
            raise ParameterError("gen needs either --dist-kind or both --universe-bits and --n")
        universe = UniverseSpec(args.universe_bits)
        write_keys(args.out, sample_keys(universe, args.n, args.seed))
    return EXIT_OK


def _emit_report(report: dict, out: Optional[str], fmt: str) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        writer.writerow(["" if report[f] is None else report[f] for f in REPORT_FIELDS])
        text = buf.getvalue()
    else:
        text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bench(args) -> int:
    universe, keys, dist, dist_kind, dist_param = _load_instance(args)
    structure = build_structure(args.structure, keys, dist, universe, args.epsilon)
    if args.query_file:
        queries = read_queries(args.query_file)
        for q in queries:
            universe.check_key(q)
    else:
        queries = sample_queries(dist, args.seed, args.queries)

    stats = []
    t0 = time.perf_counter_ns()
    for q in queries:
        stats.append(structure.query_stats(q))
    elapsed = time.perf_counter_ns() - t0

    mismatches = 0
    first_bad = None
    for q, st in zip(queries, stats):
        expected = oracle_predecessor(keys, q)
        if st.answer != expected:
            mismatches += 1
            if first_bad is None:
                first_bad = (q, expected, st.answer)
    if mismatches:
        q, expected, got = first_bad
        print(
            f"verification failed: structure={args.structure} universe_bits={args.universe_bits} "
            f"n={len(keys)} seed={args.seed} q={q} expected={expected} got={got} "
            f"({mismatches} mismatches total)",
            file=sys.stderr,
        )
        return EXIT_MISMATCH
    problem = _audit_structure(structure, len(keys))
    if problem:
        print(f"structural invariant failed after run: {problem}", file=sys.stderr)
        return EXIT_MISMATCH

    layered = args.structure in ("layered", "layered-ws")
    hashfront = args.structure.startswith("hashfront")
    nq = len(queries)
    report = {
        "structure": args.structure,
        "epsilon": args.epsilon if hashfront else None,
        "universe_bits": universe.bits,
        "n": len(keys),
        "support_size": dist.support_size,
        "dist_kind": dist_kind,
        "dist_param": dist_param,
        "keys_file": args.keys,
        "dist_file": args.dist,
        "query_file": args.query_file,
        "seed": args.seed,
        "rng": RNG_NAME,
        "query_count": nq,
        "input_entropy": entropy(dist),
        "output_entropy": output_distribution(keys, dist).entropy_bits(),
        "table_size": structure.table_size if hashfront else None,
        "hashfront_hit_rate": (sum(s.table_hit for s in stats) / nq) if hashfront and nq else None,
        "mean_layers_probed": (sum(s.layers_probed for s in stats) / nq) if layered and nq else None,
        "max_layers_probed": max((s.layers_probed for s in stats), default=None) if layered else None,
        "oracle_mismatches": 0,
        "wall_ns_per_query": (elapsed / nq) if nq else None,
    }
    _emit_report(report, args.out, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.universe_bits > 16:
        print("error: exhaustive verify limited to 16 bits", file=sys.stderr)
        return EXIT_USAGE
    universe, keys, dist, _, _ = _load_instance(args)
    structure = build_structure(args.structure, keys, dist, universe, args.epsilon)

    def reproducer(q: int, expected: Optional[int], got: Optional[int]) -> int:
        print(
            f"mismatch: structure={args.structure} universe_bits={args.universe_bits} "
            f"n={len(keys)} seed={args.seed} q={q} expected={expected} got={got}",
            file=sys.stderr,
        )
        return EXIT_MISMATCH

    if args.query_file and args.structure == "layered-ws":
        accesses = read_queries(args.query_file)
        for q in accesses:
            universe.check_key(q)
            answer, _ = structure.query(q)
            expected = oracle_predecessor(keys, q)
            if answer != expected:
                return reproducer(q, expected, answer)
            try:
                structure.audit()
            except AssertionError as exc:
                print(f"capacity audit failed after q={q}: {exc}", file=sys.stderr)
                return EXIT_MISMATCH
        print(f"verified {len(accesses)} scripted accesses with per-access audits: ok")
        return EXIT_OK

    for q in range(universe.size):
        got = structure.predecessor(q)
        expected = oracle_predecessor(keys, q)
        if got != expected:
            return reproducer(q, expected, got)
    print(f"verified all {universe.size} queries: ok")
    return EXIT_OK


# argument plumbing


def _add_instance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--universe-bits", type=int, required=True, help="universe is {0..2^bits-1}")
    sub.add_argument("--n", type=int, help="generate this many random keys from --seed")
    sub.add_argument("--keys", metavar="FILE", help="read keys from file instead of generating")
    sub.add_argument("--dist", metavar="FILE", help="read weights from a key<TAB>weight file")
    sub.add_argument("--dist-kind", choices=KINDS, help="synthesize weights over the key set")
    sub.add_argument("--ratio", type=float, default=0.5, help="geometric decay per rank")
    sub.add_argument("--s", type=float, default=1.0, help="zipf exponent")
    sub.add_argument("--structure", choices=STRUCTURES, required=True)
    sub.add_argument("--epsilon", type=float, help="threshold exponent for hash-front structures")
    sub.add_argument("--seed", type=int, default=0, help="single seed; sub-streams derive from it")


def build_parser() -> _Parser:
    parser = _Parser(prog="predsearch", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = subs.add_parser("gen", help="write a keys or weights file")
    gen.add_argument("--universe-bits", type=int, help="universe is {0..2^bits-1}")
    gen.add_argument("--n", type=int, help="number of distinct keys to draw")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dist-kind", choices=KINDS, help="write weights instead of keys")
    gen.add_argument("--ratio", type=float, default=0.5)
    gen.add_argument("--s", type=float, default=1.0)
    gen.add_argument("--support", metavar="FILE", help="keys file the weights are assigned over")
    gen.add_argument("--out", required=True, metavar="FILE")
    gen.set_defaults(func=cmd_gen)

    bench = subs.add_parser("bench", help="run a verified query workload and report")
    _add_instance_flags(bench)
    bench.add_argument("--queries", type=int, default=10000, help="number of sampled queries")
    bench.add_argument("--query-file", metavar="FILE", help="replay queries from file instead")
    bench.add_argument("--out", metavar="FILE", help="write the report here (default stdout)")
    bench.add_argument("--format", choices=("json", "csv"), default="json")
    bench.set_defaults(func=cmd_bench)

    verify = subs.add_parser("verify", help="exhaustive or scripted oracle check")
    _add_instance_flags(verify)
    verify.add_argument("--query-file", metavar="FILE",
                        help="scripted access sequence (layered-ws): verify with per-access audits")
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        # ParameterError / KeyRangeError / InvalidDistributionError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
