"""Command-line entry point.

Subcommands: index, seeds, overlap, reduce, assemble, verify, stats.
State between invocations lives in the work directory: the three index
files, the arc lists, reads.txt, meta.json and stats.json.

Exit codes: 0 success, 1 input validation failure, 2 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Dict, List, Optional

from . import graph as graph_mod
from . import oracle
from .index import IndexBundle, IngestError, ReadSet, build_index, ingest_reads
from .labeling import ArcKey, arc_list_name
from .reduce import reduce_overlap_graph, reduction_io_bound
from .seedscan import build_basic_arc_intervals, e_list_name
from .seqlist import (
    ARC_WIDTH,
    BWT_WIDTH,
    GSA_WIDTH,
    LCP_WIDTH,
    FileStore,
    SequentialAccessError,
    decode_encoding,
)

META_FILE = "meta.json"
STATS_FILE = "stats.json"
READS_FILE = "reads.txt"

STATS_KEYS = [
    "n",
    "m",
    "l",
    "seeds",
    "arcs",
    "irreducible_arcs",
    "records_read",
    "records_written",
    "io_bound",
    "reduction_io_bound",
]


class CliError(ValueError):
    pass


def _workdir(args) -> Path:
    wd = args.workdir or os.environ.get("STRGRAPH_WORKDIR")
    if not wd:
        raise CliError("no work directory: use --workdir or set STRGRAPH_WORKDIR")
    return Path(wd)


def _save_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_json(path: Path) -> dict:
    if not path.exists():
        raise CliError(f"missing {path}")
    return json.loads(path.read_text())


def _save_reads(workdir: Path, reads: ReadSet) -> None:
    (workdir / READS_FILE).write_text("\n".join(reads.reads) + "\n")


def _load_reads(workdir: Path) -> ReadSet:
    path = workdir / READS_FILE
    if not path.exists():
        raise CliError(f"missing {path}; run `strgraph index` or `strgraph overlap` first")
    return ReadSet.from_strings(path.read_text().splitlines(), dedup=False)


def _update_stats(workdir: Path, **fields) -> dict:
    path = workdir / STATS_FILE
    stats = json.loads(path.read_text()) if path.exists() else {k: None for k in STATS_KEYS}
    stats.update(fields)
    _save_json(path, {k: stats.get(k) for k in STATS_KEYS})
    return stats


def _ingest(args) -> ReadSet:
    with open(args.reads, "r") as handle:
        reads = ingest_reads(handle, fmt=args.format)
    if reads.duplicates_removed:
        print(f"removed {reads.duplicates_removed} duplicate reads", file=sys.stderr)
    return reads


def _save_meta(workdir: Path, reads: ReadSet, index: IndexBundle) -> None:
    _save_json(
        workdir / META_FILE,
        {
            "m": index.m,
            "n": index.n,
            "l": index.l,
            "sigma": index.sigma,
            "c_table": index.c_table,
            "duplicates_removed": reads.duplicates_removed,
        },
    )


def _open_index(store: FileStore, meta: dict) -> IndexBundle:
    return IndexBundle(
        b_list=store.open("B.bin", BWT_WIDTH),
        sa_list=store.open("SA.bin", GSA_WIDTH),
        lcp_list=store.open("LCP.bin", LCP_WIDTH),
        c_table=dict(meta["c_table"]),
        sigma=meta["sigma"],
        m=meta["m"],
        n=meta["n"],
        l=meta["l"],
    )


def _open_arc_lists(store: FileStore) -> Dict[ArcKey, object]:
    arc_lists = {}
    for name in store.names():
        if name.startswith("A_") and name.endswith(".bin"):
            _, l_p, z = name[:-4].split("_")
            arc_lists[(int(l_p), int(z))] = store.open(name, ARC_WIDTH)
    return arc_lists


def cmd_index(args) -> int:
    workdir = _workdir(args)
    reads = _ingest(args)
    store = FileStore(workdir)
    index = build_index(reads, store)
    _save_reads(workdir, reads)
    _save_meta(workdir, reads, index)
    print(f"indexed m={index.m} reads, n={index.n} symbols, l={index.l}")
    return 0


def cmd_seeds(args) -> int:
    workdir = _workdir(args)
    store = FileStore(workdir)
    meta = _load_json(workdir / META_FILE)
    index = _open_index(store, meta)
    result = build_basic_arc_intervals(index, store, min_seed_len=args.min_overlap)
    for key in sorted(result.lists):
        sigma, l_s, l_ps = key
        print(f"E sigma={sigma} l_S={l_s} l_PS={l_ps}")
        for rec in result.lists[key].scan():
            f = decode_encoding(rec)
            print(
                f"  q(S$)=[{f[0]},{f[1]}) q($S)=[{f[2]},{f[3]})"
                f" q(P)=[{f[4]},{f[5]}) q(Pr)=[{f[6]},{f[7]}) l_P={f[8]} l_S={f[9]}"
            )
        result.lists[key].delete()
    print(f"{result.seeds} seeds")
    return 0


def cmd_overlap(args) -> int:
    workdir = _workdir(args)
    reads = _ingest(args)
    store = FileStore(workdir)
    result = graph_mod.build_overlap_graph(
        reads,
        store,
        min_overlap=args.min_overlap,
        force=args.force,
        keep_intermediate=args.keep_intermediate,
    )
    _save_reads(workdir, reads)
    _save_meta(workdir, reads, result.index)
    stats = _update_stats(
        workdir,
        n=result.index.n,
        m=result.index.m,
        l=result.index.l,
        seeds=result.seeds,
        arcs=result.arcs,
        irreducible_arcs=None,
        records_read=result.records_read,
        records_written=result.records_written,
        io_bound=result.io_bound,
        reduction_io_bound=None,
    )
    if args.stats:
        print(json.dumps(stats, indent=2, sort_keys=True))
    else:
        print(
            f"overlap graph: {result.arcs} arcs from {result.seeds} seeds"
            f" ({result.records_read} records read, bound {result.io_bound})"
        )
    return 0


def cmd_reduce(args) -> int:
    workdir = _workdir(args)
    store = FileStore(workdir)
    meta = _load_json(workdir / META_FILE)
    reads = _load_reads(workdir)
    arc_lists = _open_arc_lists(store)
    result = reduce_overlap_graph(args.memory_records, arc_lists, store)
    bound = reduction_io_bound(result.arcs_total, result.max_indegree, args.memory_records)
    _update_stats(workdir, irreducible_arcs=result.irreducible, reduction_io_bound=bound)
    print(
        f"string graph: {result.irreducible} of {result.arcs_total} arcs kept"
        f" ({result.io_records} arc+mark records moved, bound {bound})",
        file=sys.stderr,
    )
    if args.out:
        text = graph_mod.export_graph(result.load_arcs(), reads)
        Path(args.out).write_text(text)
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


def cmd_assemble(args) -> int:
    workdir = _workdir(args)
    store = FileStore(workdir)
    reads = _load_reads(workdir)
    try:
        path = [int(x) for x in args.path.split(",") if x]
    except ValueError as exc:
        raise CliError(f"bad --path: {exc}")
    arcs = []
    for lst in _open_arc_lists(store).values():
        from .seqlist import decode_arc

        arcs.extend(decode_arc(rec) for rec in lst.scan())
    print(graph_mod.assemble_path(path, arcs, reads))
    return 0


def cmd_verify(args) -> int:
    from .seqlist import MemoryStore

    rng = random.Random(args.seed)
    failures = 0
    for trial in range(args.instances):
        reads = oracle.random_read_set(
            rng, max_reads=25, max_len=12, alphabet="ACGT", substring_free=True
        )
        store = MemoryStore()
        problems: List[str] = []
        try:
            result = graph_mod.build_overlap_graph(reads, store)
            arcs = result.load_arcs()
            got = graph_mod.arcs_as_triples(arcs, reads)
            want = {a.key for a in oracle.naive_overlap_graph(reads)}
            if got != want:
                problems.append(f"overlap arcs differ: {got ^ want}")
            if result.records_read > result.io_bound:
                problems.append(
                    f"I/O bound exceeded: {result.records_read} > {result.io_bound}"
                )
            want_reduced = {a.key for a in oracle.naive_string_graph(reads)}
            for M in (1, 8):
                reduced = reduce_overlap_graph(
                    M, dict(result.arc_lists), MemoryStore()
                )
                got_reduced = graph_mod.arcs_as_triples(reduced.load_arcs(), reads)
                if got_reduced != want_reduced:
                    problems.append(f"string graph differs at M={M}")
            oracle_arcs = oracle.naive_overlap_graph(reads)
            for _ in range(5):
                path, chosen = oracle.random_path(rng, oracle_arcs, reads)
                left = oracle.assembly_left(path, chosen, reads)
                right = oracle.assembly_right(path, chosen, reads)
                if left != right:
                    problems.append(f"assembly mismatch on path {path}")
        except Exception as exc:  # a crash is a failed trial, keep going
            problems.append(f"exception: {exc!r}")
        status = "PASS" if not problems else "FAIL"
        print(f"trial {trial:03d} m={reads.m:3d} n={reads.n:4d}: {status}")
        for problem in problems:
            print(f"    {problem}")
        failures += bool(problems)
    print(f"{args.instances - failures}/{args.instances} trials passed")
    return 0 if failures == 0 else 1


def cmd_stats(args) -> int:
    workdir = _workdir(args)
    stats = _load_json(workdir / STATS_FILE)
    print(json.dumps(stats, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strgraph")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_workdir(p):
        p.add_argument("--workdir", "-w", help="work directory (or $STRGRAPH_WORKDIR)")

    p = sub.add_parser("index", help="build the index record files")
    p.add_argument("reads")
    p.add_argument("--format", choices=["plain", "fasta"], default="plain")
    add_workdir(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("seeds", help="dump the seed lists (debug)")
    add_workdir(p)
    p.add_argument("--min-overlap", type=int, default=1)
    p.set_defaults(func=cmd_seeds)

    p = sub.add_parser("overlap", help="build the overlap graph arc lists")
    p.add_argument("reads")
    p.add_argument("--format", choices=["plain", "fasta"], default="plain")
    p.add_argument("--min-overlap", type=int, default=1)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--keep-intermediate", action="store_true")
    p.add_argument("--force", action="store_true")
    add_workdir(p)
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("reduce", help="reduce the overlap graph to a string graph")
    p.add_argument("--memory-records", "-M", type=int, required=True)
    p.add_argument("--out", help="write the reduced graph as TSV")
    add_workdir(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("assemble", help="assemble a path of read ids")
    p.add_argument("--path", required=True, help="comma-separated read ids")
    add_workdir(p)
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("verify", help="randomized differential testing")
    p.add_argument("--instances", "-n", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="print the pipeline statistics")
    add_workdir(p)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, IngestError, graph_mod.ContainedReadsError, graph_mod.PathError,
            FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SequentialAccessError, AssertionError, oracle.OracleInconsistencyError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
