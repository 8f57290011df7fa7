"""Overlap graph driver: index, seed scan, then one labeling round per
left-extension length until no encodings remain.

Also hosts path assembly (concatenated left extensions, then the last
read) and the tab-separated graph export.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .index import IndexBundle, ReadSet, build_index, check_substring_free, sentinel_rank_table
from .labeling import ArcKey, complete_extensions, extend_encodings
from .seedscan import build_basic_arc_intervals
from .seqlist import ListStore, RecordList, decode_arc

Arc = Tuple[int, int, int, int, int]  # (source, target, b_r, e_r, l_P)


class ContainedReadsError(ValueError):
    def __init__(self, contained: Sequence[int]):
        super().__init__(f"reads contained in other reads: {list(contained)}")
        self.contained = list(contained)


class PathError(ValueError):
    pass


@dataclass
class OverlapResult:
    index: IndexBundle
    ranks: List[int]
    arc_lists: Dict[ArcKey, RecordList]
    seeds: int
    arcs: int
    rounds: int
    records_read: int
    records_written: int
    io_bound: int
    seedscan_max_stack: int
    labeling_max_open: int
    labeling_max_resident: int

    def load_arcs(self) -> List[Arc]:
        out: List[Arc] = []
        for key in sorted(self.arc_lists):
            out.extend(decode_arc(rec) for rec in self.arc_lists[key].scan())
        return out


def build_overlap_graph(
    reads: ReadSet,
    store: ListStore,
    min_overlap: int = 1,
    force: bool = False,
    keep_intermediate: bool = False,
) -> OverlapResult:
    """Run the full overlap-graph pipeline, leaving the A(l_P, z) lists in
    the store.

    Rejects collections with contained reads unless force is given (the
    reduction step is undefined on those).  min_overlap drops seeds shorter
    than the threshold before any arcs are formed; 1 keeps every overlap.
    """
    if min_overlap < 1:
        raise ValueError("min_overlap must be >= 1")
    index = build_index(reads, store)
    contained = check_substring_free(index, reads)
    if contained and not force:
        raise ContainedReadsError(contained)
    ranks = sentinel_rank_table(index)

    phase_start = store.counters.snapshot()
    scan = build_basic_arc_intervals(index, store, min_seed_len=min_overlap)
    e_lists = scan.lists
    arc_lists: Dict[ArcKey, RecordList] = {}
    arcs = 0
    rounds = 0
    max_open = 0
    max_resident = 0

    l_p = 0
    while e_lists:
        if l_p > index.l - 1:
            raise AssertionError(f"labeling did not terminate by round {index.l - 1}")
        ext = extend_encodings(l_p, index, ranks, e_lists, store, arc_lists)
        arcs += ext.arcs_emitted
        if not keep_intermediate:
            for lst in e_lists.values():
                lst.delete()
        rounds += 1
        if not ext.p_lists:
            break
        comp = complete_extensions(l_p, index, ext.p_lists, store)
        if not keep_intermediate:
            for lst in ext.p_lists.values():
                lst.delete()
        max_open = max(max_open, comp.max_open_intervals)
        max_resident = max(max_resident, comp.max_resident_encodings)
        e_lists = comp.e_lists
        l_p += 1

    for lst in arc_lists.values():
        lst.finalize()

    read_delta, written_delta = store.counters.delta(phase_start)
    return OverlapResult(
        index=index,
        ranks=ranks,
        arc_lists=arc_lists,
        seeds=scan.seeds,
        arcs=arcs,
        rounds=rounds,
        records_read=read_delta,
        records_written=written_delta,
        io_bound=(3 + 6 * index.l) * index.total_len,
        seedscan_max_stack=scan.max_stack_depth,
        labeling_max_open=max_open,
        labeling_max_resident=max_resident,
    )


def arcs_as_triples(arcs: Iterable[Arc], reads: ReadSet) -> set:
    """(source, target, overlap length) view used for oracle comparisons."""
    return {(s, t, len(reads.read(s)) - lp) for (s, t, _br, _er, lp) in arcs}


def _arc_choice(
    arcs_by_pair: Dict[Tuple[int, int], List[Arc]], a: int, b: int
) -> Arc:
    options = arcs_by_pair.get((a, b))
    if not options:
        raise PathError(f"no arc {a} -> {b}")
    return min(options, key=lambda arc: arc[4])


def _index_by_pair(arcs: Iterable[Arc]) -> Dict[Tuple[int, int], List[Arc]]:
    by_pair: Dict[Tuple[int, int], List[Arc]] = {}
    for arc in arcs:
        by_pair.setdefault((arc[0], arc[1]), []).append(arc)
    return by_pair


def assemble_path(path: Sequence[int], arcs: Iterable[Arc], reads: ReadSet) -> str:
    """Assembly of a path: left extensions of each hop, then the last read.

    Parallel arcs are resolved to the lowest l_P (longest overlap).
    """
    if not path:
        raise PathError("empty path")
    by_pair = _index_by_pair(arcs)
    parts: List[str] = []
    for a, b in zip(path, path[1:]):
        arc = _arc_choice(by_pair, a, b)
        parts.append(reads.read(a)[: arc[4]])
    parts.append(reads.read(path[-1]))
    return "".join(parts)


def assemble_path_right(path: Sequence[int], arcs: Iterable[Arc], reads: ReadSet) -> str:
    """Right-extension form of the same assembly (first read, then the
    right extension of every hop); equal to assemble_path on any path."""
    if not path:
        raise PathError("empty path")
    by_pair = _index_by_pair(arcs)
    parts = [reads.read(path[0])]
    for a, b in zip(path, path[1:]):
        arc = _arc_choice(by_pair, a, b)
        overlap_len = len(reads.read(a)) - arc[4]
        parts.append(reads.read(b)[overlap_len:])
    return "".join(parts)


def export_graph(arcs: Iterable[Arc], reads: ReadSet) -> str:
    """One line per arc, ordered by (target, l_P, source)."""
    lines = ["source_id\ttarget_id\toverlap_len\tleft_ext_len\tleft_ext_string"]
    for s, t, _br, _er, lp in sorted(arcs, key=lambda a: (a[1], a[4], a[0])):
        overlap_len = len(reads.read(s)) - lp
        lines.append(f"{s}\t{t}\t{overlap_len}\t{lp}\t{reads.read(s)[:lp]}")
    return "\n".join(lines) + "\n"
