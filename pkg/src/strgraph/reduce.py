"""Transitive-arc elimination with a bounded chunk of resident arcs.

Arcs incoming to each target are examined in increasing left-extension
length; a chunk C holds at most M accepted (irreducible) arcs, and an arc
is eliminated when some accepted arc with a strictly shorter left extension
has a reversed-extension interval containing this arc's.  A mark file
parallel to each arc list records which arcs are already decided; one pass
reads the arcs and marks and rewrites the marks, so a target with d
accepted arcs costs ceil(d/M) passes of 3 records per incoming arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .labeling import ArcKey
from .seqlist import (
    ARC_WIDTH,
    MARK_RECORD,
    MARK_WIDTH,
    ListStore,
    RecordList,
    decode_arc,
    encode_arc,
)

Arc = Tuple[int, int, int, int, int]

UNPROCESSED = 0
ACCEPTED = 1
TRANSITIVE = 2


def containment_reduces(candidate: Arc, accepted: Arc) -> bool:
    """Whether `accepted` eliminates `candidate` (same target assumed).

    True iff the accepted arc's left extension is strictly shorter and its
    reversed-extension interval contains the candidate's: by the interval
    prefix test that makes the accepted reversed extension a proper prefix
    of the candidate's.
    """
    return (
        accepted[4] < candidate[4]
        and accepted[2] <= candidate[2]
        and candidate[3] <= accepted[3]
    )


@dataclass
class ReduceResult:
    d_lists: Dict[int, RecordList]
    arcs_total: int
    irreducible: int
    max_indegree: int
    arc_reads: int
    mark_reads: int
    mark_writes: int
    output_writes: int
    max_resident: int

    @property
    def io_records(self) -> int:
        """Arc and mark records moved, the quantity the pass bound covers."""
        return self.arc_reads + self.mark_reads + self.mark_writes

    def load_arcs(self) -> List[Arc]:
        out: List[Arc] = []
        for z in sorted(self.d_lists):
            out.extend(decode_arc(rec) for rec in self.d_lists[z].scan())
        return out


def reduce_overlap_graph(
    memory_records: int,
    arc_lists: Dict[ArcKey, RecordList],
    store: ListStore,
    keep_marks: bool = False,
) -> ReduceResult:
    """Remove every reducible arc, holding at most `memory_records` accepted
    arcs (plus the record under test) in memory.

    The output is one D_<z>.bin list of irreducible arcs per target, in
    acceptance order; the result is identical for every chunk capacity.
    """
    if memory_records < 1:
        raise ValueError("memory_records must be >= 1")
    M = memory_records

    targets: Dict[int, List[int]] = {}
    for l_p, z in arc_lists:
        targets.setdefault(z, []).append(l_p)

    d_lists: Dict[int, RecordList] = {}
    arcs_total = 0
    irreducible = 0
    max_indegree = 0
    arc_reads = mark_reads = mark_writes = output_writes = 0
    max_resident = 0

    for z in sorted(targets):
        lengths = sorted(targets[z])
        arcs_total += sum(len(arc_lists[(p, z)]) for p in lengths)
        out = store.create(f"D_{z}.bin", ARC_WIDTH)
        d_lists[z] = out
        accepted_z = 0

        mark_names: Dict[int, Optional[str]] = {p: None for p in lengths}
        generation = 0
        remaining = 1  # force the first pass
        while remaining > 0:
            remaining = 0
            chunk: List[Arc] = []
            generation += 1
            for p in lengths:
                arcs = arc_lists[(p, z)]
                old_name = mark_names[p]
                old_marks = (
                    store.open(old_name, MARK_WIDTH).scan() if old_name else None
                )
                new_name = f"M_{p}_{z}_{generation % 2}.bin"
                new_marks = store.create(new_name, MARK_WIDTH)
                for rec in arcs.scan():
                    arc_reads += 1
                    if old_marks is None:
                        mark = UNPROCESSED
                    else:
                        (mark,) = MARK_RECORD.unpack(next(old_marks))
                        mark_reads += 1
                    if mark == UNPROCESSED:
                        arc = decode_arc(rec)
                        max_resident = max(max_resident, len(chunk) + 1)
                        if any(containment_reduces(arc, acc) for acc in chunk):
                            mark = TRANSITIVE
                        elif len(chunk) < M:
                            chunk.append(arc)
                            mark = ACCEPTED
                        else:
                            remaining += 1
                    new_marks.append(MARK_RECORD.pack(mark))
                    mark_writes += 1
                new_marks.finalize()
                if old_name:
                    store.open(old_name, MARK_WIDTH).delete()
                mark_names[p] = new_name
            for arc in chunk:
                out.append(encode_arc(arc))
                output_writes += 1
            accepted_z += len(chunk)
        out.finalize()
        irreducible += accepted_z
        max_indegree = max(max_indegree, accepted_z)
        if not keep_marks:
            for name in mark_names.values():
                if name and store.exists(name):
                    store.open(name, MARK_WIDTH).delete()

    result = ReduceResult(
        d_lists=d_lists,
        arcs_total=arcs_total,
        irreducible=irreducible,
        max_indegree=max_indegree,
        arc_reads=arc_reads,
        mark_reads=mark_reads,
        mark_writes=mark_writes,
        output_writes=output_writes,
        max_resident=max_resident,
    )
    return result


def reduction_io_bound(arcs_total: int, max_indegree: int, memory_records: int) -> int:
    """3 |E(G_O)| ceil(d / M) with d the largest accepted in-degree."""
    if arcs_total == 0:
        return 0
    return 3 * arcs_total * math.ceil(max_indegree / memory_records)
