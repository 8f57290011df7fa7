"""Brute-force reference implementations for differential testing.

Everything here is deliberately naive (quadratic or worse) and shares no
code with the streaming pipeline beyond the ReadSet type: values derived
from these functions are trusted as test expectations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from .index import ReadSet


class OracleInconsistencyError(AssertionError):
    """The two reducibility characterizations disagreed."""


@dataclass(frozen=True)
class NaiveArc:
    source: int
    target: int
    overlap: str
    lx: str
    rx: str

    @property
    def overlap_len(self) -> int:
        return len(self.overlap)

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.source, self.target, len(self.overlap))


def naive_overlap_graph(reads: ReadSet) -> List[NaiveArc]:
    """Every (source, target, overlap length) with a nonempty left extension.

    Includes self-overlaps and parallel arcs at distinct overlap lengths.
    """
    arcs: List[NaiveArc] = []
    for i, ri in enumerate(reads.reads, start=1):
        for j, rj in enumerate(reads.reads, start=1):
            for k in range(1, min(len(ri) - 1, len(rj)) + 1):
                if ri[len(ri) - k :] == rj[:k]:
                    arcs.append(
                        NaiveArc(
                            source=i,
                            target=j,
                            overlap=rj[:k],
                            lx=ri[: len(ri) - k],
                            rx=rj[k:],
                        )
                    )
    return arcs


def naive_seeds(reads: ReadSet) -> Set[str]:
    """All proper substrings that are both a read suffix and a read prefix."""
    proper: Set[str] = set()
    for read in reads.reads:
        for length in range(1, len(read)):
            for start in range(len(read) - length + 1):
                proper.add(read[start : start + length])
    suffixes = {r[i:] for r in reads.reads for i in range(len(r))}
    prefixes = {r[: i + 1] for r in reads.reads for i in range(len(r))}
    return {s for s in proper if s in suffixes and s in prefixes}


def _reducible_by_suffix(arc: NaiveArc, incoming: Sequence[NaiveArc]) -> bool:
    # Another arc into the same target whose left extension is a proper
    # suffix of this arc's left extension.
    for other in incoming:
        if other is arc:
            continue
        if len(other.lx) < len(arc.lx) and arc.lx.endswith(other.lx):
            return True
    return False


def _reducible_by_path(
    arc: NaiveArc, arcs_by_source: Dict[int, List[NaiveArc]], reads: ReadSet
) -> bool:
    # Exhaustive search for a different path with the same assembly
    # (concatenated left extensions followed by the target read).  The
    # accumulated prefix is forced to match arc.lx, so a search state is
    # just (vertex, chars consumed, walk differs from [arc]).
    target_prefix = arc.lx
    seen: Set[Tuple[int, int, bool]] = set()
    stack: List[Tuple[int, int, int, bool]] = [(arc.source, 0, 0, False)]
    while stack:
        vertex, used, depth, differs = stack.pop()
        if vertex == arc.target and used == len(target_prefix) and differs:
            return True
        for step in arcs_by_source.get(vertex, ()):
            nxt = used + len(step.lx)
            if nxt > len(target_prefix) or target_prefix[used:nxt] != step.lx:
                continue
            state = (step.target, nxt, differs or depth > 0 or step is not arc)
            if state in seen:
                continue
            seen.add(state)
            stack.append((step.target, nxt, depth + 1, state[2]))
    return False


def naive_string_graph(reads: ReadSet) -> List[NaiveArc]:
    """Irreducible arcs of the overlap graph, checked two independent ways.

    The path-based definition (another equal-assembly path exists) and the
    local suffix test must agree on every arc; a disagreement aborts rather
    than silently trusting either side.
    """
    arcs = naive_overlap_graph(reads)
    by_target: Dict[int, List[NaiveArc]] = {}
    by_source: Dict[int, List[NaiveArc]] = {}
    for arc in arcs:
        by_target.setdefault(arc.target, []).append(arc)
        by_source.setdefault(arc.source, []).append(arc)

    kept: List[NaiveArc] = []
    for arc in arcs:
        by_suffix = _reducible_by_suffix(arc, by_target[arc.target])
        by_path = _reducible_by_path(arc, by_source, reads)
        if by_suffix != by_path:
            raise OracleInconsistencyError(
                f"arc {arc.key}: suffix test says {by_suffix}, path test says {by_path}"
            )
        if not by_suffix:
            kept.append(arc)
    return kept


def assembly_left(path: Sequence[int], chosen: Sequence[NaiveArc], reads: ReadSet) -> str:
    parts = [arc.lx for arc in chosen]
    parts.append(reads.read(path[-1]))
    return "".join(parts)


def assembly_right(path: Sequence[int], chosen: Sequence[NaiveArc], reads: ReadSet) -> str:
    parts = [reads.read(path[0])]
    parts.extend(arc.rx for arc in chosen)
    return "".join(parts)


def random_read_set(
    rng: random.Random,
    max_reads: int = 30,
    max_len: int = 15,
    alphabet: str = "AB",
    substring_free: bool = False,
) -> ReadSet:
    """Random instance generator, biased toward overlapping reads.

    Reads are sampled as windows of a random backbone string, which makes
    suffix/prefix coincidences common.  With substring_free=True, contained
    reads are dropped after deduplication.
    """
    backbone_len = rng.randint(max_len, max(4 * max_len, 20))
    backbone = "".join(rng.choice(alphabet) for _ in range(backbone_len))
    m = rng.randint(2, max_reads)
    reads: List[str] = []
    for _ in range(m):
        length = rng.randint(2, max_len)
        if rng.random() < 0.85 and length <= backbone_len:
            start = rng.randint(0, backbone_len - length)
            reads.append(backbone[start : start + length])
        else:
            reads.append("".join(rng.choice(alphabet) for _ in range(length)))

    seen: Set[str] = set()
    distinct = [r for r in reads if not (r in seen or seen.add(r))]
    if substring_free:
        distinct = [
            r
            for r in distinct
            if not any(r != other and r in other for other in distinct)
        ]
    if not distinct:
        distinct = ["".join(rng.choice(alphabet) for _ in range(max(2, max_len // 2)))]
    return ReadSet(tuple(distinct))


def random_path(
    rng: random.Random, arcs: Sequence[NaiveArc], reads: ReadSet, max_steps: int = 8
) -> Tuple[List[int], List[NaiveArc]]:
    """A random walk along oracle arcs; returns vertices and chosen arcs."""
    by_source: Dict[int, List[NaiveArc]] = {}
    for arc in arcs:
        by_source.setdefault(arc.source, []).append(arc)
    start = rng.randint(1, reads.m)
    path = [start]
    chosen: List[NaiveArc] = []
    for _ in range(rng.randint(0, max_steps)):
        options = by_source.get(path[-1])
        if not options:
            break
        arc = rng.choice(options)
        chosen.append(arc)
        path.append(arc.target)
    return path, chosen
