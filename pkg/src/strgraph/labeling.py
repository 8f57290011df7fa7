"""Left-extension labeling passes.

Each round grows the left extension of every live encoding by one symbol:
``extend_encodings`` backward-extends the PS$-intervals in one scan of the
BWT (emitting a finished arc whenever a sentinel shows the source read is
exhausted), and ``complete_extensions`` finishes the q(P) and reversed
q(P^r) intervals of the partial records in a second scan.

``complete_extensions`` keeps a stack of the distinct open q(P) intervals;
the records waiting under an open interval are spilled to a scratch
sequential list instead of held in memory, so the pass itself retains at
most one decoded encoding besides the one under the cursor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .index import SENTINEL, IndexBundle
from .seedscan import EncodingKey, e_list_name
from .seqlist import (
    ARC_WIDTH,
    ENCODING_WIDTH,
    GSA_RECORD,
    OFFSET_Q_P,
    OFFSET_Q_PS,
    ListStore,
    PositionedScanner,
    RecordList,
    SequentialAccessError,
    decode_encoding,
    encode_arc,
    encode_encoding,
    merge,
)

ArcKey = Tuple[int, int]  # (l_P, target read id)


def p_list_name(key: EncodingKey) -> str:
    sigma, l_s, l_ps = key
    return f"P_{sigma}_{l_s}_{l_ps}.bin"


def arc_list_name(key: ArcKey) -> str:
    l_p, z = key
    return f"A_{l_p}_{z}.bin"


def merge_for_pass(
    lists: Dict[EncodingKey, RecordList], interval_offset: int
) -> Iterator[bytes]:
    """Merged stream over a round's lists, deterministic by key order."""
    ordered = [lists[key] for key in sorted(lists)]
    return merge(ordered, interval_offset)


@dataclass
class ExtendResult:
    p_lists: Dict[EncodingKey, RecordList]
    arcs_emitted: int
    encodings_read: int


def extend_encodings(
    l_p: int,
    index: IndexBundle,
    ranks: Sequence[int],
    e_lists: Dict[EncodingKey, RecordList],
    store: ListStore,
    arc_lists: Dict[ArcKey, RecordList],
) -> ExtendResult:
    """One backward-extension pass over the encodings with |P| = l_p.

    For every input encoding and symbol occurring in its BWT slice, appends
    a partially extended record to P(symbol, l_S, l_PS+1); for every
    sentinel hit with l_p > 0, appends one arc per target read named by the
    $S-interval.  Output lists come out sorted by increasing opening bound
    and pairwise disjoint.
    """
    c_table = index.c_table
    p_lists: Dict[EncodingKey, RecordList] = {}
    arcs = 0
    encodings = 0

    pi_total: Dict[str, int] = {sym: 0 for sym in index.sigma}

    def count_symbol(record: bytes) -> None:
        sym = record.decode("ascii")
        if sym != SENTINEL:
            pi_total[sym] += 1

    b_cursor = PositionedScanner(index.b_list)
    sa_cursor: Optional[PositionedScanner] = None

    for rec in merge_for_pass(e_lists, OFFSET_Q_PS):
        b, e, bds, eds, bp, ep, bpr, epr, lp, lps = decode_encoding(rec)
        if lp != l_p:
            raise SequentialAccessError(f"encoding with l_P={lp} in round {l_p}")
        encodings += 1

        b_cursor.skip_to(b, on_record=count_symbol)
        pi_slice: Dict[str, int] = {}
        for pos in range(b, e):
            sym = b_cursor.read().decode("ascii")
            if sym != SENTINEL:
                pi_slice[sym] = pi_slice.get(sym, 0) + 1
            elif l_p > 0:
                if sa_cursor is None:
                    sa_cursor = PositionedScanner(index.sa_list)
                sa_cursor.skip_to(pos)
                k, j = GSA_RECORD.unpack(sa_cursor.read())
                if k != lps:
                    raise SequentialAccessError(
                        f"sentinel hit at {pos}: suffix length {k} != l_PS {lps}"
                    )
                for i in range(bds, eds):
                    z = ranks[i - 1]
                    key = (l_p, z)
                    lst = arc_lists.get(key)
                    if lst is None:
                        lst = store.create(arc_list_name(key), ARC_WIDTH)
                        arc_lists[key] = lst
                    lst.append(encode_arc((j, z, bpr, epr, l_p)))
                    arcs += 1

        for sym in sorted(pi_slice):
            cnt = pi_slice[sym]
            b2 = c_table[sym] + pi_total[sym] + 1
            key = (sym, lps - l_p, lps + 1)
            lst = p_lists.get(key)
            if lst is None:
                lst = store.create(p_list_name(key), ENCODING_WIDTH)
                p_lists[key] = lst
            lst.append(
                encode_encoding((b2, b2 + cnt, bds, eds, bp, ep, bpr, epr, lp + 1, lps + 1))
            )
        for sym, cnt in pi_slice.items():
            pi_total[sym] += cnt

    b_cursor.close()
    if sa_cursor is not None:
        sa_cursor.close()
    for lst in p_lists.values():
        lst.finalize()

    return ExtendResult(p_lists=p_lists, arcs_emitted=arcs, encodings_read=encodings)


@dataclass
class _OpenInterval:
    b: int
    e: float  # int for real frames, inf for the guard
    occ_at_open: Optional[Dict[str, int]]
    pending: Optional[RecordList]


@dataclass
class CompleteResult:
    e_lists: Dict[EncodingKey, RecordList]
    encodings_read: int
    max_open_intervals: int
    max_resident_encodings: int


def complete_extensions(
    l_p: int,
    index: IndexBundle,
    p_lists: Dict[EncodingKey, RecordList],
    store: ListStore,
) -> CompleteResult:
    """Finish the partial records of a round in one scan of the BWT.

    Input records arrive sorted by their still-unextended q(P) interval;
    intervals of equal-length P strings are equal or disjoint, and a stack
    of open intervals (with the occurrence snapshot taken at each opening)
    lets each record be completed exactly when the scan passes its closing
    bound.  Records waiting under an open interval sit in a spilled scratch
    list and are re-read in arrival order, which keeps every output list
    sorted.
    """
    alphabet = SENTINEL + index.sigma
    c_table = index.c_table
    e_lists: Dict[EncodingKey, RecordList] = {}
    if not p_lists:
        return CompleteResult(e_lists, 0, 0, 0)

    occ: Dict[str, int] = {sym: 0 for sym in alphabet}

    def count_symbol(record: bytes) -> None:
        occ[record.decode("ascii")] += 1

    b_cursor = PositionedScanner(index.b_list)
    guard = _OpenInterval(b=1, e=math.inf, occ_at_open=None, pending=None)
    stack: List[_OpenInterval] = [guard]
    spill_seq = 0
    encodings = 0
    resident = 0
    max_resident = 0
    max_open = 0

    def emit(record: bytes, frame: _OpenInterval) -> None:
        bps, eps, bds, eds, bp, ep, bpr, epr, lp1, lps1 = decode_encoding(record)
        if (bp, ep) != (frame.b, frame.e):
            raise SequentialAccessError("pending record does not match its interval")
        sigma = index.symbol_at(bps)
        snap = frame.occ_at_open
        width = occ[sigma] - snap[sigma]
        if width < 1:
            raise SequentialAccessError("completed extension lost its occurrences")
        new_bp = c_table[sigma] + snap[sigma] + 1
        prev = sum(occ[c] - snap[c] for c in alphabet if c < sigma)
        new_bpr = bpr + prev
        key = (sigma, lps1 - lp1, lps1)
        lst = e_lists.get(key)
        if lst is None:
            lst = store.create(e_list_name(key), ENCODING_WIDTH)
            e_lists[key] = lst
        lst.append(
            encode_encoding(
                (bps, eps, bds, eds, new_bp, new_bp + width, new_bpr, new_bpr + width, lp1, lps1)
            )
        )

    def flush_top() -> None:
        nonlocal resident, max_resident
        frame = stack.pop()
        b_cursor.skip_to(int(frame.e), on_record=count_symbol)
        for record in frame.pending.scan():
            resident += 1
            max_resident = max(max_resident, resident)
            emit(record, frame)
            resident -= 1
        frame.pending.delete()

    for rec in merge_for_pass(p_lists, OFFSET_Q_P):
        fields = decode_encoding(rec)
        b, e = fields[4], fields[5]
        encodings += 1
        resident += 1
        max_resident = max(max_resident, resident)

        while stack[-1].e < e:
            flush_top()
        top = stack[-1]
        if top.pending is not None and (top.b, top.e) == (b, e):
            top.pending.append(rec)
        else:
            if not (top.b <= b and e <= top.e):
                raise SequentialAccessError(
                    f"interval [{b},{e}) not nested under open [{top.b},{top.e})"
                )
            b_cursor.skip_to(b, on_record=count_symbol)
            spill_seq += 1
            pending = store.create(f"Z_{l_p}_{spill_seq}.tmp", ENCODING_WIDTH)
            pending.append(rec)
            stack.append(
                _OpenInterval(b=b, e=e, occ_at_open=dict(occ), pending=pending)
            )
        max_open = max(max_open, len(stack) - 1)
        resident -= 1

    while len(stack) > 1:
        flush_top()
    b_cursor.close()

    for lst in e_lists.values():
        lst.finalize()

    return CompleteResult(
        e_lists=e_lists,
        encodings_read=encodings,
        max_open_intervals=max_open,
        max_resident_encodings=max_resident,
    )
