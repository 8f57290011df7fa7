"""Seed scan: one pass over B, L, SA emitting every basic arc encoding.

A seed is a proper substring of some read that is both a read suffix and a
read prefix.  The pass keeps a stack of open candidate intervals; when an
interval closes, the sentinel counters decide whether the prefix side is
nonempty and the basic encoding (left extension still empty) is appended to
the list keyed by the seed's first symbol and length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .index import SENTINEL, IndexBundle
from .seqlist import (
    ENCODING_WIDTH,
    GSA_RECORD,
    LCP_RECORD,
    ListStore,
    RecordList,
    encode_encoding,
)

EncodingKey = Tuple[str, int, int]  # (first symbol, l_S, l_PS)


def e_list_name(key: EncodingKey) -> str:
    sigma, l_s, l_ps = key
    return f"E_{sigma}_{l_s}_{l_ps}.bin"


def seed_opening_check(lcp: Sequence[int], b: int) -> Optional[int]:
    """Length of the only seed that can open at position b, if any.

    lcp is 1-based (lcp[0] unused).  At an opening the candidate length is
    L[b+1]; a rise in the LCP is required and a pure-sentinel block (length
    0) never opens a seed.
    """
    if b + 1 >= len(lcp):
        return None
    k = lcp[b + 1]
    if k > lcp[b] and k >= 1:
        return k
    return None


@dataclass
class _Frame:
    b: int  # opening position of the S-interval / S$-interval
    k: int  # |S|
    b_dollar: int  # sentinels in B[1..b-1]
    run_end: int  # exclusive end of the S$ run seen so far


@dataclass
class SeedScanResult:
    lists: Dict[EncodingKey, RecordList]
    seeds: int
    max_stack_depth: int
    records_read: int


def build_basic_arc_intervals(
    index: IndexBundle, store: ListStore, min_seed_len: int = 1
) -> SeedScanResult:
    """Emit the basic encoding of every seed of length >= min_seed_len.

    Reads B, L and SA in lockstep exactly once.  Output lists are created
    lazily; within each list the records are appended in increasing opening
    position and their intervals are pairwise disjoint.
    """
    total = index.total_len
    full_b, full_e = 1, total + 1
    lists: Dict[EncodingKey, RecordList] = {}
    stack: List[_Frame] = []
    max_depth = 0
    seeds = 0

    def emit(frame: _Frame, n_dollar: int) -> None:
        nonlocal seeds
        if n_dollar <= frame.b_dollar or frame.k < min_seed_len:
            return
        key = (index.symbol_at(frame.b), frame.k, frame.k)
        lst = lists.get(key)
        if lst is None:
            lst = store.create(e_list_name(key), ENCODING_WIDTH)
            lists[key] = lst
        lst.append(
            encode_encoding(
                (
                    frame.b,
                    frame.run_end,
                    frame.b_dollar + 1,
                    n_dollar + 1,
                    full_b,
                    full_e,
                    full_b,
                    full_e,
                    0,
                    frame.k,
                )
            )
        )
        seeds += 1

    read_start = store.counters.records_read
    n_dollar = 0
    prev_lcp = 0
    prev_k = 0
    prev_sym = ""
    pos = 0
    for pos, (b_rec, lcp_rec, sa_rec) in enumerate(
        zip(index.b_list.scan(), index.lcp_list.scan(), index.sa_list.scan()), start=1
    ):
        sym = b_rec.decode("ascii")
        (lcp,) = LCP_RECORD.unpack(lcp_rec)
        k, _j = GSA_RECORD.unpack(sa_rec)

        if pos > 1:
            if lcp < prev_lcp:
                # pos closes every interval longer than the new LCP
                while stack and stack[-1].k > lcp:
                    emit(stack.pop(), n_dollar)
            if stack and stack[-1].run_end == pos and lcp == stack[-1].k == k:
                stack[-1].run_end = pos + 1
            if lcp > prev_lcp and lcp >= 1 and prev_k == lcp:
                # pos-1 opens the candidate seed of length lcp, and its
                # suffix is exactly the seed (the S$ row).
                b_dollar = n_dollar - (1 if prev_sym == SENTINEL else 0)
                frame = _Frame(b=pos - 1, k=lcp, b_dollar=b_dollar, run_end=pos)
                if k == lcp:
                    frame.run_end = pos + 1
                if stack and stack[-1].k >= frame.k:
                    raise AssertionError("seed stack not strictly nested")
                stack.append(frame)
                max_depth = max(max_depth, len(stack))

        if sym == SENTINEL:
            n_dollar += 1
        prev_lcp, prev_k, prev_sym = lcp, k, sym

    while stack:
        emit(stack.pop(), n_dollar)

    for lst in lists.values():
        lst.finalize()

    return SeedScanResult(
        lists=lists,
        seeds=seeds,
        max_stack_depth=max_depth,
        records_read=store.counters.records_read - read_start,
    )
