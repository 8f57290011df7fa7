"""Read ingestion and construction of the GSA / LCP / BWT record files.

Construction is an in-memory sort of all rotations, emitted as the three
sequential record files that the downstream passes consume.  Sentinel
conventions: the sentinel sorts below every alphabet symbol, never matches
another sentinel (so two pure-sentinel suffixes have LCP 0), and the
pure-sentinel suffixes are ordered by the lexicographic order of their
reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from .seqlist import (
    BWT_WIDTH,
    GSA_RECORD,
    GSA_WIDTH,
    LCP_RECORD,
    LCP_WIDTH,
    ListStore,
    RecordList,
)

SENTINEL = "$"
SENTINEL_BYTE = SENTINEL.encode("ascii")


class IngestError(ValueError):
    """Bad input file: empty, illegal symbol, malformed record."""


def _validate_symbols(read: str, line_no: int) -> None:
    for ch in read:
        if not (ch.isascii() and ch.isalnum()):
            raise IngestError(f"line {line_no}: illegal symbol {ch!r} in read")


@dataclass(frozen=True)
class ReadSet:
    """The input collection: distinct nonempty reads over a finite alphabet."""

    reads: Tuple[str, ...]
    duplicates_removed: int = 0

    @property
    def m(self) -> int:
        return len(self.reads)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.reads)

    @property
    def l(self) -> int:
        return max(len(r) for r in self.reads)

    @property
    def sigma(self) -> str:
        return "".join(sorted(set("".join(self.reads))))

    @property
    def total_len(self) -> int:
        """n + m: every symbol plus one sentinel per read."""
        return self.n + self.m

    def read(self, read_id: int) -> str:
        """Read by 1-based id."""
        return self.reads[read_id - 1]

    @classmethod
    def from_strings(cls, reads: Iterable[str], dedup: bool = True) -> "ReadSet":
        seen = set()
        kept: List[str] = []
        dropped = 0
        for i, read in enumerate(reads, start=1):
            if not read:
                raise IngestError(f"read {i} is empty")
            _validate_symbols(read, i)
            if dedup and read in seen:
                dropped += 1
                continue
            seen.add(read)
            kept.append(read)
        if not kept:
            raise IngestError("no reads in input")
        return cls(tuple(kept), duplicates_removed=dropped)


def ingest_reads(stream: TextIO, fmt: str = "plain") -> ReadSet:
    """Parse a plain (one read per line) or fasta stream into a ReadSet.

    Exact duplicates are removed; ids are assigned in input order after the
    removal.
    """
    if fmt == "plain":
        raw = _parse_plain(stream)
    elif fmt == "fasta":
        raw = _parse_fasta(stream)
    else:
        raise IngestError(f"unknown format {fmt!r}")
    if not raw:
        raise IngestError("empty input file")
    seen = set()
    kept: List[str] = []
    dropped = 0
    for read, line_no in raw:
        _validate_symbols(read, line_no)
        if read in seen:
            dropped += 1
            continue
        seen.add(read)
        kept.append(read)
    return ReadSet(tuple(kept), duplicates_removed=dropped)


def _parse_plain(stream: TextIO) -> List[Tuple[str, int]]:
    out = []
    for line_no, line in enumerate(stream, start=1):
        read = line.strip()
        if not read:
            continue
        out.append((read, line_no))
    return out


def _parse_fasta(stream: TextIO) -> List[Tuple[str, int]]:
    out: List[Tuple[str, int]] = []
    chunks: List[str] = []
    start_line = 0
    for line_no, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if chunks:
                out.append(("".join(chunks), start_line))
                chunks = []
            start_line = line_no + 1
        else:
            if start_line == 0:
                raise IngestError(f"line {line_no}: sequence before first header")
            chunks.append(line)
    if chunks:
        out.append(("".join(chunks), start_line))
    return out


@dataclass
class IndexBundle:
    """Handles on the three index record files plus the symbol-count table."""

    b_list: RecordList
    sa_list: RecordList
    lcp_list: RecordList
    c_table: Dict[str, int]
    sigma: str
    m: int
    n: int
    l: int

    @property
    def total_len(self) -> int:
        return self.n + self.m

    def symbol_at(self, pos: int) -> str:
        """First character of the rotation at a sorted position (C^-1)."""
        import bisect

        if not 1 <= pos <= self.total_len:
            raise ValueError(f"position {pos} outside [1, {self.total_len}]")
        starts = self._block_starts()
        i = bisect.bisect_right(starts, pos) - 1
        return (SENTINEL + self.sigma)[i]

    def _block_starts(self) -> List[int]:
        cached = getattr(self, "_starts", None)
        if cached is None:
            cached = [self.c_table[sym] + 1 for sym in SENTINEL + self.sigma]
            self._starts = cached
        return cached


def _lcp_with_sentinels(a: str, b: str) -> int:
    # Sentinels never match, not even each other.
    n = 0
    for x, y in zip(a, b):
        if x != y or x == SENTINEL:
            break
        n += 1
    return n


def build_index(reads: ReadSet, store: ListStore) -> IndexBundle:
    """Sort all rotations and emit B.bin, SA.bin, LCP.bin plus the C table.

    For SA[i] = (k, j) the BWT symbol is the read symbol preceding the
    k-suffix, or the sentinel when the suffix is the whole read.
    """
    total = reads.total_len
    if total >= 2**31:
        raise OverflowError("collection too large for 32-bit positions")

    # (rotation, k, j); plain string order is the index order.
    rows: List[Tuple[str, int, int]] = []
    for j, read in enumerate(reads.reads, start=1):
        full = read + SENTINEL
        rlen = len(read)
        for k in range(rlen + 1):
            start = rlen - k
            rows.append((full[start:] + full[:start], k, j))
    rows.sort(key=lambda row: row[0])

    b_list = store.create("B.bin", BWT_WIDTH)
    sa_list = store.create("SA.bin", GSA_WIDTH)
    lcp_list = store.create("LCP.bin", LCP_WIDTH)

    counts: Dict[str, int] = {sym: 0 for sym in SENTINEL + reads.sigma}
    prev_ls: Optional[str] = None
    for rotation, k, j in rows:
        read = reads.read(j)
        if k == len(read):
            symbol = SENTINEL
        else:
            symbol = read[len(read) - k - 1]
        ls = read[len(read) - k :] + SENTINEL
        lcp = -1 if prev_ls is None else _lcp_with_sentinels(prev_ls, ls)
        prev_ls = ls

        b_list.append(symbol.encode("ascii"))
        sa_list.append(GSA_RECORD.pack(k, j))
        lcp_list.append(LCP_RECORD.pack(lcp))
        counts[symbol] += 1

    b_list.finalize()
    sa_list.finalize()
    lcp_list.finalize()

    c_table: Dict[str, int] = {}
    running = 0
    for sym in SENTINEL + reads.sigma:
        c_table[sym] = running
        running += counts[sym]

    return IndexBundle(
        b_list=b_list,
        sa_list=sa_list,
        lcp_list=lcp_list,
        c_table=c_table,
        sigma=reads.sigma,
        m=reads.m,
        n=reads.n,
        l=reads.l,
    )


def check_substring_free(index: IndexBundle, reads: ReadSet) -> List[int]:
    """Ids of reads occurring as a substring of another read.

    One coordinated scan of SA and LCP: read r_i is contained iff at the
    position of its full suffix the LCP with either neighbour reaches
    |r_i|.  Assumes duplicates were already removed.
    """
    contained: List[int] = []
    sa_scan = index.sa_list.scan()
    lcp_scan = index.lcp_list.scan()

    pending: Optional[Tuple[int, int]] = None  # (read id, length) from previous row
    for sa_rec, lcp_rec in zip(sa_scan, lcp_scan):
        k, j = GSA_RECORD.unpack(sa_rec)
        (lcp,) = LCP_RECORD.unpack(lcp_rec)
        if pending is not None and lcp >= pending[1]:
            contained.append(pending[0])
            pending = None
        elif pending is not None:
            pending = None
        if k == len(reads.read(j)):
            if lcp >= k:
                contained.append(j)
            else:
                pending = (j, k)  # decided by the next row's LCP
    # pending at end of input: no right neighbour, not contained
    contained.sort()
    return contained


def sentinel_rank_table(index: IndexBundle) -> List[int]:
    """Map from position in the sentinel block (1..m) to read id.

    Materializes the correspondence between a $S-interval and the set of
    reads with prefix S; read from the first m GSA records.
    """
    table: List[int] = []
    scan = index.sa_list.scan()
    for _ in range(index.m):
        k, j = GSA_RECORD.unpack(next(scan))
        if k != 0:
            raise ValueError("sentinel block shorter than m")
        table.append(j)
    scan.close()
    return table
