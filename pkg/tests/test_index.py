import io
import random

import pytest

from conftest import FRUITS, TABLE1_BWT, TABLE1_LCP, TABLE1_SA, build_in_memory, rng_for
from strgraph.index import (
    IngestError,
    ReadSet,
    build_index,
    check_substring_free,
    ingest_reads,
    sentinel_rank_table,
)
from strgraph.intervals import SENTINEL, rotations_of_read
from strgraph.oracle import random_read_set
from strgraph.seqlist import GSA_RECORD, LCP_RECORD, MemoryStore


def read_index_arrays(index):
    bwt = "".join(r.decode() for r in index.b_list.scan())
    sa = [GSA_RECORD.unpack(r) for r in index.sa_list.scan()]
    lcp = [LCP_RECORD.unpack(r)[0] for r in index.lcp_list.scan()]
    return bwt, sa, lcp


def test_ingest_fruits_counts():
    reads = ingest_reads(io.StringIO("APPLE\nLEMON\nAPRICOT\n"))
    assert (reads.m, reads.n, reads.l) == (3, 17, 7)


def test_ingest_dedup():
    reads = ingest_reads(io.StringIO("ACGT\nACGT\n"))
    assert reads.m == 1
    assert reads.duplicates_removed == 1


def test_ingest_fasta_two_records():
    text = ">r1 header junk\nACG\nT\n>r2\nGGTT\n"
    reads = ingest_reads(io.StringIO(text), fmt="fasta")
    assert reads.reads == ("ACGT", "GGTT")


def test_ingest_empty_file():
    with pytest.raises(IngestError):
        ingest_reads(io.StringIO(""))


def test_ingest_illegal_symbol_reports_line():
    with pytest.raises(IngestError, match="line 2"):
        ingest_reads(io.StringIO("ACGT\nAC-T\n"))


def test_readset_rejects_empty_read():
    with pytest.raises(IngestError):
        ReadSet.from_strings(["ACGT", ""])


def test_table1_golden(fruits_index):
    index, _store = fruits_index
    bwt, sa, lcp = read_index_arrays(index)
    assert bwt == TABLE1_BWT
    assert sa == TABLE1_SA
    assert lcp == TABLE1_LCP


def test_table1_row5(fruits_index):
    index, _ = fruits_index
    _, sa, lcp = read_index_arrays(index)
    bwt = TABLE1_BWT
    assert sa[4] == (7, 3)
    assert lcp[4] == 2
    assert bwt[4] == SENTINEL


def test_single_read_smallest_instance():
    index, _ = build_in_memory(ReadSet.from_strings(["A"]))
    bwt, sa, lcp = read_index_arrays(index)
    assert sa == [(0, 1), (1, 1)]
    assert lcp == [-1, 0]
    assert bwt == "A$"


def test_sentinel_block_order(fruits_index):
    index, _ = fruits_index
    assert sentinel_rank_table(index) == [1, 3, 2]


def test_sentinel_table_single_read():
    index, _ = build_in_memory(ReadSet.from_strings(["AB"]))
    assert sentinel_rank_table(index) == [1]


def test_sentinel_table_lexicographic_regardless_of_input_order():
    reads = ReadSet.from_strings(["TTT", "GG", "AAAA"])  # reverse lexicographic
    index, _ = build_in_memory(reads)
    table = sentinel_rank_table(index)
    by_lex = sorted(range(1, reads.m + 1), key=lambda j: reads.read(j))
    assert table == by_lex


def test_substring_free_fruits(fruits_index):
    index, _ = fruits_index
    assert check_substring_free(index, ReadSet.from_strings(FRUITS)) == []


def test_substring_free_detects_containment():
    reads = ReadSet.from_strings(["ACGT", "CG"])
    index, _ = build_in_memory(reads)
    assert check_substring_free(index, reads) == [2]


def test_substring_free_no_containment():
    reads = ReadSet.from_strings(["AB", "BA"])
    index, _ = build_in_memory(reads)
    assert check_substring_free(index, reads) == []


def test_containment_check_matches_brute_force():
    rng = rng_for(42)
    for _ in range(60):
        reads = random_read_set(rng, max_reads=12, max_len=8)
        index, _ = build_in_memory(reads)
        got = set(check_substring_free(index, reads))
        want = {
            i
            for i, r in enumerate(reads.reads, 1)
            if any(r != other and r in other for other in reads.reads)
        }
        assert got == want


def _naive_rows(reads):
    rows = []
    for j, read in enumerate(reads.reads, start=1):
        full = read + SENTINEL
        for k in range(len(read) + 1):
            start = len(read) - k
            rows.append((full[start:] + full[:start], k, j))
    rows.sort(key=lambda r: r[0])
    return rows


def test_random_instances_rotation_order_and_bwt():
    rng = rng_for(7)
    for _ in range(40):
        reads = random_read_set(rng, max_reads=8, max_len=7)
        index, _ = build_in_memory(reads)
        bwt, sa, lcp = read_index_arrays(index)
        rows = _naive_rows(reads)
        assert [(k, j) for _, k, j in rows] == sa
        # BWT: symbol preceding the suffix, sentinel when the suffix is the read
        for pos, (_, k, j) in enumerate(rows):
            read = reads.read(j)
            want = SENTINEL if k == len(read) else read[len(read) - k - 1]
            assert bwt[pos] == want
        # LCP: naive longest common prefix where sentinels never match
        for pos in range(1, len(rows)):
            a = rows[pos - 1][0].split(SENTINEL)[0] + SENTINEL
            b = rows[pos][0].split(SENTINEL)[0] + SENTINEL
            n = 0
            for x, y in zip(a, b):
                if x != y or x == SENTINEL:
                    break
                n += 1
            assert lcp[pos] == n
        assert lcp[0] == -1


def test_interval_lcp_floor_property():
    # Inside any nonempty S-interval the LCP never drops below |S|.
    rng = rng_for(11)
    from strgraph.intervals import naive_interval, sorted_rotations

    for _ in range(20):
        reads = random_read_set(rng, max_reads=6, max_len=6)
        index, _ = build_in_memory(reads)
        _, _, lcp = read_index_arrays(index)
        rots = sorted_rotations(reads.reads)
        for read in reads.reads:
            for i in range(len(read)):
                for j in range(i + 1, len(read) + 1):
                    s = read[i:j]
                    b, e = naive_interval(s, rots).interval
                    for h in range(b + 1, e):
                        assert lcp[h - 1] >= len(s)
