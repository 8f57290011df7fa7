import random

import pytest

from conftest import FRUITS, build_in_memory, rng_for
from strgraph.index import ReadSet
from strgraph.intervals import (
    Interval,
    LabeledInterval,
    backward_extension,
    forward_extension,
    full_interval,
    is_proper_prefix,
    naive_interval,
    sorted_rotations,
)
from strgraph.oracle import random_read_set

FRUIT_ROTS = sorted_rotations(FRUITS)


def occ(bwt, sym, pos):
    return bwt[: pos - 1].count(sym)


def fruits_bwt(fruits_index):
    index, _ = fruits_index
    return "".join(r.decode() for r in index.b_list.scan())


def test_naive_interval_le():
    assert naive_interval("LE", FRUIT_ROTS) == LabeledInterval(Interval(10, 12), 2)


def test_naive_interval_le_dollar():
    assert naive_interval("LE$", FRUIT_ROTS).interval == Interval(10, 11)


def test_naive_interval_dollar_le():
    assert naive_interval("$LE", FRUIT_ROTS).interval == Interval(3, 4)


def test_backward_extension_le(fruits_index):
    index, _ = fruits_index
    bwt = fruits_bwt(fruits_index)
    q_e = naive_interval("E", FRUIT_ROTS).interval
    assert q_e == Interval(7, 9)
    assert occ(bwt, "L", q_e.b) == 0
    assert occ(bwt, "L", q_e.e) == 2
    assert index.c_table["L"] == 9
    got = backward_extension(q_e, "L", index.c_table, 0, 2)
    assert got == Interval(10, 12)


def test_backward_extension_empty_when_no_occurrences(fruits_index):
    index, _ = fruits_index
    q = Interval(7, 9)
    assert backward_extension(q, "T", index.c_table, 1, 1).is_empty


def test_backward_extension_random_vs_naive():
    rng = rng_for(3)
    for _ in range(150):
        reads = random_read_set(rng, max_reads=10, max_len=8, alphabet="ACGT")
        index, _ = build_in_memory(reads)
        bwt = "".join(r.decode() for r in index.b_list.scan())
        rots = sorted_rotations(reads.reads)
        text = rng.choice(reads.reads)
        i = rng.randint(0, len(text) - 1)
        q_str = text[i : i + rng.randint(1, 4)]
        sigma = rng.choice(reads.sigma)
        q = naive_interval(q_str, rots).interval
        got = backward_extension(
            q, sigma, index.c_table, occ(bwt, sigma, q.b), occ(bwt, sigma, q.e)
        )
        want = naive_interval(sigma + q_str, rots).interval
        if want.is_empty:
            assert got.is_empty
        else:
            assert got == want


def test_forward_extension_single_symbol_slice():
    q = Interval(4, 7)
    got = forward_extension(q, "C", {"C": 3})
    assert got == Interval(4, 7)


def test_forward_extension_empty():
    assert forward_extension(Interval(4, 7), "C", {"G": 3}).is_empty


def test_forward_extension_matches_reversed_collection():
    rng = rng_for(17)
    for _ in range(120):
        reads = random_read_set(rng, max_reads=8, max_len=8, alphabet="ACGT")
        index, _ = build_in_memory(reads)
        bwt = "".join(r.decode() for r in index.b_list.scan())
        rots = sorted_rotations(reads.reads)
        rev_rots = sorted_rotations([r[::-1] for r in reads.reads])
        text = rng.choice(reads.reads)
        i = rng.randint(0, len(text) - 1)
        p = text[i : i + rng.randint(1, 4)]
        sigma = rng.choice("ACGT")
        q = naive_interval(p, rots).interval
        q_r = naive_interval(p[::-1], rev_rots).interval
        assert q.width == q_r.width  # linked intervals
        deltas = {}
        for sym in bwt[q.b - 1 : q.e - 1]:
            deltas[sym] = deltas.get(sym, 0) + 1
        got = forward_extension(q_r, sigma, deltas)
        want = naive_interval(p[::-1] + sigma, rev_rots).interval
        if want.is_empty:
            assert got.is_empty
        else:
            assert got == want


def test_is_proper_prefix_le_of_lemon():
    q_le = naive_interval("LE", FRUIT_ROTS)
    q_lemon = naive_interval("LEMON", FRUIT_ROTS)
    assert q_le.interval == Interval(10, 12)
    assert q_lemon.interval == Interval(11, 12)
    assert is_proper_prefix(q_le, q_lemon)


def test_is_proper_prefix_equal_is_not_proper():
    q = LabeledInterval(Interval(3, 7), 4)
    assert not is_proper_prefix(q, q)


def test_is_proper_prefix_disjoint():
    assert not is_proper_prefix(
        LabeledInterval(Interval(2, 4), 1), LabeledInterval(Interval(6, 9), 2)
    )


def test_is_proper_prefix_requires_nonempty():
    with pytest.raises(ValueError):
        is_proper_prefix(
            LabeledInterval(Interval(1, 2), 1), LabeledInterval(Interval(5, 5), 3)
        )


def test_prefix_test_agrees_with_string_comparison():
    rng = rng_for(23)
    for _ in range(25):
        reads = random_read_set(rng, max_reads=6, max_len=7)
        rots = sorted_rotations(reads.reads)
        subs = {r[i:j] for r in reads.reads for i in range(len(r)) for j in range(i + 1, len(r) + 1)}
        subs = sorted(subs)[:40]
        for s1 in subs:
            for s2 in subs:
                got = is_proper_prefix(
                    naive_interval(s1, rots), naive_interval(s2, rots)
                )
                assert got == (s2.startswith(s1) and len(s1) < len(s2))


def test_nesting_or_disjoint():
    rng = rng_for(31)
    for _ in range(25):
        reads = random_read_set(rng, max_reads=5, max_len=6)
        rots = sorted_rotations(reads.reads)
        subs = sorted({r[i:j] for r in reads.reads for i in range(len(r)) for j in range(i + 1, len(r) + 1)})
        ivs = [naive_interval(s, rots).interval for s in subs]
        for a in ivs:
            for b in ivs:
                nested = a.contains(b) or b.contains(a)
                disjoint = a.e <= b.b or b.e <= a.b
                assert nested or disjoint


def test_full_interval():
    assert full_interval(20) == Interval(1, 21)


def test_backward_roundtrip_on_small_instance():
    reads = ReadSet.from_strings(["ACG", "CGT", "GTA"])
    index, _ = build_in_memory(reads)
    bwt = "".join(r.decode() for r in index.b_list.scan())
    rots = sorted_rotations(reads.reads)
    subs = sorted({r[i:j] for r in reads.reads for i in range(len(r)) for j in range(i + 1, len(r) + 1)})
    for q_str in subs:
        q = naive_interval(q_str, rots).interval
        for sigma in "ACGT":
            got = backward_extension(
                q, sigma, index.c_table, occ(bwt, sigma, q.b), occ(bwt, sigma, q.e)
            )
            want = naive_interval(sigma + q_str, rots).interval
            assert got == want or (got.is_empty and want.is_empty)
