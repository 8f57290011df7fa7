import random
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strgraph.seqlist import (
    FileStore,
    FormatError,
    MemoryStore,
    PositionedScanner,
    SequentialAccessError,
    merge,
)

PAIR = struct.Struct("<II")


def make_list(store, name, intervals):
    lst = store.create(name, PAIR.size)
    for b, e in intervals:
        lst.append(PAIR.pack(b, e))
    return lst.finalize()


def test_append_then_scan_single():
    store = MemoryStore()
    lst = store.create("x", 40)
    lst.append(bytes(40))
    assert len(lst) == 1
    assert lst.records_written == 1


def test_fifo_order():
    store = MemoryStore()
    lst = store.create("x", 4)
    lst.append(b"aaaa")
    lst.append(b"bbbb")
    assert list(lst.scan()) == [b"aaaa", b"bbbb"]


def test_wrong_width_rejected():
    store = MemoryStore()
    lst = store.create("x", 4)
    with pytest.raises(FormatError):
        lst.append(b"toolong!")


def test_scan_empty():
    store = MemoryStore()
    lst = store.create("x", 4)
    assert list(lst.scan()) == []


def test_counters_cumulative_over_rescans():
    store = MemoryStore()
    lst = store.create("x", 4)
    for _ in range(3):
        lst.append(b"abcd")
    list(lst.scan())
    assert store.counters.records_read == 3
    list(lst.scan())
    assert store.counters.records_read == 6
    assert lst.records_read == 6


def test_fresh_store_counters_zero():
    store = MemoryStore()
    assert store.counters.snapshot() == (0, 0)


def test_append_after_finalize_rejected():
    store = MemoryStore()
    lst = store.create("x", 4)
    lst.append(b"abcd")
    list(lst.scan())
    with pytest.raises(SequentialAccessError):
        lst.append(b"efgh")


def test_truncated_trailing_record(tmp_path):
    store = FileStore(tmp_path)
    lst = store.create("x.bin", 4)
    lst.append(b"abcd")
    lst.finalize()
    with open(tmp_path / "x.bin", "ab") as f:
        f.write(b"zz")
    with pytest.raises(FormatError):
        list(store.open("x.bin", 4).scan())


def test_file_store_round_trip(tmp_path):
    store = FileStore(tmp_path)
    lst = store.create("y.bin", 8)
    lst.append(PAIR.pack(3, 9))
    lst.finalize()
    again = FileStore(tmp_path)
    assert [PAIR.unpack(r) for r in again.open("y.bin", 8).scan()] == [(3, 9)]


def test_merge_disjoint_heads():
    store = MemoryStore()
    a = make_list(store, "a", [(1, 3)])
    b = make_list(store, "b", [(2, 5)])
    out = [PAIR.unpack(r) for r in merge([a, b])]
    assert out == [(1, 3), (2, 5)]


def test_merge_tie_broken_by_decreasing_e():
    store = MemoryStore()
    a = make_list(store, "a", [(2, 9)])
    b = make_list(store, "b", [(2, 4)])
    out = [PAIR.unpack(r) for r in merge([a, b])]
    assert out == [(2, 9), (2, 4)]


def test_merge_three_lists_vs_sort_oracle():
    rng = random.Random(5)
    store = MemoryStore()
    lists, everything = [], []
    for i in range(3):
        ivs = []
        for _ in range(100):
            b = rng.randint(1, 500)
            ivs.append((b, b + rng.randint(1, 50)))
        ivs.sort(key=lambda iv: (iv[0], -iv[1]))
        everything.extend(ivs)
        lists.append(make_list(store, f"l{i}", ivs))
    out = [PAIR.unpack(r) for r in merge(lists)]
    assert out == sorted(everything, key=lambda iv: (iv[0], -iv[1]))


def test_merge_buffers_one_record_per_list():
    # heapq.merge is lazy: pulling one record must not drain the inputs.
    store = MemoryStore()
    a = make_list(store, "a", [(1, 2), (5, 6)])
    b = make_list(store, "b", [(3, 4)])
    stream = merge([a, b])
    next(stream)
    assert store.counters.records_read <= 3


def test_merge_detects_unsorted_input():
    store = MemoryStore()
    bad = make_list(store, "bad", [(5, 6), (1, 2)])
    with pytest.raises(SequentialAccessError):
        list(merge([bad]))


def test_positioned_scanner_no_backward():
    store = MemoryStore()
    lst = make_list(store, "x", [(i, i + 1) for i in range(1, 6)])
    cur = PositionedScanner(lst)
    cur.skip_to(4)
    assert cur.pos == 4
    with pytest.raises(SequentialAccessError):
        cur.skip_to(2)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.tuples(st.integers(1, 80), st.integers(1, 40)), max_size=25),
        min_size=1,
        max_size=5,
    )
)
def test_merge_equals_sorted_union(raw):
    store = MemoryStore()
    lists, everything = [], []
    for i, ivs in enumerate(raw):
        fixed = sorted([(b, b + w) for b, w in ivs], key=lambda iv: (iv[0], -iv[1]))
        everything.extend(fixed)
        lists.append(make_list(store, f"l{i}", fixed))
    out = [PAIR.unpack(r) for r in merge(lists)]
    assert out == sorted(everything, key=lambda iv: (iv[0], -iv[1]))
