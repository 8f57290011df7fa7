"""String-interval algebra on the sorted-rotation order.

A string interval [b, e) (1-based, half-open) is the maximal run of sorted
rotations sharing a given prefix.  Extensions never consult a random-access
occurrence structure: callers supply streaming occurrence counts.
"""

from __future__ import annotations

from typing import Mapping, NamedTuple, Sequence

SENTINEL = "$"


class Interval(NamedTuple):
    b: int
    e: int

    @property
    def width(self) -> int:
        return self.e - self.b

    @property
    def is_empty(self) -> bool:
        return self.e <= self.b

    def contains(self, other: "Interval") -> bool:
        """Inclusive containment: self ⊇ other."""
        return self.b <= other.b and other.e <= self.e


class LabeledInterval(NamedTuple):
    interval: Interval
    length: int


def full_interval(total_len: int) -> Interval:
    """The empty-string interval [1, n+m+1) spanning every rotation."""
    return Interval(1, total_len + 1)


def backward_extension(
    q: Interval, sigma: str, c_table: Mapping[str, int], occ_b: int, occ_e: int
) -> Interval:
    """Backward sigma-extension of a Q-interval: the sigma+Q interval.

    occ_b and occ_e are the occurrence counts of sigma strictly before
    positions q.b and q.e of the BWT.  An empty result means sigma+Q does
    not occur.
    """
    b = c_table[sigma] + occ_b + 1
    return Interval(b, b + (occ_e - occ_b))


def forward_extension(
    q: Interval, sigma: str, occ_deltas: Mapping[str, int]
) -> Interval:
    """Forward sigma-extension of the interval linked to q.

    q is the Q^r-interval on the reversed collection; occ_deltas counts each
    symbol (sentinel included) inside the BWT slice of the Q-interval on the
    forward collection.  Linked intervals have equal width, so the result is
    the (Q^r sigma)-interval.
    """
    prev = sum(count for sym, count in occ_deltas.items() if sym < sigma)
    width = occ_deltas.get(sigma, 0)
    return Interval(q.b + prev, q.b + prev + width)


def is_proper_prefix(q1: LabeledInterval, q2: LabeledInterval) -> bool:
    """Whether the string behind q1 is a proper prefix of the one behind q2.

    Only valid when q2 is nonempty (the test says nothing about strings that
    do not occur in the collection).
    """
    if q2.interval.is_empty:
        raise ValueError("prefix test requires a nonempty second interval")
    return q1.interval.contains(q2.interval) and q1.length < q2.length


def rotations_of_read(read: str) -> list[str]:
    """All rotations of read+sentinel that start at a suffix boundary."""
    full = read + SENTINEL
    return [full[i:] + full[:i] for i in range(len(full))]


def sorted_rotations(reads: Sequence[str]) -> list[str]:
    """Every rotation of every read, in index order.

    Plain string comparison is the index order: the sentinel byte sorts
    below every allowed alphabet symbol, and ties between sentinels are
    broken by the text that follows, which is exactly the rule that puts
    the pure-sentinel rotations in lexicographic read order.
    """
    rots: list[str] = []
    for read in reads:
        rots.extend(rotations_of_read(read))
    rots.sort()
    return rots


def naive_interval(query: str, rotations: Sequence[str]) -> LabeledInterval:
    """Oracle interval finder: scan the sorted rotations for the query.

    Returns the maximal [b, e) of rotations with the query as a literal
    prefix (sentinel matches sentinel here); empty queries span everything,
    absent queries give an empty interval at the insertion point.
    """
    import bisect

    lo = bisect.bisect_left(rotations, query)
    hi = lo
    while hi < len(rotations) and rotations[hi].startswith(query):
        hi += 1
    return LabeledInterval(Interval(lo + 1, hi + 1), len(query))
