"""Sequential-access record lists with fixed-width binary formats.

These lists are the stand-ins for external files: the only read is "next
record", the only write is "append record".  Every record that crosses a
list boundary is counted, so pipeline passes can be checked against their
I/O budgets.  Lists can be backed by real files in a work directory or by
in-memory buffers (same discipline, same counters).

Record formats (little-endian):
    BWT symbol   1 byte
    GSA entry    <II   (suffix length k, read id j)
    LCP value    <i
    encoding     <10I  (four [b,e) interval bounds, l_P, l_PS)
    arc          <5I   (source, target, b_r, e_r, l_P)
    mark         <B
"""

from __future__ import annotations

import heapq
import os
import struct
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

GSA_RECORD = struct.Struct("<II")
LCP_RECORD = struct.Struct("<i")
ENCODING_RECORD = struct.Struct("<10I")
ARC_RECORD = struct.Struct("<5I")
MARK_RECORD = struct.Struct("<B")
INTERVAL_PAIR = struct.Struct("<II")

BWT_WIDTH = 1
GSA_WIDTH = GSA_RECORD.size
LCP_WIDTH = LCP_RECORD.size
ENCODING_WIDTH = ENCODING_RECORD.size
ARC_WIDTH = ARC_RECORD.size
MARK_WIDTH = MARK_RECORD.size

# Byte offsets of the two intervals a merge pass may sort on: an encoding is
# (q(PS$), q($S), q(P), q^r(P^r), l_P, l_PS).
OFFSET_Q_PS = 0
OFFSET_Q_P = 16


class FormatError(ValueError):
    """Record width mismatch or truncated trailing record."""


class SequentialAccessError(RuntimeError):
    """A list was used against the append/scan-only discipline."""


class IoCounters:
    """Global read/write record counters, resettable per pipeline phase."""

    __slots__ = ("records_read", "records_written")

    def __init__(self) -> None:
        self.records_read = 0
        self.records_written = 0

    def snapshot(self) -> Tuple[int, int]:
        return (self.records_read, self.records_written)

    def reset(self) -> None:
        self.records_read = 0
        self.records_written = 0

    def delta(self, since: Tuple[int, int]) -> Tuple[int, int]:
        return (self.records_read - since[0], self.records_written - since[1])


class RecordList:
    """A fixed-width record list, append-only then read-sequential.

    A list starts in append mode.  ``finalize()`` (or the first ``scan()``)
    switches it to read mode; appends are rejected afterwards.  Scans may be
    repeated; the counters are cumulative.
    """

    def __init__(self, store: "ListStore", name: str, width: int) -> None:
        if width <= 0:
            raise FormatError(f"record width must be positive, got {width}")
        self.store = store
        self.name = name
        self.width = width
        self.records_read = 0
        self.records_written = 0
        self._appendable = True

    def __repr__(self) -> str:  # pragma: no cover
        return f"RecordList({self.name!r}, width={self.width}, len={len(self)})"

    def __len__(self) -> int:
        nbytes = self.store._size(self.name)
        if nbytes % self.width != 0:
            raise FormatError(f"{self.name}: truncated trailing record")
        return nbytes // self.width

    def append(self, record: bytes) -> None:
        if not self._appendable:
            raise SequentialAccessError(f"{self.name}: append after finalize")
        if len(record) != self.width:
            raise FormatError(
                f"{self.name}: record of {len(record)} bytes, expected {self.width}"
            )
        self.store._append(self.name, record)
        self.records_written += 1
        self.store.counters.records_written += 1

    def finalize(self) -> "RecordList":
        self._appendable = False
        self.store._flush(self.name)
        return self

    def scan(self) -> Iterator[bytes]:
        """Yield records in append order, counting one read per record."""
        if self._appendable:
            self.finalize()
        counters = self.store.counters
        for record in self.store._iter(self.name, self.width):
            self.records_read += 1
            counters.records_read += 1
            yield record

    def delete(self) -> None:
        self.store._delete(self.name)


class ListStore:
    """Factory and byte-level backend for a family of record lists."""

    def __init__(self) -> None:
        self.counters = IoCounters()
        self._lists: Dict[str, RecordList] = {}

    def create(self, name: str, width: int) -> RecordList:
        if name in self._lists:
            raise SequentialAccessError(f"list {name!r} already exists")
        self._reset_bytes(name)
        lst = RecordList(self, name, width)
        self._lists[name] = lst
        return lst

    def open(self, name: str, width: int) -> RecordList:
        """Handle on an existing finalized list (e.g. from a previous run)."""
        if name in self._lists:
            lst = self._lists[name]
            if lst.width != width:
                raise FormatError(f"{name}: width {lst.width} != {width}")
            return lst
        if not self._exists(name):
            raise FileNotFoundError(name)
        lst = RecordList(self, name, width)
        lst._appendable = False
        self._lists[name] = lst
        return lst

    def exists(self, name: str) -> bool:
        return name in self._lists or self._exists(name)

    def names(self) -> List[str]:
        raise NotImplementedError

    def _forget(self, name: str) -> None:
        self._lists.pop(name, None)

    # byte-level primitives supplied by the backends
    def _append(self, name: str, record: bytes) -> None:
        raise NotImplementedError

    def _iter(self, name: str, width: int) -> Iterator[bytes]:
        raise NotImplementedError

    def _size(self, name: str) -> int:
        raise NotImplementedError

    def _exists(self, name: str) -> bool:
        raise NotImplementedError

    def _delete(self, name: str) -> None:
        raise NotImplementedError

    def _reset_bytes(self, name: str) -> None:
        raise NotImplementedError

    def _flush(self, name: str) -> None:
        pass


class MemoryStore(ListStore):
    """In-memory backing for fast tests; discipline and counters unchanged."""

    def __init__(self) -> None:
        super().__init__()
        self._data: Dict[str, bytearray] = {}

    def names(self) -> List[str]:
        return sorted(self._data)

    def _append(self, name: str, record: bytes) -> None:
        self._data[name].extend(record)

    def _iter(self, name: str, width: int) -> Iterator[bytes]:
        buf = bytes(self._data[name])
        if len(buf) % width != 0:
            raise FormatError(f"{name}: truncated trailing record")
        for off in range(0, len(buf), width):
            yield buf[off : off + width]

    def _size(self, name: str) -> int:
        return len(self._data[name])

    def _exists(self, name: str) -> bool:
        return name in self._data

    def _delete(self, name: str) -> None:
        self._data.pop(name, None)
        self._forget(name)

    def _reset_bytes(self, name: str) -> None:
        self._data[name] = bytearray()


class FileStore(ListStore):
    """File backing under a work directory, one file per list."""

    def __init__(self, directory: str | Path) -> None:
        super().__init__()
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._handles: Dict[str, object] = {}

    def path(self, name: str) -> Path:
        return self.directory / name

    def names(self) -> List[str]:
        return sorted(p.name for p in self.directory.iterdir() if p.is_file())

    def _append(self, name: str, record: bytes) -> None:
        handle = self._handles.get(name)
        if handle is None:
            handle = open(self.path(name), "ab")
            self._handles[name] = handle
        handle.write(record)

    def _flush(self, name: str) -> None:
        handle = self._handles.pop(name, None)
        if handle is not None:
            handle.close()

    def _iter(self, name: str, width: int) -> Iterator[bytes]:
        with open(self.path(name), "rb") as handle:
            while True:
                chunk = handle.read(width)
                if not chunk:
                    return
                if len(chunk) != width:
                    raise FormatError(f"{name}: truncated trailing record")
                yield chunk

    def _size(self, name: str) -> int:
        self._flush_if_open(name)
        return self.path(name).stat().st_size

    def _flush_if_open(self, name: str) -> None:
        handle = self._handles.get(name)
        if handle is not None:
            handle.flush()

    def _exists(self, name: str) -> bool:
        return self.path(name).exists()

    def _delete(self, name: str) -> None:
        self._flush(name)
        try:
            os.unlink(self.path(name))
        except FileNotFoundError:
            pass
        self._forget(name)

    def _reset_bytes(self, name: str) -> None:
        self._flush(name)
        open(self.path(name), "wb").close()


def _checked(stream: Iterable[bytes], offset: int, name: str) -> Iterator[bytes]:
    """Pass records through, enforcing (b asc, e desc) order within the list."""
    prev: Optional[Tuple[int, int]] = None
    for record in stream:
        b, e = INTERVAL_PAIR.unpack_from(record, offset)
        key = (b, -e)
        if prev is not None and key < prev:
            raise SequentialAccessError(
                f"merge input {name} violates (b asc, e desc) order at [{b},{e})"
            )
        prev = key
        yield record


def merge(lists: Sequence[RecordList], interval_offset: int = 0) -> Iterator[bytes]:
    """Merge sorted lists into one stream ordered by (b asc, e desc).

    Each input must already be sorted on the [b,e) interval found at
    ``interval_offset`` bytes into the record.  No record is buffered beyond
    one per input list and nothing is written: the caller just consumes the
    stream.
    """

    def key(record: bytes) -> Tuple[int, int]:
        b, e = INTERVAL_PAIR.unpack_from(record, interval_offset)
        return (b, -e)

    streams = [_checked(lst.scan(), interval_offset, lst.name) for lst in lists]
    return heapq.merge(*streams, key=key)


class PositionedScanner:
    """Forward-only cursor over a record list with 1-based positions.

    ``pos`` is the next unread position.  ``skip_to(p)`` reads and discards
    (counting them) every record before ``p``; an optional callback sees each
    discarded record, which is how the passes keep occurrence counters while
    the cursor moves.
    """

    def __init__(self, lst: RecordList) -> None:
        self._iter = lst.scan()
        self.name = lst.name
        self.pos = 1

    def read(self) -> bytes:
        record = next(self._iter)
        self.pos += 1
        return record

    def skip_to(self, target: int, on_record=None) -> None:
        if target < self.pos:
            raise SequentialAccessError(
                f"{self.name}: cursor at {self.pos} cannot move back to {target}"
            )
        while self.pos < target:
            record = next(self._iter)
            self.pos += 1
            if on_record is not None:
                on_record(record)

    def close(self) -> None:
        self._iter.close()


def encode_encoding(fields: Tuple[int, ...]) -> bytes:
    return ENCODING_RECORD.pack(*fields)


def decode_encoding(record: bytes) -> Tuple[int, ...]:
    return ENCODING_RECORD.unpack(record)


def encode_arc(fields: Tuple[int, ...]) -> bytes:
    return ARC_RECORD.pack(*fields)


def decode_arc(record: bytes) -> Tuple[int, ...]:
    return ARC_RECORD.unpack(record)
