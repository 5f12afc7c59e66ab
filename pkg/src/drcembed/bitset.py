"""Vertex sets as Python integers.

Bit ``v`` of a mask is set when vertex ``v`` belongs to the set.  Python
integers give arbitrary width, cheap ``&``/``|`` and ``int.bit_count``,
which is all the dense-host algorithms need.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

VertexSet = int


def mask_of(vertices: Iterable[int]) -> VertexSet:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def full_mask(n: int) -> VertexSet:
    return (1 << n) - 1


def popcount(mask: VertexSet) -> int:
    return mask.bit_count()


def iter_bits(mask: VertexSet) -> Iterator[int]:
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: VertexSet) -> list[int]:
    return list(iter_bits(mask))


def lowest(mask: VertexSet) -> int:
    if not mask:
        raise ValueError("empty set has no lowest element")
    return (mask & -mask).bit_length() - 1


def contains(mask: VertexSet, v: int) -> bool:
    return (mask >> v) & 1 == 1


def is_subset(a: VertexSet, b: VertexSet) -> bool:
    return a & ~b == 0


def pack_rows(rows: Iterable[VertexSet], width: int) -> np.ndarray:
    """Pack bit-rows into a ``(len(rows), ceil(width/64))`` uint64 array.

    Word ``w`` of a row holds vertices ``64*w .. 64*w+63`` with vertex
    ``64*w`` in the least significant bit, so a packed row and its int
    agree bit for bit.
    """
    rows = list(rows)
    words = max(1, (width + 63) // 64)
    nbytes = words * 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    arr = np.frombuffer(buf, dtype="<u8").reshape(len(rows), words)
    return arr.astype(np.uint64, copy=True)


def pack_mask(mask: VertexSet, width: int) -> np.ndarray:
    return pack_rows([mask], width)[0]


def unpack_mask(words: np.ndarray) -> VertexSet:
    return int.from_bytes(np.asarray(words, dtype="<u8").tobytes(), "little")
