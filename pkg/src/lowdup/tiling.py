"""Greedy string tiling with Karp-Rabin acceleration (RKGST).

Repeatedly finds the longest common substring lying entirely on unmarked
tokens of both sequences, marks it as a tile, and repeats until nothing of
at least ``min_match`` tokens remains. Ties between equal-length maximal
matches break to the smallest ``start_a``, then smallest ``start_b``.

The rolling hash (base 1,048,583, 64-bit wraparound) only prefilters
candidate windows; every hash hit is verified by direct token comparison,
so hash collisions can cost time but never correctness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

HASH_BASE = 1_048_583
_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class Tile:
    """One maximal common substring chosen by the greedy pass."""

    start_a: int
    start_b: int
    length: int


def _unmarked_runs(marks: list[bool]) -> list[tuple[int, int]]:
    """Maximal (start, length) stretches of unmarked positions."""
    runs: list[tuple[int, int]] = []
    start: Optional[int] = None
    for i, marked in enumerate(marks):
        if marked:
            if start is not None:
                runs.append((start, i - start))
                start = None
        elif start is None:
            start = i
    if start is not None:
        runs.append((start, len(marks) - start))
    return runs


def _window_hashes(
    items: Sequence, runs: list[tuple[int, int]], length: int
) -> list[tuple[int, int]]:
    """(hash, start) for every length-``length`` window inside the runs."""
    out: list[tuple[int, int]] = []
    high = pow(HASH_BASE, length - 1, 1 << 64)
    for start, run_len in runs:
        if run_len < length:
            continue
        value = 0
        for k in range(start, start + length):
            value = (value * HASH_BASE + hash(items[k])) & _MASK
        out.append((value, start))
        for lead in range(start, start + run_len - length):
            value = (value - hash(items[lead]) * high) & _MASK
            value = (value * HASH_BASE + hash(items[lead + length])) & _MASK
            out.append((value, lead + 1))
    return out


def _find_match(
    a: Sequence,
    b: Sequence,
    runs_a: list[tuple[int, int]],
    runs_b: list[tuple[int, int]],
    length: int,
) -> Optional[tuple[int, int]]:
    """Smallest (start_a, start_b) common window of exactly ``length``, if any."""
    by_hash: dict[int, list[int]] = {}
    for value, start in _window_hashes(b, runs_b, length):
        by_hash.setdefault(value, []).append(start)
    for positions in by_hash.values():
        positions.sort()

    for value, i in sorted(_window_hashes(a, runs_a, length), key=lambda pair: pair[1]):
        for j in by_hash.get(value, ()):
            if all(a[i + k] == b[j + k] for k in range(length)):
                return i, j
    return None


def rkgst(a: Sequence, b: Sequence, min_match: int = 2) -> list[Tile]:
    """Tile two token sequences; every tile has length ≥ min_match.

    Works over any sequences of hashable, equality-comparable items, so the
    same routine serves bytecode tokens and lexical tokens.
    """
    if min_match < 1:
        raise ValueError(f"min_match must be >= 1, got {min_match}")
    marks_a = [False] * len(a)
    marks_b = [False] * len(b)
    tiles: list[Tile] = []

    while True:
        runs_a = _unmarked_runs(marks_a)
        runs_b = _unmarked_runs(marks_b)
        longest_a = max((length for _, length in runs_a), default=0)
        longest_b = max((length for _, length in runs_b), default=0)
        high = min(longest_a, longest_b)
        if high < min_match:
            break

        # Binary search the maximal common-substring length: a common window
        # of length L implies one of every shorter length, so the predicate
        # is monotone in L.
        low = min_match
        best: Optional[tuple[int, int, int]] = None
        while low <= high:
            mid = (low + high) // 2
            found = _find_match(a, b, runs_a, runs_b, mid)
            if found is not None:
                best = (found[0], found[1], mid)
                low = mid + 1
            else:
                high = mid - 1
        if best is None:
            break

        # The last successful probe is at the maximal feasible length, and
        # _find_match returns the smallest (start_a, start_b) at that length,
        # so best already honors the tie-break.
        start_a, start_b, length = best

        for k in range(length):
            if marks_a[start_a + k] or marks_b[start_b + k]:
                raise AssertionError("tile overlaps a marked token")
            marks_a[start_a + k] = True
            marks_b[start_b + k] = True
        tiles.append(Tile(start_a, start_b, length))

    return tiles


def matched_count(tiles: list[Tile]) -> int:
    return sum(tile.length for tile in tiles)


def rkgst_symmetric(
    a: Sequence, b: Sequence, min_match: int = 2, item_key=repr
) -> list[Tile]:
    """RKGST with a canonical orientation, so the matched count is
    swap-invariant.

    Greedy tiling is order-sensitive: the smallest-(start_a, start_b)
    tie-break can pick a tile under (a, b) whose mirror loses the tie
    under (b, a), and the picks can cascade into different totals
    (e.g. x,x,y,x against y,x,x,x at min_match 2 tiles 2 tokens one way
    and 4 the other). Orienting every pair by a content key before tiling
    removes the argument order from the outcome; tiles are mirrored back
    so starts always refer to (a, b) as passed.
    """
    key_a = tuple(item_key(item) for item in a)
    key_b = tuple(item_key(item) for item in b)
    if key_a <= key_b:
        return rkgst(a, b, min_match)
    return [Tile(t.start_b, t.start_a, t.length) for t in rkgst(b, a, min_match)]
