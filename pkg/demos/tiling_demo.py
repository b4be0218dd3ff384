#!/usr/bin/env python3
"""Show RKGST greedy string tiling on small token sequences.

Demonstrates longest-first tile selection, non-overlap marking, the
minimum-match threshold, and how the matched count feeds MT / IMT /
similarity.

Run from the repository root:  python3 demos/tiling_demo.py
"""

from lowdup import imt, matched_count, rkgst


def render(sequence, tiles, side):
    """One line per sequence with matched spans bracketed."""
    starts = {}
    ends = set()
    for index, tile in enumerate(tiles):
        begin = tile.start_a if side == "a" else tile.start_b
        starts[begin] = index
        ends.add(begin + tile.length)
    out = []
    for position, item in enumerate(sequence):
        if position in ends:
            out.append("]")
        if position in starts:
            out.append(f"[{starts[position]}:")
        out.append(str(item))
    if len(sequence) in ends:
        out.append("]")
    return " ".join(out)


def compare(a, b, min_match):
    print(f"min_match = {min_match}")
    tiles = rkgst(a, b, min_match)
    print(f"  a: {render(a, tiles, 'a')}")
    print(f"  b: {render(b, tiles, 'b')}")
    for index, tile in enumerate(tiles):
        span = " ".join(str(x) for x in a[tile.start_a : tile.start_a + tile.length])
        print(f"  tile {index}: a@{tile.start_a} b@{tile.start_b} len={tile.length}   {span}")
    matched = matched_count(tiles)
    involved = min(len(a), len(b))
    mt = involved - matched
    print(
        f"  matched={matched} involved={involved} mt={mt} imt={imt(mt)}"
        f" similarity={matched / involved:.4f}"
    )
    print()


def main() -> None:
    a = ["LOAD", "CONST:1", "ARITH", "STORE", "LOAD", "RETURN"]
    b = ["LOAD", "RETURN", "LOAD", "CONST:1", "ARITH", "STORE"]
    print("Two bytecode-token sequences that share a moved block:\n")
    print(f"  a = {a}")
    print(f"  b = {b}\n")

    compare(a, b, min_match=2)

    print("Longest tiles win first; remaining unmarked runs are tiled next.")
    print("A lone shared token below min_match never tiles:\n")
    compare(["CONST:1", "RETURN"], ["CONST:1", "ARITH", "RETURN"], min_match=2)
    print("Dropping the threshold to 1 recovers singletons:\n")
    compare(["CONST:1", "RETURN"], ["CONST:1", "ARITH", "RETURN"], min_match=1)


if __name__ == "__main__":
    main()
