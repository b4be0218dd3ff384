"""Method pairing and the comparison metrics (matched, MT, IMT, similarity).

Methods of the two programs are paired greedily by descending signature
similarity, each pair is tiled with RKGST, and the totals reduce to one
report: mt = involved - matched_total, imt = -mt, similarity =
matched_total / involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .linearize import signature_similarity
from .model import MethodKey
from .tiling import Tile, matched_count, rkgst_symmetric
from .tokens import TokenSequence

PAIRING_THRESHOLD = 0.5


class Mode(enum.Enum):
    LA = "la"
    LA_M = "lam"
    SLT = "slt"


@dataclass(frozen=True)
class MethodPair:
    key_a: MethodKey
    key_b: MethodKey
    sig_score: float
    tiles: tuple[Tile, ...]
    matched: int


@dataclass(frozen=True)
class ComparisonReport:
    mode: Mode
    pairs: tuple[MethodPair, ...]
    matched_total: int
    involved: float
    mt: float
    imt: float
    similarity: float


def imt(mt: float) -> float:
    """Eq.: IMT = -1 * MT; the best attainable value is 0."""
    return -mt


def pair_methods(
    table_a: Mapping[MethodKey, TokenSequence],
    table_b: Mapping[MethodKey, TokenSequence],
    min_match: int = 2,
    pairing_threshold: float = PAIRING_THRESHOLD,
) -> list[MethodPair]:
    """Greedy maximum-similarity matching, then RKGST per accepted pair.

    Candidates sort by score descending; ties order by the unordered key
    pair so that swapping the two programs pairs the same methods. Each
    method lands in at most one pair; unpaired methods contribute no tiles.
    Tiling runs in a canonical orientation per pair (see rkgst_symmetric),
    which makes matched_total and similarity swap-invariant outright.
    """
    candidates: list[tuple[float, MethodKey, MethodKey, MethodKey, MethodKey]] = []
    for key_a in table_a:
        sig_a = (key_a.name, key_a.descriptor)
        for key_b in table_b:
            score = signature_similarity(sig_a, (key_b.name, key_b.descriptor))
            if score >= pairing_threshold:
                lo, hi = sorted((key_a, key_b))
                candidates.append((-score, lo, hi, key_a, key_b))
    candidates.sort(key=lambda c: c[:4])

    used_a: set[MethodKey] = set()
    used_b: set[MethodKey] = set()
    pairs: list[MethodPair] = []
    for neg_score, _, _, key_a, key_b in candidates:
        if key_a in used_a or key_b in used_b:
            continue
        used_a.add(key_a)
        used_b.add(key_b)
        tiles = tuple(
            rkgst_symmetric(
                table_a[key_a].tokens,
                table_b[key_b].tokens,
                min_match,
                item_key=lambda token: token.render(),
            )
        )
        pairs.append(
            MethodPair(key_a, key_b, -neg_score, tiles, matched_count(list(tiles)))
        )
    return pairs


def _involved(total_a: int, total_b: int, baseline: str) -> float:
    if baseline == "min":
        return min(total_a, total_b)
    if baseline == "max":
        return max(total_a, total_b)
    if baseline == "mean":
        return (total_a + total_b) / 2
    raise ValueError(f"unknown involved baseline {baseline!r}")


def compare_tables(
    table_a: Mapping[MethodKey, TokenSequence],
    table_b: Mapping[MethodKey, TokenSequence],
    mode: Mode,
    min_match: int = 2,
    pairing_threshold: float = PAIRING_THRESHOLD,
    involved_baseline: str = "min",
) -> ComparisonReport:
    """Compare two finalized token tables and reduce to one report."""
    pairs = pair_methods(table_a, table_b, min_match, pairing_threshold)
    matched_total = sum(pair.matched for pair in pairs)
    total_a = sum(len(seq) for seq in table_a.values())
    total_b = sum(len(seq) for seq in table_b.values())
    involved = _involved(total_a, total_b, involved_baseline)
    mt = involved - matched_total
    similarity = matched_total / involved if involved else 0.0
    return ComparisonReport(
        mode=mode,
        pairs=tuple(pairs),
        matched_total=matched_total,
        involved=involved,
        mt=mt,
        imt=imt(mt),
        similarity=similarity,
    )
