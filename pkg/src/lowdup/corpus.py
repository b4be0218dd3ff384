"""All-pairs corpus comparison.

Every immediate subdirectory of the corpus root is one submission. Each is
loaded and mode-processed once, then all unordered pairs are compared,
optionally across a thread pool. Results are collected in pair-enumeration
order regardless of scheduling, so output is deterministic.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .compare import ComparisonReport
from .errors import FewerThanTwoSubmissions
from .pipeline import RunConfig, Submission, compare_submissions, load_submission


@dataclass(frozen=True)
class CorpusEntry:
    name_a: str
    name_b: str
    report: ComparisonReport


@dataclass
class CorpusResult:
    entries: list[CorpusEntry]
    ranking: list[CorpusEntry]
    config: RunConfig
    wall_seconds: float


def _rank(entries: list[CorpusEntry]) -> list[CorpusEntry]:
    return sorted(
        entries, key=lambda e: (-e.report.similarity, e.name_a, e.name_b)
    )


def run_corpus(directory: Path, config: RunConfig) -> CorpusResult:
    """Compare every unordered pair of submission subdirectories."""
    started = time.perf_counter()
    root = Path(directory)
    subdirs = sorted((p for p in root.iterdir() if p.is_dir()), key=lambda p: p.name)
    if len(subdirs) < 2:
        raise FewerThanTwoSubmissions(
            f"corpus {root} holds {len(subdirs)} submission directories; need at least 2"
        )

    submissions: list[Submission] = [load_submission(path, config) for path in subdirs]
    index_pairs = [
        (i, j) for i in range(len(submissions)) for j in range(i + 1, len(submissions))
    ]

    def compare_pair(indices: tuple[int, int]) -> ComparisonReport:
        i, j = indices
        return compare_submissions(submissions[i], submissions[j], config)

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as executor:
            reports = list(executor.map(compare_pair, index_pairs))
    else:
        reports = [compare_pair(pair) for pair in index_pairs]

    entries = [
        CorpusEntry(submissions[i].name, submissions[j].name, report)
        for (i, j), report in zip(index_pairs, reports)
    ]
    return CorpusResult(
        entries=entries,
        ranking=_rank(entries),
        config=config,
        wall_seconds=time.perf_counter() - started,
    )
