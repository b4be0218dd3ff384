"""Report rendering: text for humans, JSON and CSV for machines.

Machine formats are fully deterministic: dict key order is fixed, integral
floats normalize to ints, and serialize -> parse -> serialize is
byte-identical. Terminal styling applies to text output only and is
suppressed by the LOWDUP_NO_COLOR environment variable or a non-tty stream.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Union

from .compare import ComparisonReport, MethodPair
from .corpus import CorpusEntry, CorpusResult
from .pipeline import RunConfig

CSV_COLUMNS = ("a", "b", "mode", "matched", "involved", "mt", "imt", "similarity")

_BOLD = "\x1b[1m"
_RESET = "\x1b[0m"


def _style(text: str, color: bool) -> str:
    return f"{_BOLD}{text}{_RESET}" if color else text


def _num(value: Union[int, float]) -> Union[int, float]:
    """Normalize integral floats so 18.0 serializes as 18."""
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def _pair_dict(pair: MethodPair) -> dict:
    return {
        "a": pair.key_a.pretty(),
        "b": pair.key_b.pretty(),
        "signature_similarity": pair.sig_score,
        "matched": pair.matched,
        "tiles": [[tile.start_a, tile.start_b, tile.length] for tile in pair.tiles],
    }


def report_dict(
    name_a: str, name_b: str, report: ComparisonReport, verbose: bool = False
) -> dict:
    out = {
        "a": name_a,
        "b": name_b,
        "mode": report.mode.value,
        "matched": report.matched_total,
        "involved": _num(report.involved),
        "mt": _num(report.mt),
        "imt": _num(report.imt),
        "similarity": report.similarity,
    }
    if verbose:
        out["pairs"] = [_pair_dict(pair) for pair in report.pairs]
    return out


def config_dict(config: RunConfig) -> dict:
    return {
        "mode": config.mode.value,
        "min_match": config.min_match,
        "pairing_threshold": config.pairing_threshold,
        "involved_baseline": config.involved_baseline,
        "include_synthetic": config.include_synthetic,
    }


def corpus_dict(result: CorpusResult, verbose: bool = False) -> dict:
    return {
        "config": config_dict(result.config),
        "pairs": [
            report_dict(entry.name_a, entry.name_b, entry.report, verbose)
            for entry in result.entries
        ],
        "ranking": [
            {
                "a": entry.name_a,
                "b": entry.name_b,
                "similarity": entry.report.similarity,
            }
            for entry in result.ranking
        ],
    }


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def _csv_rows(entries: list[CorpusEntry]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for entry in entries:
        report = entry.report
        writer.writerow(
            [
                entry.name_a,
                entry.name_b,
                report.mode.value,
                report.matched_total,
                _num(report.involved),
                _num(report.mt),
                _num(report.imt),
                report.similarity,
            ]
        )
    return buffer.getvalue()


def render_csv(name_a: str, name_b: str, report: ComparisonReport) -> str:
    return _csv_rows([CorpusEntry(name_a, name_b, report)])


def render_corpus_csv(result: CorpusResult) -> str:
    return _csv_rows(result.ranking)


def _pair_lines(report: ComparisonReport) -> list[str]:
    lines = []
    for pair in report.pairs:
        lines.append(
            f"  {pair.key_a.pretty()} ~ {pair.key_b.pretty()}"
            f" sig={pair.sig_score:.4f} matched={pair.matched}"
        )
        for tile in pair.tiles:
            lines.append(f"    tile a@{tile.start_a} b@{tile.start_b} len={tile.length}")
    return lines


def render_text(
    name_a: str,
    name_b: str,
    report: ComparisonReport,
    verbose: bool = False,
    color: bool = False,
) -> str:
    lines = [
        _style(f"{name_a} vs {name_b}", color),
        f"mode={report.mode.value} matched={report.matched_total}"
        f" involved={_num(report.involved)} mt={_num(report.mt)} imt={_num(report.imt)}",
        f"similarity={report.similarity:.4f}",
    ]
    if verbose:
        lines.extend(_pair_lines(report))
    return "\n".join(lines) + "\n"


def render_corpus_text(result: CorpusResult, verbose: bool = False, color: bool = False) -> str:
    lines = [_style("rank  similarity  pair", color)]
    for position, entry in enumerate(result.ranking, start=1):
        lines.append(
            f"{position:>4}  {entry.report.similarity:>10.4f}  "
            f"{entry.name_a} vs {entry.name_b}"
        )
        if verbose:
            lines.extend(_pair_lines(entry.report))
    pair_count = len(result.entries)
    lines.append(f"{pair_count} pair(s) in {result.wall_seconds:.2f} s")
    return "\n".join(lines) + "\n"
