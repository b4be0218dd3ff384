"""Submission loading and per-mode processing.

A submission is a directory (or single file) holding class files, one or
more fixture documents, or source text. Loading classifies the files,
rejects mixed class/fixture submissions, builds the ProgramModel, and
precomputes the mode-processed token table so corpus runs pay the pipeline
cost once per submission rather than once per pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .classfile import parse_class_file
from .compare import ComparisonReport, Mode, compare_tables
from .errors import InputError, InputNotFound, LowdupError, MixedInputKinds
from .fixture import load_fixture
from .linearize import (
    INLINE_DEPTH_CAP,
    build_method_table,
    inline_all,
    linearize_abstract,
)
from .model import MethodKey, ProgramModel, RawClass, assemble_program
from .slt import LexToken, abstract_identifiers, lex_source, slt_compare_streams
from .tokens import TokenSequence

FIXTURE_SUFFIXES = (".fixture", ".json")
CLASS_SUFFIX = ".class"


@dataclass(frozen=True)
class RunConfig:
    mode: Mode = Mode.LA
    min_match: int = 2
    pairing_threshold: float = 0.5
    involved_baseline: str = "min"
    include_synthetic: bool = True
    output_format: str = "text"
    verbose: bool = False
    jobs: int = 1
    slt_abstract_identifiers: bool = False

    def __post_init__(self) -> None:
        # Normalize so callers may pass the mode as its string value; a
        # plain string would otherwise fail every `is Mode.X` check and
        # silently run as LA-M.
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.min_match < 1:
            raise ValueError(f"min_match must be >= 1, got {self.min_match}")
        if not 0.0 <= self.pairing_threshold <= 1.0:
            raise ValueError(
                f"pairing_threshold must be within [0, 1], got {self.pairing_threshold}"
            )
        if self.involved_baseline not in ("min", "max", "mean"):
            raise ValueError(f"unknown involved baseline {self.involved_baseline!r}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")


@dataclass
class Submission:
    """One comparable unit, already processed for the active mode."""

    name: str
    table: Optional[dict[MethodKey, TokenSequence]] = None
    stream: Optional[list[LexToken]] = None
    program: Optional[ProgramModel] = None
    method_order: list[MethodKey] = field(default_factory=list)


def _submission_files(path: Path) -> list[Path]:
    if path.is_file():
        return [path]
    files = [p for p in sorted(path.rglob("*")) if p.is_file()]
    return files


def _classify(files: list[Path]) -> tuple[list[Path], list[Path], list[Path]]:
    class_files: list[Path] = []
    fixture_files: list[Path] = []
    source_files: list[Path] = []
    for file in files:
        suffix = file.suffix.lower()
        if suffix == CLASS_SUFFIX:
            class_files.append(file)
        elif suffix in FIXTURE_SUFFIXES:
            fixture_files.append(file)
        else:
            source_files.append(file)
    return class_files, fixture_files, source_files


def _with_context(file: Path, exc: LowdupError) -> InputError:
    return InputError(f"{file}: {exc}")


def _load_program(class_files: list[Path], fixture_files: list[Path]) -> ProgramModel:
    if class_files and fixture_files:
        raise MixedInputKinds(
            f"submission mixes {len(class_files)} class file(s) "
            f"with {len(fixture_files)} fixture(s)"
        )
    if fixture_files:
        classes: list[RawClass] = []
        for file in fixture_files:
            try:
                model = load_fixture(file.read_text(encoding="utf-8"))
            except LowdupError as exc:
                raise _with_context(file, exc) from None
            classes.extend(model.classes.values())
        return assemble_program(classes)
    parsed: list[RawClass] = []
    for file in class_files:
        try:
            parsed.append(parse_class_file(file.read_bytes()))
        except LowdupError as exc:
            raise _with_context(file, exc) from None
    return assemble_program(parsed)


def mode_table(
    program: ProgramModel,
    mode: Mode,
    include_synthetic: bool = True,
    depth_cap: int = INLINE_DEPTH_CAP,
) -> dict[MethodKey, TokenSequence]:
    """Extract, optionally linearize abstract methods, then inline invocations.

    LA runs abstract-method linearization first; LA-M skips it, leaving every
    abstract method empty so an inlined call to one vanishes. Both then
    rewrite all methods against the same frozen table.
    """
    mode = Mode(mode)
    if mode is Mode.SLT:
        raise ValueError("mode_table handles bytecode modes; use the lexical pipeline")
    table = build_method_table(program, include_synthetic)
    if mode is Mode.LA:
        linearize_abstract(program, table)
    return inline_all(table, program, depth_cap)


def _declaration_order(program: ProgramModel, table: dict[MethodKey, TokenSequence]) -> list[MethodKey]:
    order: list[MethodKey] = []
    for class_name in program.classes:
        for key in program.method_keys_of(class_name):
            if key in table:
                order.append(key)
    return order


def load_submission(path: Path, config: RunConfig) -> Submission:
    """Load one submission path and process it for the configured mode."""
    path = Path(path)
    if not path.exists():
        raise InputNotFound(f"submission path {path} does not exist")
    files = _submission_files(path)
    class_files, fixture_files, source_files = _classify(files)

    if config.mode is Mode.SLT:
        if not source_files:
            raise InputError(
                f"{path}: SLT requires source text; found "
                f"{len(class_files)} class file(s) and {len(fixture_files)} fixture(s)"
            )
        stream: list[LexToken] = []
        for file in source_files:
            try:
                stream.extend(lex_source(file.read_text(encoding="utf-8")))
            except LowdupError as exc:
                raise _with_context(file, exc) from None
        return Submission(name=path.name, stream=stream)

    if not class_files and not fixture_files:
        raise InputError(f"{path}: no class files or fixtures found")
    program = _load_program(class_files, fixture_files)
    table = mode_table(program, config.mode, config.include_synthetic)
    return Submission(
        name=path.name,
        table=table,
        program=program,
        method_order=_declaration_order(program, table),
    )


def compare_submissions(
    sub_a: Submission, sub_b: Submission, config: RunConfig
) -> ComparisonReport:
    if config.mode is Mode.SLT:
        stream_a, stream_b = sub_a.stream, sub_b.stream
        if config.slt_abstract_identifiers:
            stream_a = abstract_identifiers(stream_a)
            stream_b = abstract_identifiers(stream_b)
        return slt_compare_streams(
            stream_a, stream_b, config.min_match, config.involved_baseline
        )
    return compare_tables(
        sub_a.table,
        sub_b.table,
        config.mode,
        config.min_match,
        config.pairing_threshold,
        config.involved_baseline,
    )


def compare_paths(path_a: Path, path_b: Path, config: RunConfig) -> ComparisonReport:
    """Load two submissions and compare them under one configuration."""
    sub_a = load_submission(Path(path_a), config)
    sub_b = load_submission(Path(path_b), config)
    return compare_submissions(sub_a, sub_b, config)


def compare_programs(
    program_a: ProgramModel,
    program_b: ProgramModel,
    mode: Mode,
    min_match: int = 2,
    pairing_threshold: float = 0.5,
    involved_baseline: str = "min",
    include_synthetic: bool = True,
) -> ComparisonReport:
    """Compare two already-assembled programs under a bytecode mode."""
    mode = Mode(mode)
    table_a = mode_table(program_a, mode, include_synthetic)
    table_b = mode_table(program_b, mode, include_synthetic)
    return compare_tables(
        table_a, table_b, mode, min_match, pairing_threshold, involved_baseline
    )


def run_compare(config: RunConfig, path_a: Path, path_b: Path) -> ComparisonReport:
    """Compare two submission paths; config-first spelling of compare_paths."""
    return compare_paths(path_a, path_b, config)


def dump_tokens(config: RunConfig, path: Path) -> str:
    """Load one submission and emit its token listing, LF line endings."""
    submission = load_submission(Path(path), config)
    return "".join(line + "\n" for line in dump_token_lines(submission))


def dump_token_lines(submission: Submission) -> list[str]:
    """Dump-tokens line per token: ``CLASS.method:descriptor<TAB>offset<TAB>token``.

    Each line shows the token's origin, so a linearized abstract method dumps
    lines identical to its implementer's. Methods appear in declaration
    order; empty sequences contribute no lines.
    """
    lines: list[str] = []
    for key in submission.method_order:
        sequence = submission.table[key]
        for position, token in enumerate(sequence.tokens):
            if token.origin is not None:
                cls, method, offset = token.origin
            else:
                cls, method, offset = key.cls, f"{key.name}:{key.descriptor}", position
            lines.append(f"{cls}.{method}\t{offset}\t{token.render()}")
    return lines
