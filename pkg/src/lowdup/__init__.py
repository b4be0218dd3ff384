"""lowdup: low-level token plagiarism detection for JVM programs.

Compares compiled class files (or textual token fixtures) by generalized,
interpreted bytecode token sequences, with abstract-method linearization
and invocation inlining ahead of greedy string tiling. A lexical
source-token baseline is included for contrast.
"""

from .bytecode import Instruction, decode_bytecode
from .classfile import ConstantPool, parse_class_file
from .compare import (
    ComparisonReport,
    MethodPair,
    Mode,
    compare_tables,
    imt,
    pair_methods,
)
from .corpus import CorpusEntry, CorpusResult, run_corpus
from .errors import LowdupError
from .fixture import emit_fixture, load_fixture
from .linearize import (
    MethodTable,
    TypeGraph,
    build_method_table,
    build_type_graph,
    implementer_methods,
    inline_all,
    inline_invocations,
    linearization_order,
    linearize_abstract,
    signature_similarity,
)
from .model import ClassKind, MethodKey, ProgramModel, RawClass, RawMethod, assemble_program
from .pipeline import (
    RunConfig,
    Submission,
    compare_paths,
    compare_programs,
    dump_tokens,
    dump_token_lines,
    load_submission,
    mode_table,
    run_compare,
)
from .slt import LexKind, LexToken, lex_source, slt_compare
from .tiling import Tile, matched_count, rkgst, rkgst_symmetric
from .tokens import Token, TokenSequence, extract_method_tokens, generalize, interpret

__version__ = "1.0.0"

__all__ = [
    "ClassKind",
    "ComparisonReport",
    "ConstantPool",
    "CorpusEntry",
    "CorpusResult",
    "Instruction",
    "LexKind",
    "LexToken",
    "LowdupError",
    "MethodKey",
    "MethodPair",
    "MethodTable",
    "Mode",
    "ProgramModel",
    "RawClass",
    "RawMethod",
    "RunConfig",
    "Submission",
    "Tile",
    "Token",
    "TokenSequence",
    "TypeGraph",
    "assemble_program",
    "build_method_table",
    "build_type_graph",
    "compare_paths",
    "compare_programs",
    "dump_tokens",
    "dump_token_lines",
    "run_compare",
    "compare_tables",
    "decode_bytecode",
    "emit_fixture",
    "extract_method_tokens",
    "generalize",
    "implementer_methods",
    "imt",
    "inline_all",
    "inline_invocations",
    "interpret",
    "lex_source",
    "linearization_order",
    "linearize_abstract",
    "load_fixture",
    "load_submission",
    "mode_table",
    "pair_methods",
    "parse_class_file",
    "matched_count",
    "rkgst",
    "rkgst_symmetric",
    "run_corpus",
    "signature_similarity",
    "slt_compare",
]
