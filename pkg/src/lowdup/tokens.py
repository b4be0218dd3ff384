"""Token extraction: generalized, interpreted instruction sequences.

A :class:`Token` is one generalized instruction family plus an optional
interpreted operand annotation. Two tokens match when family and annotation
agree; where a token came from (its origin) never participates in equality.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from .errors import MalformedPool
from .opcodes import ATYPE_NAMES, DROPPED, FAMILY
from .bytecode import Instruction, decode_bytecode

if TYPE_CHECKING:  # pragma: no cover
    from .classfile import ConstantPool
    from .model import MethodKey, RawMethod


@dataclass(frozen=True)
class Token:
    """One matchable token; origin is provenance only, excluded from equality."""

    mnemonic: str
    annotation: Optional[str] = None
    origin: Optional[tuple[str, str, int]] = field(default=None, compare=False)

    def render(self) -> str:
        if self.annotation is None:
            return self.mnemonic
        return f"{self.mnemonic}:{self.annotation}"

    @classmethod
    def parse(cls, text: str, origin: Optional[tuple[str, str, int]] = None) -> "Token":
        """Inverse of :meth:`render`; splits at the first colon."""
        mnemonic, sep, annotation = text.partition(":")
        return cls(mnemonic, annotation if sep else None, origin)


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[Token, ...]
    source_method: "MethodKey"

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def generalize(mnemonic: str) -> Optional[str]:
    """Collapse an instruction mnemonic into its vocabulary family.

    Returns ``None`` for dropped instructions (unconditional jumps, nop).
    Total over valid mnemonics; family names map to themselves.
    """
    if mnemonic in DROPPED:
        return None
    family = FAMILY.get(mnemonic)
    if family is None:
        raise KeyError(f"no generalization family for mnemonic {mnemonic!r}")
    return family


def format_int(value: int) -> str:
    return str(value)


def format_double(value: float) -> str:
    """Shortest decimal form that round-trips through a 64-bit float."""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return repr(value)


def format_float32(value: float) -> str:
    """Shortest decimal form that round-trips through a 32-bit float.

    The value arrives widened to a double by the constant pool reader; the
    round-trip check is against its 32-bit pattern.
    """
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    target = struct.pack(">f", value)
    for precision in range(1, 18):
        text = f"{value:.{precision}g}"
        try:
            if struct.pack(">f", float(text)) == target:
                break
        except OverflowError:
            # Near the float32 maximum a short decimal can round up past
            # the representable range; a longer one cannot.
            continue
    if "." not in text and "e" not in text and "E" not in text and "inf" not in text:
        text += ".0"
    return text


_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def format_string(value: str) -> str:
    """Quote a string constant deterministically for annotations."""
    parts = ['"']
    for ch in value:
        if ch in _ESCAPES:
            parts.append(_ESCAPES[ch])
        elif ord(ch) < 0x20 or 0xD800 <= ord(ch) <= 0xDFFF:
            parts.append(f"\\u{ord(ch):04x}")
        else:
            parts.append(ch)
    parts.append('"')
    return "".join(parts)


_IMMEDIATE_CONSTS = {
    "aconst_null": "null",
    "iconst_m1": "-1", "iconst_0": "0", "iconst_1": "1", "iconst_2": "2",
    "iconst_3": "3", "iconst_4": "4", "iconst_5": "5",
    "lconst_0": "0", "lconst_1": "1",
    "fconst_0": "0.0", "fconst_1": "1.0", "fconst_2": "2.0",
    "dconst_0": "0.0", "dconst_1": "1.0",
}

_INVOKES = {"invokevirtual", "invokespecial", "invokestatic", "invokeinterface"}
_FIELD_OPS = {"getstatic", "putstatic", "getfield", "putfield"}
_TYPE_OPS = {"new", "anewarray", "multianewarray", "checkcast", "instanceof"}


def interpret(instruction: Instruction, pool: "ConstantPool") -> Optional[str]:
    """Resolve an instruction's operand into a readable annotation.

    Call targets become ``Owner.name:descriptor``, field accesses
    ``Owner.name``, pool constants their literal text, type operations the
    class (or element type) name. Register slots and jump offsets carry no
    annotation by design.
    """
    m = instruction.mnemonic
    if m in _IMMEDIATE_CONSTS:
        return _IMMEDIATE_CONSTS[m]
    if m in ("bipush", "sipush"):
        return format_int(instruction.operands[0])
    if m in ("ldc", "ldc_w", "ldc2_w"):
        return _interpret_pool_constant(instruction.operands[0], pool)
    if m in _INVOKES:
        owner, name, desc = pool.any_ref(instruction.operands[0])
        return f"{owner}.{name}:{desc}"
    if m == "invokedynamic":
        name, desc = pool.indy_name_and_type(instruction.operands[0])
        return f"<dynamic>.{name}:{desc}"
    if m in _FIELD_OPS:
        owner, name, _ = pool.any_ref(instruction.operands[0])
        return f"{owner}.{name}"
    if m in _TYPE_OPS:
        return pool.class_name(instruction.operands[0])
    if m == "newarray":
        atype = instruction.operands[0]
        name = ATYPE_NAMES.get(atype)
        if name is None:
            raise MalformedPool(f"bad newarray element type {atype}")
        return name
    return None


def _interpret_pool_constant(index: int, pool: "ConstantPool") -> Optional[str]:
    tag, value = pool.constant(index)
    if tag == "int":
        return format_int(value)
    if tag == "long":
        return format_int(value)
    if tag == "float":
        return format_float32(value)
    if tag == "double":
        return format_double(value)
    if tag == "string":
        return format_string(value)
    if tag == "class":
        return value
    # MethodType / MethodHandle / Dynamic: no readable literal.
    return None


def extract_method_tokens(
    method: "RawMethod",
    pool: Optional["ConstantPool"],
    key: "MethodKey",
) -> TokenSequence:
    """Decode, generalize, and interpret one method into its token sequence.

    Abstract methods yield an empty sequence here (linearization may fill
    them later). Fixture methods carry their tokens verbatim.
    """
    if method.fixture_tokens is not None:
        return TokenSequence(method.fixture_tokens, key)
    if method.is_abstract or method.code is None:
        return TokenSequence((), key)

    tokens: list[Token] = []
    for instruction in decode_bytecode(method.code):
        family = generalize(instruction.mnemonic)
        if family is None:
            continue
        annotation = interpret(instruction, pool)
        tokens.append(
            Token(family, annotation, (key.cls, f"{key.name}:{key.descriptor}", instruction.offset))
        )
    return TokenSequence(tuple(tokens), key)
