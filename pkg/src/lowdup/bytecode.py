"""Linear bytecode decoder.

Decodes a Code attribute's byte array into instructions with strictly
increasing offsets. No control-flow analysis is done; switches and wide
forms are decoded only as far as their byte layout requires.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from .errors import BadOpcode, TruncatedCode
from .opcodes import OPCODES, WIDE_TARGETS


@dataclass(frozen=True)
class Instruction:
    """One decoded instruction.

    ``operands`` holds the parsed operand integers in layout order (constant
    pool index, immediate value, local slot, ...). Branch targets and switch
    jump tables are parsed for layout correctness but kept raw.
    """

    offset: int
    mnemonic: str
    opcode: int
    operands: tuple[int, ...] = field(default_factory=tuple)


def _need(code: bytes, pos: int, count: int) -> None:
    if pos + count > len(code):
        raise TruncatedCode(
            f"need {count} operand byte(s) at offset {pos}, "
            f"but code ends at {len(code)}"
        )


def decode_bytecode(code: bytes, pool: object = None) -> list[Instruction]:
    """Decode an entire code array; raises BadOpcode/TruncatedCode.

    ``pool`` is accepted for signature symmetry with the extraction layer but
    unused: every operand width in the instruction set is static, so decoding
    never consults the constant pool.
    """
    out: list[Instruction] = []
    pos = 0
    n = len(code)
    while pos < n:
        start = pos
        op = code[pos]
        pos += 1
        entry = OPCODES.get(op)
        if entry is None:
            raise BadOpcode(f"unknown opcode 0x{op:02X} at offset {start}")
        mnemonic, kind = entry

        if kind == "":
            operands: tuple[int, ...] = ()
        elif kind == "b1":
            _need(code, pos, 1)
            operands = (struct.unpack_from(">b", code, pos)[0],)
            pos += 1
        elif kind == "s2":
            _need(code, pos, 2)
            operands = (struct.unpack_from(">h", code, pos)[0],)
            pos += 2
        elif kind == "u1cp":
            _need(code, pos, 1)
            operands = (code[pos],)
            pos += 1
        elif kind in ("cp", "br2"):
            _need(code, pos, 2)
            fmt = ">H" if kind == "cp" else ">h"
            operands = (struct.unpack_from(fmt, code, pos)[0],)
            pos += 2
        elif kind == "br4":
            _need(code, pos, 4)
            operands = (struct.unpack_from(">i", code, pos)[0],)
            pos += 4
        elif kind == "local":
            _need(code, pos, 1)
            operands = (code[pos],)
            pos += 1
        elif kind == "iinc":
            _need(code, pos, 2)
            operands = (code[pos], struct.unpack_from(">b", code, pos + 1)[0])
            pos += 2
        elif kind == "atype":
            _need(code, pos, 1)
            operands = (code[pos],)
            pos += 1
        elif kind == "iface":
            _need(code, pos, 4)
            operands = (struct.unpack_from(">H", code, pos)[0], code[pos + 2])
            pos += 4
        elif kind == "indy":
            _need(code, pos, 4)
            operands = (struct.unpack_from(">H", code, pos)[0],)
            pos += 4
        elif kind == "manew":
            _need(code, pos, 3)
            operands = (struct.unpack_from(">H", code, pos)[0], code[pos + 2])
            pos += 3
        elif kind == "table":
            pos, operands = _decode_tableswitch(code, start, pos)
        elif kind == "lookup":
            pos, operands = _decode_lookupswitch(code, start, pos)
        elif kind == "wide":
            mnemonic, pos, operands = _decode_wide(code, start, pos)
        else:  # pragma: no cover - table is exhaustive
            raise BadOpcode(f"unhandled operand layout {kind!r}")

        out.append(Instruction(start, mnemonic, op, operands))
    return out


def _switch_pad(start: int, pos: int) -> int:
    # Payload is 4-byte aligned relative to the start of the code array.
    return (4 - ((start + 1) % 4)) % 4


def _decode_tableswitch(code: bytes, start: int, pos: int) -> tuple[int, tuple[int, ...]]:
    pos += _switch_pad(start, pos)
    _need(code, pos, 12)
    default, low, high = struct.unpack_from(">iii", code, pos)
    pos += 12
    if high < low:
        raise BadOpcode(f"tableswitch high {high} < low {low} at offset {start}")
    count = high - low + 1
    _need(code, pos, 4 * count)
    pos += 4 * count
    return pos, (default, low, high)


def _decode_lookupswitch(code: bytes, start: int, pos: int) -> tuple[int, tuple[int, ...]]:
    pos += _switch_pad(start, pos)
    _need(code, pos, 8)
    default, npairs = struct.unpack_from(">ii", code, pos)
    pos += 8
    if npairs < 0:
        raise BadOpcode(f"lookupswitch npairs {npairs} < 0 at offset {start}")
    _need(code, pos, 8 * npairs)
    pos += 8 * npairs
    return pos, (default, npairs)


def _decode_wide(code: bytes, start: int, pos: int) -> tuple[str, int, tuple[int, ...]]:
    _need(code, pos, 1)
    inner_op = code[pos]
    pos += 1
    entry = OPCODES.get(inner_op)
    if entry is None or entry[0] not in WIDE_TARGETS and entry[0] != "iinc":
        raise BadOpcode(f"bad wide target 0x{inner_op:02X} at offset {start}")
    mnemonic = entry[0]
    if mnemonic == "iinc":
        _need(code, pos, 4)
        operands = (
            struct.unpack_from(">H", code, pos)[0],
            struct.unpack_from(">h", code, pos + 2)[0],
        )
        pos += 4
    else:
        _need(code, pos, 2)
        operands = (struct.unpack_from(">H", code, pos)[0],)
        pos += 2
    return mnemonic, pos, operands
