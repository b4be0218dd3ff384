"""JVM type and method descriptor parsing.

A method descriptor looks like ``(Ljava/lang/String;I[J)V``. Parsing yields
the parameter type strings and the return type string, which are also the
token multiset used for signature similarity.
"""

from __future__ import annotations

from functools import lru_cache

PRIMITIVES = frozenset("BCDFIJSZ")


class BadDescriptor(ValueError):
    """Descriptor does not conform to the JVM grammar."""


def _parse_field_type(desc: str, pos: int) -> tuple[str, int]:
    """Parse one field type at ``pos``; return (type string, next position)."""
    start = pos
    while pos < len(desc) and desc[pos] == "[":
        pos += 1
    if pos >= len(desc):
        raise BadDescriptor(f"truncated descriptor {desc!r}")
    ch = desc[pos]
    if ch in PRIMITIVES:
        return desc[start : pos + 1], pos + 1
    if ch == "L":
        end = desc.find(";", pos)
        if end < 0 or end == pos + 1:
            raise BadDescriptor(f"unterminated class type in {desc!r}")
        return desc[start : end + 1], end + 1
    raise BadDescriptor(f"bad type char {ch!r} in {desc!r}")


@lru_cache(maxsize=4096)
def parse_method_descriptor(desc: str) -> tuple[tuple[str, ...], str]:
    """Split a method descriptor into (parameter types, return type).

    Raises :class:`BadDescriptor` on any deviation from the grammar.
    """
    if not desc.startswith("("):
        raise BadDescriptor(f"descriptor must start with '(': {desc!r}")
    pos = 1
    params: list[str] = []
    while pos < len(desc) and desc[pos] != ")":
        typ, pos = _parse_field_type(desc, pos)
        params.append(typ)
    if pos >= len(desc):
        raise BadDescriptor(f"missing ')' in {desc!r}")
    pos += 1
    if pos >= len(desc):
        raise BadDescriptor(f"missing return type in {desc!r}")
    if desc[pos] == "V":
        ret, end = "V", pos + 1
    else:
        ret, end = _parse_field_type(desc, pos)
    if end != len(desc):
        raise BadDescriptor(f"trailing characters in {desc!r}")
    return tuple(params), ret


def is_valid_method_descriptor(desc: str) -> bool:
    try:
        parse_method_descriptor(desc)
    except BadDescriptor:
        return False
    return True


@lru_cache(maxsize=4096)
def descriptor_type_tokens(desc: str) -> tuple[str, ...]:
    """Multiset (as a sorted tuple) of parameter types plus the return type."""
    params, ret = parse_method_descriptor(desc)
    return tuple(sorted(params + (ret,)))
