"""Textual fixture ingestion.

A fixture is one JSON document describing classes whose method token
sequences are given verbatim, bypassing bytecode extraction entirely:

    {"classes": [{"name": str, "kind": "class"|"abstract"|"interface",
                  "extends": str|null, "implements": [str],
                  "methods": [{"name": str, "descriptor": str,
                               "abstract": bool, "tokens": [str]}]}]}

A token string is ``MNEMONIC`` or ``MNEMONIC:annotation`` where the mnemonic
must belong to the generalization vocabulary. Abstract methods must declare
an empty token list.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import FixtureSyntax, UnknownKind
from .descriptors import is_valid_method_descriptor
from .model import ClassKind, ProgramModel, RawClass, RawMethod, assemble_program
from .opcodes import VOCABULARY
from .tokens import Token

_KINDS = {kind.value: kind for kind in ClassKind}


def _expect(value: Any, type_: type, where: str) -> Any:
    if not isinstance(value, type_) or (type_ is not bool and isinstance(value, bool)):
        raise FixtureSyntax(f"{where}: expected {type_.__name__}, got {type(value).__name__}")
    return value


def _parse_token(text: str, where: str, position: int, owner: str, method_label: str) -> Token:
    token = Token.parse(text, origin=(owner, method_label, position))
    if token.mnemonic not in VOCABULARY:
        raise FixtureSyntax(f"{where}: token {position} has unknown mnemonic {token.mnemonic!r}")
    return token


def _parse_method(obj: Any, where: str, owner: str) -> RawMethod:
    _expect(obj, dict, where)
    for key in ("name", "descriptor", "abstract", "tokens"):
        if key not in obj:
            raise FixtureSyntax(f"{where}: missing key {key!r}")
    name = _expect(obj["name"], str, f"{where}.name")
    descriptor = _expect(obj["descriptor"], str, f"{where}.descriptor")
    if not name:
        raise FixtureSyntax(f"{where}: empty method name")
    if not is_valid_method_descriptor(descriptor):
        raise FixtureSyntax(f"{where}: invalid method descriptor {descriptor!r}")
    is_abstract = _expect(obj["abstract"], bool, f"{where}.abstract")
    raw_tokens = _expect(obj["tokens"], list, f"{where}.tokens")
    if is_abstract and raw_tokens:
        raise FixtureSyntax(f"{where}: abstract method must have an empty token list")

    label = f"{name}:{descriptor}"
    tokens = tuple(
        _parse_token(_expect(t, str, f"{where}.tokens[{i}]"), where, i, owner, label)
        for i, t in enumerate(raw_tokens)
    )
    return RawMethod(
        name=name,
        descriptor=descriptor,
        is_abstract=is_abstract,
        code=None,
        fixture_tokens=tokens,
    )


def _parse_class(obj: Any, index: int) -> RawClass:
    where = f"classes[{index}]"
    _expect(obj, dict, where)
    for key in ("name", "kind", "methods"):
        if key not in obj:
            raise FixtureSyntax(f"{where}: missing key {key!r}")
    name = _expect(obj["name"], str, f"{where}.name")
    if not name:
        raise FixtureSyntax(f"{where}: empty class name")
    kind_text = _expect(obj["kind"], str, f"{where}.kind")
    kind = _KINDS.get(kind_text)
    if kind is None:
        raise UnknownKind(f"{where}: kind {kind_text!r} is not one of class/abstract/interface")

    extends = obj.get("extends")
    if extends is not None:
        extends = _expect(extends, str, f"{where}.extends")
    implements = _expect(obj.get("implements", []), list, f"{where}.implements")
    interface_names = tuple(
        _expect(item, str, f"{where}.implements[{i}]") for i, item in enumerate(implements)
    )

    methods_obj = _expect(obj["methods"], list, f"{where}.methods")
    methods = tuple(
        _parse_method(m, f"{where}.methods[{i}]", name) for i, m in enumerate(methods_obj)
    )
    return RawClass(
        name=name,
        kind=kind,
        super_name=extends,
        interface_names=interface_names,
        methods=methods,
    )


def load_fixture(text: str) -> ProgramModel:
    """Parse a fixture document into a resolved ProgramModel."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureSyntax(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    _expect(document, dict, "document")
    if "classes" not in document:
        raise FixtureSyntax("document: missing key 'classes'")
    classes_obj = _expect(document["classes"], list, "document.classes")
    classes = [_parse_class(obj, i) for i, obj in enumerate(classes_obj)]
    return assemble_program(classes)


def emit_fixture(model: ProgramModel) -> str:
    """Serialize a fixture-born ProgramModel back to its JSON form.

    Re-loading the output yields an equal model (the round-trip property the
    tests lean on). Only fixture classes can be emitted; classes parsed from
    bytecode carry raw code, not verbatim tokens.
    """
    classes = []
    for cls in model.classes.values():
        methods = []
        for method in cls.methods:
            if method.fixture_tokens is None:
                raise ValueError(
                    f"{cls.name}.{method.name} has no verbatim tokens; not a fixture class"
                )
            methods.append(
                {
                    "name": method.name,
                    "descriptor": method.descriptor,
                    "abstract": method.is_abstract,
                    "tokens": [token.render() for token in method.fixture_tokens],
                }
            )
        classes.append(
            {
                "name": cls.name,
                "kind": cls.kind.value,
                "extends": cls.super_name,
                "implements": list(cls.interface_names),
                "methods": methods,
            }
        )
    return json.dumps({"classes": classes}, indent=2)
