"""Program model: resolved classes, methods, and the method view.

A :class:`ProgramModel` is one submission: every class/interface it declares,
the hierarchy edges between them, and a uniform view of all methods keyed by
``(class, name, descriptor)``. Models are immutable after assembly and safe
to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple, Optional

from .errors import DuplicateClass
from .tokens import Token

if TYPE_CHECKING:  # pragma: no cover
    from .classfile import ConstantPool


class ClassKind(enum.Enum):
    CLASS = "class"
    ABSTRACT_CLASS = "abstract"
    INTERFACE = "interface"


class MethodKey(NamedTuple):
    cls: str
    name: str
    descriptor: str

    def pretty(self) -> str:
        return f"{self.cls}.{self.name}:{self.descriptor}"


@dataclass(frozen=True)
class RawMethod:
    """One method as ingested, before token extraction.

    Exactly one of ``code`` (class files) or ``fixture_tokens`` (textual
    fixtures) is set for a non-abstract method; abstract methods carry
    neither. The ingestion paths validate those invariants (and the
    descriptor grammar) before constructing, each with its own error type.
    """

    name: str
    descriptor: str
    is_abstract: bool
    code: Optional[bytes] = None
    fixture_tokens: Optional[tuple[Token, ...]] = None
    synthetic: bool = False
    bridge: bool = False

    @property
    def is_compiler_generated(self) -> bool:
        return self.synthetic or self.bridge or self.name in ("<init>", "<clinit>")


@dataclass(frozen=True)
class RawClass:
    name: str
    kind: ClassKind
    super_name: Optional[str] = None
    interface_names: tuple[str, ...] = ()
    methods: tuple[RawMethod, ...] = ()
    # The pool the methods' code indexes into; None for fixture classes.
    pool: Optional["ConstantPool"] = field(default=None, compare=False, repr=False)

    @property
    def supertypes(self) -> tuple[str, ...]:
        supers = () if self.super_name is None else (self.super_name,)
        return supers + self.interface_names


@dataclass(frozen=True)
class ProgramModel:
    """A resolved set of classes; the unit of comparison."""

    classes: dict[str, RawClass] = field(default_factory=dict)
    externals: frozenset[str] = frozenset()
    methods_view: dict[MethodKey, RawMethod] = field(default_factory=dict)

    def declaration_index(self, class_name: str) -> int:
        for i, name in enumerate(self.classes):
            if name == class_name:
                return i
        raise KeyError(class_name)

    def method_keys_of(self, class_name: str) -> list[MethodKey]:
        cls = self.classes[class_name]
        return [MethodKey(class_name, m.name, m.descriptor) for m in cls.methods]

    def resolve_method(self, owner: str, name: str, descriptor: str) -> Optional[MethodKey]:
        """Find ``owner.name:descriptor``, walking up the in-model hierarchy.

        Mirrors JVM resolution cheaply: the owner itself first, then its
        supertypes breadth-first in declaration order. External types end
        the walk along their branch.
        """
        seen: set[str] = set()
        queue = [owner]
        while queue:
            current = queue.pop(0)
            if current in seen or current not in self.classes:
                continue
            seen.add(current)
            key = MethodKey(current, name, descriptor)
            if key in self.methods_view:
                return key
            queue.extend(self.classes[current].supertypes)
        return None


def assemble_program(classes: list[RawClass]) -> ProgramModel:
    """Build a ProgramModel; rejects duplicate class names.

    Supertypes that are not declared in the same submission land in
    ``externals`` and contribute no hierarchy edges later.
    """
    class_map: dict[str, RawClass] = {}
    for cls in classes:
        if cls.name in class_map:
            raise DuplicateClass(f"class {cls.name!r} declared twice")
        class_map[cls.name] = cls

    externals: set[str] = set()
    methods_view: dict[MethodKey, RawMethod] = {}
    for cls in class_map.values():
        for sup in cls.supertypes:
            if sup not in class_map:
                externals.add(sup)
        for method in cls.methods:
            key = MethodKey(cls.name, method.name, method.descriptor)
            if key in methods_view:
                raise DuplicateClass(
                    f"method {key.pretty()} declared twice in {cls.name!r}"
                )
            methods_view[key] = method

    return ProgramModel(
        classes=class_map,
        externals=frozenset(externals),
        methods_view=methods_view,
    )
