"""Exception hierarchy for lowdup.

Every structured failure raises a subclass of :class:`LowdupError`; callers
that must not crash on hostile input (the class-file parser, the fixture
loader, the lexer) catch only this hierarchy.
"""

from __future__ import annotations


class LowdupError(Exception):
    """Base class for all structured lowdup errors."""


# --- class file ingestion ---------------------------------------------------

class ClassFileError(LowdupError):
    """A class file could not be parsed."""


class BadMagic(ClassFileError):
    """File does not start with 0xCAFEBABE."""


class TruncatedFile(ClassFileError):
    """File ended before a required structure was complete."""


class UnsupportedVersion(ClassFileError):
    """Class file major version outside the supported 45..61 range."""


class UnsupportedFeature(ClassFileError):
    """Well-formed input using a construct this model rejects.

    Raised for interface default methods (code-bearing interface methods)
    and native methods, which would otherwise be silently mis-modeled.
    """


class MalformedPool(ClassFileError):
    """Constant pool entry with a bad tag, bad encoding, or dangling index."""


# --- bytecode decoding ------------------------------------------------------

class BytecodeError(LowdupError):
    """Method bytecode could not be decoded."""


class BadOpcode(BytecodeError):
    """Unknown opcode byte or structurally invalid instruction."""


class TruncatedCode(BytecodeError):
    """Instruction operands run past the end of the code array."""


# --- fixtures and model assembly --------------------------------------------

class FixtureError(LowdupError):
    """A textual fixture could not be loaded."""


class FixtureSyntax(FixtureError):
    """Malformed fixture document; message carries line/position context."""


class UnknownKind(FixtureError):
    """Fixture class kind is not one of class/abstract/interface."""


class DuplicateClass(LowdupError):
    """Two classes with the same name in one program."""


class CyclicHierarchy(LowdupError):
    """The implements/inherits graph has a cycle; message names a witness."""

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("cyclic hierarchy: " + " -> ".join(self.cycle + self.cycle[:1]))


# --- lexing -----------------------------------------------------------------

class LexError(LowdupError):
    """Source text could not be tokenized."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class UnterminatedString(LexError):
    """String or character literal never closed."""


class UnterminatedComment(LexError):
    """Block comment never closed."""


# --- CLI / corpus inputs ----------------------------------------------------

class InputError(LowdupError):
    """A submission path could not be turned into a comparable program."""


class InputNotFound(InputError):
    """Submission path does not exist."""


class MixedInputKinds(InputError):
    """One submission mixes class files and fixtures."""


class FewerThanTwoSubmissions(InputError):
    """Corpus directory holds fewer than two submissions."""
