"""Binary class file reader.

Parses the big-endian class file format (magic 0xCAFEBABE, major versions
45 through 61). Only the pieces the detector needs are interpreted: the
constant pool, access flags, this/super/interface names, and each method's
Code attribute. Everything else is skipped by declared length.

Any byte string is safe to feed in: the reader either returns a
:class:`~lowdup.model.RawClass` or raises a :class:`~lowdup.errors.ClassFileError`
subclass, never an unstructured exception.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Optional

from .descriptors import is_valid_method_descriptor
from .errors import (
    BadMagic,
    ClassFileError,
    MalformedPool,
    TruncatedFile,
    UnsupportedFeature,
    UnsupportedVersion,
)
from .model import ClassKind, RawClass, RawMethod

MIN_MAJOR = 45
MAX_MAJOR = 61

ACC_NATIVE = 0x0100
ACC_INTERFACE = 0x0200
ACC_ABSTRACT = 0x0400
ACC_SYNTHETIC = 0x1000
ACC_BRIDGE = 0x0040

TAG_UTF8 = 1
TAG_INT = 3
TAG_FLOAT = 4
TAG_LONG = 5
TAG_DOUBLE = 6
TAG_CLASS = 7
TAG_STRING = 8
TAG_FIELDREF = 9
TAG_METHODREF = 10
TAG_IFACEMETHODREF = 11
TAG_NAMEANDTYPE = 12
TAG_METHODHANDLE = 15
TAG_METHODTYPE = 16
TAG_DYNAMIC = 17
TAG_INVOKEDYNAMIC = 18
TAG_MODULE = 19
TAG_PACKAGE = 20

_REF_TAGS = (TAG_FIELDREF, TAG_METHODREF, TAG_IFACEMETHODREF)


def _decode_mutf8(data: bytes) -> str:
    """Decode the class file's modified UTF-8 (CESU-8 with 0xC0 0x80 NUL)."""
    units: list[int] = []
    i = 0
    n = len(data)
    while i < n:
        b0 = data[i]
        if 0x01 <= b0 <= 0x7F:
            units.append(b0)
            i += 1
        elif b0 & 0xE0 == 0xC0:
            if i + 1 >= n or data[i + 1] & 0xC0 != 0x80:
                raise MalformedPool(f"bad 2-byte utf8 sequence at byte {i}")
            units.append(((b0 & 0x1F) << 6) | (data[i + 1] & 0x3F))
            i += 2
        elif b0 & 0xF0 == 0xE0:
            if i + 2 >= n or data[i + 1] & 0xC0 != 0x80 or data[i + 2] & 0xC0 != 0x80:
                raise MalformedPool(f"bad 3-byte utf8 sequence at byte {i}")
            units.append(((b0 & 0x0F) << 12) | ((data[i + 1] & 0x3F) << 6) | (data[i + 2] & 0x3F))
            i += 3
        else:
            raise MalformedPool(f"bad utf8 lead byte 0x{b0:02X} at byte {i}")

    # Combine surrogate pairs; lone surrogates survive as-is.
    chars: list[str] = []
    j = 0
    while j < len(units):
        u = units[j]
        if 0xD800 <= u <= 0xDBFF and j + 1 < len(units) and 0xDC00 <= units[j + 1] <= 0xDFFF:
            chars.append(chr(0x10000 + ((u - 0xD800) << 10) + (units[j + 1] - 0xDC00)))
            j += 2
        else:
            chars.append(chr(u))
            j += 1
    return "".join(chars)


class _Reader:
    __slots__ = ("data", "pos")

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def need(self, count: int, what: str) -> None:
        if self.pos + count > len(self.data):
            raise TruncatedFile(f"file ends inside {what} (offset {self.pos})")

    def u1(self, what: str = "byte") -> int:
        self.need(1, what)
        v = self.data[self.pos]
        self.pos += 1
        return v

    def u2(self, what: str = "u2 field") -> int:
        self.need(2, what)
        v = struct.unpack_from(">H", self.data, self.pos)[0]
        self.pos += 2
        return v

    def u4(self, what: str = "u4 field") -> int:
        self.need(4, what)
        v = struct.unpack_from(">I", self.data, self.pos)[0]
        self.pos += 4
        return v

    def raw(self, count: int, what: str) -> bytes:
        self.need(count, what)
        v = self.data[self.pos : self.pos + count]
        self.pos += count
        return v

    def skip(self, count: int, what: str) -> None:
        self.need(count, what)
        self.pos += count


@dataclass
class ConstantPool:
    """Indexed constant pool with tag-checked accessors.

    ``entries`` maps a 1-based index to ``(tag, value)``. Long and double
    entries occupy two indices; the second index is absent. Every accessor
    raises :class:`MalformedPool` on a dangling index or unexpected tag.
    """

    entries: dict[int, tuple[int, object]]

    def _get(self, index: int, *tags: int) -> object:
        entry = self.entries.get(index)
        if entry is None:
            raise MalformedPool(f"dangling constant pool index {index}")
        tag, value = entry
        if tags and tag not in tags:
            raise MalformedPool(
                f"constant pool index {index} has tag {tag}, expected one of {tags}"
            )
        return value

    def utf8(self, index: int) -> str:
        return self._get(index, TAG_UTF8)

    def class_name(self, index: int) -> str:
        name_index = self._get(index, TAG_CLASS)
        return self.utf8(name_index)

    def name_and_type(self, index: int) -> tuple[str, str]:
        name_index, desc_index = self._get(index, TAG_NAMEANDTYPE)
        return self.utf8(name_index), self.utf8(desc_index)

    def any_ref(self, index: int) -> tuple[str, str, str]:
        """Resolve a field/method/interface-method ref to (owner, name, descriptor)."""
        class_index, nat_index = self._get(index, *_REF_TAGS)
        name, desc = self.name_and_type(nat_index)
        return self.class_name(class_index), name, desc

    def indy_name_and_type(self, index: int) -> tuple[str, str]:
        _, nat_index = self._get(index, TAG_INVOKEDYNAMIC, TAG_DYNAMIC)
        return self.name_and_type(nat_index)

    def constant(self, index: int) -> tuple[str, object]:
        """Resolve a loadable constant to (kind, value) for interpretation."""
        entry = self.entries.get(index)
        if entry is None:
            raise MalformedPool(f"dangling constant pool index {index}")
        tag, value = entry
        if tag == TAG_INT:
            return "int", value
        if tag == TAG_LONG:
            return "long", value
        if tag == TAG_FLOAT:
            return "float", value
        if tag == TAG_DOUBLE:
            return "double", value
        if tag == TAG_STRING:
            return "string", self.utf8(value)
        if tag == TAG_CLASS:
            return "class", self.utf8(value)
        if tag == TAG_METHODTYPE:
            return "methodtype", self.utf8(value)
        if tag == TAG_METHODHANDLE:
            return "methodhandle", value
        if tag == TAG_DYNAMIC:
            return "dynamic", value
        raise MalformedPool(f"constant pool index {index} (tag {tag}) is not loadable")

    def validate(self) -> None:
        """Check every cross-index up front so later lookups cannot dangle."""
        for index, (tag, value) in self.entries.items():
            try:
                if tag == TAG_CLASS or tag == TAG_METHODTYPE:
                    self.utf8(value)
                elif tag == TAG_STRING:
                    self.utf8(value)
                elif tag in _REF_TAGS:
                    self.any_ref(index)
                elif tag == TAG_NAMEANDTYPE:
                    self.name_and_type(index)
                elif tag in (TAG_DYNAMIC, TAG_INVOKEDYNAMIC):
                    self.indy_name_and_type(index)
                elif tag == TAG_METHODHANDLE:
                    _, ref_index = value
                    self._get(ref_index, *_REF_TAGS)
                elif tag in (TAG_MODULE, TAG_PACKAGE):
                    self.utf8(value)
            except MalformedPool as exc:
                raise MalformedPool(f"entry {index}: {exc}") from None


def _read_pool(reader: _Reader) -> ConstantPool:
    count = reader.u2("constant pool count")
    entries: dict[int, tuple[int, object]] = {}
    index = 1
    while index < count:
        tag = reader.u1("constant pool tag")
        if tag == TAG_UTF8:
            length = reader.u2("utf8 length")
            entries[index] = (tag, _decode_mutf8(reader.raw(length, "utf8 bytes")))
        elif tag == TAG_INT:
            entries[index] = (tag, struct.unpack(">i", reader.raw(4, "int constant"))[0])
        elif tag == TAG_FLOAT:
            entries[index] = (tag, struct.unpack(">f", reader.raw(4, "float constant"))[0])
        elif tag == TAG_LONG:
            entries[index] = (tag, struct.unpack(">q", reader.raw(8, "long constant"))[0])
            index += 1
        elif tag == TAG_DOUBLE:
            entries[index] = (tag, struct.unpack(">d", reader.raw(8, "double constant"))[0])
            index += 1
        elif tag in (TAG_CLASS, TAG_STRING, TAG_METHODTYPE, TAG_MODULE, TAG_PACKAGE):
            entries[index] = (tag, reader.u2("pool cross-index"))
        elif tag in (*_REF_TAGS, TAG_NAMEANDTYPE, TAG_DYNAMIC, TAG_INVOKEDYNAMIC):
            a = reader.u2("pool cross-index")
            b = reader.u2("pool cross-index")
            entries[index] = (tag, (a, b))
        elif tag == TAG_METHODHANDLE:
            kind = reader.u1("method handle kind")
            ref = reader.u2("method handle ref")
            entries[index] = (tag, (kind, ref))
        else:
            raise MalformedPool(f"unknown constant pool tag {tag} at index {index}")
        index += 1
    pool = ConstantPool(entries)
    pool.validate()
    return pool


def _skip_attributes(reader: _Reader, pool: ConstantPool) -> None:
    count = reader.u2("attribute count")
    for _ in range(count):
        pool.utf8(reader.u2("attribute name index"))
        length = reader.u4("attribute length")
        reader.skip(length, "attribute body")


def _read_code_attribute(reader: _Reader, pool: ConstantPool, length: int) -> bytes:
    start = reader.pos
    reader.u2("max_stack")
    reader.u2("max_locals")
    code_length = reader.u4("code length")
    code = reader.raw(code_length, "code bytes")
    exception_count = reader.u2("exception table length")
    reader.skip(exception_count * 8, "exception table")
    _skip_attributes(reader, pool)
    if reader.pos - start != length:
        raise ClassFileError(
            f"Code attribute declares {length} bytes but spans {reader.pos - start}"
        )
    return code


def _read_method(reader: _Reader, pool: ConstantPool, interface: bool) -> RawMethod:
    access = reader.u2("method access flags")
    name = pool.utf8(reader.u2("method name index"))
    descriptor = pool.utf8(reader.u2("method descriptor index"))
    if not is_valid_method_descriptor(descriptor):
        raise ClassFileError(f"method {name} has invalid descriptor {descriptor!r}")

    code: Optional[bytes] = None
    attr_count = reader.u2("method attribute count")
    for _ in range(attr_count):
        attr_name = pool.utf8(reader.u2("attribute name index"))
        length = reader.u4("attribute length")
        if attr_name == "Code":
            if code is not None:
                raise ClassFileError(f"method {name} has two Code attributes")
            code = _read_code_attribute(reader, pool, length)
        else:
            reader.skip(length, "attribute body")

    is_abstract = bool(access & ACC_ABSTRACT)
    if access & ACC_NATIVE:
        raise UnsupportedFeature(f"method {name}{descriptor} is native")
    if is_abstract and code is not None:
        raise ClassFileError(f"abstract method {name}{descriptor} carries code")
    if not is_abstract and code is None:
        raise ClassFileError(f"concrete method {name}{descriptor} has no Code attribute")
    # Interface static initializers predate default methods and are fine;
    # any other code-bearing interface method is outside the model.
    if interface and code is not None and name != "<clinit>":
        raise UnsupportedFeature(
            f"interface default method {name}{descriptor} (code-bearing interface method)"
        )
    return RawMethod(
        name=name,
        descriptor=descriptor,
        is_abstract=is_abstract,
        code=code,
        synthetic=bool(access & ACC_SYNTHETIC),
        bridge=bool(access & ACC_BRIDGE),
    )


def parse_class_file(data: bytes) -> RawClass:
    """Parse one complete class file image into a RawClass."""
    reader = _Reader(data)
    if reader.raw(4, "magic") != b"\xca\xfe\xba\xbe":
        raise BadMagic("file does not start with 0xCAFEBABE")
    reader.u2("minor version")
    major = reader.u2("major version")
    if not MIN_MAJOR <= major <= MAX_MAJOR:
        raise UnsupportedVersion(
            f"major version {major} outside supported range {MIN_MAJOR}..{MAX_MAJOR}"
        )

    pool = _read_pool(reader)

    access = reader.u2("class access flags")
    name = pool.class_name(reader.u2("this_class index"))
    super_index = reader.u2("super_class index")
    super_name = pool.class_name(super_index) if super_index != 0 else None

    interface_count = reader.u2("interface count")
    interfaces = tuple(
        pool.class_name(reader.u2("interface index")) for _ in range(interface_count)
    )

    field_count = reader.u2("field count")
    for _ in range(field_count):
        reader.u2("field access flags")
        pool.utf8(reader.u2("field name index"))
        pool.utf8(reader.u2("field descriptor index"))
        _skip_attributes(reader, pool)

    if access & ACC_INTERFACE:
        kind = ClassKind.INTERFACE
    elif access & ACC_ABSTRACT:
        kind = ClassKind.ABSTRACT_CLASS
    else:
        kind = ClassKind.CLASS

    method_count = reader.u2("method count")
    methods = tuple(
        _read_method(reader, pool, kind is ClassKind.INTERFACE) for _ in range(method_count)
    )

    _skip_attributes(reader, pool)

    return RawClass(
        name=name,
        kind=kind,
        super_name=super_name,
        interface_names=interfaces,
        methods=methods,
        pool=pool,
    )
