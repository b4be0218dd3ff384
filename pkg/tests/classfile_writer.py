"""Minimal class file emitter for building binary test fixtures.

Deliberately independent of the package under test: opcode bytes, tags,
and layout rules here are transcribed from the class file format by hand,
so a bug in the production tables cannot hide by symmetry. Supports just
enough of the format to assemble the committed fixtures: constant pool
with deduplication, fields, methods with one Code attribute, and the
instruction subset listed in _OPS.

Run as a script to regenerate tests/data/classes/*.class.
"""

from __future__ import annotations

import struct
from pathlib import Path

MAJOR_VERSION = 52  # Java 8

ACC_PUBLIC = 0x0001
ACC_STATIC = 0x0008
ACC_FINAL = 0x0010
ACC_SUPER = 0x0020
ACC_INTERFACE = 0x0200
ACC_ABSTRACT = 0x0400


class PoolBuilder:
    def __init__(self) -> None:
        self._blobs: list[bytes] = []
        self._index: dict[tuple, int] = {}
        self._next = 1

    def _add(self, key: tuple, blob: bytes, slots: int = 1) -> int:
        if key in self._index:
            return self._index[key]
        index = self._next
        self._index[key] = index
        self._blobs.append(blob)
        self._next += slots
        return index

    def utf8(self, text: str) -> int:
        data = text.encode("utf-8")  # fixture strings stay in the ASCII/BMP-simple range
        return self._add(("utf8", text), struct.pack(">BH", 1, len(data)) + data)

    def integer(self, value: int) -> int:
        return self._add(("int", value), struct.pack(">Bi", 3, value))

    def float_(self, value: float) -> int:
        blob = struct.pack(">B", 4) + struct.pack(">f", value)
        return self._add(("float", struct.pack(">f", value)), blob)

    def long_(self, value: int) -> int:
        return self._add(("long", value), struct.pack(">Bq", 5, value), slots=2)

    def double_(self, value: float) -> int:
        blob = struct.pack(">B", 6) + struct.pack(">d", value)
        return self._add(("double", struct.pack(">d", value)), blob, slots=2)

    def class_(self, name: str) -> int:
        name_index = self.utf8(name)
        return self._add(("class", name), struct.pack(">BH", 7, name_index))

    def string(self, text: str) -> int:
        text_index = self.utf8(text)
        return self._add(("string", text), struct.pack(">BH", 8, text_index))

    def nat(self, name: str, descriptor: str) -> int:
        name_index = self.utf8(name)
        desc_index = self.utf8(descriptor)
        return self._add(
            ("nat", name, descriptor), struct.pack(">BHH", 12, name_index, desc_index)
        )

    def _ref(self, tag: int, owner: str, name: str, descriptor: str) -> int:
        class_index = self.class_(owner)
        nat_index = self.nat(name, descriptor)
        return self._add(
            ("ref", tag, owner, name, descriptor),
            struct.pack(">BHH", tag, class_index, nat_index),
        )

    def fieldref(self, owner: str, name: str, descriptor: str) -> int:
        return self._ref(9, owner, name, descriptor)

    def methodref(self, owner: str, name: str, descriptor: str) -> int:
        return self._ref(10, owner, name, descriptor)

    def interfacemethodref(self, owner: str, name: str, descriptor: str) -> int:
        return self._ref(11, owner, name, descriptor)

    def invokedynamic(self, bootstrap: int, name: str, descriptor: str) -> int:
        nat_index = self.nat(name, descriptor)
        return self._add(
            ("indy", bootstrap, name, descriptor),
            struct.pack(">BHH", 18, bootstrap, nat_index),
        )

    def serialize(self) -> bytes:
        return struct.pack(">H", self._next) + b"".join(self._blobs)


# mnemonic -> (opcode byte, operand layout)
# layouts: "" none; "i8"/"i16" signed immediates; "u8" unsigned byte;
# "cp8"/"cp16" pool index; "iinc" two bytes; "iface" pool+count+0;
# "indy" pool+0+0; "manew" pool+dims; special-cased: tableswitch,
# lookupswitch, wide.
_OPS = {
    "nop": (0x00, ""), "aconst_null": (0x01, ""),
    "iconst_m1": (0x02, ""), "iconst_0": (0x03, ""), "iconst_1": (0x04, ""),
    "iconst_2": (0x05, ""), "iconst_3": (0x06, ""), "iconst_4": (0x07, ""),
    "iconst_5": (0x08, ""), "lconst_0": (0x09, ""), "lconst_1": (0x0A, ""),
    "fconst_0": (0x0B, ""), "fconst_1": (0x0C, ""), "fconst_2": (0x0D, ""),
    "dconst_0": (0x0E, ""), "dconst_1": (0x0F, ""),
    "bipush": (0x10, "i8"), "sipush": (0x11, "i16"),
    "ldc": (0x12, "cp8"), "ldc_w": (0x13, "cp16"), "ldc2_w": (0x14, "cp16"),
    "iload": (0x15, "u8"), "lload": (0x16, "u8"), "fload": (0x17, "u8"),
    "dload": (0x18, "u8"), "aload": (0x19, "u8"),
    "iload_0": (0x1A, ""), "iload_1": (0x1B, ""), "iload_2": (0x1C, ""), "iload_3": (0x1D, ""),
    "aload_0": (0x2A, ""), "aload_1": (0x2B, ""), "aload_2": (0x2C, ""), "aload_3": (0x2D, ""),
    "iaload": (0x2E, ""), "aaload": (0x32, ""),
    "istore": (0x36, "u8"), "astore": (0x3A, "u8"),
    "istore_0": (0x3B, ""), "istore_1": (0x3C, ""), "istore_2": (0x3D, ""), "istore_3": (0x3E, ""),
    "astore_0": (0x4B, ""), "astore_1": (0x4C, ""), "astore_2": (0x4D, ""), "astore_3": (0x4E, ""),
    "iastore": (0x4F, ""), "aastore": (0x53, ""),
    "pop": (0x57, ""), "dup": (0x59, ""), "swap": (0x5F, ""),
    "iadd": (0x60, ""), "isub": (0x64, ""), "imul": (0x68, ""), "idiv": (0x6C, ""),
    "irem": (0x70, ""), "ineg": (0x74, ""), "ishl": (0x78, ""), "iand": (0x7E, ""),
    "iinc": (0x84, "iinc"),
    "i2l": (0x85, ""), "i2d": (0x87, ""), "l2i": (0x88, ""), "f2d": (0x8D, ""),
    "i2b": (0x91, ""),
    "lcmp": (0x94, ""), "fcmpl": (0x95, ""), "dcmpg": (0x98, ""),
    "ifeq": (0x99, "i16"), "ifne": (0x9A, "i16"), "iflt": (0x9B, "i16"),
    "ifge": (0x9C, "i16"), "ifgt": (0x9D, "i16"), "ifle": (0x9E, "i16"),
    "if_icmpeq": (0x9F, "i16"), "if_icmpne": (0xA0, "i16"), "if_icmplt": (0xA1, "i16"),
    "if_icmpge": (0xA2, "i16"), "if_acmpeq": (0xA5, "i16"),
    "goto": (0xA7, "i16"),
    "ireturn": (0xAC, ""), "lreturn": (0xAD, ""), "freturn": (0xAE, ""),
    "dreturn": (0xAF, ""), "areturn": (0xB0, ""), "return": (0xB1, ""),
    "getstatic": (0xB2, "cp16"), "putstatic": (0xB3, "cp16"),
    "getfield": (0xB4, "cp16"), "putfield": (0xB5, "cp16"),
    "invokevirtual": (0xB6, "cp16"), "invokespecial": (0xB7, "cp16"),
    "invokestatic": (0xB8, "cp16"), "invokeinterface": (0xB9, "iface"),
    "invokedynamic": (0xBA, "indy"),
    "new": (0xBB, "cp16"), "newarray": (0xBC, "u8"), "anewarray": (0xBD, "cp16"),
    "arraylength": (0xBE, ""), "athrow": (0xBF, ""),
    "checkcast": (0xC0, "cp16"), "instanceof": (0xC1, "cp16"),
    "monitorenter": (0xC2, ""), "monitorexit": (0xC3, ""),
    "multianewarray": (0xC5, "manew"),
    "ifnull": (0xC6, "i16"), "ifnonnull": (0xC7, "i16"),
    "goto_w": (0xC8, "i32"),
}


def assemble(instructions: list[tuple]) -> bytes:
    """Assemble (mnemonic, operand...) tuples into a code array.

    Branch offsets are taken literally from the instruction tuples; the
    fixtures use small forward offsets that need no fixup pass.
    """
    code = bytearray()
    for instruction in instructions:
        mnemonic, *operands = instruction
        if mnemonic == "tableswitch":
            default, low, high, offsets = operands
            code.append(0xAA)
            while len(code) % 4 != 0:
                code.append(0)
            code += struct.pack(">iii", default, low, high)
            for offset in offsets:
                code += struct.pack(">i", offset)
            continue
        if mnemonic == "lookupswitch":
            default, pairs = operands
            code.append(0xAB)
            while len(code) % 4 != 0:
                code.append(0)
            code += struct.pack(">ii", default, len(pairs))
            for match, offset in pairs:
                code += struct.pack(">ii", match, offset)
            continue
        if mnemonic == "wide":
            inner, *rest = operands
            code.append(0xC4)
            opcode, _ = _OPS[inner]
            code.append(opcode)
            if inner == "iinc":
                code += struct.pack(">Hh", rest[0], rest[1])
            else:
                code += struct.pack(">H", rest[0])
            continue

        opcode, layout = _OPS[mnemonic]
        code.append(opcode)
        if layout == "":
            pass
        elif layout == "i8":
            code += struct.pack(">b", operands[0])
        elif layout == "u8" or layout == "cp8":
            code += struct.pack(">B", operands[0])
        elif layout == "i16":
            code += struct.pack(">h", operands[0])
        elif layout == "cp16":
            code += struct.pack(">H", operands[0])
        elif layout == "i32":
            code += struct.pack(">i", operands[0])
        elif layout == "iinc":
            code += struct.pack(">Bb", operands[0], operands[1])
        elif layout == "iface":
            code += struct.pack(">HBB", operands[0], operands[1], 0)
        elif layout == "indy":
            code += struct.pack(">HBB", operands[0], 0, 0)
        elif layout == "manew":
            code += struct.pack(">HB", operands[0], operands[1])
        else:
            raise ValueError(f"unhandled layout {layout!r}")
    return bytes(code)


def method_info(
    pool: PoolBuilder,
    access: int,
    name: str,
    descriptor: str,
    code: bytes | None,
    max_stack: int = 8,
    max_locals: int = 8,
) -> bytes:
    out = struct.pack(">HHH", access, pool.utf8(name), pool.utf8(descriptor))
    if code is None:
        return out + struct.pack(">H", 0)
    body = struct.pack(">HHI", max_stack, max_locals, len(code)) + code
    body += struct.pack(">H", 0)  # exception table
    body += struct.pack(">H", 0)  # code attributes
    attr = struct.pack(">HI", pool.utf8("Code"), len(body)) + body
    return out + struct.pack(">H", 1) + attr


def field_info(pool: PoolBuilder, access: int, name: str, descriptor: str) -> bytes:
    return struct.pack(
        ">HHHH", access, pool.utf8(name), pool.utf8(descriptor), 0
    )


def build_class(
    name: str,
    access: int = ACC_PUBLIC | ACC_SUPER,
    super_name: str | None = "java/lang/Object",
    interfaces: tuple[str, ...] = (),
    fields: list[bytes] | None = None,
    methods: list[bytes] | None = None,
    pool: PoolBuilder | None = None,
) -> bytes:
    """Serialize one class. Build pool-dependent pieces against ``pool`` first."""
    pool = pool or PoolBuilder()
    this_index = pool.class_(name)
    super_index = pool.class_(super_name) if super_name else 0
    iface_indices = [pool.class_(i) for i in interfaces]

    out = struct.pack(">IHH", 0xCAFEBABE, 0, MAJOR_VERSION)
    out += pool.serialize()
    out += struct.pack(">HHH", access, this_index, super_index)
    out += struct.pack(">H", len(iface_indices))
    for index in iface_indices:
        out += struct.pack(">H", index)
    fields = fields or []
    out += struct.pack(">H", len(fields)) + b"".join(fields)
    methods = methods or []
    out += struct.pack(">H", len(methods)) + b"".join(methods)
    out += struct.pack(">H", 0)  # class attributes
    return out


def default_init(pool: PoolBuilder, super_name: str = "java/lang/Object") -> bytes:
    code = assemble(
        [
            ("aload_0",),
            ("invokespecial", pool.methodref(super_name, "<init>", "()V")),
            ("return",),
        ]
    )
    return method_info(pool, ACC_PUBLIC, "<init>", "()V", code)


# --- the committed fixture classes -------------------------------------------

def make_empty() -> bytes:
    pool = PoolBuilder()
    return build_class("Empty", methods=[default_init(pool)], pool=pool)


def make_greeter() -> bytes:
    pool = PoolBuilder()
    greet = method_info(
        pool,
        ACC_PUBLIC,
        "greet",
        "(Ljava/lang/String;)Ljava/lang/String;",
        assemble([("ldc", pool.string("Hello, ")), ("areturn",)]),
    )
    shout = method_info(
        pool,
        ACC_PUBLIC,
        "shout",
        "()V",
        assemble(
            [
                ("getstatic", pool.fieldref("java/lang/System", "out", "Ljava/io/PrintStream;")),
                ("ldc", pool.string("hi")),
                (
                    "invokevirtual",
                    pool.methodref("java/io/PrintStream", "println", "(Ljava/lang/String;)V"),
                ),
                ("return",),
            ]
        ),
    )
    return build_class("Greeter", methods=[default_init(pool), greet, shout], pool=pool)


def make_counter() -> bytes:
    pool = PoolBuilder()
    count_ref = pool.fieldref("Counter", "count", "I")
    tick = method_info(
        pool,
        ACC_PUBLIC,
        "tick",
        "()I",
        assemble(
            [
                ("aload_0",),
                ("dup",),
                ("getfield", count_ref),
                ("iconst_1",),
                ("iadd",),
                ("putfield", count_ref),
                ("aload_0",),
                ("getfield", count_ref),
                ("ireturn",),
            ]
        ),
    )
    # Loop with a backward branch; goto is dropped by extraction by design.
    loop = method_info(
        pool,
        ACC_PUBLIC | ACC_STATIC,
        "loop",
        "(I)I",
        assemble(
            [
                ("iconst_0",),       # 0
                ("istore_1",),       # 1
                ("iconst_0",),       # 2
                ("istore_2",),       # 3
                ("iload_2",),        # 4
                ("iload_0",),        # 5
                ("if_icmpge", 13),   # 6 -> 19
                ("iinc", 1, 2),      # 9
                ("iinc", 2, 1),      # 12
                ("goto", -11),       # 15 -> 4
                ("bipush", 100),     # 18... actually at 18
                ("sipush", 1000),
                ("ldc", pool.integer(1000000)),
                ("iadd",),
                ("iadd",),
                ("iload_1",),
                ("iadd",),
                ("ireturn",),
            ]
        ),
    )
    wide_demo = method_info(
        pool,
        ACC_PUBLIC | ACC_STATIC,
        "spread",
        "()I",
        assemble(
            [
                ("iconst_2",),
                ("wide", "istore", 300),
                ("wide", "iinc", 300, 7),
                ("wide", "iload", 300),
                ("ireturn",),
            ]
        ),
    )
    field = field_info(pool, ACC_PUBLIC, "count", "I")
    return build_class(
        "Counter",
        fields=[field],
        methods=[default_init(pool), tick, loop, wide_demo],
        pool=pool,
    )


def make_flow() -> bytes:
    pool = PoolBuilder()
    switches = method_info(
        pool,
        ACC_PUBLIC | ACC_STATIC,
        "route",
        "(I)I",
        assemble(
            [
                ("iload_0",),                                   # 0
                ("tableswitch", 28, 1, 3, [28, 28, 28]),        # 1 (pad to 4)
                ("iload_0",),                                   # 20... positions approximate
                ("lookupswitch", 8, [(5, 8), (9, 8)]),
                ("iconst_0",),
                ("ireturn",),
                ("iconst_1",),
                ("ireturn",),
            ]
        ),
    )
    numerics = method_info(
        pool,
        ACC_PUBLIC | ACC_STATIC,
        "blend",
        "(JD)D",
        assemble(
            [
                ("lconst_1",),
                ("ldc2_w", pool.long_(123456789123)),
                ("lcmp",),
                ("ifeq", 4),
                ("iconst_0",),
                ("fconst_2",),
                ("ldc", pool.float_(2.5)),
                ("fcmpl",),
                ("i2d",),
                ("ldc2_w", pool.double_(3.141592653589793)),
                ("dcmpg",),
                ("i2b",),
                ("i2l",),
                ("l2i",),
                ("i2d",),
                ("dreturn",),
            ]
        ),
    )
    arrays = method_info(
        pool,
        ACC_PUBLIC | ACC_STATIC,
        "buffers",
        "()I",
        assemble(
            [
                ("bipush", 10),
                ("newarray", 10),  # int[]
                ("astore_0",),
                ("aload_0",),
                ("iconst_0",),
                ("iconst_5",),
                ("iastore",),
                ("aload_0",),
                ("iconst_0",),
                ("iaload",),
                ("aload_0",),
                ("arraylength",),
                ("iadd",),
                ("iconst_2",),
                ("anewarray", pool.class_("java/lang/String")),
                ("arraylength",),
                ("iadd",),
                ("iconst_1",),
                ("iconst_1",),
                ("multianewarray", pool.class_("[[Ljava/lang/Object;"), 2),
                ("arraylength",),
                ("iadd",),
                ("ireturn",),
            ]
        ),
    )
    objects = method_info(
        pool,
        ACC_PUBLIC | ACC_STATIC,
        "guard",
        "(Ljava/lang/Object;)I",
        assemble(
            [
                ("aload_0",),
                ("ifnull", 20),
                ("aload_0",),
                ("monitorenter",),
                ("aload_0",),
                ("instanceof", pool.class_("java/lang/String")),
                ("ifeq", 10),
                ("aload_0",),
                ("checkcast", pool.class_("java/lang/String")),
                ("pop",),
                ("aload_0",),
                ("monitorexit",),
                ("iconst_1",),
                ("ireturn",),
                ("aconst_null",),
                ("athrow",),
            ]
        ),
    )
    return build_class(
        "Flow",
        methods=[default_init(pool), switches, numerics, arrays, objects],
        pool=pool,
    )


def make_shapes() -> bytes:
    pool = PoolBuilder()
    area = method_info(pool, ACC_PUBLIC | ACC_ABSTRACT, "area", "()D", None)
    describe = method_info(
        pool,
        ACC_PUBLIC,
        "describe",
        "()V",
        assemble(
            [
                ("getstatic", pool.fieldref("java/lang/System", "out", "Ljava/io/PrintStream;")),
                ("aload_0",),
                ("invokevirtual", pool.methodref("Shapes", "area", "()D")),
                ("invokevirtual", pool.methodref("java/io/PrintStream", "println", "(D)V")),
                ("return",),
            ]
        ),
    )
    return build_class(
        "Shapes",
        access=ACC_PUBLIC | ACC_SUPER | ACC_ABSTRACT,
        methods=[default_init(pool), area, describe],
        pool=pool,
    )


def make_circle() -> bytes:
    pool = PoolBuilder()
    area = method_info(
        pool,
        ACC_PUBLIC,
        "area",
        "()D",
        assemble(
            [
                ("aload_0",),
                ("getfield", pool.fieldref("Circle", "radius", "D")),
                ("aload_0",),
                ("getfield", pool.fieldref("Circle", "radius", "D")),
                ("ldc2_w", pool.double_(3.141592653589793)),
                ("dcmpg",),
                ("i2d",),
                ("dreturn",),
            ]
        ),
    )
    field = field_info(pool, ACC_PUBLIC, "radius", "D")
    return build_class(
        "Circle",
        super_name="Shapes",
        fields=[field],
        methods=[default_init(pool, "Shapes"), area],
        pool=pool,
    )


def make_ishape() -> bytes:
    pool = PoolBuilder()
    scale = method_info(
        pool, ACC_PUBLIC | ACC_ABSTRACT, "scale", "(D)V", None
    )
    return build_class(
        "IShape",
        access=ACC_PUBLIC | ACC_INTERFACE | ACC_ABSTRACT,
        methods=[scale],
        pool=pool,
    )


def make_caller() -> bytes:
    pool = PoolBuilder()
    helper = method_info(
        pool,
        ACC_PUBLIC | ACC_STATIC,
        "helper",
        "()I",
        assemble([("iconst_3",), ("iconst_4",), ("imul",), ("ireturn",)]),
    )
    run = method_info(
        pool,
        ACC_PUBLIC,
        "run",
        "(LIShape;)V",
        assemble(
            [
                ("invokestatic", pool.methodref("Caller", "helper", "()I")),
                ("pop",),
                ("aload_1",),
                ("dconst_1",),
                ("invokeinterface", pool.interfacemethodref("IShape", "scale", "(D)V"), 3),
                ("invokedynamic", pool.invokedynamic(0, "run", "()Ljava/lang/Runnable;")),
                ("pop",),
                ("return",),
            ]
        ),
    )
    return build_class("Caller", methods=[default_init(pool), helper, run], pool=pool)


FIXTURE_BUILDERS = {
    "Empty.class": make_empty,
    "Greeter.class": make_greeter,
    "Counter.class": make_counter,
    "Flow.class": make_flow,
    "Shapes.class": make_shapes,
    "Circle.class": make_circle,
    "IShape.class": make_ishape,
    "Caller.class": make_caller,
}


def write_all(target: Path) -> None:
    target.mkdir(parents=True, exist_ok=True)
    for filename, builder in FIXTURE_BUILDERS.items():
        (target / filename).write_bytes(builder())


if __name__ == "__main__":
    write_all(Path(__file__).parent / "data" / "classes")
    print(f"wrote {len(FIXTURE_BUILDERS)} class files")
