"""Minimal Protocol Buffers decoder for ONNX model files.

Only the metadata needed for layer sizing is materialized: initializer
names, dims and data types, node op types, and graph input/output names.
Tensor payloads are skipped by length and never copied.
"""

from __future__ import annotations

import enum
import mmap
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, NamedTuple

from .errors import DecodeError, UnsupportedDTypeError

WIRE_VARINT = 0
WIRE_FIXED64 = 1
WIRE_LEN = 2
WIRE_START_GROUP = 3
WIRE_END_GROUP = 4
WIRE_FIXED32 = 5

MAX_VARINT_BYTES = 10
MAX_DIM = 2**32
UINT64_MAX = 2**64 - 1

# ModelProto
MODEL_IR_VERSION = 1
MODEL_GRAPH = 7
# GraphProto
GRAPH_NODE = 1
GRAPH_NAME = 2
GRAPH_INITIALIZER = 5
GRAPH_INPUT = 11
GRAPH_OUTPUT = 12
# TensorProto
TENSOR_DIMS = 1
TENSOR_DATA_TYPE = 2
TENSOR_NAME = 8
# NodeProto
NODE_INPUT = 1
NODE_OUTPUT = 2
NODE_NAME = 3
NODE_OP_TYPE = 4
# ValueInfoProto
VALUE_INFO_NAME = 1


class DataTypeCode(enum.IntEnum):
    """TensorProto.DataType codes."""

    UNDEFINED = 0
    FLOAT = 1
    UINT8 = 2
    INT8 = 3
    UINT16 = 4
    INT16 = 5
    INT32 = 6
    INT64 = 7
    STRING = 8
    BOOL = 9
    FLOAT16 = 10
    DOUBLE = 11
    UINT32 = 12
    UINT64 = 13
    COMPLEX64 = 14
    COMPLEX128 = 15
    BFLOAT16 = 16

    @classmethod
    def _missing_(cls, value):
        # Codes from newer opsets (float8 variants etc.) stay representable.
        if isinstance(value, int) and value >= 0:
            member = int.__new__(cls, value)
            member._name_ = f"UNKNOWN_{value}"
            member._value_ = value
            return member
        return None

    @property
    def byte_width(self) -> int | None:
        return _BYTE_WIDTHS.get(int(self))


_BYTE_WIDTHS = {
    DataTypeCode.FLOAT: 4,
    DataTypeCode.UINT8: 1,
    DataTypeCode.INT8: 1,
    DataTypeCode.UINT16: 2,
    DataTypeCode.INT16: 2,
    DataTypeCode.INT32: 4,
    DataTypeCode.INT64: 8,
    DataTypeCode.BOOL: 1,
    DataTypeCode.FLOAT16: 2,
    DataTypeCode.DOUBLE: 8,
    DataTypeCode.UINT32: 4,
    DataTypeCode.UINT64: 8,
    DataTypeCode.COMPLEX64: 8,
    DataTypeCode.COMPLEX128: 16,
    DataTypeCode.BFLOAT16: 2,
}


def byte_width(dtype: DataTypeCode | int) -> int:
    """Bytes per element, or UnsupportedDTypeError for variable/unknown widths."""
    code = DataTypeCode(dtype)
    width = code.byte_width
    if width is None:
        raise UnsupportedDTypeError(f"data type {code.name} (code {int(code)}) has no fixed byte width")
    return width


def element_count(dims) -> int:
    """Product of ``dims``; 1 for a scalar. Raises OverflowError past 64 bits."""
    n = 1
    for d in dims:
        if d < 0:
            raise ValueError(f"negative dimension {d}")
        n *= d
        if n > UINT64_MAX:
            raise OverflowError(f"element count of {list(dims)} exceeds 64 bits")
    return n


@dataclass(frozen=True)
class TensorSpec:
    name: str
    dims: tuple[int, ...]
    dtype: DataTypeCode

    @property
    def rank(self) -> int:
        return len(self.dims)


@dataclass(frozen=True)
class OnnxGraph:
    name: str = ""
    initializers: tuple[TensorSpec, ...] = ()
    node_op_types: tuple[tuple[str, str], ...] = ()
    input_names: tuple[str, ...] = ()
    output_names: tuple[str, ...] = ()


@dataclass(frozen=True)
class OnnxModel:
    ir_version: int
    graph: OnnxGraph


class Field(NamedTuple):
    number: int
    wire_type: int
    # varint/fixed value, or (start, end) span for length-delimited fields
    value: int | tuple[int, int]


def decode_varint(buf, offset: int) -> tuple[int, int]:
    """Decode one base-128 varint at ``offset``; return ``(value, next_offset)``."""
    end = len(buf)
    if offset < 0 or offset >= end:
        raise DecodeError(f"varint offset {offset} outside buffer of length {end}")
    result = 0
    shift = 0
    pos = offset
    while True:
        if pos >= end:
            raise DecodeError(f"truncated varint at offset {offset}")
        if pos - offset >= MAX_VARINT_BYTES:
            raise DecodeError(f"varint at offset {offset} longer than {MAX_VARINT_BYTES} bytes")
        b = buf[pos]
        pos += 1
        result |= (b & 0x7F) << shift
        if not b & 0x80:
            break
        shift += 7
    if result > UINT64_MAX:
        raise DecodeError(f"varint at offset {offset} overflows 64 bits")
    return result, pos


def _to_int64(value: int) -> int:
    return value - (1 << 64) if value & (1 << 63) else value


def iter_fields(buf, start: int = 0, end: int | None = None) -> Iterator[Field]:
    """Walk the fields of one message occupying ``buf[start:end]``."""
    if end is None:
        end = len(buf)
    pos = start
    while pos < end:
        key, pos = decode_varint(buf, pos)
        number, wire_type = key >> 3, key & 0x7
        if number == 0:
            raise DecodeError(f"invalid field number 0 at offset {pos}")
        if wire_type == WIRE_VARINT:
            value, pos = decode_varint(buf, pos)
            yield Field(number, wire_type, value)
            continue
        if wire_type == WIRE_LEN:
            length, pos = decode_varint(buf, pos)
            stop = pos + length
            if stop > end:
                raise DecodeError(
                    f"length-delimited field {number} at offset {pos} runs past message end "
                    f"({stop} > {end})"
                )
            yield Field(number, wire_type, (pos, stop))
            pos = stop
            continue
        if wire_type == WIRE_FIXED64:
            width = 8
        elif wire_type == WIRE_FIXED32:
            width = 4
        elif wire_type in (WIRE_START_GROUP, WIRE_END_GROUP):
            raise DecodeError(f"group wire type {wire_type} (field {number}) is not supported")
        else:
            raise DecodeError(f"bad wire type {wire_type} for field {number} at offset {pos}")
        if pos + width > end:
            raise DecodeError(f"truncated fixed{width * 8} field {number} at offset {pos}")
        yield Field(number, wire_type, int.from_bytes(buf[pos:pos + width], "little"))
        pos += width


def _expect(f: Field, wire_type: int, what: str) -> None:
    if f.wire_type != wire_type:
        raise DecodeError(f"{what}: expected wire type {wire_type}, got {f.wire_type}")


def _string(buf, f: Field, what: str) -> str:
    _expect(f, WIRE_LEN, what)
    a, b = f.value
    try:
        return bytes(buf[a:b]).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(f"{what}: invalid UTF-8") from exc


def _dim(raw: int) -> int:
    d = _to_int64(raw)
    if d < 0:
        raise DecodeError(f"negative tensor dimension {d}")
    if d > MAX_DIM:
        raise DecodeError(f"tensor dimension {d} exceeds 2**32; refusing implausible shape")
    return d


def _parse_tensor(buf, start: int, end: int) -> TensorSpec:
    name = ""
    dims: list[int] = []
    dtype = 0
    for f in iter_fields(buf, start, end):
        if f.number == TENSOR_DIMS:
            if f.wire_type == WIRE_VARINT:
                dims.append(_dim(f.value))
            elif f.wire_type == WIRE_LEN:
                pos, stop = f.value
                while pos < stop:
                    raw, pos = decode_varint(buf, pos)
                    dims.append(_dim(raw))
                if pos != stop:
                    raise DecodeError("packed dims overrun their length")
            else:
                raise DecodeError(f"TensorProto.dims: unexpected wire type {f.wire_type}")
        elif f.number == TENSOR_DATA_TYPE:
            _expect(f, WIRE_VARINT, "TensorProto.data_type")
            dtype = _to_int64(f.value)
            if dtype < 0:
                raise DecodeError(f"negative data type code {dtype}")
        elif f.number == TENSOR_NAME:
            name = _string(buf, f, "TensorProto.name")
    return TensorSpec(name=name, dims=tuple(dims), dtype=DataTypeCode(dtype))


def _parse_node(buf, start: int, end: int) -> tuple[str, str]:
    name = ""
    op_type = ""
    for f in iter_fields(buf, start, end):
        if f.number == NODE_NAME:
            name = _string(buf, f, "NodeProto.name")
        elif f.number == NODE_OP_TYPE:
            op_type = _string(buf, f, "NodeProto.op_type")
    return name, op_type


def _parse_value_info_name(buf, start: int, end: int) -> str:
    name = ""
    for f in iter_fields(buf, start, end):
        if f.number == VALUE_INFO_NAME:
            name = _string(buf, f, "ValueInfoProto.name")
    return name


class _GraphBuilder:
    def __init__(self):
        self.name = ""
        self.initializers: list[TensorSpec] = []
        self.nodes: list[tuple[str, str]] = []
        self.inputs: list[str] = []
        self.outputs: list[str] = []

    def merge(self, buf, start: int, end: int) -> None:
        for f in iter_fields(buf, start, end):
            if f.number == GRAPH_NAME:
                self.name = _string(buf, f, "GraphProto.name")
            elif f.number == GRAPH_INITIALIZER:
                _expect(f, WIRE_LEN, "GraphProto.initializer")
                self.initializers.append(_parse_tensor(buf, *f.value))
            elif f.number == GRAPH_NODE:
                _expect(f, WIRE_LEN, "GraphProto.node")
                self.nodes.append(_parse_node(buf, *f.value))
            elif f.number == GRAPH_INPUT:
                _expect(f, WIRE_LEN, "GraphProto.input")
                self.inputs.append(_parse_value_info_name(buf, *f.value))
            elif f.number == GRAPH_OUTPUT:
                _expect(f, WIRE_LEN, "GraphProto.output")
                self.outputs.append(_parse_value_info_name(buf, *f.value))

    def build(self) -> OnnxGraph:
        seen = set()
        for t in self.initializers:
            if not t.name:
                raise DecodeError("initializer without a name")
            if t.name in seen:
                raise DecodeError(f"duplicate initializer name {t.name!r}")
            seen.add(t.name)
        return OnnxGraph(
            name=self.name,
            initializers=tuple(self.initializers),
            node_op_types=tuple(self.nodes),
            input_names=tuple(self.inputs),
            output_names=tuple(self.outputs),
        )


def parse_model(buffer) -> OnnxModel:
    """Decode a serialized ModelProto from any bytes-like object (bytes, mmap, ...)."""
    with memoryview(buffer) as buf:
        if buf.ndim != 1 or buf.itemsize != 1:
            raise TypeError("parse_model expects a flat byte buffer")
        if len(buf) == 0:
            raise DecodeError("empty buffer")
        ir_version = 0
        graph: _GraphBuilder | None = None
        for f in iter_fields(buf):
            if f.number == MODEL_IR_VERSION:
                _expect(f, WIRE_VARINT, "ModelProto.ir_version")
                ir_version = _to_int64(f.value)
            elif f.number == MODEL_GRAPH:
                _expect(f, WIRE_LEN, "ModelProto.graph")
                # Repeated occurrences of an embedded message merge.
                if graph is None:
                    graph = _GraphBuilder()
                graph.merge(buf, *f.value)
        if graph is None:
            raise DecodeError("model has no graph")
        return OnnxModel(ir_version=ir_version, graph=graph.build())


def load_model(path: str | Path) -> OnnxModel:
    """Memory-map ``path`` and decode it; payload pages are never touched."""
    with open(path, "rb") as fh:
        if fh.seek(0, 2) == 0:
            raise DecodeError(f"{path}: empty file")
        with mmap.mmap(fh.fileno(), 0, access=mmap.ACCESS_READ) as mm:
            return parse_model(mm)
