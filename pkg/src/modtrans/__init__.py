"""Translate ONNX models into layer-wise workload files for distributed-training simulators."""

__version__ = "0.1.0"

from .errors import (
    DecodeError,
    DigestMismatchError,
    ExtractError,
    FetchError,
    ModTransError,
    UnknownModelError,
    UnsupportedDTypeError,
    WorkloadError,
    WorkloadParseError,
    ZooError,
)
from .layers import FilterPolicy, LayerRecord, extract_layers, normalize_name
from .onnx_core import (
    DataTypeCode,
    OnnxGraph,
    OnnxModel,
    TensorSpec,
    byte_width,
    decode_varint,
    element_count,
    load_model,
    parse_model,
)
from .validate import DiffMode, DiffReport, diff_sizes
from .workload import (
    CommDescriptor,
    CommType,
    ComputeTimeTable,
    ComputeTimes,
    ParallelismStrategy,
    WorkloadFile,
    WorkloadLayerLine,
    assign_communication,
    attach_compute_times,
    build_workload,
    emit_workload,
    parse_workload,
)
