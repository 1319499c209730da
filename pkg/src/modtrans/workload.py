"""Simulator workload description files: communication assignment, emit, parse.

File layout::

    DATA
    2
    conv0 -1 5 NONE 0 5 NONE 0 5 ALLREDUCE 6912 1
    conv1 -1 5 NONE 0 5 NONE 0 5 ALLREDUCE 147456 1

Line one is the parallelism strategy, line two the layer count, then one
line per layer with twelve space-separated fields: name, a reserved ``-1``
column, and forward / input-gradient / weight-gradient triples of
(compute time, collective, bytes), followed by the local update time.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import WorkloadError, WorkloadParseError
from .layers import LayerRecord

RESERVED_COLUMN = "-1"
FIELDS_PER_LINE = 12


class ParallelismStrategy(enum.Enum):
    DATA = "DATA"
    MODEL = "MODEL"
    HYBRID_DATA_MODEL = "HYBRID_DATA_MODEL"


class CommType(enum.Enum):
    NONE = "NONE"
    ALLREDUCE = "ALLREDUCE"
    ALLGATHER = "ALLGATHER"
    ALLTOALL = "ALLTOALL"
    REDUCESCATTER = "REDUCESCATTER"


@dataclass(frozen=True)
class CommDescriptor:
    comm_type: CommType = CommType.NONE
    comm_size_bytes: int = 0

    def __post_init__(self):
        if self.comm_size_bytes < 0:
            raise WorkloadError(f"negative communication size {self.comm_size_bytes}")
        if (self.comm_type is CommType.NONE) != (self.comm_size_bytes == 0):
            raise WorkloadError(
                f"{self.comm_type.value} with size {self.comm_size_bytes}: "
                "NONE must carry size 0 and collectives a positive size"
            )


NO_COMM = CommDescriptor()


class CommTriple(NamedTuple):
    fwd: CommDescriptor
    ig: CommDescriptor
    wg: CommDescriptor


class ComputeTimes(NamedTuple):
    fwd: int
    ig: int
    wg: int
    update: int


# Placeholder used when no compute-time table is supplied.
DEFAULT_COMPUTE_TIMES = ComputeTimes(1, 1, 1, 1)


@dataclass(frozen=True)
class WorkloadLayerLine:
    name: str
    fwd_compute: int
    fwd_comm: CommDescriptor
    ig_compute: int
    ig_comm: CommDescriptor
    wg_compute: int
    wg_comm: CommDescriptor
    wg_update_time: int

    def __post_init__(self):
        if not self.name or any(c.isspace() for c in self.name):
            raise WorkloadError(f"layer name {self.name!r} must be non-empty without whitespace")
        for attr in ("fwd_compute", "ig_compute", "wg_compute", "wg_update_time"):
            if getattr(self, attr) < 0:
                raise WorkloadError(f"{self.name}: {attr} must be >= 0")


@dataclass(frozen=True)
class WorkloadFile:
    strategy: ParallelismStrategy
    layers: tuple[WorkloadLayerLine, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise WorkloadError("a workload needs at least one layer")

    def wg_sizes(self) -> list[int]:
        return [line.wg_comm.comm_size_bytes for line in self.layers]


@dataclass
class ComputeTimeTable:
    """Per-layer compute times from an external simulator; never derived here."""

    entries: dict[str, ComputeTimes] = field(default_factory=dict)
    default_entry: ComputeTimes = DEFAULT_COMPUTE_TIMES

    def __post_init__(self):
        for name, times in [*self.entries.items(), ("<default>", self.default_entry)]:
            if any(t < 0 for t in times):
                raise WorkloadError(f"compute times for {name} must be >= 0")


def assign_communication(
    layers: Sequence[LayerRecord],
    strategy: ParallelismStrategy,
    activation_sizes: Mapping[str, int] | None = None,
    hybrid_tags: Mapping[str, ParallelismStrategy] | None = None,
) -> list[CommTriple]:
    """Communication descriptors (fwd, ig, wg) for each layer under ``strategy``.

    Data parallelism allreduces each layer's weight gradients. Model
    parallelism allgathers activations in both forward and input-gradient
    passes; activation sizes must come from ``activation_sizes`` since no
    shape inference is done. Hybrid picks one of the two per layer from
    ``hybrid_tags``.
    """
    if not layers:
        raise WorkloadError("no layers to assign communication to")
    if strategy is not ParallelismStrategy.DATA and activation_sizes is None:
        raise WorkloadError(
            f"{strategy.value} parallelism needs an activation-size table "
            "(--activation-table); sizes are never guessed"
        )
    if strategy is ParallelismStrategy.HYBRID_DATA_MODEL and hybrid_tags is None:
        raise WorkloadError("HYBRID_DATA_MODEL parallelism needs a per-layer tag map (--hybrid-tags)")

    triples = []
    for layer in layers:
        rule = strategy
        if strategy is ParallelismStrategy.HYBRID_DATA_MODEL:
            rule = hybrid_tags.get(layer.name)
            if rule not in (ParallelismStrategy.DATA, ParallelismStrategy.MODEL):
                raise WorkloadError(f"hybrid tag map has no DATA/MODEL entry for layer {layer.name!r}")
        if rule is ParallelismStrategy.DATA:
            triples.append(CommTriple(NO_COMM, NO_COMM,
                                      CommDescriptor(CommType.ALLREDUCE, layer.model_size_bytes)))
            continue
        size = activation_sizes.get(layer.name)
        if size is None:
            raise WorkloadError(f"activation-size table has no entry for layer {layer.name!r}")
        if size <= 0:
            raise WorkloadError(f"activation size for {layer.name!r} must be positive, got {size}")
        gather = CommDescriptor(CommType.ALLGATHER, size)
        triples.append(CommTriple(gather, gather, NO_COMM))
    return triples


def attach_compute_times(
    layers: Sequence[LayerRecord],
    comms: Sequence[CommTriple],
    table: ComputeTimeTable | None = None,
) -> list[WorkloadLayerLine]:
    if len(layers) != len(comms):
        raise WorkloadError(f"{len(layers)} layers but {len(comms)} communication triples")
    table = table or ComputeTimeTable()
    unused = set(table.entries) - {layer.name for layer in layers}
    if unused:
        warnings.warn(
            f"compute-time entries match no layer and are ignored: {', '.join(sorted(unused))}",
            stacklevel=2,
        )
    lines = []
    for layer, comm in zip(layers, comms):
        t = table.entries.get(layer.name, table.default_entry)
        lines.append(WorkloadLayerLine(layer.name, t.fwd, comm.fwd, t.ig, comm.ig, t.wg, comm.wg, t.update))
    return lines


def build_workload(
    layers: Sequence[LayerRecord],
    strategy: ParallelismStrategy,
    table: ComputeTimeTable | None = None,
    activation_sizes: Mapping[str, int] | None = None,
    hybrid_tags: Mapping[str, ParallelismStrategy] | None = None,
) -> WorkloadFile:
    comms = assign_communication(layers, strategy, activation_sizes, hybrid_tags)
    return WorkloadFile(strategy, tuple(attach_compute_times(layers, comms, table)))


def _format_line(line: WorkloadLayerLine) -> str:
    parts = [line.name, RESERVED_COLUMN]
    for compute, comm in ((line.fwd_compute, line.fwd_comm),
                          (line.ig_compute, line.ig_comm),
                          (line.wg_compute, line.wg_comm)):
        parts += [str(compute), comm.comm_type.value, str(comm.comm_size_bytes)]
    parts.append(str(line.wg_update_time))
    return " ".join(parts)


def emit_workload(w: WorkloadFile) -> str:
    out = [w.strategy.value, str(len(w.layers))]
    out += [_format_line(line) for line in w.layers]
    return "\n".join(out) + "\n"


def _uint(token: str, what: str, lineno: int) -> int:
    if not token.isascii() or not token.isdigit():
        raise WorkloadParseError(f"line {lineno}: {what} must be a non-negative integer, got {token!r}")
    return int(token)


def _comm(type_token: str, size_token: str, lineno: int) -> CommDescriptor:
    try:
        comm_type = CommType(type_token)
    except ValueError:
        raise WorkloadParseError(f"line {lineno}: unknown communication type {type_token!r}") from None
    size = _uint(size_token, "communication size", lineno)
    try:
        return CommDescriptor(comm_type, size)
    except WorkloadError as exc:
        raise WorkloadParseError(f"line {lineno}: {exc}") from None


def parse_workload(text: str) -> WorkloadFile:
    """Inverse of :func:`emit_workload`; tolerant of extra blanks and CRLF."""
    rows = [(n, line.split()) for n, line in enumerate(text.splitlines(), 1)]
    rows = [(n, tokens) for n, tokens in rows if tokens]
    if len(rows) < 2:
        raise WorkloadParseError("workload needs a strategy line and a layer-count line")
    (n, head), (m, count_tokens) = rows[0], rows[1]
    if len(head) != 1:
        raise WorkloadParseError(f"line {n}: expected a single strategy token")
    try:
        strategy = ParallelismStrategy(head[0])
    except ValueError:
        raise WorkloadParseError(f"line {n}: unknown parallelism strategy {head[0]!r}") from None
    if len(count_tokens) != 1:
        raise WorkloadParseError(f"line {m}: expected a single layer count")
    count = _uint(count_tokens[0], "layer count", m)

    lines = []
    for n, tok in rows[2:]:
        if len(tok) != FIELDS_PER_LINE:
            raise WorkloadParseError(f"line {n}: expected {FIELDS_PER_LINE} fields, got {len(tok)}")
        if tok[1] != RESERVED_COLUMN:
            raise WorkloadParseError(f"line {n}: reserved column must be {RESERVED_COLUMN}, got {tok[1]!r}")
        lines.append(WorkloadLayerLine(
            name=tok[0],
            fwd_compute=_uint(tok[2], "forward compute time", n),
            fwd_comm=_comm(tok[3], tok[4], n),
            ig_compute=_uint(tok[5], "input-gradient compute time", n),
            ig_comm=_comm(tok[6], tok[7], n),
            wg_compute=_uint(tok[8], "weight-gradient compute time", n),
            wg_comm=_comm(tok[9], tok[10], n),
            wg_update_time=_uint(tok[11], "update time", n),
        ))
    if count != len(lines):
        raise WorkloadParseError(f"layer count says {count} but {len(lines)} layer lines follow")
    if not lines:
        raise WorkloadParseError("workload has no layers")
    return WorkloadFile(strategy, tuple(lines))


def _table_rows(path: str | Path, width: int, what: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != width:
            raise WorkloadError(f"{path}:{lineno}: {what} lines need {width} fields, got {len(tokens)}")
        yield lineno, tokens


def _table_uint(token: str, path, lineno: int) -> int:
    if not token.isascii() or not token.isdigit():
        raise WorkloadError(f"{path}:{lineno}: expected a non-negative integer, got {token!r}")
    return int(token)


def read_compute_table(path: str | Path, default: ComputeTimes = DEFAULT_COMPUTE_TIMES) -> ComputeTimeTable:
    """Lines of ``name fwd ig wg update``."""
    entries = {}
    for lineno, tok in _table_rows(path, 5, "compute-time"):
        entries[tok[0]] = ComputeTimes(*(_table_uint(t, path, lineno) for t in tok[1:]))
    return ComputeTimeTable(entries, default)


def read_activation_table(path: str | Path) -> dict[str, int]:
    """Lines of ``name bytes``."""
    return {tok[0]: _table_uint(tok[1], path, lineno)
            for lineno, tok in _table_rows(path, 2, "activation-size")}


def read_hybrid_tags(path: str | Path) -> dict[str, ParallelismStrategy]:
    """Lines of ``name DATA|MODEL``."""
    tags = {}
    for lineno, tok in _table_rows(path, 2, "hybrid tag"):
        if tok[1] not in ("DATA", "MODEL"):
            raise WorkloadError(f"{path}:{lineno}: tag must be DATA or MODEL, got {tok[1]!r}")
        tags[tok[0]] = ParallelismStrategy(tok[1])
    return tags
