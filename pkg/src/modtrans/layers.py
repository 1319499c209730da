"""Turn decoded initializers into per-layer parameter records."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import ExtractError
from .onnx_core import OnnxGraph, byte_width, element_count

# Framework export prefixes such as "vgg0" or "resnetv24".
_EXPORT_PREFIX = re.compile(r"[a-z]+[0-9]+")


@dataclass(frozen=True)
class LayerRecord:
    name: str
    variables: int
    dtype_name: str
    model_size_bytes: int

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "variables": self.variables,
            "dtype": self.dtype_name,
            "model_size": self.model_size_bytes,
        }


@dataclass(frozen=True)
class FilterPolicy:
    min_rank: int = 2
    name_excludes: tuple[str, ...] = ()
    include_all: bool = False

    def __post_init__(self):
        if self.min_rank < 0:
            raise ValueError("min_rank must be >= 0")

    def keeps(self, name: str, rank: int) -> bool:
        if self.include_all:
            return True
        if rank < self.min_rank:
            return False
        return not any(s in name for s in self.name_excludes)


def normalize_name(raw: str, model_label: str | None = None) -> str:
    """Lowercase, turn underscores into hyphens and swap the export prefix for ``model_label``.

    >>> normalize_name("vgg0_conv0_weight", "vgg16")
    'vgg16-conv0-weight'
    """
    name = raw.lower().replace("_", "-")
    if not model_label:
        return name
    label = model_label.lower().replace("_", "-")
    if name == label or name.startswith(label + "-"):
        return name
    head, sep, rest = name.partition("-")
    if sep and _EXPORT_PREFIX.fullmatch(head):
        return f"{label}-{rest}"
    return name


def extract_layers(
    graph: OnnxGraph,
    policy: FilterPolicy = FilterPolicy(),
    model_label: str | None = None,
    rename: Mapping[str, str] | None = None,
) -> list[LayerRecord]:
    """One record per initializer kept by ``policy``, in graph order.

    ``rename`` maps raw initializer names to final names and takes
    precedence over rule-based normalization.
    """
    records = []
    for t in graph.initializers:
        if not policy.keeps(t.name, t.rank):
            continue
        width = byte_width(t.dtype)
        try:
            count = element_count(t.dims)
        except OverflowError as exc:
            raise ExtractError(f"{t.name}: {exc}") from exc
        if count == 0:
            raise ExtractError(f"{t.name}: zero-element tensor {list(t.dims)} cannot form a layer")
        if rename and t.name in rename:
            name = rename[t.name]
        else:
            name = normalize_name(t.name, model_label)
        records.append(LayerRecord(name, count, t.dtype.name, count * width))
    return records


def read_rename_map(path: str | Path) -> dict[str, str]:
    """Parse ``raw<TAB>normalized`` lines; '#' starts a comment."""
    mapping = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1].strip():
            raise ExtractError(f"{path}:{lineno}: expected 'raw_name<TAB>normalized_name'")
        mapping[parts[0]] = parts[1].strip()
    return mapping
