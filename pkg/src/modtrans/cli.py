"""Command-line front end: translate, inspect, diff, fetch, list."""

from __future__ import annotations

import argparse
import json
import logging
import mmap
import statistics
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import DecodeError, ModTransError
from .layers import FilterPolicy, LayerRecord, extract_layers, read_rename_map
from .onnx_core import parse_model
from .validate import DiffMode, diff_sizes
from .workload import (
    ComputeTimeTable,
    ParallelismStrategy,
    build_workload,
    emit_workload,
    parse_workload,
    read_activation_table,
    read_compute_table,
    read_hybrid_tags,
)
from .zoo import ModelCache, ensure_cached, list_models, load_manifest

log = logging.getLogger("modtrans")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_IO = 5

STRATEGIES = {
    "data": ParallelismStrategy.DATA,
    "model": ParallelismStrategy.MODEL,
    "hybrid": ParallelismStrategy.HYBRID_DATA_MODEL,
}


@dataclass
class ModelSource:
    path: Path
    label: str | None


def _zoo(args):
    return load_manifest(args.manifest), ModelCache(args.cache_dir)


def resolve_model(args, name: str | None = None, path: str | None = None) -> ModelSource:
    if path is not None:
        return ModelSource(Path(path), args.label)
    manifest, cache = _zoo(args)
    result = ensure_cached(name, manifest, cache, offline=args.offline)
    return ModelSource(result.path, args.label or name)


@contextmanager
def mapped(path: Path):
    with open(path, "rb") as fh:
        if fh.seek(0, 2) == 0:
            raise DecodeError(f"{path}: empty file")
        with mmap.mmap(fh.fileno(), 0, access=mmap.ACCESS_READ) as mm:
            yield mm


def _policy(args) -> FilterPolicy:
    return FilterPolicy(min_rank=args.min_rank, name_excludes=tuple(args.exclude), include_all=args.include_all)


def _rename(args):
    return read_rename_map(args.rename_map) if args.rename_map else None


def layers_from_buffer(buf, args, label: str | None) -> list[LayerRecord]:
    model = parse_model(buf)
    return extract_layers(model.graph, _policy(args), label, _rename(args))


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8", newline="\n")


def cmd_translate(args) -> int:
    src = resolve_model(args, args.model, args.input)
    strategy = STRATEGIES[args.strategy]
    table = read_compute_table(args.compute_table) if args.compute_table else ComputeTimeTable()
    activations = read_activation_table(args.activation_table) if args.activation_table else None
    tags = read_hybrid_tags(args.hybrid_tags) if args.hybrid_tags else None
    rename = _rename(args)
    policy = _policy(args)

    durations = []
    with mapped(src.path) as buf:
        for _ in range(max(1, args.repeat)):
            start = time.perf_counter()
            model = parse_model(buf)
            layers = extract_layers(model.graph, policy, src.label, rename)
            text = emit_workload(build_workload(layers, strategy, table, activations, tags))
            durations.append(time.perf_counter() - start)
    _emit(text, args.output)
    if args.time:
        ms = statistics.median(durations) * 1000.0
        print(f"translation time: {ms:.3f} ms (median of {len(durations)} run"
              f"{'s' if len(durations) != 1 else ''}, {len(layers)} layers)", file=sys.stderr)
    return EXIT_OK


def _layer_table(layers: list[LayerRecord]) -> str:
    width = max([len("Layer Name"), *(len(r.name) for r in layers)])
    out = [f"{'Layer Name':<{width}}  {'Variables':>12}  {'Data Type':<9}  {'Model Size':>12}"]
    for r in layers:
        out.append(f"{r.name:<{width}}  {r.variables:>12}  {r.dtype_name:<9}  {r.model_size_bytes:>12}")
    return "\n".join(out) + "\n"


def cmd_inspect(args) -> int:
    src = resolve_model(args, args.model, args.input)
    with mapped(src.path) as buf:
        layers = layers_from_buffer(buf, args, src.label)
    if args.format == "json":
        sys.stdout.write(json.dumps([r.as_dict() for r in layers], indent=2) + "\n")
    else:
        sys.stdout.write(_layer_table(layers))
    return EXIT_OK


def _sizes_for(source: str, args) -> tuple[list[int], list[str]]:
    path = Path(source)
    if path.is_file():
        if path.suffix.lower() == ".onnx":
            with mapped(path) as buf:
                layers = layers_from_buffer(buf, args, args.label)
            return [r.model_size_bytes for r in layers], [r.name for r in layers]
        w = parse_workload(path.read_text(encoding="utf-8"))
        return w.wg_sizes(), [line.name for line in w.layers]
    src = resolve_model(args, name=source)
    with mapped(src.path) as buf:
        layers = layers_from_buffer(buf, args, src.label)
    return [r.model_size_bytes for r in layers], [r.name for r in layers]


def cmd_diff(args) -> int:
    left, left_names = _sizes_for(args.left, args)
    right, right_names = _sizes_for(args.right, args)
    report = diff_sizes(left, right, DiffMode(args.mode), left_names, right_names)
    print(report.to_json() if args.format == "json" else report.render())
    return EXIT_OK if report.is_match else EXIT_MISMATCH


def cmd_fetch(args) -> int:
    manifest, cache = _zoo(args)
    for name in args.names:
        result = ensure_cached(name, manifest, cache, offline=args.offline)
        status = "cache hit" if result.from_cache else "downloaded"
        print(f"{name}: {status} {result.path} sha256={result.sha256}")
    return EXIT_OK


def cmd_list(args) -> int:
    manifest = load_manifest(args.manifest)
    names = list_models(manifest)
    if args.format == "json":
        print(json.dumps({n: {"url": manifest[n].url, "sha256": manifest[n].sha256} for n in names}, indent=2))
    else:
        for n in names:
            print(n)
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", "-i", metavar="PATH", help="local .onnx file")
    g.add_argument("--model", "-m", metavar="NAME", help="model zoo name (see `modtrans list`)")


def _add_layer_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--label", help="replaces the framework export prefix in layer names (default: zoo name)")
    p.add_argument("--rename-map", metavar="PATH", help="raw<TAB>normalized name overrides")
    p.add_argument("--min-rank", type=int, default=2, help="keep initializers of at least this rank (default 2)")
    p.add_argument("--exclude", action="append", default=[], metavar="SUBSTR",
                   help="drop initializers whose name contains SUBSTR (repeatable)")
    p.add_argument("--include-all", action="store_true", help="keep every initializer")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", metavar="PATH", help="zoo manifest JSON (default: bundled)")
    common.add_argument("--cache-dir", metavar="DIR", help="model cache directory (default: $MODTRANS_CACHE_DIR)")
    common.add_argument("--offline", action="store_true", help="never touch the network")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="modtrans", description="Translate ONNX models into simulator workload files.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", parents=[common], help="write a workload description file")
    _add_source(p)
    _add_layer_opts(p)
    p.add_argument("--strategy", "-s", choices=sorted(STRATEGIES), default="data")
    p.add_argument("--output", "-o", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--compute-table", metavar="PATH", help="lines of 'name fwd ig wg update'")
    p.add_argument("--activation-table", metavar="PATH", help="lines of 'name bytes' (model/hybrid)")
    p.add_argument("--hybrid-tags", metavar="PATH", help="lines of 'name DATA|MODEL' (hybrid)")
    p.add_argument("--time", action="store_true", help="report decode+extract+emit time in ms on stderr")
    p.add_argument("--repeat", type=int, default=1, metavar="N", help="timed runs; the median is reported")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("inspect", parents=[common], help="print the per-layer size table")
    _add_source(p)
    _add_layer_opts(p)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("diff", parents=[common], help="compare layer sizes of two models or workload files")
    p.add_argument("left", help=".onnx file, workload file, or zoo name")
    p.add_argument("right", help=".onnx file, workload file, or zoo name")
    _add_layer_opts(p)
    p.add_argument("--mode", choices=[m.value for m in DiffMode], default="ordered")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("fetch", parents=[common], help="download zoo models into the cache")
    p.add_argument("names", nargs="+", metavar="NAME")
    p.set_defaults(func=cmd_fetch)

    p = sub.add_parser("list", parents=[common], help="list zoo model names")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ModTransError as exc:
        print(f"modtrans: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"modtrans: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
