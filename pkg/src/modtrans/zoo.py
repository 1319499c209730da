"""Fetch ONNX Model Zoo models by name into a verified local cache."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import tempfile
import time
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping
from urllib.parse import urlparse

import httpx

from .errors import DigestMismatchError, FetchError, ManifestError, UnknownModelError

log = logging.getLogger(__name__)

CACHE_ENV = "MODTRANS_CACHE_DIR"
_HEX64 = re.compile(r"[0-9a-f]{64}")
_SAFE_NAME = re.compile(r"[A-Za-z0-9][A-Za-z0-9._-]*")
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ZooEntry:
    url: str
    # None marks an unpinned entry: the digest seen on first download is
    # recorded in the cache and enforced from then on.
    sha256: str | None = None
    size_bytes: int | None = None


@dataclass(frozen=True)
class ZooManifest:
    entries: Mapping[str, ZooEntry]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __getitem__(self, name: str) -> ZooEntry:
        try:
            return self.entries[name]
        except KeyError:
            known = ", ".join(sorted(self.entries)) or "none"
            raise UnknownModelError(f"unknown model {name!r} (known: {known})") from None


def _reject_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise ManifestError(f"duplicate manifest key {key!r}")
        out[key] = value
    return out


def parse_manifest(text: str) -> ZooManifest:
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ManifestError("manifest must be a JSON object of name -> entry")
    entries = {}
    for name, spec in raw.items():
        if not _SAFE_NAME.fullmatch(name):
            raise ManifestError(f"bad model name {name!r}")
        if not isinstance(spec, dict) or "url" not in spec:
            raise ManifestError(f"{name}: entry must be an object with a 'url'")
        url = spec["url"]
        parsed = urlparse(url) if isinstance(url, str) else None
        if parsed is None or parsed.scheme not in ("http", "https") or not parsed.netloc:
            raise ManifestError(f"{name}: url must be an absolute http(s) URL, got {url!r}")
        digest = spec.get("sha256")
        if digest is not None:
            if not isinstance(digest, str) or not _HEX64.fullmatch(digest.lower()):
                raise ManifestError(f"{name}: sha256 must be 64 hex characters")
            digest = digest.lower()
        size = spec.get("size_bytes")
        if size is not None and (not isinstance(size, int) or size < 0):
            raise ManifestError(f"{name}: size_bytes must be a non-negative integer")
        entries[name] = ZooEntry(url, digest, size)
    return ZooManifest(entries)


def load_manifest(path: str | Path | None = None) -> ZooManifest:
    """Load ``path``, or the manifest bundled with the package."""
    if path is None:
        text = resources.files("modtrans").joinpath("data/zoo_manifest.json").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_manifest(text)


def list_models(manifest: ZooManifest) -> list[str]:
    return sorted(manifest.entries)


def default_cache_dir() -> Path:
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "modtrans"


@dataclass(frozen=True)
class CacheEntry:
    name: str
    path: str
    sha256: str
    fetched_at: float


@dataclass(frozen=True)
class FetchResult:
    path: Path
    sha256: str
    from_cache: bool


def _sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(_CHUNK), b""):
            h.update(chunk)
    return h.hexdigest()


class ModelCache:
    """Directory of ``<name>.onnx`` files plus ``<name>.json`` metadata.

    Every write goes to a temporary file in the same directory and is
    renamed into place, so readers never observe partial content.
    """

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def model_path(self, name: str) -> Path:
        if not _SAFE_NAME.fullmatch(name):
            raise UnknownModelError(f"bad model name {name!r}")
        return self.root / f"{name}.onnx"

    def meta_path(self, name: str) -> Path:
        return self.root / f"{name}.json"

    def entry(self, name: str) -> CacheEntry | None:
        try:
            meta = json.loads(self.meta_path(name).read_text(encoding="utf-8"))
            return CacheEntry(**meta)
        except (OSError, ValueError, TypeError):
            return None

    def purge(self, name: str) -> None:
        for p in (self.model_path(name), self.meta_path(name)):
            p.unlink(missing_ok=True)

    def _write_atomic(self, target: Path, chunks) -> tuple[str, str]:
        self.root.mkdir(parents=True, exist_ok=True)
        h = hashlib.sha256()
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=f".{target.name}.", suffix=".part")
        try:
            with os.fdopen(fd, "wb") as fh:
                for chunk in chunks:
                    h.update(chunk)
                    fh.write(chunk)
            return h.hexdigest(), tmp
        except BaseException:
            os.unlink(tmp)
            raise

    def store(self, name: str, chunks, expected_sha256: str | None) -> CacheEntry:
        target = self.model_path(name)
        digest, tmp = self._write_atomic(target, chunks)
        if expected_sha256 is not None and digest != expected_sha256:
            os.unlink(tmp)
            raise DigestMismatchError(
                f"{name}: downloaded sha256 {digest} does not match manifest {expected_sha256}"
            )
        os.replace(tmp, target)
        entry = CacheEntry(name, str(target), digest, time.time())
        data = json.dumps(asdict(entry), indent=2).encode("utf-8")
        _, meta_tmp = self._write_atomic(self.meta_path(name), [data])
        os.replace(meta_tmp, self.meta_path(name))
        return entry

    def lookup(self, name: str, expected_sha256: str | None) -> Path | None:
        """Verified cached path, None on a miss; a corrupt entry is purged and raises."""
        path = self.model_path(name)
        if not path.exists():
            return None
        meta = self.entry(name)
        expected = expected_sha256 or (meta.sha256 if meta else None)
        if expected is None:
            # Unpinned and no recorded digest: nothing to verify against.
            return None
        actual = _sha256_file(path)
        if actual != expected:
            self.purge(name)
            raise DigestMismatchError(
                f"{name}: cached file sha256 {actual} does not match expected {expected}; entry purged"
            )
        return path


def ensure_cached(
    name: str,
    manifest: ZooManifest,
    cache: ModelCache | None = None,
    client: httpx.Client | None = None,
    offline: bool = False,
) -> FetchResult:
    """Return a verified local path for ``name``, downloading on a cache miss."""
    entry = manifest[name]
    cache = cache or ModelCache()
    path = cache.lookup(name, entry.sha256)
    if path is not None:
        log.info("cache hit for %s at %s", name, path)
        return FetchResult(path, entry.sha256 or cache.entry(name).sha256, True)
    if offline:
        raise FetchError(f"{name} is not cached and offline mode is on")

    own_client = client is None
    if own_client:
        client = httpx.Client(follow_redirects=True, timeout=60.0)
    try:
        log.info("downloading %s from %s", name, entry.url)
        with client.stream("GET", entry.url, follow_redirects=True) as resp:
            if resp.status_code != 200:
                raise FetchError(f"{name}: GET {entry.url} returned HTTP {resp.status_code}")
            stored = cache.store(name, resp.iter_bytes(_CHUNK), entry.sha256)
    except httpx.HTTPError as exc:
        raise FetchError(f"{name}: GET {entry.url} failed: {exc}") from exc
    finally:
        if own_client:
            client.close()
    if entry.size_bytes is not None and Path(stored.path).stat().st_size != entry.size_bytes:
        cache.purge(name)
        raise DigestMismatchError(f"{name}: downloaded size differs from manifest size_bytes {entry.size_bytes}")
    return FetchResult(Path(stored.path), stored.sha256, False)


def fetch_model(
    name: str,
    manifest: ZooManifest,
    cache: ModelCache | None = None,
    client: httpx.Client | None = None,
    offline: bool = False,
) -> bytes:
    return ensure_cached(name, manifest, cache, client, offline).path.read_bytes()
