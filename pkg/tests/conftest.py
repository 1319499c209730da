import http.server
import json
import threading
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


class _ZooHandler(http.server.BaseHTTPRequestHandler):
    def do_GET(self):
        server = self.server
        with server.lock:
            server.requests.append(self.path)
        if self.path in server.redirects:
            self.send_response(302)
            self.send_header("Location", server.redirects[self.path])
            self.end_headers()
            return
        body = server.files.get(self.path)
        if body is None:
            self.send_error(404)
            return
        self.send_response(200)
        self.send_header("Content-Type", "application/octet-stream")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


class LocalZoo:
    """Threaded HTTP server standing in for the model zoo."""

    def __init__(self):
        self.httpd = http.server.ThreadingHTTPServer(("127.0.0.1", 0), _ZooHandler)
        self.httpd.files = {}
        self.httpd.redirects = {}
        self.httpd.requests = []
        self.httpd.lock = threading.Lock()
        self.thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)

    @property
    def base(self) -> str:
        host, port = self.httpd.server_address[:2]
        return f"http://{host}:{port}"

    @property
    def requests(self) -> list[str]:
        return self.httpd.requests

    def host(self, path: str, body: bytes) -> str:
        self.httpd.files[path] = body
        return self.base + path

    def redirect(self, path: str, to_path: str) -> str:
        self.httpd.redirects[path] = self.base + to_path
        return self.base + path

    def write_manifest(self, path: Path, entries: dict) -> Path:
        path.write_text(json.dumps(entries), encoding="utf-8")
        return path


@pytest.fixture
def local_zoo():
    zoo = LocalZoo()
    zoo.thread.start()
    yield zoo
    zoo.httpd.shutdown()
    zoo.httpd.server_close()


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MODTRANS_CACHE_DIR", str(tmp_path / "cache"))


# criterion label -> outcomes of the tests carrying it
_criteria: dict[str, list[str]] = {}
_labels: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("acceptance")
        if marker:
            _labels[item.nodeid] = marker.args[0]


def pytest_runtest_logreport(report):
    label = _labels.get(report.nodeid)
    if label is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _criteria.setdefault(label, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0].lstrip("AC"))):
        ok = all(o == "passed" for o in _criteria[label])
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}")
