"""
Wall time and peak memory of ``compute --mode fast`` per backend.

Each run is a fresh subprocess so peak RSS is per run (from ``os.wait4``).
"""
from __future__ import annotations

import os
import subprocess
import sys
import tempfile
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import cache, kernels

SIZES = (36, 72, 120)
# the interpreted kernel is far too slow for 120 edges
PYTHON_LIMIT = 72


@dataclass
class BenchRow:
    backend: str
    max_edges: int
    seconds: float
    peak_rss_mb: float
    max_genus: int
    status: str
    digest: str = ""


def run_once(max_edges: int, backend: str, mode: str = "fast", timeout: float | None = None,
             threads: int | None = None) -> BenchRow:
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "table.json"
        env = dict(os.environ, ISING_BACKEND=backend)
        if threads is not None:
            env["ISING_THREADS"] = str(threads)
        cmd = [sys.executable, "-m", "isingmaps", "compute", "--max-edges", str(max_edges),
               "--mode", mode, "--cache", str(path)]
        start = time.perf_counter()
        proc = subprocess.Popen(cmd, env=env, stdout=subprocess.DEVNULL, stderr=subprocess.PIPE)
        deadline = None if timeout is None else start + timeout
        while True:
            pid, status, usage = os.wait4(proc.pid, os.WNOHANG)
            if pid:
                break
            if deadline is not None and time.perf_counter() > deadline:
                proc.kill()
                os.wait4(proc.pid, 0)
                return BenchRow(backend, max_edges, time.perf_counter() - start, 0.0, -1, "timeout")
            time.sleep(0.01)
        elapsed = time.perf_counter() - start
        proc.returncode = os.waitstatus_to_exitcode(status)
        if proc.returncode:
            err = proc.stderr.read().decode(errors="replace").strip().splitlines()
            return BenchRow(backend, max_edges, elapsed, usage.ru_maxrss / 1024, -1,
                            f"error: {err[-1] if err else proc.returncode}")
        table = cache.load(path)
        return BenchRow(backend, max_edges, elapsed, usage.ru_maxrss / 1024,
                        max((r[1] for r in table.rows), default=-1), "ok", table.checksum())


def run(sizes=SIZES, backends=None, timeout: float | None = None) -> list[BenchRow]:
    backends = backends or kernels.available()
    rows = []
    for backend in backends:
        for n in sizes:
            if backend == "python" and n > PYTHON_LIMIT:
                continue
            rows.append(run_once(n, backend, timeout=timeout))
    return rows


def format_rows(rows: list[BenchRow]) -> str:
    lines = [f"{'backend':<10}{'edges':>6}{'seconds':>10}{'peak MB':>10}{'max g':>7}  status"]
    for r in rows:
        lines.append(f"{r.backend:<10}{r.max_edges:>6}{r.seconds:>10.2f}{r.peak_rss_mb:>10.1f}"
                     f"{r.max_genus:>7}  {r.status}")
    return "\n".join(lines)


def as_dicts(rows: list[BenchRow]) -> list[dict]:
    return [asdict(r) for r in rows]
