"""
On-disk coefficient tables.

A table stores the integer coefficients of the partition polynomials
``I_{n,g}`` as rows ``(e, g, a, b, c)`` with ``e = 3n`` edges and ``c`` the
coefficient of ``nb^a nw^b``. Only ``a <= b`` is stored; color symmetry gives
the rest. The cache file is the JSON export plus a format tag and a SHA-256
checksum of the rows, written through a temporary file and ``os.replace``.
"""
from __future__ import annotations

import contextlib
import csv
import fcntl
import hashlib
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .solver import SolveState, compute_up_to

FORMAT = "isingmaps-coefficients"
VERSION = 1
CSV_HEADER = ("e", "g", "a", "b", "c")

Row = tuple[int, int, int, int, int]


class CacheError(RuntimeError):
    """A cache file that cannot be trusted: bad JSON, wrong version or checksum."""


class CacheBusy(RuntimeError):
    pass


@dataclass
class CoeffTable:
    max_edges: int = 0
    rows: list[Row] = field(default_factory=list)

    def __post_init__(self):
        self.rows = sorted(tuple(int(x) for x in r) for r in self.rows)
        for e, g, a, b, c in self.rows:
            if e % 3 or e <= 0 or e > self.max_edges or g < 0:
                raise ValueError(f"row {(e, g, a, b, c)} has an invalid index")
            if a > b or (a - b) % 3 or c <= 0:
                raise ValueError(f"row {(e, g, a, b, c)} breaks the storage invariants")

    @classmethod
    def from_state(cls, state: SolveState) -> "CoeffTable":
        rows = []
        for e, V in state.rooted.items():
            scale = math.factorial(2 * e - 1)  # (6n-1)!
            rows.extend((e, g, a, b, c * scale) for (a, b, g), c in V.items() if a <= b and c)
        return cls(state.N, rows)

    def to_state(self, mode: str = "checked", backend: str | None = None) -> SolveState:
        rooted: dict[int, dict] = {}
        for e, g, a, b, c in self.rows:
            V, r = divmod(c, math.factorial(2 * e - 1))
            if r:
                raise CacheError(f"coefficient at {(e, g, a, b)} is not divisible by (2e-1)!")
            slot = rooted.setdefault(e, {})
            slot[(a, b, g)] = slot[(b, a, g)] = V
        return SolveState.from_rooted(self.max_edges, rooted, mode, backend)

    def polynomial(self, e: int, g: int) -> dict[tuple[int, int], int]:
        """Full ``{(a, b): c}`` of ``I_{e/3, g}``, symmetric half restored."""
        out = {}
        for e2, g2, a, b, c in self.rows:
            if (e2, g2) == (e, g):
                out[(a, b)] = out[(b, a)] = c
        return out

    def truncated(self, max_edges: int) -> "CoeffTable":
        return CoeffTable(max_edges, [r for r in self.rows if r[0] <= max_edges])

    def checksum(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.max_edges}\n".encode())
        for r in self.rows:
            h.update((",".join(map(str, r)) + "\n").encode())
        return h.hexdigest()


# serialization ----------------------------------------------------------------

def dumps_json(table: CoeffTable) -> str:
    rows = [dict(zip(CSV_HEADER, r)) for r in table.rows]
    return json.dumps({"version": VERSION, "max_edges": table.max_edges, "rows": rows},
                      separators=(",", ":")) + "\n"


def dumps_csv(table: CoeffTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(table.rows)
    return buf.getvalue()


def loads(text: str, fmt: str) -> CoeffTable:
    if fmt == "json":
        doc = json.loads(text)
        return CoeffTable(doc["max_edges"], [tuple(r[k] for k in CSV_HEADER) for r in doc["rows"]])
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"expected CSV header {','.join(CSV_HEADER)}")
        rows = [tuple(int(x) for x in r) for r in reader if r]
        return CoeffTable(max((r[0] for r in rows), default=0), rows)
    raise ValueError(f"unknown format {fmt!r}")


def export(table: CoeffTable, path: str | os.PathLike, fmt: str) -> None:
    text = {"json": dumps_json, "csv": dumps_csv}[fmt](table)
    _atomic_write(Path(path), text)


def import_table(path: str | os.PathLike, fmt: str | None = None) -> CoeffTable:
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".").lower()
    return loads(path.read_text(), fmt)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


# the cache file ---------------------------------------------------------------

def save(table: CoeffTable, path: str | os.PathLike) -> None:
    rows = [list(r) for r in table.rows]
    doc = {"format": FORMAT, "version": VERSION, "max_edges": table.max_edges,
           "checksum": table.checksum(), "rows": rows}
    _atomic_write(Path(path), json.dumps(doc, separators=(",", ":")) + "\n")


def load(path: str | os.PathLike) -> CoeffTable:
    """Read a cache file; anything suspicious raises :class:`CacheError`."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise CacheError(f"{path}: unreadable cache ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise CacheError(f"{path}: not a coefficient cache")
    if doc.get("version") != VERSION:
        raise CacheError(f"{path}: cache version {doc.get('version')}, expected {VERSION}")
    try:
        table = CoeffTable(doc["max_edges"], [tuple(r) for r in doc["rows"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheError(f"{path}: malformed rows ({exc})") from exc
    if table.checksum() != doc.get("checksum"):
        raise CacheError(f"{path}: checksum mismatch")
    return table


@contextlib.contextmanager
def locked(path: str | os.PathLike):
    """Advisory exclusive lock on ``<path>.lock`` for the duration of a command."""
    lock = Path(f"{path}.lock")
    lock.parent.mkdir(parents=True, exist_ok=True)
    with open(lock, "w") as fh:
        try:
            fcntl.flock(fh, fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError as exc:
            raise CacheBusy(f"{path} is in use by another process") from exc
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def compute_cached(max_edges: int, path: str | os.PathLike | None, mode: str = "checked",
                   backend: str | None = None) -> tuple[CoeffTable, SolveState]:
    """
    Bring the cache at ``path`` up to ``max_edges`` and return the table.

    A warm cache is neither recomputed nor rewritten. A cache that fails to
    load is left untouched and the error propagates.
    """
    if max_edges < 3:
        raise ValueError("max_edges must be at least 3")
    if path is None:
        state = compute_up_to(max_edges, mode, backend)
        return CoeffTable.from_state(state), state
    with locked(path):
        if Path(path).exists():
            stored = load(path)
            state = stored.to_state(mode, backend)
            if stored.max_edges >= max_edges:
                return stored.truncated(max_edges), state
            state.extend(max_edges)
        else:
            state = compute_up_to(max_edges, mode, backend)
        table = CoeffTable.from_state(state)
        save(table, path)
        return table, state
