"""File-backed store for documents, metadata, linkbases, and link contexts.

Entities live under one root directory in hierarchical logical paths.  A
logical path carries no extension; the entity kind maps to a filename
suffix, so a document and its metadata share the same logical path as
separate files.  Writes go to a temp file first and rename into place, so
readers never observe a torn entry.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterator, Optional

from semlink.rdf import SemlinkError

DOCUMENT = "document"
METADATA = "metadata"
LINKBASE = "linkbase"
CONTEXT = "context"
GRAPH = "graph"

# Checked longest-first so "x.meta.xml" never reads as document "x.meta".
SUFFIXES = [
    (METADATA, ".meta.xml"),
    (LINKBASE, ".lb.xml"),
    (CONTEXT, ".ctx.xml"),
    (GRAPH, ".nt"),
    (DOCUMENT, ".xml"),
]
SUFFIX_OF = dict(SUFFIXES)

UP = "up"
DOWN = "down"


class NotFound(SemlinkError):
    """No entry at the requested path."""


class TypeMismatch(SemlinkError):
    """The path exists, but under a different entity kind."""


def normalize_path(path: str) -> str:
    """Collapse duplicate separators; reject escapes and dot segments."""
    segments = [s for s in path.split("/") if s]
    if any(s in (".", "..") for s in segments):
        raise ValueError(f"dot segments not allowed in logical path: {path!r}")
    return "/".join(segments)


def classify(filename: str) -> Optional[tuple[str, str]]:
    """(logical name, kind) for a stored filename, None if unrecognized."""
    for kind, suffix in SUFFIXES:
        if filename.endswith(suffix) and len(filename) > len(suffix):
            return filename[:-len(suffix)], kind
    return None


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _file(self, path: str, kind: str) -> Path:
        if kind not in SUFFIX_OF:
            raise ValueError(f"unknown entity kind: {kind!r}")
        path = normalize_path(path)
        if not path:
            raise ValueError("empty logical path")
        return self.root / (path + SUFFIX_OF[kind])

    def put(self, path: str, kind: str, text: str) -> None:
        target = self._file(path, kind)
        target.parent.mkdir(parents=True, exist_ok=True)
        handle, temp = tempfile.mkstemp(dir=target.parent, suffix=".tmp")
        try:
            with os.fdopen(handle, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(temp, target)
        except BaseException:
            try:
                os.unlink(temp)
            except OSError:
                pass
            raise

    def get(self, path: str, kind: str) -> str:
        target = self._file(path, kind)
        try:
            return target.read_text(encoding="utf-8")
        except FileNotFoundError:
            normalized = normalize_path(path)
            others = sorted({k for p, k in self.entries() if p == normalized})
            if others:
                raise TypeMismatch(
                    f"{normalized!r} is stored as {', '.join(others)}, not {kind}"
                ) from None
            raise NotFound(f"no {kind} at {normalized!r}") from None

    def entries(self) -> Iterator[tuple[str, str]]:
        """All (path, kind) pairs, unsorted."""
        for dirpath, _dirnames, filenames in os.walk(self.root):
            rel = Path(dirpath).relative_to(self.root)
            prefix = "" if str(rel) == "." else str(rel).replace(os.sep, "/") + "/"
            for name in filenames:
                hit = classify(name)
                if hit is not None:
                    yield prefix + hit[0], hit[1]

    def list(self, path_prefix: str = "") -> list[tuple[str, str]]:
        prefix = normalize_path(path_prefix)
        found = []
        for path, kind in self.entries():
            if not prefix or path == prefix or path.startswith(prefix + "/"):
                found.append((path, kind))
        return sorted(found)

    def _is_known(self, path: str) -> bool:
        for entry, _kind in self.entries():
            if entry == path or entry.startswith(path + "/"):
                return True
        return False

    def traverse(self, path: str, direction: str) -> list[str]:
        """up: ancestor prefixes out to the root; down: descendants, breadth-first."""
        if direction not in (UP, DOWN):
            raise ValueError(f"direction must be up or down: {direction!r}")
        path = normalize_path(path)
        if path and not self._is_known(path):
            raise NotFound(f"no entry or prefix {path!r}")
        if direction == UP:
            segments = path.split("/") if path else []
            return ["/".join(segments[:i]) for i in range(len(segments) - 1, -1, -1)]
        descendants = {
            entry for entry, _kind in self.entries()
            if (entry.startswith(path + "/") if path else entry)
        }
        return sorted(descendants, key=lambda p: (p.count("/"), p))
