"""Source-tree discovery for the cast scanner.

Walks a root directory for C++ sources, loads them as text, and labels
each file with a component (by default the first path segment, so the
corpus statistics can be grouped the way large multi-project trees are
laid out).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fnmatch import fnmatch

DEFAULT_INCLUDE = ("*.cc", "*.cpp", "*.cxx", "*.h", "*.hpp")
DEFAULT_MAX_FILE_BYTES = 8 * 1024 * 1024


class CorpusError(Exception):
    """Raised when the corpus root itself is unusable."""


@dataclass(frozen=True)
class SourceFile:
    path: str  # relative to the root, posix separators
    component: str
    content: str


def component_for_path(path: str, component_map: dict[str, str] | None = None) -> str:
    """Component label for a relative posix path.

    A component map (prefix -> name) wins by longest matching prefix;
    otherwise the first path segment is the component, or "root" for
    files directly under the root.
    """
    if component_map:
        best = None
        for prefix, name in component_map.items():
            clean = prefix.rstrip("/")
            if path == clean or path.startswith(clean + "/"):
                if best is None or len(clean) > len(best[0]):
                    best = (clean, name)
        if best is not None:
            return best[1]
    if "/" in path:
        return path.split("/", 1)[0]
    return "root"


def load_component_map(path: str) -> dict[str, str]:
    """Parse a prefix<TAB>component map file. Blank lines and # comments skipped."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" not in line:
                raise CorpusError(f"bad component map line (need prefix<TAB>component): {line!r}")
            prefix, name = line.split("\t", 1)
            mapping[prefix.strip()] = name.strip()
    return mapping


def _matches(rel_path: str, patterns) -> bool:
    base = rel_path.rsplit("/", 1)[-1]
    for pat in patterns:
        target = rel_path if "/" in pat else base
        if fnmatch(target, pat):
            return True
    return False


def discover_sources(
    root: str,
    include: tuple[str, ...] = DEFAULT_INCLUDE,
    exclude: tuple[str, ...] = (),
    component_map: dict[str, str] | None = None,
    max_file_bytes: int = DEFAULT_MAX_FILE_BYTES,
    skipped: list[tuple[str, str]] | None = None,
) -> list[SourceFile]:
    """Find and load matching files under root, in lexicographic path order.

    Unreadable or oversized files are skipped and recorded in `skipped`
    as (path, reason); an unreadable root raises CorpusError.
    Non-UTF-8 bytes are replaced, never fatal.
    """
    if not os.path.isdir(root):
        raise CorpusError(f"corpus root is not a readable directory: {root}")

    rel_paths = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in sorted(filenames):
            full = os.path.join(dirpath, name)
            rel = os.path.relpath(full, root).replace(os.sep, "/")
            if not _matches(rel, include):
                continue
            if exclude and _matches(rel, exclude):
                continue
            rel_paths.append(rel)
    rel_paths.sort()

    files = []
    for rel in rel_paths:
        full = os.path.join(root, rel.replace("/", os.sep))
        try:
            size = os.path.getsize(full)
            if size > max_file_bytes:
                if skipped is not None:
                    skipped.append((rel, f"file exceeds {max_file_bytes} bytes ({size})"))
                continue
            with open(full, "rb") as fh:
                content = fh.read().decode("utf-8", errors="replace")
        except OSError as exc:
            if skipped is not None:
                skipped.append((rel, f"unreadable: {exc}"))
            continue
        files.append(SourceFile(rel, component_for_path(rel, component_map), content))
    return files
