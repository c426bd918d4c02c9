"""
Writers for machine-readable output and the results cache.

JSON is canonical (sorted keys, two-space indent, trailing LF) and CSV is
UTF-8 with a header row and LF line endings, so equal inputs always give
byte-identical files. Artifacts are written relative to the run's output
directory and referenced from verdicts by that relative path.
"""

import csv
import hashlib
import io
import json
import logging
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

CACHE_DIR = ".cache"
ARTIFACT_DIR = "artifacts"


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Render rows as CSV with a header.

    Example:
        >>> csv_text(["n", "dim"], [[3, 4]])
        'n,dim\\n3,4\\n'
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(v) for v in row])
    return buffer.getvalue()


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise ConfigError(f"Failed to write {path}: {e}")


def write_json(path: Path, payload: Any) -> None:
    _write_text(Path(path), canonical_json(payload))


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    _write_text(Path(path), csv_text(header, rows))


def derive_seed(seed: int, label: str) -> int:
    """
    A 63-bit seed derived from (seed, label) with SHA-256.

    Independent of scheduling order, so a claim group draws the same
    numbers whether it runs alone or inside the full battery.
    """
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


class ArtifactWriter:
    """
    Writes evidence files under ``<output_dir>/artifacts``.

    Every method returns the path relative to the output directory, which
    is what verdicts store.

    Example:
        >>> writer = ArtifactWriter("obsaudit-out")
        >>> writer.csv("spectrum-n3.csv", ["eigenvalue", "multiplicity"], [[3, 1]])
        'artifacts/spectrum-n3.csv'
    """

    def __init__(self, output_dir: str):
        self.root = Path(output_dir)

    def _target(self, name: str) -> str:
        if "/" in name or "\\" in name or name.startswith("."):
            raise ConfigError(f"Artifact names must be plain file names, got {name!r}")
        return f"{ARTIFACT_DIR}/{name}"

    def csv(
        self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> str:
        relative = self._target(name)
        write_csv(self.root / relative, header, rows)
        logger.debug("wrote artifact %s", relative)
        return relative


class ResultCache:
    """
    JSON payloads keyed by (command, flags, seed).

    Entries live at ``<output_dir>/.cache/<sha256>.json``. A disabled
    cache never reads or writes, which is what ``--no-cache`` selects.

    Example:
        >>> cache = ResultCache("obsaudit-out", enabled=False)
        >>> cache.get("spectrum", {"n": 3}, 0) is None
        True
    """

    def __init__(self, output_dir: str, enabled: bool = True):
        self.directory = Path(output_dir) / CACHE_DIR
        self.enabled = enabled

    @staticmethod
    def key(command: str, flags: Mapping[str, Any], seed: int) -> str:
        material = json.dumps(
            {"command": command, "flags": dict(flags), "seed": seed},
            sort_keys=True,
            default=str,
        )
        return hashlib.sha256(material.encode("utf-8")).hexdigest()

    def path(self, command: str, flags: Mapping[str, Any], seed: int) -> Path:
        return self.directory / f"{self.key(command, flags, seed)}.json"

    def get(self, command: str, flags: Mapping[str, Any], seed: int) -> Optional[Any]:
        if not self.enabled:
            return None
        path = self.path(command, flags, seed)
        if not path.exists():
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            # corrupt entries are recomputed
            logger.warning("ignoring unreadable cache entry %s: %s", path.name, e)
            return None
        logger.debug("cache hit %s %s", command, path.name)
        return payload

    def put(
        self, command: str, flags: Mapping[str, Any], seed: int, payload: Any
    ) -> None:
        if not self.enabled:
            return
        write_json(self.path(command, flags, seed), payload)

