"""Atomic artifact staging and dataset digests."""

import hashlib
import json
import logging
import os
import shutil
import tempfile
from pathlib import Path
from typing import Any

from common.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)


def file_digest(path: Path) -> str:
    """Return the sha256 hex digest of a file's content."""
    sha = hashlib.sha256()
    with path.open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            sha.update(chunk)
    return sha.hexdigest()


def atomic_write_bytes(path: Path, data: bytes) -> Path:
    """Write bytes to path through a temp file in the same directory + rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return path


class ArtifactStage:
    """
    Collects the artifacts of one run and publishes them only on success.

    Content is held until commit(). A stage that is discarded (or never
    committed) leaves nothing behind. Names are paths relative to out_dir.
    """

    def __init__(self, out_dir: Path) -> None:
        self.out_dir = out_dir
        self._pending: dict[str, bytes] = {}

    def add_bytes(self, name: str, data: bytes) -> Path:
        relative = Path(name)
        if relative.is_absolute() or ".." in relative.parts or not relative.parts:
            raise InvalidParameterError(f"Artifact name must be a relative path inside the output directory, got {name!r}")
        self._pending[name] = data
        return self.out_dir / name

    def add_text(self, name: str, text: str) -> Path:
        return self.add_bytes(name, text.encode("utf-8"))

    def add_json(self, name: str, payload: Any) -> Path:
        text = json.dumps(payload, indent=2, sort_keys=True, default=_json_default)
        return self.add_text(name, text + "\n")

    @property
    def paths(self) -> list[Path]:
        return [self.out_dir / name for name in self._pending]

    def commit(self) -> list[Path]:
        """
        Publish every staged file.

        All content is first written to a scratch directory beside out_dir. A
        missing out_dir is then created by renaming the scratch directory in one
        step; an existing out_dir only receives renames. A failed write
        publishes nothing.
        """
        if not self._pending:
            return []
        self.out_dir.parent.mkdir(parents=True, exist_ok=True)
        scratch = Path(tempfile.mkdtemp(dir=self.out_dir.parent, prefix=f".{self.out_dir.name}.", suffix=".tmp"))
        try:
            scratch.chmod(0o755)
            for name, data in self._pending.items():
                atomic_write_bytes(scratch / name, data)
            if self.out_dir.exists():
                for name in self._pending:
                    destination = self.out_dir / name
                    destination.parent.mkdir(parents=True, exist_ok=True)
                    os.replace(scratch / name, destination)
            else:
                os.rename(scratch, self.out_dir)
        finally:
            shutil.rmtree(scratch, ignore_errors=True)

        written = self.paths
        logger.info(f"Committed {len(written)} artifact(s) to {self.out_dir}")
        self._pending.clear()
        return written

    def discard(self) -> None:
        if self._pending:
            logger.debug(f"Discarding {len(self._pending)} staged artifact(s)")
        self._pending.clear()


def _json_default(value: Any) -> Any:
    # numpy scalars and arrays reach reports through metrics dicts
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")
