"""Run directories, content hashes and the atomically written manifest."""

import hashlib
import json
import logging
import os
import shutil
import tempfile
from pathlib import Path
from typing import Any, Optional

from stark_lbits.schemas.experiment import OutputFile, RunManifest

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


class OutputCollisionError(FileExistsError):
    """Raised when a run would overwrite an existing output directory."""


def prepare_run_dir(path: Path, force: bool = False) -> Path:
    """Create an empty run directory.

    Args:
        path: Target directory
        force: Replace an existing non-empty directory

    Raises:
        OutputCollisionError: Directory holds files and force is off
    """
    if path.exists() and any(path.iterdir()):
        if not force:
            raise OutputCollisionError(
                f"Output directory {path} is not empty (use --force to overwrite)"
            )
        logger.warning(f"Removing previous contents of {path}")
        shutil.rmtree(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def hash_file(path: Path) -> str:
    """SHA256 of a file as hex string."""
    sha256_hash = hashlib.sha256()
    with open(path, "rb") as f:
        for byte_block in iter(lambda: f.read(4096), b""):
            sha256_hash.update(byte_block)
    return sha256_hash.hexdigest()


def collect_outputs(run_dir: Path) -> list[OutputFile]:
    """Every file under run_dir except the manifest, sorted by relative path."""
    files = []
    for path in sorted(p for p in run_dir.rglob("*") if p.is_file()):
        rel = path.relative_to(run_dir).as_posix()
        if rel == MANIFEST_NAME or rel.endswith(".tmp"):
            continue
        files.append(OutputFile(path=rel, sha256=hash_file(path), size=path.stat().st_size))
    return files


def build_manifest(
    run_dir: Path,
    config: dict[str, Any],
    code_version: str,
    wall_time: float,
    seed: Optional[int] = None,
    failures: Optional[dict[str, str]] = None,
) -> RunManifest:
    return RunManifest(
        code_version=code_version,
        config=config,
        seed=seed,
        wall_time=wall_time,
        files=collect_outputs(run_dir),
        failures=failures or {},
    )


def write_manifest(manifest: RunManifest, run_dir: Path) -> Path:
    """Write manifest.json through a temp file and rename."""
    target = run_dir / MANIFEST_NAME
    blob = json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    fd, tmp_name = tempfile.mkstemp(dir=run_dir, prefix=".manifest-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(blob)
        os.replace(tmp_name, target)
    except Exception:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.info(f"Manifest written: {len(manifest.files)} files in {run_dir}")
    return target


def load_manifest(run_dir: Path) -> RunManifest:
    return RunManifest.model_validate_json((run_dir / MANIFEST_NAME).read_text(encoding="utf-8"))
