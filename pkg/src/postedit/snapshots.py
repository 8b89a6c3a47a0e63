"""Content-addressed project snapshots and push/pull synchronization.

A snapshot id is the SHA-256 of the serialized project archive, so
identical states always share an id. Sync is fast-forward only: a pull
(or push) that meets a diverging snapshot chain raises
:class:`~postedit.errors.Conflict` and changes nothing.
"""

from __future__ import annotations

import enum
import hashlib
import json
import shutil
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Protocol

from .bundle import save_project
from .errors import BackendUnavailable, Conflict
from .model import Project, now_ms


@dataclass(frozen=True)
class Snapshot:
    snapshot_id: str
    message: str
    timestamp_ms: int
    parent: Optional[str]


class SyncDirection(str, enum.Enum):
    PUSH = "Push"
    PULL = "Pull"


@dataclass
class SyncStatus:
    direction: SyncDirection
    head: Optional[str]
    transferred: int


class SnapshotStore:
    """Directory layout: objects/<id>.zip, meta/<id>.json, HEAD."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "objects").mkdir(parents=True, exist_ok=True)
        (self.root / "meta").mkdir(parents=True, exist_ok=True)

    def head(self) -> Optional[str]:
        head_file = self.root / "HEAD"
        if not head_file.exists():
            return None
        value = head_file.read_text(encoding="utf-8").strip()
        return value or None

    def _set_head(self, snapshot_id: str) -> None:
        (self.root / "HEAD").write_text(snapshot_id + "\n", encoding="utf-8")

    def snapshot(
        self, project: Project, message: str, timestamp_ms: int | None = None
    ) -> Snapshot:
        """Store the current state under its content hash and advance HEAD."""
        data = save_project(project)
        snapshot_id = hashlib.sha256(data).hexdigest()
        current = self.head()
        if current == snapshot_id:
            return self.meta(snapshot_id)
        obj = self.root / "objects" / f"{snapshot_id}.zip"
        if not obj.exists():
            obj.write_bytes(data)
        meta_file = self.root / "meta" / f"{snapshot_id}.json"
        if meta_file.exists():
            snap = self.meta(snapshot_id)  # state seen before: keep original meta
        else:
            snap = Snapshot(
                snapshot_id,
                message,
                now_ms() if timestamp_ms is None else timestamp_ms,
                parent=current,
            )
            meta_file.write_text(
                json.dumps(
                    {
                        "id": snap.snapshot_id,
                        "message": snap.message,
                        "ts": snap.timestamp_ms,
                        "parent": snap.parent,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                ),
                encoding="utf-8",
            )
        self._set_head(snapshot_id)
        return snap

    def meta(self, snapshot_id: str) -> Snapshot:
        meta_file = self.root / "meta" / f"{snapshot_id}.json"
        if not meta_file.exists():
            raise KeyError(f"no snapshot {snapshot_id}")
        payload = json.loads(meta_file.read_text(encoding="utf-8"))
        return Snapshot(payload["id"], payload["message"], payload["ts"], payload["parent"])

    def load(self, snapshot_id: str) -> bytes:
        obj = self.root / "objects" / f"{snapshot_id}.zip"
        if not obj.exists():
            raise KeyError(f"no snapshot object {snapshot_id}")
        return obj.read_bytes()

    def chain(self, snapshot_id: Optional[str] = None) -> list[str]:
        """Snapshot ids from the given head (default HEAD) back to the root."""
        ids: list[str] = []
        current = self.head() if snapshot_id is None else snapshot_id
        seen: set[str] = set()
        while current is not None and current not in seen:
            ids.append(current)
            seen.add(current)
            try:
                current = self.meta(current).parent
            except KeyError:
                break
        return ids

    def ids(self) -> set[str]:
        return {p.stem for p in (self.root / "meta").glob("*.json")}

    def copy_from(self, other: "SnapshotStore", snapshot_ids: list[str]) -> int:
        copied = 0
        for sid in snapshot_ids:
            dst_obj = self.root / "objects" / f"{sid}.zip"
            dst_meta = self.root / "meta" / f"{sid}.json"
            if not dst_meta.exists():
                shutil.copyfile(other.root / "meta" / f"{sid}.json", dst_meta)
                copied += 1
            if not dst_obj.exists():
                src_obj = other.root / "objects" / f"{sid}.zip"
                if src_obj.exists():
                    shutil.copyfile(src_obj, dst_obj)
        return copied


class SyncBackend(Protocol):
    def store(self) -> SnapshotStore: ...


class LocalDirBackend:
    """Mirror backend: the remote is a snapshot store in a local directory."""

    def __init__(self, mirror_dir: str | Path):
        path = Path(mirror_dir)
        if path.exists() and not path.is_dir():
            raise BackendUnavailable(f"{path} is not a directory")
        try:
            self._store = SnapshotStore(path)
        except OSError as exc:
            raise BackendUnavailable(str(exc)) from exc

    def store(self) -> SnapshotStore:
        return self._store


def _fast_forward(src: SnapshotStore, dst: SnapshotStore) -> int:
    """Advance dst to src's head; Conflict when the chains diverge."""
    src_head = src.head()
    dst_head = dst.head()
    if src_head is None or src_head == dst_head:
        return 0
    src_chain = src.chain()
    if dst_head is not None:
        if dst_head not in src_chain:
            if src_head in dst.chain():
                raise Conflict("destination is ahead of source")
            raise Conflict("snapshot chains have diverged")
    missing = [sid for sid in src_chain if sid not in dst.ids()]
    transferred = dst.copy_from(src, missing)
    dst._set_head(src_head)
    return transferred


def sync(
    local: SnapshotStore, backend: SyncBackend, direction: SyncDirection
) -> SyncStatus:
    """Push the local chain to the backend, or pull the backend's chain in.

    Both directions are fast-forward only; on divergence nothing changes
    on either side.
    """
    remote = backend.store()
    if direction is SyncDirection.PUSH:
        transferred = _fast_forward(local, remote)
        return SyncStatus(direction, remote.head(), transferred)
    transferred = _fast_forward(remote, local)
    return SyncStatus(direction, local.head(), transferred)


class GitBackend:
    """Optional backend that mirrors the snapshot store into a git repository.

    Invokes the external ``git`` binary against a working tree that holds
    a copy of the snapshot directory; with a remote configured it
    pushes/pulls fast-forward only.
    """

    def __init__(self, repo_dir: str | Path, remote: str | None = None):
        if shutil.which("git") is None:
            raise BackendUnavailable("git executable not found")
        self.repo_dir = Path(repo_dir)
        self.remote = remote
        self.repo_dir.mkdir(parents=True, exist_ok=True)
        if not (self.repo_dir / ".git").exists():
            self._git("init", "-q")
            self._git("config", "user.email", "postedit@localhost")
            self._git("config", "user.name", "postedit")

    def _git(self, *args: str) -> str:
        result = subprocess.run(
            ["git", *args], cwd=self.repo_dir, capture_output=True, text=True
        )
        if result.returncode != 0:
            raise BackendUnavailable(f"git {' '.join(args)}: {result.stderr.strip()}")
        return result.stdout

    def store(self) -> SnapshotStore:
        return SnapshotStore(self.repo_dir / "snapshots")

    def commit(self, message: str) -> None:
        self._git("add", "-A")
        status = self._git("status", "--porcelain")
        if status.strip():
            self._git("commit", "-q", "-m", message)

    def push_remote(self) -> None:
        if self.remote:
            self._git("push", "-q", self.remote, "HEAD")

    def pull_remote(self) -> None:
        if self.remote:
            result = subprocess.run(
                ["git", "pull", "-q", "--ff-only", self.remote],
                cwd=self.repo_dir,
                capture_output=True,
                text=True,
            )
            if result.returncode != 0:
                raise Conflict(f"git pull: {result.stderr.strip()}")
