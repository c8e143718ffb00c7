"""Append-only verdict cache shared by interrupted and repeated searches."""

import logging
import threading
from pathlib import Path

from pydantic import BaseModel, ValidationError

from ..exceptions import ConfigurationError
from ..models.certificates import CertificateKind

logger = logging.getLogger(__name__)


class CachedVerdict(BaseModel):
    """One cache line: the set, its verdict and the certificate type behind it."""

    m: int
    k: int
    digits: str
    admissible: bool
    kind: CertificateKind

    @property
    def key(self) -> str:
        return verdict_key(self.m, self.k, self.digits)


def verdict_key(m: int, k: int, digits: str) -> str:
    return f"{m}|{k}|{digits}"


class VerdictCache:
    """JSON-lines verdict store keyed by (m, k, canonical digit string).

    A verdict becomes visible to readers only after its whole line has been
    written and flushed.
    """

    def __init__(self, path: Path | None = None):
        """Initialize the cache.

        Args:
            path: Backing file; None keeps verdicts in memory only
        """
        self.path = path
        self._entries: dict[str, CachedVerdict] = {}
        self._lock = threading.Lock()
        if path is not None:
            self._load(path)

    def _load(self, path: Path):
        if not path.exists():
            return
        skipped = 0
        try:
            with path.open("r", encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        entry = CachedVerdict.model_validate_json(line)
                    except ValidationError:
                        # a torn final line from an interrupted run
                        skipped += 1
                        continue
                    self._entries[entry.key] = entry
        except OSError as e:
            raise ConfigurationError(f"Cannot read verdict cache {path}: {e}") from e
        logger.info(
            f"[Cache] Loaded {len(self._entries)} verdicts from {path}"
            + (f" ({skipped} malformed lines skipped)" if skipped else "")
        )

    def get(self, m: int, k: int, digits: str) -> CachedVerdict | None:
        with self._lock:
            return self._entries.get(verdict_key(m, k, digits))

    def put(self, verdict: CachedVerdict):
        """Append a verdict; the in-memory entry is published after the write."""
        with self._lock:
            if verdict.key in self._entries:
                return
            if self.path is not None:
                try:
                    self.path.parent.mkdir(parents=True, exist_ok=True)
                    with self.path.open("a", encoding="utf-8") as handle:
                        handle.write(verdict.model_dump_json() + "\n")
                        handle.flush()
                except OSError as e:
                    raise ConfigurationError(
                        f"Cannot append to verdict cache {self.path}: {e}"
                    ) from e
            self._entries[verdict.key] = verdict

    def snapshot(self, m: int, k: int) -> dict[str, CachedVerdict]:
        """Read-only copy of the verdicts for one (m, k), keyed by digit string."""
        with self._lock:
            return {
                entry.digits: entry
                for entry in self._entries.values()
                if entry.m == m and entry.k == k
            }

    def __len__(self) -> int:
        return len(self._entries)
