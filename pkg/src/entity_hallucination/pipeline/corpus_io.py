"""JSON Lines corpus reading and atomic artifact writing.

Every corpus file the toolkit writes starts with a ``{"__meta__": ...}``
header line; the reader skips such lines, so outputs can be read back in.
"""
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator, Optional

from pydantic import ValidationError

from src.entity_hallucination.dataset.schemas import CorpusRecord
from src.entity_hallucination.utils.logger import logger
from src.entity_hallucination.utils.safety import CorpusFormatError, RecordError

META_KEY = "__meta__"


@dataclass(frozen=True)
class CorpusLine:
    """One non-blank input line: a parsed record or the reason it is unusable."""

    line_number: int
    record: Optional[CorpusRecord] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.record is not None

    def to_error(self) -> RecordError:
        return RecordError(
            record_id=self.record.id if self.record else None,
            line_number=self.line_number,
            message=self.error or "unreadable record",
        )


def _parse_line(line_number: int, text: str, seen_ids: set[str]) -> Optional[CorpusLine]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise CorpusFormatError(line_number, f"invalid JSON: {e.msg}") from e

    if not isinstance(payload, dict):
        raise CorpusFormatError(line_number, "a record must be a JSON object")
    if META_KEY in payload and len(payload) == 1:
        return None

    try:
        record = CorpusRecord.model_validate(payload)
    except ValidationError as e:
        fields = ", ".join(str(err["loc"][0]) for err in e.errors() if err["loc"])
        raise CorpusFormatError(line_number, f"invalid record fields: {fields or e}") from e

    if record.id in seen_ids:
        raise CorpusFormatError(line_number, f"duplicate record id '{record.id}'")
    seen_ids.add(record.id)
    return CorpusLine(line_number=line_number, record=record)


def read_corpus(path: Path) -> Iterator[CorpusLine]:
    """Stream corpus lines in file order.

    Blank lines and header lines are skipped. Malformed lines are yielded
    with ``error`` set (and logged) instead of stopping the stream.
    """
    seen_ids: set[str] = set()
    with open(path, "r", encoding="utf-8") as f:
        for line_number, text in enumerate(f, start=1):
            if not text.strip():
                continue
            try:
                parsed = _parse_line(line_number, text, seen_ids)
            except CorpusFormatError as e:
                logger.warning(f"Skipping {path.name} {e.log_details}")
                yield CorpusLine(line_number=line_number, error=e.user_message)
                continue
            if parsed is not None:
                yield parsed


def dumps(payload: Any) -> str:
    """Compact single-line JSON as written to every JSONL artifact."""
    return json.dumps(payload, ensure_ascii=False)


class AtomicJsonlWriter:
    """JSONL writer that only creates ``path`` once the ``with`` block succeeds.

    Lines go to a temporary sibling file that is renamed over ``path`` on a
    clean exit and deleted when the block raises.

    Usage:
        with AtomicJsonlWriter(path, meta=config.meta()) as out:
            out.write_record(record)
    """

    def __init__(self, path: Path, meta: Optional[dict[str, Any]] = None):
        self.path = path
        self.meta = meta
        self.count = 0
        self._file: Any = None
        self._tmp_path: Optional[Path] = None

    def __enter__(self) -> "AtomicJsonlWriter":
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=f".{self.path.name}.", suffix=".tmp")
        self._tmp_path = Path(tmp)
        self._file = os.fdopen(fd, "w", encoding="utf-8", newline="\n")
        if self.meta is not None:
            self._file.write(dumps({META_KEY: self.meta}) + "\n")
        return self

    def write_line(self, line: str) -> None:
        self._file.write(line + "\n")
        self.count += 1

    def write_record(self, record: CorpusRecord) -> None:
        self.write_line(record.to_json())

    def write_entry(self, entry: dict[str, Any]) -> None:
        self.write_line(dumps(entry))

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self._file.close()
        assert self._tmp_path is not None
        if exc_type is not None:
            self._tmp_path.unlink(missing_ok=True)
            logger.debug(f"Discarded partial output for {self.path}")
            return
        os.replace(self._tmp_path, self.path)
        logger.info(f"Wrote {self.count} lines to {self.path}")


def write_text_atomic(path: Path, text: str) -> None:
    """Write a whole text artifact (report, statistics) atomically."""
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.info(f"Wrote {path}")
