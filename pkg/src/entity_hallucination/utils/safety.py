"""Error types and per-record error handling."""
from functools import wraps
from typing import Callable, Optional, TypeVar

from pydantic import BaseModel, Field, ValidationError

from src.entity_hallucination.utils.logger import logger

F = TypeVar("F", bound=Callable)


# ============================================
# Error Types
# ============================================

class ToolkitError(Exception):
    """Error with a short diagnostic for the CLI and separate logging details."""

    def __init__(self, user_message: str, log_details: Optional[str] = None):
        """Initialize error.

        Args:
            user_message: One-line diagnostic printed to stderr
            log_details: Detailed error for logs (technical)
        """
        self.user_message = user_message
        self.log_details = log_details or user_message
        super().__init__(self.log_details)


class InvalidArgumentError(ToolkitError, ValueError):
    """An operation was called outside its preconditions."""


class MissingFieldError(ToolkitError):
    """A corpus record lacks a field the requested operation needs."""

    def __init__(self, field_name: str, record_id: str = ""):
        self.field_name = field_name
        self.record_id = record_id
        where = f" in record '{record_id}'" if record_id else ""
        super().__init__(f"missing required field '{field_name}'{where}")


class CorpusFormatError(ToolkitError):
    """A corpus line could not be parsed into a record."""

    def __init__(self, line_number: int, details: str):
        self.line_number = line_number
        super().__init__(
            f"malformed record: {details}",
            f"line {line_number}: {details}",
        )


class SeparatorCollisionError(ToolkitError):
    """The JAENS separator occurs inside an entity or summary."""

    def __init__(self, separator: str, record_ids: list[str]):
        self.separator = separator
        self.record_ids = record_ids
        shown = ", ".join(record_ids[:20])
        more = f" (+{len(record_ids) - 20} more)" if len(record_ids) > 20 else ""
        super().__init__(
            f"separator '{separator}' collides with text in records: {shown}{more}"
        )


# ============================================
# Per-record Error Handling
# ============================================

class RecordError(BaseModel):
    """Record-level failure reported instead of aborting the whole run."""

    record_id: Optional[str] = Field(default=None, description="Record id when it could be read")
    line_number: int = Field(description="1-based line in the input corpus")
    message: str = Field(description="Diagnostic shown to the user")


def record_guard(func: F) -> F:
    """Decorator turning per-record failures into ``RecordError`` values.

    The wrapped function receives a corpus line (anything with ``line_number``
    and ``record`` attributes) as its first argument.

    Args:
        func: Per-record worker to wrap

    Returns:
        Wrapped function
    """
    @wraps(func)
    def wrapper(line, *args, **kwargs):
        record = getattr(line, "record", None)
        record_id = getattr(record, "id", None)
        line_number = getattr(line, "line_number", 0)
        try:
            return func(line, *args, **kwargs)

        except ToolkitError as e:
            logger.warning(f"Record {record_id} (line {line_number}) in {func.__name__}: {e.log_details}")
            return RecordError(record_id=record_id, line_number=line_number, message=e.user_message)

        except ValidationError as e:
            logger.warning(f"Invalid record {record_id} (line {line_number}) in {func.__name__}: {e}")
            return RecordError(
                record_id=record_id,
                line_number=line_number,
                message=f"invalid record: {e.error_count()} validation error(s)",
            )

        except Exception as e:
            logger.exception(f"Unexpected error in {func.__name__} for record {record_id}")
            return RecordError(record_id=record_id, line_number=line_number, message=f"unexpected error: {e}")

    return wrapper  # type: ignore[return-value]
