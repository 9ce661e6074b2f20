"""Toolkit configuration: environment settings and per-run configuration."""
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.entity_hallucination import __version__
from src.entity_hallucination.dataset.schemas import CleaningPolicy, LengthPolicy
from src.entity_hallucination.matching.policy import CountMode, MatchPolicy


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (none required)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )
    log_file: str = Field(
        default="",
        description="Optional log file path; empty logs to stderr only"
    )

    # Defaults for command-line flags
    jobs: int = Field(
        default=1,
        ge=1,
        description="Default number of parallel record workers"
    )
    batch_size: int = Field(
        default=256,
        ge=1,
        description="Records read per worker batch while streaming a corpus"
    )
    separator: str = Field(
        default="<entsep>",
        description="Default separator token between JAENS entity chain and summary"
    )
    stopwords_path: str = Field(
        default="",
        description="Stop-word override file; empty uses the built-in list"
    )


# Global settings instance
try:
    settings = Settings()
except Exception as e:
    raise RuntimeError(
        "Failed to load configuration. Check the .env file and environment "
        "variables (LOG_LEVEL, LOG_FILE, JOBS, BATCH_SIZE, SEPARATOR, STOPWORDS_PATH)"
    ) from e


# ============================================
# Per-run Configuration
# ============================================

class Subcommand(str, Enum):
    """CLI subcommands."""

    SCORE = "score"
    FILTER = "filter"
    AUGMENT = "augment"
    CLEAN = "clean"
    STATS = "stats"
    EXTRACT = "extract"


class ModeChoice(str, Enum):
    """Which counting variants a command reports or filters on."""

    U = "u"
    NU = "nu"
    BOTH = "both"


class ExtractorChoice(str, Enum):
    """Where entity mentions come from."""

    HEURISTIC = "heuristic"
    ANNOTATIONS = "annotations"


class FilterStrategy(str, Enum):
    """Corpus filtering strategy."""

    SENTENCE = "sentence"
    PAIR = "pair"


class ReportFormat(str, Enum):
    """Rendering of the report printed to stdout."""

    TABLE = "table"
    JSON = "json"


DEFAULT_SYSTEM_LABEL = "Corpus"
_RESERVED_FIELDS = {"id", "source", "target", "original_target"}


class SystemSpec(BaseModel):
    """One scored system: its table row label and the record field holding its summaries."""

    model_config = ConfigDict(frozen=True)

    label: str = Field(min_length=1, description="Row label in the score table")
    field: str = Field(default="hypothesis", description="Record field with the generated summary")

    @field_validator("label")
    @classmethod
    def _label_is_one_line(cls, value: str) -> str:
        if not value.strip() or "\n" in value:
            raise ValueError("system label must be a non-blank single line")
        return value.strip()

    @field_validator("field")
    @classmethod
    def _field_is_hypothesis_like(cls, value: str) -> str:
        if not value.isidentifier() or value in _RESERVED_FIELDS or value.startswith("entities_"):
            raise ValueError(f"'{value}' cannot hold generated summaries")
        return value

    @classmethod
    def parse(cls, raw: str) -> "SystemSpec":
        """``LABEL`` or ``LABEL=FIELD``."""
        label, _, field = raw.partition("=")
        return cls(label=label, field=field or "hypothesis")


_NEEDS_OUTPUT = {Subcommand.FILTER, Subcommand.AUGMENT, Subcommand.CLEAN, Subcommand.EXTRACT}


class RunConfig(BaseModel):
    """Validated configuration of one CLI invocation.

    Everything is checked before any output file is created.
    """

    model_config = ConfigDict(frozen=True)

    command: Subcommand
    input_path: Path
    output_path: Optional[Path] = None
    report_path: Optional[Path] = None
    audit_path: Optional[Path] = None

    mode: ModeChoice = ModeChoice.BOTH
    extractor: ExtractorChoice = ExtractorChoice.HEURISTIC
    stopwords_path: Optional[Path] = None
    strategy: FilterStrategy = FilterStrategy.SENTENCE
    threshold: float = Field(default=1.0, ge=0.0, le=1.0)
    separator: str = Field(default_factory=lambda: settings.separator)
    jaens_hypothesis: bool = False
    systems: tuple[SystemSpec, ...] = (SystemSpec(label=DEFAULT_SYSTEM_LABEL),)

    policy: MatchPolicy = Field(default_factory=MatchPolicy)
    cleaning: CleaningPolicy = Field(default_factory=CleaningPolicy)
    length: LengthPolicy = Field(default_factory=LengthPolicy)

    output_format: ReportFormat = ReportFormat.TABLE
    strict: bool = False
    jobs: int = Field(default_factory=lambda: settings.jobs, ge=1)

    @field_validator("separator")
    @classmethod
    def _separator_is_single_token(cls, value: str) -> str:
        if not value or any(ch.isspace() for ch in value) or "," in value:
            raise ValueError("separator must be a non-empty token without whitespace or commas")
        return value

    @field_validator("systems")
    @classmethod
    def _systems_are_distinct(cls, value: tuple[SystemSpec, ...]) -> tuple[SystemSpec, ...]:
        if not value:
            raise ValueError("at least one system is required")
        labels = [system.label for system in value]
        if len(set(labels)) != len(labels):
            raise ValueError(f"system labels must be distinct, got {labels}")
        return value

    @field_validator("input_path")
    @classmethod
    def _input_exists(cls, value: Path) -> Path:
        if not value.is_file():
            raise ValueError(f"input file not found: {value}")
        return value

    @field_validator("stopwords_path")
    @classmethod
    def _stopwords_exist(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not value.is_file():
            raise ValueError(f"stop-word file not found: {value}")
        return value

    @model_validator(mode="after")
    def _check_outputs(self) -> "RunConfig":
        if self.command in _NEEDS_OUTPUT and self.output_path is None:
            raise ValueError(f"'{self.command.value}' requires --output")
        resolved_input = self.input_path.resolve()
        for path in (self.output_path, self.report_path, self.resolved_audit_path):
            if path is None:
                continue
            if path.resolve() == resolved_input:
                raise ValueError(f"output path {path} would overwrite the input")
            if not path.parent.resolve().is_dir():
                raise ValueError(f"output directory does not exist: {path.parent}")
        return self

    @property
    def resolved_audit_path(self) -> Optional[Path]:
        """Audit sidecar for filter/clean; defaults next to the output corpus."""
        if self.command not in (Subcommand.FILTER, Subcommand.CLEAN):
            return None
        if self.audit_path is not None:
            return self.audit_path
        if self.output_path is None:
            return None
        return self.output_path.with_name(self.output_path.name + ".audit.jsonl")

    def echo(self) -> dict[str, Any]:
        """Semantic configuration embedded in output artifacts.

        Paths and worker count are left out so artifacts are byte-identical
        across output locations and ``--jobs`` values.
        """
        data = self.model_dump(
            mode="json",
            exclude={"input_path", "output_path", "report_path", "audit_path",
                     "stopwords_path", "jobs", "strict", "output_format"},
        )
        stopwords_file = self.stopwords_file()
        data["stopwords"] = stopwords_file.name if stopwords_file else "builtin"
        return data

    def meta(self) -> dict[str, Any]:
        """Header embedded in every artifact."""
        return {"toolkit": "entity-hallucination", "version": __version__, "config": self.echo()}

    def count_modes(self) -> tuple[CountMode, ...]:
        """Counting variants selected by ``--mode``."""
        if self.mode == ModeChoice.BOTH:
            return (CountMode.U, CountMode.NU)
        return (CountMode(self.mode.value),)

    def stopwords_file(self) -> Optional[Path]:
        """``--stopwords`` if given, else ``STOPWORDS_PATH`` from the environment."""
        if self.stopwords_path is not None:
            return self.stopwords_path
        return Path(settings.stopwords_path) if settings.stopwords_path else None
