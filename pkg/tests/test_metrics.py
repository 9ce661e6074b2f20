"""Unit tests for entity metrics, record scoring, aggregation and report rendering."""
import json

import pytest
from pydantic import ValidationError

from src.entity_hallucination.dataset.schemas import CorpusRecord
from src.entity_hallucination.entities.extractors import ingest_annotations
from src.entity_hallucination.entities.schemas import CountMode, EntityInventory
from src.entity_hallucination.metrics.aggregate import aggregate
from src.entity_hallucination.metrics.entity_metrics import (
    entity_scores,
    f1_target,
    precision_source,
    precision_target,
    recall_target,
)
from src.entity_hallucination.metrics.report import format_percentage, render_json, render_table
from src.entity_hallucination.metrics.schemas import ALL_METRICS, ComparisonReport, EntityCounts, RecordScores
from src.entity_hallucination.metrics.scoring import score_record
from src.entity_hallucination.textproc.tokenizer import tokenize
from src.entity_hallucination.utils.safety import InvalidArgumentError, MissingFieldError


def _inv(*entities: str) -> EntityInventory:
    return ingest_annotations(list(entities))


def _scores(record_id: str = "r", **values) -> RecordScores:
    counts = EntityCounts(n_h=0, n_h_s=0)
    return RecordScores(record_id=record_id, counts_u=counts, counts_nu=counts, **values)


# ============================================
# Entity Metrics
# ============================================

def test_precision_source(stopwords, policy):
    """Test prec_s bounds and the undefined case."""
    source = tokenize("Melanoma and basal cell carcinoma are skin cancers.")

    assert precision_source(_inv("melanoma", "basal cell carcinoma"), source, CountMode.U, stopwords, policy) == 1.0
    assert precision_source(_inv("iran"), source, CountMode.U, stopwords, policy) == 0.0
    assert precision_source(_inv(), source, CountMode.NU, stopwords, policy) is None


def test_precision_target(stopwords, policy):
    """Test prec_t in both counting variants."""
    h = _inv("melanoma", "melanoma", "iran")
    t = _inv("melanoma")

    assert precision_target(h, t, None, CountMode.NU, stopwords, policy) == pytest.approx(2 / 3)
    assert precision_target(h, t, None, CountMode.U, stopwords, policy) == 0.5
    assert precision_target(t, t, None, CountMode.U, stopwords, policy) == 1.0

    h2 = _inv("melanoma", "iran")
    t2 = _inv("iran", "bcc")
    assert precision_target(h2, t2, None, CountMode.U, stopwords, policy) == 0.5


def test_recall_target(stopwords, policy):
    """Test recall_t and its undefined case."""
    h = _inv("melanoma", "iran")
    t = _inv("melanoma", "iran", "bcc", "scc")

    assert recall_target(h, None, t, CountMode.U, stopwords, policy) == 0.5
    assert recall_target(t, None, h, CountMode.U, stopwords, policy) == 1.0
    assert recall_target(h, None, _inv(), CountMode.U, stopwords, policy) is None


@pytest.mark.parametrize(
    "prec, rec, expected",
    [(0.5, 0.5, 0.5), (1.0, 0.0, 0.0), (0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (0.5, 1.0, 2 / 3)],
)
def test_f1_target(prec, rec, expected):
    """Test the harmonic mean with the zero convention."""
    assert f1_target(prec, rec) == pytest.approx(expected)


@pytest.mark.parametrize("prec, rec", [(1.5, 0.5), (0.5, -0.1), (None, 0.5)])
def test_f1_target_rejects_invalid(prec, rec):
    """Test F1 inputs must be defined ratios."""
    with pytest.raises(InvalidArgumentError):
        f1_target(prec, rec)


def test_entity_scores_without_target(stopwords, policy):
    """Test target metrics stay undefined without a target."""
    source = tokenize("melanoma in iran")
    h_text = tokenize("melanoma in spain")
    h = _inv("melanoma", "spain")

    values, counts = entity_scores(h, h_text, source, None, None, CountMode.NU, stopwords, policy)

    assert values == {"prec_s_nu": 0.5, "prec_t_nu": None, "recall_t_nu": None, "f1_t_nu": None}
    assert counts == EntityCounts(n_h=2, n_h_s=1)


def test_entity_scores_directional_counts(stopwords, policy):
    """Test both intersection directions are reported."""
    h = _inv("melanoma", "melanoma", "iran")
    t = _inv("melanoma", "bcc")

    values, counts = entity_scores(
        h, tokenize("x"), tokenize("melanoma"), t, tokenize("y"), CountMode.NU, stopwords, policy
    )

    assert (counts.n_h, counts.n_t, counts.n_h_t, counts.n_t_h) == (3, 2, 2, 1)
    assert values["prec_t_nu"] == pytest.approx(2 / 3)
    assert values["recall_t_nu"] == 0.5
    assert values["f1_t_nu"] == pytest.approx(2 * (2 / 3) * 0.5 / (2 / 3 + 0.5))


@pytest.mark.parametrize("mode", [CountMode.U, CountMode.NU])
def test_entity_scores_agree_with_single_metrics(stopwords, policy, mode):
    """Test the combined scores equal the individual metric functions."""
    source = tokenize("melanoma rates in iran rose")
    h_text = tokenize("melanoma rates in spain rose, melanoma too")
    t_text = tokenize("melanoma rates in iran")
    h = _inv("melanoma rates", "spain", "melanoma")
    t = _inv("melanoma rates", "iran")

    values, _ = entity_scores(h, h_text, source, t, t_text, mode, stopwords, policy)

    suffix = mode.value
    assert values[f"prec_s_{suffix}"] == precision_source(h, source, mode, stopwords, policy)
    assert values[f"prec_t_{suffix}"] == precision_target(h, t, t_text, mode, stopwords, policy)
    assert values[f"recall_t_{suffix}"] == recall_target(h, h_text, t, mode, stopwords, policy)


@pytest.mark.parametrize("value", [-0.01, 1.0001, 2.0])
def test_record_scores_reject_out_of_range_ratios(value):
    """Test a metric value outside [0, 1] is refused."""
    with pytest.raises(ValidationError):
        _scores(prec_s_nu=value)
    with pytest.raises(ValidationError):
        _scores(rougeL_f=value)


def test_record_scores_accept_bounds_and_undefined():
    """Test 0, 1 and undefined are valid metric values."""
    scores = _scores(prec_s_u=0.0, prec_s_nu=1.0, f1_t_u=None)
    assert (scores.prec_s_u, scores.prec_s_nu, scores.f1_t_u) == (0.0, 1.0, None)


# ============================================
# Record Scoring
# ============================================

def test_score_record_hypothesis_equals_target(heuristic, stopwords, policy):
    """Test a perfect hypothesis scores 1.0 on target metrics and ROUGE."""
    record = CorpusRecord(
        id="r1",
        source="Skin cancer screening in Iran was studied.",
        target="Skin cancer screening helps Iran.",
        hypothesis="Skin cancer screening helps Iran.",
    )

    scores = score_record(record, heuristic, stopwords, policy)

    for metric in ("prec_t_u", "prec_t_nu", "recall_t_u", "recall_t_nu", "f1_t_u", "f1_t_nu"):
        assert scores.value(metric) == 1.0
    assert scores.prec_s_u == 1.0
    for metric in ("rouge1_f", "rouge2_f", "rougeL_f", "rougeLsum_f"):
        assert scores.value(metric) == pytest.approx(1.0)


def test_score_record_empty_hypothesis(heuristic, stopwords, policy):
    """Test an empty hypothesis gives undefined precisions."""
    record = CorpusRecord(id="r1", source="Melanoma rates.", target="Melanoma rates.", hypothesis="")

    scores = score_record(record, heuristic, stopwords, policy)

    assert scores.prec_s_u is None
    assert scores.prec_t_nu is None
    assert scores.recall_t_u == 0.0
    assert scores.f1_t_u is None
    assert scores.rouge1_f == 0.0


def test_score_record_without_target(heuristic, stopwords, policy):
    """Test a missing target leaves target metrics and ROUGE undefined."""
    record = CorpusRecord(id="r1", source="Melanoma rates rose.", hypothesis="Melanoma rates.")

    scores = score_record(record, heuristic, stopwords, policy)

    assert scores.prec_s_nu == 1.0
    assert scores.f1_t_nu is None
    assert scores.rouge1_f is None
    assert scores.counts_nu.n_t is None


def test_score_record_missing_hypothesis(heuristic, stopwords, policy):
    """Test a record without hypothesis cannot be scored."""
    record = CorpusRecord(id="r1", source="s", target="t")

    with pytest.raises(MissingFieldError) as exc_info:
        score_record(record, heuristic, stopwords, policy)
    assert exc_info.value.field_name == "hypothesis"


def test_score_record_other_hypothesis_field(heuristic, annotations, stopwords, policy):
    """Test summaries and their annotations can come from another record field."""
    record = CorpusRecord(
        id="r1",
        source="Melanoma in Iran.",
        target="Melanoma in Iran.",
        hypothesis="Melanoma in Spain.",
        hyp_filtered="Melanoma in Iran.",
        entities_hyp_filtered=["melanoma", "iran"],
    )

    default = score_record(record, heuristic, stopwords, policy)
    other = score_record(record, heuristic, stopwords, policy, hypothesis_field="hyp_filtered")
    annotated = score_record(
        record.model_copy(update={"entities_target": ["melanoma", "iran"]}),
        annotations, stopwords, policy, hypothesis_field="hyp_filtered",
    )

    assert default.prec_s_nu == 0.5
    assert other.prec_s_nu == 1.0
    assert annotated.counts_nu.n_h == 2
    with pytest.raises(MissingFieldError) as exc_info:
        score_record(record, heuristic, stopwords, policy, hypothesis_field="hyp_jaens")
    assert exc_info.value.field_name == "hyp_jaens"


def test_score_record_with_annotations(annotations, stopwords, policy):
    """Test scoring from annotation lists."""
    record = CorpusRecord(
        id="r1",
        source="Melanoma in Iran.",
        target="Melanoma and BCC.",
        hypothesis="Melanoma in Spain.",
        entities_hypothesis=["melanoma", "spain"],
        entities_target=["melanoma", "bcc"],
    )

    scores = score_record(record, annotations, stopwords, policy)

    assert scores.prec_s_u == 0.5
    assert scores.prec_t_u == 0.5
    assert scores.recall_t_u == 0.5
    assert scores.f1_t_u == 0.5


def test_score_record_missing_annotations(annotations, stopwords, policy):
    """Test the annotation extractor names the missing list."""
    record = CorpusRecord(id="r1", source="s", target="t", hypothesis="h", entities_target=["t"])

    with pytest.raises(MissingFieldError) as exc_info:
        score_record(record, annotations, stopwords, policy)
    assert exc_info.value.field_name == "entities_hypothesis"


def test_score_record_jaens_hypothesis(heuristic, stopwords, policy):
    """Test only the summary part of a JAENS hypothesis is scored."""
    record = CorpusRecord(
        id="r1",
        source="Melanoma rates in Iran.",
        target="Melanoma rates in Iran.",
        hypothesis="melanoma, iran <entsep> Melanoma rates in Iran.",
    )

    split = score_record(record, heuristic, stopwords, policy, jaens_separator="<entsep>")
    raw = score_record(record, heuristic, stopwords, policy)

    assert split.rouge1_f == pytest.approx(1.0)
    assert raw.rouge1_f < 1.0


# ============================================
# Aggregation and Reports
# ============================================

def test_aggregate_rejects_empty():
    """Test aggregation needs at least one record."""
    with pytest.raises(InvalidArgumentError):
        aggregate([])


def test_aggregate_single_record():
    """Test a single record aggregates to itself as a percentage."""
    report = aggregate([_scores(prec_s_u=0.75, rouge1_f=0.5)])

    assert report.aggregate["prec_s_u"] == 75.0
    assert report.aggregate["rouge1_f"] == 50.0
    assert report.aggregate["f1_t_nu"] is None
    assert report.undefined_counts["f1_t_nu"] == 1


def test_aggregate_skips_undefined():
    """Test undefined values are skipped and tallied."""
    report = aggregate([_scores("a", prec_s_u=0.0), _scores("b", prec_s_u=1.0), _scores("c")])

    assert report.aggregate["prec_s_u"] == 50.0
    assert report.undefined_counts["prec_s_u"] == 1
    assert set(report.undefined_counts) == set(ALL_METRICS)
    assert len(report.per_record) == 3


def test_format_percentage():
    """Test two-decimal rendering."""
    assert format_percentage(35.1249) == "35.12"
    assert format_percentage(100.0) == "100.00"
    assert format_percentage(None) == "n/a"


def test_render_table_layout():
    """Test column order, placeholders and undefined markers."""
    report = aggregate([_scores(prec_s_u=0.9338, rouge1_f=0.3512)])

    table = render_table(report)
    header = table.splitlines()[0].split()

    assert header == [
        "Model", "R-1", "R-2", "R-L", "R-LSum", "METEOR*", "BERTScore*",
        "prec_s^U", "prec_s^NU", "F1_t^U", "F1_t^NU",
    ]
    row = table.splitlines()[2]
    assert "35.12" in row
    assert "93.38" in row
    assert row.count("n/c") == 2
    assert "n/a" in row


def test_render_table_single_variant():
    """Test only the requested counting variant is shown."""
    table = render_table(aggregate([_scores(prec_s_u=1.0)]), (CountMode.U,))

    assert "prec_s^U" in table
    assert "prec_s^NU" not in table


def test_render_json_roundtrip():
    """Test the structured report is one JSON object."""
    report = aggregate([_scores(prec_s_u=1.0)], meta={"version": "x"})

    payload = json.loads(render_json(report))

    assert payload["meta"] == {"version": "x"}
    assert payload["aggregate"]["prec_s_u"] == 100.0
    assert payload["per_record"][0]["record_id"] == "r"
    assert payload["policy_echo"]["target_match_mode"] == "exact-key"


def test_render_table_one_row_per_system():
    """Test a comparison renders one labelled row per system with prefixed bookkeeping."""
    led = aggregate([_scores(prec_s_nu=0.5), _scores("r2")], system="LED")
    jaens = aggregate([_scores(prec_s_nu=1.0)], system="+Filtered+JAENS")

    table = render_table(ComparisonReport(systems=[led, jaens]))
    lines = table.splitlines()

    assert lines[2].startswith("LED (2 records)")
    assert "50.00" in lines[2]
    assert lines[3].startswith("+Filtered+JAENS (1 records)")
    assert "100.00" in lines[3]
    assert "LED: undefined (skipped) records: " in table
