"""Unit tests for JAENS target construction and splitting."""
import pytest

from src.entity_hallucination.dataset.jaens import augment_record, jaens_augment, jaens_split
from src.entity_hallucination.dataset.schemas import CorpusRecord, JaensTarget
from src.entity_hallucination.utils.safety import InvalidArgumentError, SeparatorCollisionError

SEP = "<entsep>"


def test_chain_deduplicates_in_first_occurrence_order(annotations):
    """Test repeated target entities appear once, in order."""
    record = CorpusRecord(id="r1", source="s", target="A and B and A.", entities_target=["a", "b", "a"])

    target = jaens_augment(record, annotations, SEP)

    assert target.entity_chain == ("a", "b")
    assert target.serialize() == "a, b <entsep> A and B and A."


def test_heuristic_chain(heuristic):
    """Test chains built from extracted target entities."""
    record = CorpusRecord(id="r1", source="s", target="Skin cancer is rare in Iran.")

    target = jaens_augment(record, heuristic, SEP)

    assert target.entity_chain == ("skin cancer", "rare", "iran")


def test_zero_entities(heuristic):
    """Test an entity-free target serializes as separator plus summary."""
    record = CorpusRecord(id="r1", source="s", target="It was there.")

    target = jaens_augment(record, heuristic, SEP)

    assert target.entity_chain == ()
    assert target.serialize() == "<entsep> It was there."


def test_round_trip(heuristic):
    """Test splitting a serialized target gives back chain and summary."""
    record = CorpusRecord(id="r1", source="s", target="Basal cell carcinoma grows slowly.")

    target = jaens_augment(record, heuristic, SEP)
    split = jaens_split(target.serialize(), SEP)

    assert split.entity_chain == list(target.entity_chain)
    assert split.summary == record.target
    assert split.separator_found


@pytest.mark.parametrize(
    "generated, chain, summary, found",
    [
        ("a, b <entsep> s1. s2.", ["a", "b"], "s1. s2.", True),
        ("no separator here", [], "no separator here", False),
        ("<entsep> only summary", [], "only summary", True),
        ("a ,  b,, <entsep>x <entsep> y", ["a", "b"], "x <entsep> y", True),
    ],
)
def test_jaens_split(generated, chain, summary, found):
    """Test splitting at the first separator."""
    split = jaens_split(generated, SEP)

    assert split.entity_chain == chain
    assert split.summary == summary
    assert split.separator_found is found


def test_summary_collision_refused(heuristic):
    """Test a separator inside the summary is refused."""
    record = CorpusRecord(id="r7", source="s", target="a, b <entsep> already augmented")

    with pytest.raises(SeparatorCollisionError) as exc_info:
        jaens_augment(record, heuristic, SEP)
    assert exc_info.value.record_ids == ["r7"]


def test_entity_collision_refused(annotations):
    """Test a separator inside an entity key is refused."""
    record = CorpusRecord(id="r1", source="s", target="Sepsis cases.", entities_target=["sepsis"])

    with pytest.raises(SeparatorCollisionError):
        jaens_augment(record, annotations, "sep")


@pytest.mark.parametrize("separator", ["", "a b", "x,y"])
def test_invalid_separator(heuristic, separator):
    """Test separators must be single tokens without commas."""
    record = CorpusRecord(id="r1", source="s", target="t")

    with pytest.raises(InvalidArgumentError):
        jaens_augment(record, heuristic, separator)


def test_augment_record_keeps_original_target(heuristic):
    """Test the original target moves to a sibling field."""
    record = CorpusRecord(id="r1", source="s", target="Melanoma rates.")

    augmented = augment_record(record, heuristic, SEP)

    assert augmented.target == "melanoma rates <entsep> Melanoma rates."
    assert augmented.original_target == "Melanoma rates."
    assert augmented.source == "s"


def test_serialize_empty_summary():
    """Test an empty summary still round-trips."""
    target = JaensTarget(entity_chain=("x",), separator=SEP, summary="")

    assert jaens_split(target.serialize(), SEP).summary == ""
