"""Unit tests for partial n-gram matching and intersection counts."""
import pytest

from src.entity_hallucination.entities.extractors import ingest_annotations
from src.entity_hallucination.entities.schemas import CountMode, EntityInventory, EntityMention
from src.entity_hallucination.matching.matcher import entity_matches_text, intersection_count
from src.entity_hallucination.matching.policy import Direction, MatchPolicy, TargetMatchMode
from src.entity_hallucination.textproc.tokenizer import tokenize
from src.entity_hallucination.utils.safety import InvalidArgumentError


def _mention(text: str) -> EntityMention:
    return ingest_annotations([text]).mentions[0]


@pytest.mark.parametrize(
    "entity, document, expected",
    [
        ("skin cancer", "Skin cancer is common.", True),
        ("skin cancer screening", "annual skin cancer checks", True),
        ("melanoma", "Basal cell carcinoma.", False),
        ("cancer", "non-cancer lesions", False),
        ("state of iran", "the state of texas", True),
        ("of iran", "the state of texas", False),
    ],
)
def test_entity_matches_text(entity, document, expected, stopwords, policy):
    """Test component matching against a document."""
    assert entity_matches_text(_mention(entity), tokenize(document), stopwords, policy) is expected


def test_stopword_unigram_block(stopwords):
    """Test single stop-word components only match when the block is off."""
    doc = tokenize("the state of texas")

    assert not entity_matches_text(_mention("of"), doc, stopwords, MatchPolicy())
    assert entity_matches_text(_mention("of"), doc, stopwords, MatchPolicy(unigram_stopword_block=False))


def test_stopword_block_spares_longer_components(stopwords, policy):
    """Test multi-token components containing stop words still match."""
    doc = tokenize("rates of melanoma rose")

    assert entity_matches_text(_mention("of melanoma"), doc, stopwords, policy)


def test_numeric_unigram_block(stopwords):
    """Test purely numeric single tokens are blocked on request."""
    doc = tokenize("2 patients were screened")

    assert entity_matches_text(_mention("2 weeks"), doc, stopwords, MatchPolicy())
    assert not entity_matches_text(_mention("2 weeks"), doc, stopwords, MatchPolicy(numeric_unigram_block=True))


def test_entity_without_tokens_rejected(stopwords, policy):
    """Test matching an entity without tokens is an error."""
    empty = EntityMention.model_construct(surface="", tokens=())

    with pytest.raises(InvalidArgumentError):
        entity_matches_text(empty, tokenize("text"), stopwords, policy)


def test_entity_longer_than_document(stopwords, policy):
    """Test entities longer than the document can still match on a part."""
    assert entity_matches_text(_mention("basal cell carcinoma"), tokenize("carcinoma"), stopwords, policy)
    assert not entity_matches_text(_mention("basal cell"), tokenize(""), stopwords, policy)


# ============================================
# Intersection Counts
# ============================================

def test_intersection_against_keys(stopwords, policy):
    """Test NU counts mentions and U counts keys."""
    h = ingest_annotations(["melanoma", "melanoma", "bcc"])
    keys = frozenset({"melanoma"})

    assert intersection_count(h, CountMode.NU, Direction.VS_KEYS, stopwords, policy, y_keys=keys) == 2
    assert intersection_count(h, CountMode.U, Direction.VS_KEYS, stopwords, policy, y_keys=keys) == 1


def test_intersection_against_text(stopwords, policy):
    """Test counting against a document text."""
    h = ingest_annotations(["melanoma", "melanoma", "bcc", "skin cancer"])
    doc = tokenize("Melanoma is a skin disease.")

    assert intersection_count(h, CountMode.NU, Direction.VS_TEXT, stopwords, policy, y_text=doc) == 3
    assert intersection_count(h, CountMode.U, Direction.VS_TEXT, stopwords, policy, y_text=doc) == 2


def test_intersection_exact_keys_ignore_partial_overlap(stopwords, policy):
    """Test exact-key mode requires identical keys."""
    h = ingest_annotations(["skin cancer"])
    keys = frozenset({"skin cancer screening"})

    assert intersection_count(h, CountMode.U, Direction.VS_KEYS, stopwords, policy, y_keys=keys) == 0


def test_intersection_partial_text_target_mode(stopwords):
    """Test partial-text mode compares against the other side's text."""
    h = ingest_annotations(["skin cancer"])
    policy = MatchPolicy(target_match_mode=TargetMatchMode.PARTIAL_TEXT)
    t_text = tokenize("skin cancer screening")

    assert intersection_count(h, CountMode.U, Direction.VS_KEYS, stopwords, policy, y_text=t_text) == 1


def test_intersection_empty_inventory(stopwords, policy):
    """Test an empty inventory intersects to zero."""
    assert intersection_count(
        EntityInventory(), CountMode.NU, Direction.VS_TEXT, stopwords, policy, y_text=tokenize("x")
    ) == 0


def test_intersection_missing_other_side(stopwords, policy):
    """Test the side required by the direction must be given."""
    h = ingest_annotations(["melanoma"])

    with pytest.raises(InvalidArgumentError):
        intersection_count(h, CountMode.NU, Direction.VS_TEXT, stopwords, policy)
    with pytest.raises(InvalidArgumentError):
        intersection_count(h, CountMode.NU, Direction.VS_KEYS, stopwords, policy)
    with pytest.raises(InvalidArgumentError):
        intersection_count(
            EntityInventory(), CountMode.NU, Direction.VS_KEYS, stopwords,
            MatchPolicy(target_match_mode=TargetMatchMode.PARTIAL_TEXT), y_keys=frozenset(),
        )


def test_u_count_never_exceeds_nu(stopwords, policy):
    """Test the unique count is bounded by the mention count."""
    h = ingest_annotations(["melanoma", "bcc", "melanoma", "iran", "bcc"])
    doc = tokenize("melanoma and bcc in iran")

    u = intersection_count(h, CountMode.U, Direction.VS_TEXT, stopwords, policy, y_text=doc)
    nu = intersection_count(h, CountMode.NU, Direction.VS_TEXT, stopwords, policy, y_text=doc)
    assert (u, nu) == (3, 5)
