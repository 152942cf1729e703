import pytest

from dialtb.errors import AlignmentError
from dialtb.lab import confusion, score
from dialtb.lab.evalmetrics import collapse_label
from helpers import corpus, document, sentence


def _gold():
    return corpus([document([
        sentence([("A", 2, "nsubj"), ("B", 0, "root"), ("C", 2, "obj")], "s1"),
    ], doc_id="d")], name="gold")


def _with(heads, deprels):
    return corpus([document([
        sentence(list(zip("ABC", heads, deprels)), "s1"),
    ], doc_id="d")], name="pred")


def test_perfect_prediction_scores_100():
    g = _gold()
    report = score(g, g)
    assert report.las == 100.0 and report.uas == 100.0
    assert report.token_count == 3


def test_one_wrong_head_of_three():
    # Hand count: heads 2,0,2 vs 2,0,1 -> 2 of 3 heads correct.
    pred = _with([2, 0, 1], ["nsubj", "root", "obj"])
    report = score(_gold(), pred)
    assert report.uas == pytest.approx(2 / 3 * 100)
    assert report.las == pytest.approx(2 / 3 * 100)
    assert f"{report.uas:.2f}" == "66.67"


def test_label_error_lowers_only_las():
    pred = _with([2, 0, 2], ["nsubj", "root", "iobj"])
    report = score(_gold(), pred)
    assert report.uas == 100.0
    assert report.las == pytest.approx(2 / 3 * 100)
    assert report.las < report.uas


def test_subtypes_count_for_las():
    g = corpus([document([sentence([("A", 2, "nmod:poss"), ("B", 0, "root")], "s1")],
                         doc_id="d")], name="g")
    p = corpus([document([sentence([("A", 2, "nmod"), ("B", 0, "root")], "s1")],
                         doc_id="d")], name="p")
    report = score(g, p)
    assert report.uas == 100.0 and report.las == 50.0


def test_per_label_bookkeeping():
    pred = _with([2, 0, 1], ["nsubj", "root", "obl"])
    report = score(_gold(), pred)
    assert report.per_label["obj"] == (1, 0, 0)
    assert report.per_label["nsubj"] == (1, 1, 1)
    assert sum(v[0] for v in report.per_label.values()) == report.token_count


def test_misalignment_raises():
    other = corpus([document([
        sentence([("A", 2, "nsubj"), ("X", 0, "root"), ("C", 2, "obj")], "s1"),
    ], doc_id="d")], name="pred")
    with pytest.raises(AlignmentError):
        score(_gold(), other)
    fewer = corpus([document([sentence([("A", 0, "root")], "s1")], doc_id="d")],
                   name="pred")
    with pytest.raises(AlignmentError):
        score(_gold(), fewer)


def test_collapse_label():
    assert collapse_label("acl:relcl") == "acl"
    assert collapse_label("nmod") == "nmod"


def _confusion_fixture():
    """12 obl->nmod errors, subtype collapsing, and one rare label."""
    sents_gold, sents_pred = [], []
    for i in range(12):
        sents_gold.append(sentence([("V", 0, "root"), ("N", 1, "obl")], f"s{i}"))
        sents_pred.append(sentence([("V", 0, "root"), ("N", 1, "nmod")], f"s{i}"))
    for i in range(12, 22):
        sents_gold.append(sentence([("V", 0, "root"), ("N", 1, "acl:relcl")], f"s{i}"))
        sents_pred.append(sentence([("V", 0, "root"), ("N", 1, "acl")], f"s{i}"))
    sents_gold.append(sentence([("V", 0, "root"), ("N", 1, "vocative")], "s22"))
    sents_pred.append(sentence([("V", 0, "root"), ("N", 1, "obl")], "s22"))
    g = corpus([document(sents_gold, doc_id="d")], name="g")
    p = corpus([document(sents_pred, doc_id="d")], name="p")
    return g, p


def test_confusion_hand_computed():
    g, p = _confusion_fixture()
    m = confusion(g, p, min_gold=10)
    assert m.cell("obl", "nmod") == 12
    assert m.cell("acl", "acl") == 10          # subtype collapsed onto base
    assert m.cell("root", "root") == 23
    assert m.labels == ("root", "obl", "acl")  # by gold count, vocative omitted
    assert m.omitted == {"vocative": 1}
    for label in ("root", "obl", "acl", "vocative"):
        gold_count = sum(c for (gl, _), c in m.cells.items() if gl == label)
        assert gold_count == m.gold_total(label)
    assert m.gold_total("obl") == 12
    assert m.gold_total("vocative") == 1


def test_confusion_diagonal_for_perfect_prediction():
    g, _ = _confusion_fixture()
    m = confusion(g, g, min_gold=1)
    for (gl, pl), count in m.cells.items():
        assert gl == pl or count == 0
    rows = m.matrix_rows()
    assert rows[0][0] == m.labels[0]
