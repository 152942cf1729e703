import random
from collections import Counter

import pytest

from dialtb.agreement import (HeadOffset, agreement_report, cohens_kappa,
                              head_to_offset, macro_average, mutual_f1)
from dialtb.demo import annotator_variant
from dialtb.errors import AgreementError, AlignmentError
from helpers import document, sentence, word


def kappa_oracle(a, b):
    """Independent contingency-table computation of Cohen's kappa."""
    n = len(a)
    table = Counter(zip(a, b))
    labels = sorted(set(a) | set(b))
    p_o = sum(table[(l, l)] for l in labels) / n
    row = {l: sum(c for (x, _), c in table.items() if x == l) / n for l in labels}
    col = {l: sum(c for (_, y), c in table.items() if y == l) / n for l in labels}
    p_e = sum(row[l] * col[l] for l in labels)
    return (p_o - p_e) / (1 - p_e) * 100.0


def f1_oracle(a, b):
    """Micro F1 from per-class true/false positives and negatives."""
    labels = sorted(set(a) | set(b))
    tp = sum(1 for x, y in zip(a, b) if x == y)
    fp = sum(1 for l in labels for x, y in zip(a, b) if y == l and x != l)
    fn = sum(1 for l in labels for x, y in zip(a, b) if x == l and y != l)
    return 2 * tp / (2 * tp + fp + fn) * 100.0


def test_offset_examples():
    assert head_to_offset(word(37, "x", 35, "obj")).value == -2
    assert head_to_offset(word(5, "x", 0, "root")).is_root
    assert head_to_offset(word(3, "x", 4, "nsubj")).value == 1
    assert str(head_to_offset(word(5, "x", 0, "root"))) == "ROOT"
    assert str(head_to_offset(word(37, "x", 35, "obj"))) == "-2"


def test_offset_never_zero():
    assert HeadOffset(None).is_root
    for head in (1, 3, 9):
        for wid in (2, 4, 8):
            if head != wid:
                assert head_to_offset(word(wid, "x", head, "obj")).value != 0


def test_identical_sequences_score_100():
    seq = ["nsubj", "obj", "root", "obj"]
    assert cohens_kappa(seq, list(seq)) == 100.0
    assert mutual_f1(seq, list(seq)) == 100.0


def test_hand_computed_kappa_zero():
    # p_o = 0.5, marginals are uniform for both annotators, so p_e = 0.5
    # and kappa = (0.5 - 0.5) / (1 - 0.5) = 0.
    a = ["x", "x", "y", "y"]
    b = ["x", "y", "x", "y"]
    assert cohens_kappa(a, b) == pytest.approx(0.0, abs=1e-12)
    assert mutual_f1(a, b) == pytest.approx(50.0, abs=1e-12)


def test_degenerate_chance_agreement():
    assert cohens_kappa(["x", "x"], ["x", "x"]) == 100.0
    with pytest.raises(AgreementError):
        cohens_kappa([], [])


def test_length_mismatch_raises():
    with pytest.raises(AlignmentError):
        cohens_kappa(["x"], ["x", "y"])
    with pytest.raises(AlignmentError):
        mutual_f1(["x"], ["x", "y"])


def _random_pair(rng, n, labels):
    a = [rng.choice(labels) for _ in range(n)]
    b = [x if rng.random() < 0.7 else rng.choice(labels) for x in a]
    return a, b


def test_matches_brute_force_oracle():
    rng = random.Random(7)
    labels = ["nsubj", "obj", "obl", "nmod", "root", "case"]
    for _ in range(100):
        a, b = _random_pair(rng, rng.randint(2, 300), labels)
        got_k = cohens_kappa(a, b)
        want_k = kappa_oracle(a, b)
        if want_k != 0:
            assert abs(got_k - want_k) / abs(want_k) < 1e-9
        else:
            assert abs(got_k) < 1e-9
        got_f = mutual_f1(a, b)
        want_f = f1_oracle(a, b)
        assert abs(got_f - want_f) / want_f < 1e-9


def test_statistics_symmetric_and_chance_correction_lowers():
    rng = random.Random(11)
    for _ in range(25):
        a, b = _random_pair(rng, 60, ["x", "y", "z"])
        assert cohens_kappa(a, b) == pytest.approx(cohens_kappa(b, a), abs=1e-9)
        assert mutual_f1(a, b) == pytest.approx(mutual_f1(b, a), abs=1e-9)
        assert cohens_kappa(a, b) <= mutual_f1(a, b) + 1e-9


def _doc_pair(seed=3):
    rows = [[("A", 2, "nsubj"), ("B", 0, "root"), ("C", 2, "obj")],
            [("D", 0, "root"), ("E", 1, "obj"), ("F", 1, "obl"), ("G", 3, "nmod")]]
    da = document([sentence(r, sent_id=f"s{i}") for i, r in enumerate(rows)], doc_id="t")
    db = annotator_variant(da, seed=seed, label_rate=0.3, head_rate=0.3)
    return da, db


def test_report_single_text_macro_equals_micro():
    da, db = _doc_pair()
    report = agreement_report([("t", da, db)])
    assert report.macro_avg == report.micro_avg == report.per_text[0].stats
    assert report.per_text[0].token_count == 7


def test_report_macro_is_unweighted_mean():
    da, db = _doc_pair()
    dc, dd = _doc_pair(seed=9)
    report = agreement_report([("t1", da, db), ("t2", dc, dd)])
    for field in ("label_kappa", "label_f1", "head_kappa", "head_f1"):
        values = [getattr(t.stats, field) for t in report.per_text]
        assert getattr(report.macro_avg, field) == pytest.approx(
            macro_average(values), abs=1e-12)


def test_micro_pools_tokens():
    da, db = _doc_pair()
    dc, dd = _doc_pair(seed=9)
    report = agreement_report([("t1", da, db), ("t2", dc, dd)])
    labels_a = [w.deprel for d in (da, dc) for s in d.sentences for w in s.words]
    labels_b = [w.deprel for d in (db, dd) for s in d.sentences for w in s.words]
    assert report.micro_avg.label_kappa == pytest.approx(
        cohens_kappa(labels_a, labels_b), abs=1e-12)


def test_sentence_permutation_keeps_micro():
    da, db = _doc_pair()
    rev_a = document(tuple(reversed(da.sentences)), doc_id="t")
    rev_b = document(tuple(reversed(db.sentences)), doc_id="t")
    r1 = agreement_report([("t", da, db)])
    r2 = agreement_report([("t", rev_a, rev_b)])
    assert r1.micro_avg == r2.micro_avg


def test_misalignment_names_position():
    da, _ = _doc_pair()
    other = document([sentence([("A", 2, "nsubj"), ("X", 0, "root"), ("C", 2, "obj")]),
                      da.sentences[1]], doc_id="t")
    with pytest.raises(AlignmentError) as err:
        agreement_report([("t", da, other)])
    assert err.value.position == ("t", 1, 2)


def test_offset_recoding_keeps_agreement_rate(demo_pair):
    # Offsets relabel the head task without changing which tokens agree, so
    # the agreement rate (mutual F1) is identical; only chance agreement and
    # hence kappa may shift.
    boh, _ = demo_pair
    doc = boh.documents[0]
    variant = annotator_variant(doc, seed=5)
    raw_a = [str(w.head) for s in doc.sentences for w in s.words]
    raw_b = [str(w.head) for s in variant.sentences for w in s.words]
    off_a = [str(head_to_offset(w)) for s in doc.sentences for w in s.words]
    off_b = [str(head_to_offset(w)) for s in variant.sentences for w in s.words]
    assert mutual_f1(raw_a, raw_b) == pytest.approx(mutual_f1(off_a, off_b), abs=1e-9)
    assert cohens_kappa(off_a, off_b) <= mutual_f1(off_a, off_b) + 1e-9
