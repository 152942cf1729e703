import pytest

from dialtb.analytics import (QuerySpec, count_query, fmt_per1k2, fmt_per1k3,
                              fmt_ratio3, load_query, marker_ratio,
                              parallel_subset, relation_counts,
                              relation_frequencies, vocabulary_overlap)
from dialtb.conllu import Corpus, token_count
from dialtb.errors import AnalyticsError, DuplicateParallelKeyError
from helpers import corpus, document, sentence, simple_corpus


def test_per1k_three_decimals_truncates():
    # 889/57097*1000 = 15.56999...; truncation keeps 15.569 where rounding
    # would give 15.570.  291/32724*1000 = 8.89256... -> 8.892 likewise.
    assert fmt_per1k3(889, 57097) == "15.569"
    assert fmt_per1k3(291, 32724) == "8.892"
    assert fmt_per1k3(84, 57097) == "1.471"
    assert fmt_per1k3(36, 32724) == "1.100"
    assert fmt_per1k3(500, 57097) == "8.757"


def test_per1k_two_decimals_rounds_truncated_value_half_even():
    # 206/57097*1000 = 3.6079 -> 3.607 -> 3.61, but 66/15619*1000 = 4.2256
    # -> 4.225 -> 4.22 (ties go to the even digit).
    assert fmt_per1k2(258, 32724) == "7.88"
    assert fmt_per1k2(206, 57097) == "3.61"
    assert fmt_per1k2(122, 15880) == "7.68"
    assert fmt_per1k2(66, 15619) == "4.22"


def test_ratio_three_decimals():
    assert fmt_ratio3(84, 57097, 36, 32724) == "0.747"
    assert fmt_ratio3(500, 57097, 291, 32724) == "1.015"
    assert fmt_ratio3(889, 57097, 670, 32724) == "1.314"
    assert fmt_ratio3(0, 100, 5, 100) == ""


def _pair():
    a = corpus([document([
        sentence([("A", 2, "nsubj"), ("B", 0, "root"), ("C", 2, "obj")], "a1"),
        sentence([("D", 2, "nsubj"), ("E", 0, "root"), ("F", 2, "obl")], "a2"),
    ], doc_id="da")], name="a")
    b = corpus([document([
        sentence([("G", 2, "nsubj"), ("H", 0, "root"), ("I", 2, "obj")], "b1"),
    ], doc_id="db")], name="b")
    return a, b


def test_relation_frequencies_hand_counted():
    a, b = _pair()
    rows = {r.key: r for r in relation_frequencies(a, b)}
    assert rows["nsubj"].count_a == 2 and rows["nsubj"].count_b == 1
    assert rows["nsubj"].per1k_a == pytest.approx(2 / 6 * 1000)
    assert rows["nsubj"].per1k_b == pytest.approx(1 / 3 * 1000)
    assert rows["nsubj"].ratio == pytest.approx(1.0)
    assert rows["obl"].count_b == 0 and rows["obl"].ratio == 0.0
    assert rows["obj"].ratio == pytest.approx(2.0)


def test_relation_frequencies_sorted_by_ratio_then_key():
    a, b = _pair()
    rows = relation_frequencies(a, b)
    ratios = [r.ratio for r in rows]
    defined = [r for r in ratios if r is not None]
    assert defined == sorted(defined)
    keys_at_one = [r.key for r in rows if r.ratio == pytest.approx(1.0)]
    assert keys_at_one == sorted(keys_at_one)


def test_self_comparison_all_ratios_one():
    c = simple_corpus(n_sent=4)
    for row in relation_frequencies(c, c):
        assert row.ratio == pytest.approx(1.0)


def test_relation_counts_cover_every_word():
    c = simple_corpus(n_sent=3)
    assert sum(relation_counts(c).values()) == token_count(c)


def test_empty_corpus_rejected():
    with pytest.raises(AnalyticsError):
        relation_frequencies(Corpus(name="empty"), simple_corpus())


def test_count_query_fields():
    c = simple_corpus()
    assert count_query(c, QuerySpec("form", "A")).matches == 1
    assert count_query(c, QuerySpec("lemma", "B")).matches == 1
    assert count_query(c, QuerySpec("deprel", "nsubj")).matches == 1
    assert count_query(c, QuerySpec("upos", "NOUN")).matches == 3
    zero = count_query(c, QuerySpec("form", "missing"))
    assert zero.matches == 0 and zero.per1k == 0.0


def test_count_query_deprel_base():
    c = simple_corpus(deprels=("nmod:poss", "root", "obj"))
    assert count_query(c, QuerySpec("deprel_base", "nmod")).matches == 1
    assert count_query(c, QuerySpec("deprel", "nmod")).matches == 0


def test_unknown_match_field_rejected():
    with pytest.raises(AnalyticsError):
        QuerySpec("color", "red")


def _parallel_pair():
    def make(name, keys):
        docs = []
        for i, key in enumerate(keys):
            docs.append(document([sentence([("A", 2, "nsubj"), ("B", 0, "root"),
                                            ("C", 2, "obj")], f"{name}{i}")],
                                 doc_id=f"{name}{i}", parallel_key=key))
        return corpus(docs, name=name)
    a = make("a", ["k1", "k2", None, "k3"])
    b = make("b", ["k2", "k3", "k9", None])
    return a, b


def test_parallel_subset_intersects_and_keeps_order():
    a, b = _parallel_pair()
    pa, pb = parallel_subset(a, b)
    assert [d.parallel_key for d in pa.documents] == ["k2", "k3"]
    assert [d.parallel_key for d in pb.documents] == ["k2", "k3"]


def test_parallel_subset_identity_and_disjoint():
    a, _ = _parallel_pair()
    pa, pb = parallel_subset(a, a)
    assert [d.doc_id for d in pa.documents] == [d.doc_id for d in a.documents
                                                if d.parallel_key is not None]
    assert pa.documents == pb.documents
    disjoint_b = corpus([document([sentence([("X", 0, "root")])],
                                  doc_id="z", parallel_key="other")], name="z")
    ea, eb = parallel_subset(a, disjoint_b)
    assert ea.documents == () and eb.documents == ()


def test_duplicate_parallel_key_rejected():
    d1 = document([sentence([("A", 0, "root")])], doc_id="x", parallel_key="k")
    d2 = document([sentence([("B", 0, "root")])], doc_id="y", parallel_key="k")
    with pytest.raises(DuplicateParallelKeyError):
        parallel_subset(corpus([d1, d2], name="dup"), corpus([d1], name="one"))


def test_parallel_scope_query():
    a, b = _parallel_pair()
    r = count_query(a, QuerySpec("deprel", "nsubj", "parallel"), b)
    assert r.matches == 2 and r.total == 6
    with pytest.raises(AnalyticsError):
        count_query(a, QuerySpec("deprel", "nsubj", "parallel"))


def test_marker_ratio_identity_is_one():
    a, _ = _parallel_pair()
    q = QuerySpec("deprel", "nsubj")
    assert marker_ratio(a, a, q, {"k1", "k2"}) == pytest.approx(1.0)


def test_marker_ratio_zero_denominator_undefined():
    a, b = _parallel_pair()
    q = QuerySpec("form", "A")       # present in a
    qb = QuerySpec("form", "zzz")    # absent in b
    assert marker_ratio(a, b, q, {"k2"}, qb) is None


def test_marker_ratio_requires_keys_in_both():
    a, b = _parallel_pair()
    with pytest.raises(AnalyticsError):
        marker_ratio(a, b, QuerySpec("form", "A"), {"k1"})  # k1 missing in b


def test_vocabulary_overlap_identity_and_disjoint():
    c = simple_corpus()
    v = vocabulary_overlap(c, c)
    assert v.unique_a == v.unique_b == v.shared == 3
    other = simple_corpus(doc_id="d2", name="other")
    w = vocabulary_overlap(c, other)
    assert w.shared == 3
    different = corpus([document([sentence([("Z", 0, "root")])], doc_id="z")],
                       name="z")
    assert vocabulary_overlap(c, different).shared == 0


def test_vocabulary_overlap_lemma_unit():
    c = corpus([document([sentence([("run", 0, "root", {"lemma": "run"}),
                                    ("running", 1, "obj", {"lemma": "run"})])],
                         doc_id="d")], name="c")
    assert vocabulary_overlap(c, c, unit="form").unique_a == 2
    assert vocabulary_overlap(c, c, unit="lemma").unique_a == 1
    with pytest.raises(AnalyticsError):
        vocabulary_overlap(c, c, unit="upos")


def test_load_query_file(tmp_path):
    path = tmp_path / "q.query"
    path.write_text("# marker\nmatch = lemma\nvalue = nče\n", encoding="utf-8")
    q = load_query(path)
    assert q == QuerySpec("lemma", "nče", "all")
    bad = tmp_path / "bad.query"
    bad.write_text("value = x\n", encoding="utf-8")
    with pytest.raises(AnalyticsError):
        load_query(bad)


def test_per1k_scale_invariant_under_duplication():
    c = simple_corpus(n_sent=5)
    doubled = corpus([document(c.documents[0].sentences, doc_id="d1"),
                      document(c.documents[0].sentences, doc_id="d2")],
                     name="doubled")
    single = relation_frequencies(c, c)
    both = relation_frequencies(c, doubled)
    for r1, r2 in zip(single, both):
        assert r1.key == r2.key
        assert r1.per1k_a == pytest.approx(r2.per1k_b)
