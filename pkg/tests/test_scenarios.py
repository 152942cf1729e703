import pytest

from dialtb import lab
from dialtb.conllu import token_count
from dialtb.errors import ScenarioError
from helpers import corpus, document, sentence


def _mini_pair():
    def doc(doc_id, partition, key=None, n=2):
        sents = [sentence([("A", 2, "nsubj"), ("B", 0, "root"), ("C", 2, "obj")],
                          sent_id=f"{doc_id}:s{i}") for i in range(n)]
        return document(sents, doc_id=doc_id, partition=partition, parallel_key=key)
    a = corpus([doc("a_tr1", "train", "k1"), doc("a_tr2", "train"),
                doc("a_dev", "dev"), doc("a_te", "test", "k2")], name="a")
    b = corpus([doc("b_tr1", "train", "k1", n=3), doc("b_tr2", "train", "k2", n=3),
                doc("b_tr3", "train", n=3), doc("b_tr4", "train", n=3),
                doc("b_dev", "dev"), doc("b_te", "test")], name="b")
    return a, b


def test_single_scenarios_use_exact_partitions():
    a, b = _mini_pair()
    sa = lab.assemble("single_a", a, b, seed=1)
    assert [d.doc_id for d in sa.train_docs] == ["a_tr1", "a_tr2"]
    assert [d.doc_id for d in sa.dev_docs] == ["a_dev"]
    assert [d.doc_id for d in sa.test_corpus.documents] == ["a_te"]
    sb = lab.assemble("single_b", a, b, seed=1)
    assert [d.doc_id for d in sb.train_docs] == ["b_tr1", "b_tr2", "b_tr3", "b_tr4"]


def test_joint_concatenates_train_sets():
    a, b = _mini_pair()
    sj = lab.assemble("joint", a, b, seed=1)
    sa = lab.assemble("single_a", a, b, seed=1)
    sb = lab.assemble("single_b", a, b, seed=1)
    assert sj.train_tokens == sa.train_tokens + sb.train_tokens


def test_balanced_within_one_document_and_no_parallel_leak():
    a, b = _mini_pair()
    s = lab.assemble("balanced", a, b, seed=3)
    target = s.info["target_tokens"]
    sampled = s.info["sampled_tokens"]
    sampled_docs = [d for d in s.train_docs if d.doc_id.startswith("b_")]
    assert sampled >= target
    assert sampled - target < max(token_count(d) for d in sampled_docs)
    forbidden = {"k1", "k2"}  # parallel keys of a's train and test docs
    assert all(d.parallel_key not in forbidden for d in sampled_docs)
    assert all(d.partition == "train" for d in sampled_docs)


def test_balanced_deterministic_per_seed(demo_pair):
    boh, sah = demo_pair
    s1 = lab.assemble("balanced", boh, sah, seed=7)
    s2 = lab.assemble("balanced", boh, sah, seed=7)
    assert s1.info["sampled_doc_ids"] == s2.info["sampled_doc_ids"]


def test_balanced_insufficient_data():
    a, b = _mini_pair()
    tiny_b = corpus([d for d in b.documents if d.doc_id == "b_tr1"], name="tiny")
    with pytest.raises(ScenarioError):
        lab.assemble("balanced", a, tiny_b, seed=1)


def test_unknown_scenario_rejected():
    a, b = _mini_pair()
    with pytest.raises(ScenarioError):
        lab.assemble("mixed", a, b, seed=1)


def test_demo_balanced_metadata(demo_pair):
    boh, sah = demo_pair
    s = lab.assemble("balanced", boh, sah, seed=42)
    assert s.info["target_tokens"] == 16510
    assert s.info["sampled_tokens"] >= 16510
    excluded = set(s.info["excluded_parallel_keys"])
    assert "mark:1" in excluded and "1cor:5" in excluded
    assert all(d for d in s.info["sampled_doc_ids"])
