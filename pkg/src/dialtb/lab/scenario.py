"""Experiment scenario assembly for cross-dialect training.

Four settings are supported, with corpus_a conventionally the smaller
dialect:

* single_a / single_b: train on one dialect's train partition.
* joint: train on both train partitions together.
* balanced: train on all of corpus_a's train partition plus randomly
  sampled corpus_b train documents up to corpus_a's train token count.
  Sampling is without replacement at whole-document granularity and stops at
  the first document that reaches or exceeds the target, so the sampled side
  is within one document of the target (overshoot is recorded).  Documents
  whose parallel key also occurs in corpus_a's train or test partitions are
  never sampled, so the same underlying text cannot appear on both sides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..conllu import Corpus, DocumentUnit, token_count
from ..errors import ScenarioError

SCENARIO_NAMES = ("single_a", "single_b", "joint", "balanced")


@dataclass(frozen=True, slots=True)
class Scenario:
    name: str
    train_docs: tuple[DocumentUnit, ...]
    dev_docs: tuple[DocumentUnit, ...]
    test_corpus: Corpus
    seed: int
    info: dict = field(default_factory=dict)

    @property
    def train_tokens(self) -> int:
        return sum(token_count(d) for d in self.train_docs)


def partition_docs(corpus: Corpus, partition: str) -> tuple[DocumentUnit, ...]:
    return tuple(d for d in corpus.documents if d.partition == partition)


def _subcorpus(corpus: Corpus, partition: str) -> Corpus:
    return Corpus(name=f"{corpus.name}-{partition}", documents=partition_docs(corpus, partition))


def assemble(name: str, corpus_a: Corpus, corpus_b: Corpus, seed: int = 42) -> Scenario:
    """Build a deterministic scenario; identical inputs and seed reproduce it."""
    if name not in SCENARIO_NAMES:
        raise ScenarioError(f"unknown scenario {name!r}; expected one of {SCENARIO_NAMES}")
    a_train = partition_docs(corpus_a, "train")
    b_train = partition_docs(corpus_b, "train")
    info: dict = {"corpus_a": corpus_a.name, "corpus_b": corpus_b.name}

    if name == "single_a":
        train, dev, test = a_train, partition_docs(corpus_a, "dev"), _subcorpus(corpus_a, "test")
    elif name == "single_b":
        train, dev, test = b_train, partition_docs(corpus_b, "dev"), _subcorpus(corpus_b, "test")
    elif name == "joint":
        train = a_train + b_train
        dev = partition_docs(corpus_a, "dev") + partition_docs(corpus_b, "dev")
        test = _subcorpus(corpus_a, "test")
    else:  # balanced
        target = sum(token_count(d) for d in a_train)
        if target == 0:
            raise ScenarioError(f"corpus {corpus_a.name!r} has no train tokens")
        excluded_keys = {d.parallel_key
                         for d in a_train + partition_docs(corpus_a, "test")
                         if d.parallel_key is not None}
        eligible = [d for d in b_train if d.parallel_key not in excluded_keys
                    or d.parallel_key is None]
        rng = random.Random(seed)
        rng.shuffle(eligible)
        sampled: list[DocumentUnit] = []
        sampled_tokens = 0
        for doc in eligible:
            if sampled_tokens >= target:
                break
            sampled.append(doc)
            sampled_tokens += token_count(doc)
        if sampled_tokens < target:
            raise ScenarioError(
                f"not enough {corpus_b.name!r} train documents after parallel exclusion: "
                f"{sampled_tokens} tokens available, {target} needed")
        train = a_train + tuple(sampled)
        dev = partition_docs(corpus_a, "dev")
        test = _subcorpus(corpus_a, "test")
        info.update(
            target_tokens=target,
            sampled_tokens=sampled_tokens,
            overshoot_tokens=sampled_tokens - target,
            sampled_doc_ids=[d.doc_id for d in sampled],
            excluded_parallel_keys=sorted(excluded_keys),
        )

    if not train:
        raise ScenarioError(f"scenario {name!r} has an empty train set")
    info["train_doc_ids"] = [d.doc_id for d in train]
    info["train_tokens"] = sum(token_count(d) for d in train)
    return Scenario(name=name, train_docs=train, dev_docs=dev,
                    test_corpus=test, seed=seed, info=info)
