"""Attachment scoring and label confusion for parser output.

UAS is the fraction of word rows with the correct head; LAS additionally
requires the exact dependency label including any subtype.  Every word row
counts, punctuation included.  Confusion matrices collapse labels to their
base (everything before the first ``:``) and omit labels whose gold count
falls below a threshold from the displayed axes, while keeping full counts
so row sums always equal gold label totals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..conllu import Corpus
from ..errors import AlignmentError


def _aligned_word_pairs(gold: Corpus, pred: Corpus):
    if len(gold.documents) != len(pred.documents):
        raise AlignmentError(
            f"document counts differ: {len(gold.documents)} vs {len(pred.documents)}")
    for dg, dp in zip(gold.documents, pred.documents):
        if dg.doc_id != dp.doc_id:
            raise AlignmentError(f"document order differs: {dg.doc_id!r} vs {dp.doc_id!r}",
                                 position=(dg.doc_id, None, None))
        if len(dg.sentences) != len(dp.sentences):
            raise AlignmentError(
                f"{dg.doc_id}: sentence counts differ "
                f"({len(dg.sentences)} vs {len(dp.sentences)})",
                position=(dg.doc_id, None, None))
        for si, (sg, sp) in enumerate(zip(dg.sentences, dp.sentences), start=1):
            if len(sg.words) != len(sp.words):
                raise AlignmentError(
                    f"{dg.doc_id}: sentence {si} has {len(sg.words)} vs {len(sp.words)} words",
                    position=(dg.doc_id, si, None))
            for wi, (wg, wp) in enumerate(zip(sg.words, sp.words), start=1):
                if wg.form != wp.form:
                    raise AlignmentError(
                        f"{dg.doc_id}: sentence {si} word {wi}: forms differ "
                        f"({wg.form!r} vs {wp.form!r})",
                        position=(dg.doc_id, si, wi))
                yield wg, wp


@dataclass(frozen=True, slots=True)
class EvalReport:
    las: float
    uas: float
    token_count: int
    per_label: dict  # gold deprel -> (gold_count, correct_head, correct_head_and_label)


def score(gold: Corpus, pred: Corpus) -> EvalReport:
    total = 0
    head_ok = 0
    both_ok = 0
    per_label: dict[str, list[int]] = {}
    for wg, wp in _aligned_word_pairs(gold, pred):
        total += 1
        row = per_label.setdefault(wg.deprel, [0, 0, 0])
        row[0] += 1
        if wg.head == wp.head:
            head_ok += 1
            row[1] += 1
            if wg.deprel == wp.deprel:
                both_ok += 1
                row[2] += 1
    if total == 0:
        raise AlignmentError("cannot score empty corpora")
    return EvalReport(
        las=both_ok / total * 100.0,
        uas=head_ok / total * 100.0,
        token_count=total,
        per_label={k: tuple(v) for k, v in sorted(per_label.items())},
    )


def collapse_label(label: str) -> str:
    return label.split(":", 1)[0]


@dataclass(frozen=True, slots=True)
class ConfusionMatrix:
    labels: tuple[str, ...]   # displayed axes, by descending gold count
    cells: dict               # (gold_base, pred_base) -> count, over all labels
    omitted: dict             # gold_base -> gold count, for labels under threshold
    min_gold: int

    def cell(self, gold_label: str, pred_label: str) -> int:
        return self.cells.get((gold_label, pred_label), 0)

    def gold_total(self, gold_label: str) -> int:
        return sum(c for (g, _), c in self.cells.items() if g == gold_label)

    def matrix_rows(self) -> list[list]:
        rows = []
        for g in self.labels:
            rows.append([g] + [self.cells.get((g, p), 0) for p in self.labels])
        return rows


def confusion(gold: Corpus, pred: Corpus, min_gold: int = 10) -> ConfusionMatrix:
    cells: Counter = Counter()
    gold_counts: Counter = Counter()
    for wg, wp in _aligned_word_pairs(gold, pred):
        g, p = collapse_label(wg.deprel), collapse_label(wp.deprel)
        cells[(g, p)] += 1
        gold_counts[g] += 1
    kept = sorted((l for l, c in gold_counts.items() if c >= min_gold),
                  key=lambda l: (-gold_counts[l], l))
    omitted = {l: c for l, c in sorted(gold_counts.items()) if c < min_gold}
    return ConfusionMatrix(labels=tuple(kept), cells=dict(cells),
                           omitted=omitted, min_gold=min_gold)
