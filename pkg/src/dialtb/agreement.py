"""Inter-annotator agreement over dependency labels and heads-as-offsets.

Two statistics are computed per text and in aggregate:

* Cohen's kappa, (p_o - p_e) / (1 - p_e), with expected agreement p_e taken
  from the two annotators' marginal label distributions.
* Mutual F1: micro-averaged F1 treating one annotation as reference and the
  other as hypothesis.  For token-aligned single-label annotation this is
  symmetric and equals the plain token agreement rate.

Heads are compared as offsets relative to the child (head position minus
child position), with root attachment kept as a distinct ROOT category
rather than offset 0.  Offsets shrink the label space relative to raw head
indices, which raises chance agreement and keeps kappa honest on long
sentences.

All statistics are returned in percent at full float precision; rendering
rounds half-even to two decimals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .conllu import DocumentUnit, SyntaxWord, iter_words
from .errors import AgreementError, AlignmentError

ROOT = "ROOT"


@dataclass(frozen=True, slots=True)
class HeadOffset:
    """Signed head-minus-child distance; value is None for root attachment."""

    value: int | None

    @property
    def is_root(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return ROOT if self.value is None else str(self.value)


def head_to_offset(word: SyntaxWord) -> HeadOffset:
    if word.head == 0:
        return HeadOffset(None)
    return HeadOffset(word.head - word.id)


def _check_lengths(a, b):
    if len(a) != len(b):
        raise AlignmentError(f"sequence lengths differ: {len(a)} vs {len(b)}")
    if not a:
        raise AgreementError("agreement undefined for empty sequences")


def cohens_kappa(a: list[str], b: list[str]) -> float:
    """Cohen's kappa in percent for two aligned label sequences."""
    _check_lengths(a, b)
    n = len(a)
    p_o = sum(1 for x, y in zip(a, b) if x == y) / n
    ca, cb = Counter(a), Counter(b)
    p_e = sum(ca[label] * cb.get(label, 0) for label in ca) / (n * n)
    if p_e == 1.0:
        if p_o == 1.0:
            return 100.0
        raise AgreementError("kappa undefined: chance agreement is 1 but observed is not")
    return (p_o - p_e) / (1.0 - p_e) * 100.0


def mutual_f1(a: list[str], b: list[str]) -> float:
    """Micro-averaged mutual F1 in percent; equals the agreement rate."""
    _check_lengths(a, b)
    matches = sum(1 for x, y in zip(a, b) if x == y)
    return matches / len(a) * 100.0


def macro_average(values: list[float]) -> float:
    return sum(values) / len(values)


def _aligned_words(text_id: str, da: DocumentUnit, db: DocumentUnit):
    sa = list(da.sentences)
    sb = list(db.sentences)
    if len(sa) != len(sb):
        raise AlignmentError(
            f"{text_id}: sentence counts differ ({len(sa)} vs {len(sb)})",
            position=(text_id, None, None))
    pairs = []
    for si, (x, y) in enumerate(zip(sa, sb), start=1):
        if len(x.words) != len(y.words):
            raise AlignmentError(
                f"{text_id}: sentence {si} has {len(x.words)} vs {len(y.words)} words",
                position=(text_id, si, None))
        for wi, (wa, wb) in enumerate(zip(x.words, y.words), start=1):
            if wa.form != wb.form:
                raise AlignmentError(
                    f"{text_id}: sentence {si} word {wi}: forms differ "
                    f"({wa.form!r} vs {wb.form!r})",
                    position=(text_id, si, wi))
            pairs.append((wa, wb))
    return pairs


@dataclass(frozen=True, slots=True)
class AgreementStats:
    label_kappa: float
    label_f1: float
    head_kappa: float
    head_f1: float


@dataclass(frozen=True, slots=True)
class TextAgreement:
    text_id: str
    token_count: int
    stats: AgreementStats


@dataclass(frozen=True, slots=True)
class AgreementReport:
    per_text: tuple[TextAgreement, ...]
    macro_avg: AgreementStats
    micro_avg: AgreementStats


def _stats_for(pairs) -> AgreementStats:
    labels_a = [wa.deprel for wa, _ in pairs]
    labels_b = [wb.deprel for _, wb in pairs]
    heads_a = [str(head_to_offset(wa)) for wa, _ in pairs]
    heads_b = [str(head_to_offset(wb)) for _, wb in pairs]
    return AgreementStats(
        label_kappa=cohens_kappa(labels_a, labels_b),
        label_f1=mutual_f1(labels_a, labels_b),
        head_kappa=cohens_kappa(heads_a, heads_b),
        head_f1=mutual_f1(heads_a, heads_b),
    )


def agreement_report(pairs: list[tuple[str, DocumentUnit, DocumentUnit]]) -> AgreementReport:
    """Per-text and aggregate agreement for doubly annotated documents.

    The label task uses the full dependency label including subtype; the head
    task uses offsets.  Macro averages are unweighted means of per-text
    values; micro averages pool all tokens before computing each statistic.
    """
    if not pairs:
        raise AgreementError("no annotated text pairs given")
    per_text = []
    pooled = []
    for text_id, da, db in pairs:
        word_pairs = _aligned_words(text_id, da, db)
        pooled.extend(word_pairs)
        per_text.append(TextAgreement(text_id, len(word_pairs), _stats_for(word_pairs)))
    macro = AgreementStats(
        label_kappa=macro_average([t.stats.label_kappa for t in per_text]),
        label_f1=macro_average([t.stats.label_f1 for t in per_text]),
        head_kappa=macro_average([t.stats.head_kappa for t in per_text]),
        head_f1=macro_average([t.stats.head_f1 for t in per_text]),
    )
    return AgreementReport(tuple(per_text), macro, _stats_for(pooled))


def label_sequence(doc: DocumentUnit) -> list[str]:
    return [w.deprel for w in iter_words(doc)]


def offset_sequence(doc: DocumentUnit) -> list[str]:
    return [str(head_to_offset(w)) for w in iter_words(doc)]
