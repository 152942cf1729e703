"""Treebank well-formedness and convention checks.

Checks are pure functions producing issue records; they never mutate or
reject their input.  Severities are ``error`` (ill-formed annotation),
``warning`` (suspicious but tolerated, e.g. a bound-group surface that does
not equal its concatenated word forms) and ``info`` (statistics such as
non-projectivity, which is legal in the annotation scheme but relevant to
parsing experiments).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .conllu import Corpus, Sentence, expand_mseg, iter_words
from .errors import MsegMismatchError

FORBIDDEN_LABELS = {
    "nsubj:pass": "passive subjects are not annotated; impersonal active syntax is used instead",
}


@dataclass(frozen=True, slots=True)
class Issue:
    severity: str          # error | warning | info
    code: str
    doc_id: str
    sent_id: str
    word_id: int | None
    message: str


@dataclass(frozen=True, slots=True)
class LabelInventory:
    base_labels: frozenset[str]
    subtype_labels: frozenset[str]

    @property
    def allowed(self) -> frozenset[str]:
        return self.base_labels | self.subtype_labels

    def __len__(self) -> int:
        return len(self.allowed)


def load_inventory(path=None) -> LabelInventory:
    """Load a label inventory file; the packaged default when path is None."""
    if path is None:
        text = (resources.files("dialtb") / "data" / "label_inventory.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    base, subtypes = set(), set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, _, kind = line.partition("\t")
        if kind == "base":
            base.add(label)
        elif kind == "subtype":
            subtypes.add(label)
        else:
            raise ValueError(f"bad inventory line {raw!r}: kind must be base or subtype")
    return LabelInventory(frozenset(base), frozenset(subtypes))


def validate_tree(sentence: Sentence) -> list[Issue]:
    """Report root-count, head-range and cycle problems in one sentence."""
    issues: list[Issue] = []
    n = len(sentence.words)
    sid = sentence.sent_id
    roots = [w.id for w in sentence.words if w.head == 0]
    if not roots:
        issues.append(Issue("error", "no-root", "", sid, None, "no word has head 0"))
    elif len(roots) > 1:
        issues.append(Issue("error", "multiple-roots", "", sid, None,
                            f"words {roots} all have head 0"))
    heads = {}
    for w in sentence.words:
        if w.head > n:
            issues.append(Issue("error", "head-out-of-range", "", sid, w.id,
                                f"head {w.head} does not exist (sentence has {n} words)"))
        else:
            heads[w.id] = w.head
    # Walk parent chains; anything not reaching 0 sits on or under a cycle.
    state = {}  # id -> True (reaches root) / False (cycle)
    for start in heads:
        chain = []
        node = start
        while node != 0 and node in heads and node not in state:
            chain.append(node)
            node = heads[node]
            if node in chain:
                for c in chain[chain.index(node):]:
                    state[c] = False
                break
        ok = state.get(node, True) if node != 0 else True
        for c in chain:
            state.setdefault(c, ok)
    cycle_members = sorted(i for i, ok in state.items() if not ok)
    if cycle_members:
        issues.append(Issue("error", "head-cycle", "", sid, cycle_members[0],
                            f"head cycle involving words {cycle_members}"))
    return issues


def is_projective(sentence: Sentence) -> bool:
    arcs = [(min(w.head, w.id), max(w.head, w.id)) for w in sentence.words if w.head != 0]
    for i, (a1, b1) in enumerate(arcs):
        for a2, b2 in arcs[i + 1:]:
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                return False
    return True


def validate_labels(corpus: Corpus, inventory: LabelInventory) -> list[Issue]:
    """Flag dependency labels outside the inventory."""
    allowed = inventory.allowed
    issues = []
    for doc in corpus.documents:
        for s in doc.sentences:
            for w in s.words:
                if w.deprel in allowed:
                    continue
                if w.deprel in FORBIDDEN_LABELS:
                    issues.append(Issue("error", "label-forbidden", doc.doc_id, s.sent_id,
                                        w.id, f"{w.deprel}: {FORBIDDEN_LABELS[w.deprel]}"))
                else:
                    issues.append(Issue("error", "label-not-in-inventory", doc.doc_id,
                                        s.sent_id, w.id, f"label {w.deprel!r} is not allowed"))
    return issues


def validate_bound_groups(corpus: Corpus, strict: bool = False) -> list[Issue]:
    """Check group surfaces against concatenated word forms, and MSeg values.

    Surface mismatches are warnings unless ``strict`` (editorial normalization
    can legitimately break exact concatenation); MSeg mismatches are always
    errors.
    """
    severity = "error" if strict else "warning"
    issues = []
    for doc in corpus.documents:
        for s in doc.sentences:
            for g in s.groups:
                joined = "".join(w.form for w in s.group_surface_words(g))
                if joined != g.surface:
                    issues.append(Issue(
                        severity, "group-surface-mismatch", doc.doc_id, s.sent_id, g.first_id,
                        f"group surface {g.surface!r} != concatenated forms {joined!r}"))
            for w in s.words:
                try:
                    expand_mseg(w)
                except MsegMismatchError as exc:
                    issues.append(Issue("error", "mseg-mismatch", doc.doc_id, s.sent_id,
                                        w.id, str(exc)))
    return issues


def observed_labels(corpus: Corpus) -> set[str]:
    return {w.deprel for w in iter_words(corpus)}


@dataclass(frozen=True, slots=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    @property
    def error_count(self) -> int:
        return sum(1 for i in self.issues if i.severity == "error")

    @property
    def warning_count(self) -> int:
        return sum(1 for i in self.issues if i.severity == "warning")

    def to_rows(self) -> list[tuple]:
        return [(i.severity, i.code, i.doc_id, i.sent_id,
                 "" if i.word_id is None else i.word_id, i.message)
                for i in self.issues]


def validate_corpus(corpus: Corpus, inventory: LabelInventory | None = None,
                    strict_groups: bool = False) -> ValidationReport:
    """Run all checks; issues come back in document/sentence/word/code order."""
    if inventory is None:
        inventory = load_inventory()
    doc_order = {d.doc_id: i for i, d in enumerate(corpus.documents)}
    sent_order = {}
    issues: list[Issue] = []
    for d in corpus.documents:
        for si, s in enumerate(d.sentences):
            sent_order[(d.doc_id, s.sent_id)] = si
            for issue in validate_tree(s):
                issues.append(replace(issue, doc_id=d.doc_id))
            if not is_projective(s):
                issues.append(Issue("info", "nonprojective-tree", d.doc_id, s.sent_id,
                                    None, "sentence contains crossing arcs"))
    issues.extend(validate_labels(corpus, inventory))
    issues.extend(validate_bound_groups(corpus, strict=strict_groups))
    issues.sort(key=lambda i: (doc_order.get(i.doc_id, -1),
                               sent_order.get((i.doc_id, i.sent_id), -1),
                               i.word_id if i.word_id is not None else 0,
                               i.code))
    return ValidationReport(tuple(issues))
