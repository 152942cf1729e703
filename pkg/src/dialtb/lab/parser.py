"""Deterministic transition-based baseline parser.

Arc-standard system with a labeled action set: SHIFT moves the next buffer
word onto the stack; LA:label makes the stack top the head of the word below
it; RA:label makes the word below the head of the stack top.  A virtual root
node 0 sits at the stack bottom and may only take one child, attached by a
final RA with a root-position label once the buffer is exhausted, so decoded
trees always have exactly one root and are projective by construction.

Learning is a plain averaged perceptron over sparse indicator features of
the top two stack items and first two buffer items (forms, lemmas, UPOS,
their pairs) plus the labels and forms of the leftmost/rightmost dependents
already attached.  Training follows the static oracle on projectivized gold
trees; evaluation elsewhere is always against the original unlifted trees.
Everything is seeded and single-threaded: identical input, seed and epochs
give bit-identical model bytes.
"""

from __future__ import annotations

import hashlib
import pickle
import random
from dataclasses import dataclass

from ..conllu import Corpus, Sentence, replace_annotations
from ..errors import ScenarioError
from .scenario import Scenario

MODEL_MAGIC = b"DTBLAB01"

SHIFT = "SH"

# Bumping anything in the feature inventory means bumping this version.
TEMPLATE_VERSION = "v1"
TEMPLATE_NAMES = (
    "s0.form", "s0.lemma", "s0.upos",
    "s1.form", "s1.lemma", "s1.upos",
    "b0.form", "b0.lemma", "b0.upos",
    "b1.form", "b1.lemma", "b1.upos",
    "s0.upos|s1.upos", "s0.form|s1.form", "s0.lemma|s1.lemma",
    "s0.upos|s1.form", "s0.form|s1.upos",
    "s0.upos|b0.upos", "s0.form|b0.form", "s0.lemma|b0.lemma",
    "s1.upos|b0.upos", "s0.upos|s1.upos|b0.upos",
    "s0.ldep", "s0.rdep", "s1.ldep", "s1.rdep",
    "s0.lform", "s0.rform", "s1.lform", "s1.rform",
    "s0.upos|s0.ldep", "s1.upos|s1.rdep",
)


def template_hash() -> str:
    text = TEMPLATE_VERSION + "\n" + "\n".join(TEMPLATE_NAMES)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


_NIL = "_NIL_"
_ROOT_FORM = "_ROOT_"


class _State:
    """Parser configuration: stack, buffer and the arcs built so far."""

    __slots__ = ("forms", "lemmas", "upos", "stack", "buffer", "pos",
                 "heads", "labels", "lchild", "rchild")

    def __init__(self, sentence: Sentence):
        n = len(sentence.words)
        self.forms = [_ROOT_FORM] + [w.form for w in sentence.words]
        self.lemmas = [_ROOT_FORM] + [w.lemma or w.form for w in sentence.words]
        self.upos = [_ROOT_FORM] + [w.upos or _NIL for w in sentence.words]
        self.stack = [0]
        self.pos = 1                 # next buffer index
        self.buffer = n
        self.heads = [0] * (n + 1)
        self.labels = [""] * (n + 1)
        self.lchild = [0] * (n + 1)  # leftmost dependent id, 0 = none
        self.rchild = [0] * (n + 1)

    def buffer_size(self) -> int:
        return self.buffer - self.pos + 1

    def terminal(self) -> bool:
        return len(self.stack) == 1 and self.pos > self.buffer

    def apply(self, action: str) -> None:
        if action == SHIFT:
            self.stack.append(self.pos)
            self.pos += 1
            return
        kind, _, label = action.partition(":")
        s0 = self.stack[-1]
        s1 = self.stack[-2]
        if kind == "LA":
            head, dep = s0, s1
            self.stack.pop(-2)
        else:
            head, dep = s1, s0
            self.stack.pop()
        self.heads[dep] = head
        self.labels[dep] = label
        if self.lchild[head] == 0 or dep < self.lchild[head]:
            self.lchild[head] = dep
        if dep > self.rchild[head]:
            self.rchild[head] = dep

    def features(self) -> list[str]:
        stack = self.stack
        s0 = stack[-1] if len(stack) >= 1 else -1
        s1 = stack[-2] if len(stack) >= 2 else -1
        b0 = self.pos if self.pos <= self.buffer else -1
        b1 = self.pos + 1 if self.pos + 1 <= self.buffer else -1

        def wrd(i):
            if i < 0:
                return _NIL, _NIL, _NIL
            return self.forms[i], self.lemmas[i], self.upos[i]

        s0w, s0l, s0p = wrd(s0)
        s1w, s1l, s1p = wrd(s1)
        b0w, b0l, b0p = wrd(b0)
        b1w, b1l, b1p = wrd(b1)

        def child(i, side):
            if i < 0:
                return _NIL, _NIL
            c = self.lchild[i] if side == 0 else self.rchild[i]
            if c == 0:
                return _NIL, _NIL
            return self.labels[c], self.forms[c]

        s0ld, s0lf = child(s0, 0)
        s0rd, s0rf = child(s0, 1)
        s1ld, s1lf = child(s1, 0)
        s1rd, s1rf = child(s1, 1)

        return [
            "0=" + s0w, "1=" + s0l, "2=" + s0p,
            "3=" + s1w, "4=" + s1l, "5=" + s1p,
            "6=" + b0w, "7=" + b0l, "8=" + b0p,
            "9=" + b1w, "10=" + b1l, "11=" + b1p,
            "12=" + s0p + "|" + s1p, "13=" + s0w + "|" + s1w, "14=" + s0l + "|" + s1l,
            "15=" + s0p + "|" + s1w, "16=" + s0w + "|" + s1p,
            "17=" + s0p + "|" + b0p, "18=" + s0w + "|" + b0w, "19=" + s0l + "|" + b0l,
            "20=" + s1p + "|" + b0p, "21=" + s0p + "|" + s1p + "|" + b0p,
            "22=" + s0ld, "23=" + s0rd, "24=" + s1ld, "25=" + s1rd,
            "26=" + s0lf, "27=" + s0rf, "28=" + s1lf, "29=" + s1rf,
            "30=" + s0p + "|" + s0ld, "31=" + s1p + "|" + s1rd,
        ]


# ---------------------------------------------------------------------------
# Projectivization

def _nonprojective_arcs(heads: list[int]) -> list[tuple[int, int]]:
    """Arcs (head, dep) that cross another arc; heads is 1-based with heads[0] unused."""
    n = len(heads) - 1
    spans = [(min(heads[d], d), max(heads[d], d)) for d in range(1, n + 1) if heads[d] != 0]
    bad = []
    for d in range(1, n + 1):
        h = heads[d]
        if h == 0:
            continue
        lo, hi = min(h, d), max(h, d)
        for lo2, hi2 in spans:
            if lo < lo2 < hi < hi2 or lo2 < lo < hi2 < hi:
                bad.append((h, d))
                break
    return bad


def projectivize(sentence: Sentence) -> Sentence:
    """Lift the shortest crossing arc onto its grandparent until projective."""
    heads = [0] + [w.head for w in sentence.words]
    deprels = [w.deprel for w in sentence.words]
    n = len(sentence.words)
    for _ in range(n * n + 1):
        bad = _nonprojective_arcs(heads)
        if not bad:
            break
        h, d = min(bad, key=lambda arc: (abs(arc[0] - arc[1]), arc[1]))
        if heads[h] == d:
            # Mutual crossing through a malformed cycle; refuse quietly.
            break
        heads[d] = heads[h]
    return replace_annotations(sentence, heads[1:], deprels)


# ---------------------------------------------------------------------------
# Oracle

def _oracle_sequence(sentence: Sentence) -> list[str]:
    """Static arc-standard derivation of a projective single-root tree."""
    n = len(sentence.words)
    gold_head = [0] + [w.head for w in sentence.words]
    gold_label = [""] + [w.deprel for w in sentence.words]
    pending = [0] * (n + 1)
    for w in sentence.words:
        pending[w.head] += 1
    stack = [0]
    pos = 1
    seq = []
    while not (len(stack) == 1 and pos > n):
        action = None
        if len(stack) >= 2:
            s0, s1 = stack[-1], stack[-2]
            if s1 != 0 and gold_head[s1] == s0 and pending[s1] == 0:
                action = "LA:" + gold_label[s1]
            elif gold_head[s0] == s1 and pending[s0] == 0 and (s1 != 0 or pos > n):
                action = "RA:" + gold_label[s0]
        if action is None:
            if pos > n:
                raise ScenarioError(
                    f"sentence {sentence.sent_id!r} has no arc-standard derivation "
                    "(non-projective or not a tree)")
            action = SHIFT
            stack.append(pos)
            pos += 1
        else:
            if action.startswith("LA"):
                dep = stack.pop(-2)
            else:
                dep = stack.pop()
            pending[gold_head[dep]] -= 1
        seq.append(action)
    return seq


# ---------------------------------------------------------------------------
# Model

@dataclass(frozen=True, slots=True)
class ParserModel:
    template_hash: str
    dep_labels: tuple[str, ...]   # labels allowed on ordinary arcs
    root_labels: tuple[str, ...]  # labels allowed on the arc from the root node
    weights: dict                 # feature -> {action: averaged weight}
    seed: int
    epochs: int

    def to_bytes(self) -> bytes:
        payload = {
            "template_hash": self.template_hash,
            "dep_labels": list(self.dep_labels),
            "root_labels": list(self.root_labels),
            "seed": self.seed,
            "epochs": self.epochs,
            "weights": {f: dict(sorted(acts.items()))
                        for f, acts in sorted(self.weights.items())},
        }
        return MODEL_MAGIC + pickle.dumps(payload, protocol=4)

    @classmethod
    def from_bytes(cls, data: bytes) -> "ParserModel":
        if not data.startswith(MODEL_MAGIC):
            raise ValueError("not a parser model file")
        payload = pickle.loads(data[len(MODEL_MAGIC):])
        if payload["template_hash"] != template_hash():
            raise ValueError("model was trained with a different feature template version")
        return cls(
            template_hash=payload["template_hash"],
            dep_labels=tuple(payload["dep_labels"]),
            root_labels=tuple(payload["root_labels"]),
            weights=payload["weights"],
            seed=payload["seed"],
            epochs=payload["epochs"],
        )

    def save(self, path) -> None:
        from pathlib import Path
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path) -> "ParserModel":
        from pathlib import Path
        return cls.from_bytes(Path(path).read_bytes())


def _action_sets(dep_labels, root_labels):
    la = tuple("LA:" + l for l in dep_labels)
    ra = tuple("RA:" + l for l in dep_labels)
    ra_root = tuple("RA:" + l for l in root_labels)
    return la, ra, ra_root


def _valid_actions(state: _State, la, ra, ra_root):
    shiftable = state.pos <= state.buffer
    if len(state.stack) >= 2:
        if state.stack[-2] != 0:
            acts = list(la) + list(ra)
            if shiftable:
                acts.append(SHIFT)
            return acts
        if not shiftable:
            return list(ra_root)
    return [SHIFT]


def _score(weights, features, scores):
    for f in features:
        acts = weights.get(f)
        if acts:
            for a, w in acts.items():
                scores[a] = scores.get(a, 0.0) + w


def _best(scores, valid):
    best_a = valid[0]
    best_s = scores.get(best_a, 0.0)
    for a in valid[1:]:
        s = scores.get(a, 0.0)
        if s > best_s:
            best_a, best_s = a, s
    return best_a


def train(scenario: Scenario, epochs: int = 8, seed: int = 42) -> ParserModel:
    """Averaged-perceptron training over the scenario's train documents."""
    sentences = [s for doc in scenario.train_docs for s in doc.sentences if s.words]
    if not sentences:
        raise ScenarioError("train set contains no sentences")
    dep_labels = sorted({w.deprel for s in sentences for w in s.words if w.head != 0})
    root_labels = sorted({w.deprel for s in sentences for w in s.words if w.head == 0})
    if not dep_labels:
        dep_labels = ["dep"]
    if not root_labels:
        root_labels = ["root"]
    la, ra, ra_root = _action_sets(dep_labels, root_labels)

    projective = [projectivize(s) for s in sentences]
    oracle = [_oracle_sequence(s) for s in projective]

    # weights: feature -> action -> [current, accumulated, last_update]
    weights: dict[str, dict[str, list]] = {}
    rng = random.Random(seed)
    order = list(range(len(projective)))
    t = 0

    def bump(feature, action, delta):
        acts = weights.get(feature)
        if acts is None:
            acts = weights[feature] = {}
        entry = acts.get(action)
        if entry is None:
            entry = acts[action] = [0.0, 0.0, 0]
        entry[1] += entry[0] * (t - entry[2])
        entry[2] = t
        entry[0] += delta

    for _ in range(epochs):
        rng.shuffle(order)
        for idx in order:
            state = _State(projective[idx])
            for gold_action in oracle[idx]:
                t += 1
                features = state.features()
                valid = _valid_actions(state, la, ra, ra_root)
                scores: dict[str, float] = {}
                for f in features:
                    acts = weights.get(f)
                    if acts:
                        for a, entry in acts.items():
                            scores[a] = scores.get(a, 0.0) + entry[0]
                predicted = _best(scores, valid)
                if predicted != gold_action:
                    for f in features:
                        bump(f, gold_action, 1.0)
                        bump(f, predicted, -1.0)
                state.apply(gold_action)

    averaged: dict[str, dict[str, float]] = {}
    for f, acts in weights.items():
        row = {}
        for a, (w, acc, last) in acts.items():
            avg = (acc + w * (t - last)) / t
            if avg != 0.0:
                row[a] = avg
        if row:
            averaged[f] = row
    return ParserModel(template_hash=template_hash(),
                       dep_labels=tuple(dep_labels), root_labels=tuple(root_labels),
                       weights=averaged, seed=seed, epochs=epochs)


def parse(model: ParserModel, sentence: Sentence) -> Sentence:
    """Greedy decode; returns a copy with heads/deprels overwritten."""
    if not sentence.words:
        return sentence
    la, ra, ra_root = _action_sets(model.dep_labels, model.root_labels)
    state = _State(sentence)
    while not state.terminal():
        features = state.features()
        valid = _valid_actions(state, la, ra, ra_root)
        scores: dict[str, float] = {}
        _score(model.weights, features, scores)
        state.apply(_best(scores, valid))
    n = len(sentence.words)
    return replace_annotations(sentence, state.heads[1:n + 1], state.labels[1:n + 1])


def parse_corpus(model: ParserModel, corpus: Corpus) -> Corpus:
    from dataclasses import replace as dc_replace
    docs = []
    for doc in corpus.documents:
        parsed = tuple(parse(model, s) for s in doc.sentences)
        docs.append(dc_replace(doc, sentences=parsed))
    return Corpus(name=corpus.name, documents=tuple(docs))
