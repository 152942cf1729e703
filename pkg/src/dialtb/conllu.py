"""CoNLL-U data model with bound groups, plus a byte-faithful reader/writer.

A bound group (one space-delimited orthographic unit built around a single
stressed lexical core) is represented as a CoNLL-U multiword token: a range
line ``i-j`` carrying the group's surface form, followed by the syntactic
words it contains.  A word's internal morph segmentation may additionally be
stored in the MISC column under the ``MSeg`` key, with ``-`` separating the
morphs; removing the separators must restore the word form.

The reader preserves comments, field order and MISC/FEATS key order, so that
writing a document parsed from well-formed input reproduces the input byte
for byte.  All types are immutable after construction and safe to share
across threads; corpus-level helpers are pure functions.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field, replace

from .errors import ConlluParseError, MsegMismatchError

PARTITIONS = ("train", "dev", "test")

# FEATS/MISC are ordered (key, value) pairs; a pair with value None round-trips
# a bare item that had no "=" in the source.
Pairs = tuple[tuple[str, str | None], ...]


def pairs_get(pairs: Pairs, key: str) -> str | None:
    for k, v in pairs:
        if k == key:
            return v
    return None


def pairs_from_dict(d: dict) -> Pairs:
    return tuple((str(k), None if v is None else str(v)) for k, v in d.items())


def _parse_pairs(text: str) -> Pairs:
    if text == "_":
        return ()
    out = []
    for item in text.split("|"):
        if "=" in item:
            k, v = item.split("=", 1)
            out.append((k, v))
        else:
            out.append((item, None))
    return tuple(out)


def _format_pairs(pairs: Pairs) -> str:
    if not pairs:
        return "_"
    return "|".join(k if v is None else f"{k}={v}" for k, v in pairs)


def _check_deprel(deprel: str) -> None:
    parts = deprel.split(":")
    ok = (
        deprel
        and len(parts) <= 2
        and all(parts)
        and not any(c.isspace() for c in deprel)
    )
    if not ok:
        raise ValueError(f"bad dependency label {deprel!r}: expected 'base' or 'base:subtype'")


@dataclass(frozen=True, slots=True)
class SyntaxWord:
    """One word row: id is 1-based within the sentence, head 0 means root."""

    id: int
    form: str
    lemma: str = ""
    upos: str = ""
    xpos: str = ""
    feats: Pairs = ()
    head: int = 0
    deprel: str = "dep"
    deps: str = ""
    misc: Pairs = ()

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"word id must be >= 1, got {self.id}")
        if self.head < 0:
            raise ValueError(f"head must be >= 0, got {self.head}")
        if self.head == self.id:
            raise ValueError(f"word {self.id} cannot be its own head")
        if not self.form:
            raise ValueError("form must be non-empty")
        _check_deprel(self.deprel)

    @property
    def deprel_base(self) -> str:
        return self.deprel.split(":", 1)[0]

    @property
    def mseg(self) -> str | None:
        return pairs_get(self.misc, "MSeg")


@dataclass(frozen=True, slots=True)
class BoundGroup:
    """A multiword-token span: ids first_id..last_id with the group surface.

    ``misc`` keeps any MISC content of the range line so files round-trip.
    """

    first_id: int
    last_id: int
    surface: str
    misc: Pairs = ()

    def __post_init__(self):
        if self.first_id < 1 or self.last_id < self.first_id:
            raise ValueError(f"bad group span {self.first_id}-{self.last_id}")

    def span(self) -> range:
        return range(self.first_id, self.last_id + 1)


@dataclass(frozen=True, slots=True)
class Sentence:
    sent_id: str = ""
    comments: tuple[str, ...] = ()
    words: tuple[SyntaxWord, ...] = ()
    groups: tuple[BoundGroup, ...] = ()

    def __post_init__(self):
        for i, w in enumerate(self.words, start=1):
            if w.id != i:
                raise ValueError(f"word ids must be 1..n consecutive, got {w.id} at position {i}")
        n = len(self.words)
        prev_last = 0
        for g in self.groups:
            if g.first_id <= prev_last:
                raise ValueError(f"overlapping or unordered group span {g.first_id}-{g.last_id}")
            if g.last_id > n:
                raise ValueError(f"group span {g.first_id}-{g.last_id} exceeds sentence length {n}")
            prev_last = g.last_id

    def group_at(self, word_id: int) -> BoundGroup | None:
        for g in self.groups:
            if g.first_id <= word_id <= g.last_id:
                return g
        return None

    def group_surface_words(self, g: BoundGroup) -> tuple[SyntaxWord, ...]:
        return self.words[g.first_id - 1 : g.last_id]


@dataclass(frozen=True, slots=True)
class DocumentUnit:
    doc_id: str = ""
    partition: str = "train"
    parallel_key: str | None = None
    sentences: tuple[Sentence, ...] = ()

    def __post_init__(self):
        if self.partition not in PARTITIONS:
            raise ValueError(f"partition must be one of {PARTITIONS}, got {self.partition!r}")


@dataclass(frozen=True, slots=True)
class Corpus:
    name: str = ""
    documents: tuple[DocumentUnit, ...] = ()

    def __post_init__(self):
        seen = set()
        for d in self.documents:
            if d.doc_id in seen:
                raise ValueError(f"duplicate doc_id {d.doc_id!r} in corpus {self.name!r}")
            seen.add(d.doc_id)


def iter_words(obj: Corpus | DocumentUnit | Sentence):
    """Yield word rows (never multiword range lines) in document order."""
    if isinstance(obj, Sentence):
        yield from obj.words
    elif isinstance(obj, DocumentUnit):
        for s in obj.sentences:
            yield from s.words
    else:
        for d in obj.documents:
            for s in d.sentences:
                yield from s.words


def token_count(obj: Corpus | DocumentUnit | Sentence) -> int:
    """Number of word rows; multiword range lines are not counted."""
    if isinstance(obj, Sentence):
        return len(obj.words)
    if isinstance(obj, DocumentUnit):
        return sum(len(s.words) for s in obj.sentences)
    return sum(token_count(d) for d in obj.documents)


def expand_mseg(word: SyntaxWord) -> list[str]:
    """Split a word into its MSeg morphs; [form] when no MSeg is present."""
    value = word.mseg
    if value is None:
        return [word.form]
    parts = value.split("-")
    if "".join(parts) != word.form:
        raise MsegMismatchError(
            f"MSeg {value!r} does not concatenate to form {word.form!r}"
        )
    return parts


# ---------------------------------------------------------------------------
# Reading

_SENT_ID_PREFIX = "# sent_id = "
_NEWDOC_PREFIX = "# newdoc id = "


def _decode(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def read_conllu(source, manifest_entry=None) -> DocumentUnit:
    """Parse CoNLL-U text (bytes, str or file object) into a DocumentUnit.

    ``manifest_entry`` supplies doc_id/partition/parallel_key and wins over
    any ``# newdoc id`` comment in the file.
    """
    text = _decode(source)
    sentences: list[Sentence] = []
    comments: list[str] = []
    words: list[SyntaxWord] = []
    groups: list[BoundGroup] = []
    pending_group: tuple[int, int, str, Pairs, int] | None = None
    newdoc_id = ""

    def flush(line_no: int):
        nonlocal comments, words, groups, pending_group
        if pending_group is not None:
            raise ConlluParseError(
                f"multiword range {pending_group[0]}-{pending_group[1]} not followed by its words",
                pending_group[4],
            )
        if not comments and not words:
            return
        if not words:
            raise ConlluParseError("comment block without any word lines", line_no)
        sent_id = ""
        for c in comments:
            if c.startswith(_SENT_ID_PREFIX):
                sent_id = c[len(_SENT_ID_PREFIX):]
                break
        try:
            sentences.append(
                Sentence(sent_id=sent_id, comments=tuple(comments),
                         words=tuple(words), groups=tuple(groups))
            )
        except ValueError as exc:
            raise ConlluParseError(str(exc), line_no) from exc
        comments, words, groups = [], [], []

    for line_no, line in enumerate(text.split("\n"), start=1):
        if line == "":
            flush(line_no)
            continue
        if line.startswith("#"):
            if words:
                raise ConlluParseError("comment line inside a sentence", line_no)
            if line.startswith(_NEWDOC_PREFIX) and not newdoc_id:
                newdoc_id = line[len(_NEWDOC_PREFIX):]
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluParseError(f"expected 10 tab-separated columns, got {len(cols)}", line_no)
        wid, form, lemma, upos, xpos, feats, head, deprel, deps, misc = cols
        if "-" in wid:
            lo_s, _, hi_s = wid.partition("-")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise ConlluParseError(f"bad multiword range id {wid!r}", line_no) from None
            if pending_group is not None:
                raise ConlluParseError(
                    f"multiword range {wid} overlaps the open range "
                    f"{pending_group[0]}-{pending_group[1]}", line_no)
            if hi < lo:
                raise ConlluParseError(f"empty multiword range {wid}", line_no)
            if lo != len(words) + 1:
                raise ConlluParseError(
                    f"multiword range {wid} does not start at the next word id "
                    f"(expected {len(words) + 1}); ranges may not overlap", line_no)
            if any(c != "_" for c in (lemma, upos, xpos, feats, head, deprel, deps)):
                raise ConlluParseError("multiword range line must leave fields 3-9 empty", line_no)
            pending_group = (lo, hi, form, _parse_pairs(misc), line_no)
            continue
        if "." in wid:
            raise ConlluParseError(f"empty nodes ({wid}) are not supported", line_no)
        try:
            wid_i = int(wid)
        except ValueError:
            raise ConlluParseError(f"non-integer word id {wid!r}", line_no) from None
        if wid_i != len(words) + 1:
            raise ConlluParseError(
                f"malformed id sequence: got {wid_i}, expected {len(words) + 1}", line_no)
        try:
            head_i = int(head)
        except ValueError:
            raise ConlluParseError(f"non-integer head {head!r}", line_no) from None
        try:
            words.append(SyntaxWord(
                id=wid_i,
                form=form,
                lemma="" if lemma == "_" else lemma,
                upos="" if upos == "_" else upos,
                xpos="" if xpos == "_" else xpos,
                feats=_parse_pairs(feats),
                head=head_i,
                deprel=deprel,
                deps="" if deps == "_" else deps,
                misc=_parse_pairs(misc),
            ))
        except ValueError as exc:
            raise ConlluParseError(str(exc), line_no) from exc
        if pending_group is not None and wid_i == pending_group[1]:
            lo, hi, surface, gmisc, _ = pending_group
            groups.append(BoundGroup(lo, hi, surface, gmisc))
            pending_group = None

    flush(len(text.split("\n")))

    doc_id = newdoc_id
    partition = "train"
    parallel_key = None
    if manifest_entry is not None:
        doc_id = manifest_entry.doc_id
        partition = manifest_entry.partition
        parallel_key = manifest_entry.parallel_key
    return DocumentUnit(doc_id=doc_id, partition=partition,
                        parallel_key=parallel_key, sentences=tuple(sentences))


# ---------------------------------------------------------------------------
# Writing

def _word_line(w: SyntaxWord) -> str:
    return "\t".join((
        str(w.id),
        w.form,
        w.lemma or "_",
        w.upos or "_",
        w.xpos or "_",
        _format_pairs(w.feats),
        str(w.head),
        w.deprel,
        w.deps or "_",
        _format_pairs(w.misc),
    ))


def write_conllu(doc: DocumentUnit) -> bytes:
    """Serialize a document; inverse of read_conllu on well-formed input."""
    out: list[str] = []
    for s in doc.sentences:
        comments = list(s.comments)
        if s.sent_id and not any(c.startswith(_SENT_ID_PREFIX) for c in comments):
            comments.insert(0, _SENT_ID_PREFIX + s.sent_id)
        out.extend(comments)
        by_first = {g.first_id: g for g in s.groups}
        for w in s.words:
            g = by_first.get(w.id)
            if g is not None:
                out.append("\t".join((
                    f"{g.first_id}-{g.last_id}", g.surface,
                    "_", "_", "_", "_", "_", "_", "_", _format_pairs(g.misc),
                )))
            out.append(_word_line(w))
        out.append("")
    return "\n".join(out).encode("utf-8") if out else b""


def replace_annotations(sentence: Sentence, heads: list[int], deprels: list[str]) -> Sentence:
    """Copy a sentence with new heads/deprels; everything else untouched."""
    if len(heads) != len(sentence.words) or len(deprels) != len(sentence.words):
        raise ValueError("annotation length does not match sentence length")
    new_words = tuple(
        replace(w, head=h, deprel=d)
        for w, h, d in zip(sentence.words, heads, deprels)
    )
    return replace(sentence, words=new_words)
