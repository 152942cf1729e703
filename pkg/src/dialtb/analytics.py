"""Cross-corpus quantitative comparison.

Rates are per 1,000 word tokens.  Internally everything stays at full
precision; only display is lossy, and the display convention matters because
the reference tables this tooling reproduces were typeset that way:

* Three-decimal rates and ratios are truncated, not rounded
  (15.5699... prints as 15.569).
* Two-decimal rates are the three-decimal truncated value rounded half-even
  (3.6079 -> 3.607 -> 3.61, and 4.2256 -> 4.225 -> 4.22).

Both helpers work on exact integers so the printed digits never depend on
binary float behavior.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .conllu import Corpus, iter_words, token_count
from .errors import AnalyticsError, DuplicateParallelKeyError

QUERY_FIELDS = ("deprel", "deprel_base", "lemma", "form", "upos", "xpos")


# ---------------------------------------------------------------------------
# Display helpers (exact integer arithmetic)

def per1k_thousandths(count: int, total: int) -> int:
    """Per-1K rate in integer thousandths, truncated: count/total*10^6 floored."""
    if total <= 0:
        raise AnalyticsError("rate undefined for empty corpus")
    return count * 10**6 // total


def fmt_per1k3(count: int, total: int) -> str:
    th = per1k_thousandths(count, total)
    return f"{th // 1000}.{th % 1000:03d}"


def fmt_per1k2(count: int, total: int) -> str:
    th = per1k_thousandths(count, total)
    q, r = divmod(th, 10)
    if r > 5 or (r == 5 and q % 2 == 1):
        q += 1
    return f"{q // 100}.{q % 100:02d}"


def fmt_ratio3(count_a: int, total_a: int, count_b: int, total_b: int) -> str:
    """per1k_b / per1k_a truncated to three decimals; empty when undefined."""
    if count_a == 0:
        return ""
    r = count_b * total_a * 1000 // (count_a * total_b)
    return f"{r // 1000}.{r % 1000:03d}"


# ---------------------------------------------------------------------------
# Relation frequencies

@dataclass(frozen=True, slots=True)
class FrequencyRow:
    key: str
    count_a: int
    total_a: int
    count_b: int
    total_b: int

    @property
    def per1k_a(self) -> float:
        return self.count_a / self.total_a * 1000.0

    @property
    def per1k_b(self) -> float:
        return self.count_b / self.total_b * 1000.0

    @property
    def ratio(self) -> float | None:
        """per1k_b / per1k_a; None when the first corpus has no occurrences."""
        if self.count_a == 0:
            return None
        return self.per1k_b / self.per1k_a


def relation_counts(corpus: Corpus) -> Counter:
    return Counter(w.deprel for w in iter_words(corpus))


def relation_frequencies(a: Corpus, b: Corpus) -> list[FrequencyRow]:
    """One row per label attested in either corpus, sorted by ratio.

    Rows with an undefined ratio sort last; ties break alphabetically.
    """
    total_a, total_b = token_count(a), token_count(b)
    if total_a == 0 or total_b == 0:
        raise AnalyticsError("relation frequencies need two non-empty corpora")
    ca, cb = relation_counts(a), relation_counts(b)
    rows = [FrequencyRow(key, ca.get(key, 0), total_a, cb.get(key, 0), total_b)
            for key in sorted(set(ca) | set(cb))]
    rows.sort(key=lambda r: (r.ratio is None, r.ratio if r.ratio is not None else 0.0, r.key))
    return rows


# ---------------------------------------------------------------------------
# Queries

@dataclass(frozen=True, slots=True)
class QuerySpec:
    match_on: str
    value: str
    scope: str = "all"  # all | parallel

    def __post_init__(self):
        if self.match_on not in QUERY_FIELDS:
            raise AnalyticsError(f"unknown match field {self.match_on!r}; "
                                 f"expected one of {QUERY_FIELDS}")
        if self.scope not in ("all", "parallel"):
            raise AnalyticsError(f"scope must be 'all' or 'parallel', got {self.scope!r}")

    def matches(self, word) -> bool:
        return getattr(word, self.match_on) == self.value


def load_query(path) -> QuerySpec:
    """Read a query file: ``match = lemma``, ``value = nče``, optional scope."""
    from pathlib import Path
    cfg = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise AnalyticsError(f"bad query line {raw!r}: expected key = value")
        k, v = line.split("=", 1)
        cfg[k.strip()] = v.strip()
    try:
        return QuerySpec(match_on=cfg["match"], value=cfg["value"],
                         scope=cfg.get("scope", "all"))
    except KeyError as exc:
        raise AnalyticsError(f"query file {path} is missing the {exc} key") from exc


@dataclass(frozen=True, slots=True)
class QueryResult:
    matches: int
    total: int

    @property
    def per1k(self) -> float:
        return self.matches / self.total * 1000.0 if self.total else 0.0

    @property
    def per1k_2dec(self) -> str:
        return fmt_per1k2(self.matches, self.total)


def count_query(corpus: Corpus, query: QuerySpec, other: Corpus | None = None) -> QueryResult:
    """Count word rows matching the query; rate over the scoped token total.

    A ``parallel`` scope restricts the corpus to documents whose parallel key
    also occurs in ``other`` before counting.
    """
    scoped = corpus
    if query.scope == "parallel":
        if other is None:
            raise AnalyticsError("parallel scope requires the other corpus")
        scoped, _ = parallel_subset(corpus, other)
    total = token_count(scoped)
    hits = sum(1 for w in iter_words(scoped) if query.matches(w))
    return QueryResult(hits, total)


def parallel_subset(a: Corpus, b: Corpus) -> tuple[Corpus, Corpus]:
    """Restrict both corpora to documents sharing a parallel key, order kept."""
    def keymap(c: Corpus) -> dict:
        out = {}
        for d in c.documents:
            if d.parallel_key is None:
                continue
            if d.parallel_key in out:
                raise DuplicateParallelKeyError(
                    f"parallel key {d.parallel_key!r} occurs twice in corpus {c.name!r}")
            out[d.parallel_key] = d
        return out

    keys_a, keys_b = keymap(a), keymap(b)
    shared = set(keys_a) & set(keys_b)
    docs_a = tuple(d for d in a.documents if d.parallel_key in shared)
    docs_b = tuple(d for d in b.documents if d.parallel_key in shared)
    return (Corpus(name=f"{a.name}[parallel]", documents=docs_a),
            Corpus(name=f"{b.name}[parallel]", documents=docs_b))


def _restrict(corpus: Corpus, keys: set[str]) -> Corpus:
    docs = tuple(d for d in corpus.documents if d.parallel_key in keys)
    return Corpus(name=f"{corpus.name}[filtered]", documents=docs)


def marker_ratio(a: Corpus, b: Corpus, query: QuerySpec,
                 doc_filter: set[str], query_b: QuerySpec | None = None) -> float | None:
    """Rate ratio a:b for a marker query over a shared set of parallel keys.

    ``query_b`` lets the two dialects use different surface patterns of the
    same marker (e.g. lemma variants); it defaults to ``query``.  Returns
    None when the denominator rate is zero.
    """
    for key in sorted(doc_filter):
        if not any(d.parallel_key == key for d in a.documents):
            raise AnalyticsError(f"filter key {key!r} not found in corpus {a.name!r}")
        if not any(d.parallel_key == key for d in b.documents):
            raise AnalyticsError(f"filter key {key!r} not found in corpus {b.name!r}")
    ra = count_query(_restrict(a, doc_filter), query)
    rb = count_query(_restrict(b, doc_filter), query_b if query_b is not None else query)
    if rb.per1k == 0.0:
        return None
    return ra.per1k / rb.per1k


# ---------------------------------------------------------------------------
# Vocabulary

@dataclass(frozen=True, slots=True)
class VocabOverlap:
    unique_a: int
    unique_b: int
    shared: int


def vocabulary_overlap(a: Corpus, b: Corpus, unit: str = "form") -> VocabOverlap:
    """Distinct form (or lemma) counts for each corpus and their overlap."""
    if unit not in ("form", "lemma"):
        raise AnalyticsError(f"unit must be 'form' or 'lemma', got {unit!r}")
    va = {getattr(w, unit) for w in iter_words(a)}
    vb = {getattr(w, unit) for w in iter_words(b)}
    return VocabOverlap(len(va), len(vb), len(va & vb))
