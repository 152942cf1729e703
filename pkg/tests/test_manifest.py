import pytest

from dialtb.conllu import write_conllu
from dialtb.errors import ManifestError
from dialtb.manifest import (ManifestEntry, load_corpus, manifest_digest,
                             read_manifest, write_manifest)
from helpers import document, sentence


def test_roundtrip_entries(tmp_path):
    entries = [
        ManifestEntry("doc1", "sub/doc1.conllu", "train", "mark:1"),
        ManifestEntry("doc2", "doc2.conllu", "test", None),
    ]
    path = tmp_path / "c.manifest"
    write_manifest(entries, path)
    assert read_manifest(path) == entries


def test_comments_and_blank_lines_ignored(tmp_path):
    path = tmp_path / "c.manifest"
    path.write_text("# a comment\n\ndoc1\tdoc1.conllu\tdev\n", encoding="utf-8")
    entries = read_manifest(path)
    assert entries == [ManifestEntry("doc1", "doc1.conllu", "dev", None)]


@pytest.mark.parametrize("line,fragment", [
    ("doc1\tx.conllu", "3 or 4 tab-separated"),
    ("doc1\tx.conllu\tvalidation", "unknown partition"),
    ("doc1\tx.conllu\ttrain\nDOC\ty.conllu\ttrain\ndoc1\tz.conllu\tdev",
     "duplicate doc_id"),
])
def test_bad_manifest_lines(tmp_path, line, fragment):
    path = tmp_path / "c.manifest"
    path.write_text(line + "\n", encoding="utf-8")
    with pytest.raises(ManifestError) as err:
        read_manifest(path)
    assert fragment in str(err.value)


def test_load_corpus_resolves_relative_paths(tmp_path):
    doc = document([sentence([("A", 0, "root")])], doc_id="inner")
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "inner.conllu").write_bytes(write_conllu(doc))
    path = tmp_path / "corpus.manifest"
    write_manifest([ManifestEntry("inner", "sub/inner.conllu", "dev", "key:1")], path)
    loaded = load_corpus(path)
    assert loaded.name == "corpus"
    assert loaded.documents[0].doc_id == "inner"
    assert loaded.documents[0].partition == "dev"
    assert loaded.documents[0].parallel_key == "key:1"


def test_load_corpus_missing_file(tmp_path):
    path = tmp_path / "corpus.manifest"
    write_manifest([ManifestEntry("gone", "gone.conllu", "train")], path)
    with pytest.raises(ManifestError):
        load_corpus(path)


def test_manifest_digest_changes_with_content(tmp_path):
    p1 = tmp_path / "a.manifest"
    p2 = tmp_path / "b.manifest"
    p1.write_text("doc1\tx\ttrain\n", encoding="utf-8")
    p2.write_text("doc1\ty\ttrain\n", encoding="utf-8")
    assert manifest_digest(p1) != manifest_digest(p2)
    assert len(manifest_digest(p1)) == 64
