"""Small constructors shared across test modules."""

from dialtb.conllu import BoundGroup, Corpus, DocumentUnit, Sentence, SyntaxWord


def word(i, form, head, deprel, lemma=None, upos="NOUN", xpos="N", feats=(), misc=()):
    return SyntaxWord(id=i, form=form, lemma=lemma if lemma is not None else form,
                      upos=upos, xpos=xpos, feats=feats, head=head, deprel=deprel,
                      misc=misc)


def sentence(rows, sent_id="s1", groups=(), comments=None):
    """rows: list of (form, head, deprel) or (form, head, deprel, extras dict)."""
    words = []
    for i, row in enumerate(rows, start=1):
        form, head, deprel = row[0], row[1], row[2]
        extras = row[3] if len(row) > 3 else {}
        words.append(word(i, form, head, deprel, **extras))
    if comments is None:
        comments = (f"# sent_id = {sent_id}",)
    return Sentence(sent_id=sent_id, comments=tuple(comments),
                    words=tuple(words), groups=tuple(groups))


def document(sentences, doc_id="d1", partition="train", parallel_key=None):
    return DocumentUnit(doc_id=doc_id, partition=partition,
                        parallel_key=parallel_key, sentences=tuple(sentences))


def corpus(documents, name="toy"):
    return Corpus(name=name, documents=tuple(documents))


def simple_corpus(name="toy", deprels=("nsubj", "root", "obj"), n_sent=1, doc_id="d1",
                  partition="train", parallel_key=None):
    """Three-word sentences 'A B C' with heads 2,0,2 and the given labels."""
    sents = []
    for k in range(n_sent):
        sents.append(sentence(
            [("A", 2, deprels[0]), ("B", 0, deprels[1]), ("C", 2, deprels[2])],
            sent_id=f"{doc_id}:s{k + 1}"))
    return corpus([document(sents, doc_id=doc_id, partition=partition,
                            parallel_key=parallel_key)], name=name)


def mwt_group(first, last, surface):
    return BoundGroup(first, last, surface)
