"""Toolkit for dependency treebanks of closely related dialects.

Core pieces: a CoNLL-U data model with bound-group multiword tokens and MSeg
morph segmentation, a well-formedness validator with a configurable label
inventory, offset-based inter-annotator agreement, per-1K relation analytics
across corpora, and a deterministic cross-dialect parsing lab.
"""

__version__ = "0.1.0"

from .conllu import (BoundGroup, Corpus, DocumentUnit, Sentence, SyntaxWord,
                     expand_mseg, read_conllu, token_count, write_conllu)
from .manifest import ManifestEntry, load_corpus, read_manifest, write_manifest

__all__ = [
    "__version__",
    "SyntaxWord", "BoundGroup", "Sentence", "DocumentUnit", "Corpus",
    "read_conllu", "write_conllu", "token_count", "expand_mseg",
    "ManifestEntry", "read_manifest", "load_corpus", "write_manifest",
]
