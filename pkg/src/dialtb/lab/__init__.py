"""Cross-dialect parsing experiment harness."""

from .evalmetrics import ConfusionMatrix, EvalReport, confusion, score
from .parser import ParserModel, parse, parse_corpus, projectivize, train
from .scenario import SCENARIO_NAMES, Scenario, assemble, partition_docs

__all__ = [
    "SCENARIO_NAMES", "Scenario", "assemble", "partition_docs",
    "ParserModel", "train", "parse", "parse_corpus", "projectivize",
    "EvalReport", "score", "ConfusionMatrix", "confusion",
]
