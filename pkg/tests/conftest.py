import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dialtb import lab
from dialtb.demo import build_demo_pair, write_demo_tree

DEMO_SEED = 42
SWEEP_EPOCHS = 5


@pytest.fixture(scope="session")
def demo_pair():
    return build_demo_pair(DEMO_SEED)


@pytest.fixture(scope="session")
def demo_tree(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo")
    paths = write_demo_tree(out, seed=DEMO_SEED)
    paths["root"] = out
    return paths


@pytest.fixture(scope="session")
def lab_sweep(demo_pair):
    """Train all four scenarios once and parse both test sets with each model."""
    boh, sah = demo_pair
    scenarios = {name: lab.assemble(name, boh, sah, seed=DEMO_SEED)
                 for name in lab.SCENARIO_NAMES}
    models = {name: lab.train(scn, epochs=SWEEP_EPOCHS, seed=DEMO_SEED)
              for name, scn in scenarios.items()}
    tests = {"a": scenarios["single_a"].test_corpus,
             "b": scenarios["single_b"].test_corpus}
    predictions = {(name, side): lab.parse_corpus(model, tests[side])
                   for name, model in models.items() for side in tests}
    return {"scenarios": scenarios, "models": models,
            "tests": tests, "predictions": predictions}
