from pathlib import Path

import pytest

from cfprob.cpm import CpmModel, cpm_model
from cfprob.logic import Formula, Vocabulary, parse_formula

EXAMPLE_MODEL_PATH = Path(__file__).resolve().parent.parent / "models" / "example.cpm"

# (degree, weight) per world; the canonical three-atom demo model
EXAMPLE_WORLDS = {
    "~A  B  C": (1.0, 0.5),
    "~A  B ~C": (1.0, 0.3),
    " A  B  C": (0.6, 0.08),
    " A  B ~C": (0.6, 0.04),
    " A ~B  C": (0.4, 0.05),
    "~A ~B  C": (0.4, 0.03),
}


@pytest.fixture(scope="session")
def vocab() -> Vocabulary:
    return Vocabulary(["A", "B", "C"])


@pytest.fixture(scope="session")
def example_model(vocab) -> CpmModel:
    return cpm_model(vocab, EXAMPLE_WORLDS)


@pytest.fixture(scope="session")
def p(vocab):
    def _parse(text: str) -> Formula:
        return parse_formula(text, vocab)

    return _parse
