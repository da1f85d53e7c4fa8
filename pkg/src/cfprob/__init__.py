"""Reasoning engine for possibility-ranked world models with probability weights.

Core layers: propositional logic (`logic`), possibility models and belief
revision (`possibility`), counterfactual probability (`cpm`), revision
simulation via standard conditioning (`simulation`), generalized imaging
(`imaging`), and a claim-checking harness (`checker`).  A FastAPI service
(`service`) and a CLI (`cli`) wrap the same operations.
"""

__version__ = "0.1.0"

from .cpm import (
    CpmModel,
    ImpossibleConditionError,
    UndefinedProbabilityError,
    WorldDistribution,
    ZeroProbabilityConditionError,
)
from .logic import (
    Formula,
    FormulaSyntaxError,
    UnknownAtomError,
    Vocabulary,
    VocabularyTooLargeError,
    World,
    dnf_of_worlds,
    entails,
    models,
    parse_formula,
    print_formula,
)
from .modelfile import (
    ModelParseError,
    ModelValidationError,
    dump_model,
    dumps_model,
    load_model,
    loads_model,
)
from .possibility import EpistemicStatus, ModelInvariantError, PossibilityModel

__all__ = [
    "CpmModel",
    "EpistemicStatus",
    "Formula",
    "FormulaSyntaxError",
    "ImpossibleConditionError",
    "ModelInvariantError",
    "ModelParseError",
    "ModelValidationError",
    "PossibilityModel",
    "UndefinedProbabilityError",
    "UnknownAtomError",
    "Vocabulary",
    "VocabularyTooLargeError",
    "World",
    "WorldDistribution",
    "ZeroProbabilityConditionError",
    "dnf_of_worlds",
    "dump_model",
    "dumps_model",
    "entails",
    "load_model",
    "loads_model",
    "models",
    "parse_formula",
    "print_formula",
    "__version__",
]
