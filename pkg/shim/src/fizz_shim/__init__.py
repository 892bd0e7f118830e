"""HTTP serving shim exposing NLI triple scoring and coreference clusters."""

from .app import create_app
from .coref_backend import HeuristicCorefModel, build_coref_model
from .nli_backend import LexicalNliModel, TransformersNliModel, build_nli_model

__version__ = "0.1.0"

__all__ = [
    "create_app",
    "build_coref_model",
    "build_nli_model",
    "HeuristicCorefModel",
    "LexicalNliModel",
    "TransformersNliModel",
    "__version__",
]
