"""Elementary cellular automata, compression-based programmability tests and rule inference."""

__version__ = "0.1.0"

from ._backend import kernels as _kernels
from .eca import RuleTable, SpaceTimeDiagram, center_column, evolve, rule_from_code, rule_transforms, step
from .errors import CorruptStreamError, ProglabError, ValidationError

BACKEND = _kernels.NAME

__all__ = [
    "BACKEND",
    "CorruptStreamError",
    "ProglabError",
    "RuleTable",
    "SpaceTimeDiagram",
    "ValidationError",
    "center_column",
    "evolve",
    "rule_from_code",
    "rule_transforms",
    "step",
]
