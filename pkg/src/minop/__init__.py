"""Exact computations with the minimal operad, its action on Hochschild
cochains, and free resolutions of ``M`` and ``As``."""
from .linear import Chain
from .operad import compose, compose_named, degree, differential
from .trees import PlanarTree, enumerate_admissible

__all__ = [
    "Chain",
    "PlanarTree",
    "compose",
    "compose_named",
    "degree",
    "differential",
    "enumerate_admissible",
]
__version__ = "0.1.0"
