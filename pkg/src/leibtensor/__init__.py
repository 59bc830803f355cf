"""Exact structure-constant computations for 3-Leibniz algebras, their
representations, embedding tensors, tri-Leibniz structures and deformations."""

from .leibniz3 import BinaryAlgebra, Representation, ThreeLeibnizAlgebra
from .report import CheckReport, Violation
from .trileibniz import TriLeibnizAlgebra
from .dialgebra import Action, TriLeibnizDialgebra
from .fileformat import DeformationScenario, EmbeddingScenario, RepresentationData, load, save

__version__ = "0.1.0"

__all__ = [
    "Action", "BinaryAlgebra", "CheckReport", "DeformationScenario", "EmbeddingScenario",
    "Representation", "RepresentationData", "ThreeLeibnizAlgebra", "TriLeibnizAlgebra",
    "TriLeibnizDialgebra", "Violation", "load", "save",
]
