"""Concrete hypergraph categories with decidable equality."""

from .cospans import CospanCategory
from .finrel import FinRel, FinRelMorphism
from .linrel import LinRel, LinRelMorphism

__all__ = ["CospanCategory", "FinRel", "FinRelMorphism", "LinRel", "LinRelMorphism"]
