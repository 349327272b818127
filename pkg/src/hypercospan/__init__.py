"""Labeled cospans, Frobenius terms and hypergraph categories."""

from .algebra import (
    AlgebraMorphism,
    CospanAlgebra,
    initial_map,
    nu,
    part_algebra,
    phi,
    psi,
    psi_on_functor,
    pullback_algebra,
    verify_equivalence,
)
from .cospan import Cospan, canonicalize, compose, kleisli_map, name_cospan, tensor
from .errors import HypercospanError
from .hypergraph import (
    HypergraphCategory,
    axiom_suite,
    base_change,
    cap,
    comp_morphism,
    cup,
    frob_functor,
    gathr,
    parse,
)
from .instances import CospanCategory, FinRel, LinRel
from .labels import EMPTY, KleisliMap, LabeledFinSet, TypedFunction, declare_labels
from .terms import Signature, decompose, eval_term, parse_term, pretty, typecheck

__all__ = [
    "AlgebraMorphism", "Cospan", "CospanAlgebra", "CospanCategory", "EMPTY", "FinRel",
    "HypercospanError", "HypergraphCategory", "KleisliMap", "LabeledFinSet", "LinRel",
    "Signature", "TypedFunction", "axiom_suite", "base_change", "canonicalize", "cap",
    "comp_morphism", "compose", "cup", "decompose", "declare_labels", "eval_term",
    "frob_functor", "gathr", "initial_map", "kleisli_map", "name_cospan", "nu", "parse",
    "parse_term", "part_algebra", "phi", "pretty", "psi", "psi_on_functor",
    "pullback_algebra", "tensor", "typecheck", "verify_equivalence",
]
