"""Finite OBCI-algebras: axioms, substructures, O-homomorphisms, kernels, products."""

from ._obci import (
    Algebra,
    BudgetError,
    Map,
    ParseError,
    PreconditionError,
    StructureError,
    claims,
    enumerate,
    findings,
    pair_map,
    product,
    verify,
)

__all__ = [
    "Algebra",
    "BudgetError",
    "Map",
    "ParseError",
    "PreconditionError",
    "StructureError",
    "claims",
    "enumerate",
    "findings",
    "pair_map",
    "product",
    "verify",
]
