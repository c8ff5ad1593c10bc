"""Exact quantum and equivariant quantum cohomology of type-A partial flag manifolds."""

from .equivariant import induction_check, product_ring, specialize_params, torus_restriction
from .groebner import GBCache, GroebnerBasis, ResourceLimitError, StructuralError, buchberger, normal_form, std_basis
from .oracles import Partition, poincare_poly, projective_oracle, quantum_pieri, schubert_dictionary
from .poly import ParseError, Polynomial, RegistryMismatch, UPoly, Var, VarRegistry, coeff_extract, poly_arith, weighted_degree
from .presentation import FlagType, Presentation, continuant, divisor_classes, make_flag, relations
from .ring import (GWValue, PairingTable, QuantumRing, ResidueDegenerate, RingElement, divisor_count,
                   frobenius_check, gw_3point, quantum_product, residue_table)

__version__ = "0.1.0"

__all__ = [
    "FlagType", "Presentation", "make_flag", "relations", "continuant", "divisor_classes",
    "Polynomial", "UPoly", "Var", "VarRegistry", "ParseError", "RegistryMismatch",
    "poly_arith", "weighted_degree", "coeff_extract",
    "GroebnerBasis", "GBCache", "buchberger", "normal_form", "std_basis",
    "ResourceLimitError", "StructuralError",
    "QuantumRing", "RingElement", "PairingTable", "GWValue", "ResidueDegenerate",
    "quantum_product", "residue_table", "gw_3point", "divisor_count", "frobenius_check",
    "specialize_params", "torus_restriction", "product_ring", "induction_check",
    "poincare_poly", "projective_oracle", "quantum_pieri", "schubert_dictionary", "Partition",
]
