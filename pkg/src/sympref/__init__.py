"""Exact desk-scale engine for Weyl algebras, smash products with finite
symplectic groups, Koszul cochain cohomology with explicit contraction
homotopies, and symplectic reflection algebras as rewriting systems."""

from .cyclo import Cyclotomic, parse_cyclotomic, root_of_unity
from .weyl import SymplecticForm, WeylElement, apply_symplectic
from .sympgroup import (AltForm, FiniteSympGroup, SympMatrix, catalog,
                        close_group, conjugacy_data, sigma_invariants,
                        transport_form)

__all__ = [
    "Cyclotomic", "parse_cyclotomic", "root_of_unity",
    "WeylElement", "SymplecticForm", "apply_symplectic",
    "SympMatrix", "FiniteSympGroup", "AltForm", "catalog", "close_group",
    "conjugacy_data", "sigma_invariants", "transport_form",
]
