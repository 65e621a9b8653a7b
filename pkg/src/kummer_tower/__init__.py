"""Class groups along the Kummer towers Q(p^(1/ell^n), zeta_(2 ell^m)).

Hilbert symbols, norm indices, ambiguous class number formulas, units of
quadratic and pure quartic fields, and a rule-based deduction layer that
turns the computed numbers into tower-wide statements.
"""
from .exact_arith import RootOfUnity, ResidueField, build_residue_field, unit_character
from .local_symbols import PlaceDescriptor, ValuedElement, tame_symbol, real_symbol, complete_product, norm_oracle
from .quad_field import QuadElement, fundamental_unit, dyadic_generator, class_number
from .genus_engine import ExtensionCase, RhoImage, build_case, rho_image, ramification_product, chevalley_order, gras_order
from .tower_logic import Fact, Claim, classify, derive, collect_facts, cubic_residue_is_trivial

__version__ = "0.1.0"
