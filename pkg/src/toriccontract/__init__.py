"""Groebner bases of toric ideals and of contractions of ideals under monomial maps."""
from __future__ import annotations

from .kernel import IMPLEMENTATION
from .ring import (BlockOrder, Grading, MatrixOrder, MonomialOrder, Ordering, Polynomial, Ring,
                   RingMismatch, TermOrder, WeightedOrder, format_polynomial, parse_polynomial)
from .groebner import (GroebnerBasis, Ideal, MonomialIdeal, NotInIdeal, WeightNotFound, buchberger,
                       initial_form, initial_ideal, initial_ideal_weight, is_groebner,
                       is_pseudo_groebner, normal_form, s_polynomial, weight_from_order)
from .toric import (EmptyFiber, MonomialMap, SemigroupSpec, UnboundedFiber, UnsupportedSemigroup,
                    decompose, fiber, is_configuration, matrix_product_config, semigroup_generators,
                    toric_ideal)
from .contraction import (BoundTooSmall, ContractionProblem, ContractionReport, HypothesesViolated,
                          NotInSemigroup, check_hypotheses, contract_initial, contraction_elimination,
                          gamma, lift, lift_family, monomial_contraction_basis, pullback_weight)
from .applications import (FiberProductInstance, NestedInstance, NoOrderFound, fiber_product,
                           flagship_example, load_flagship, nested_config, veronese)

__version__ = "0.1.0"
