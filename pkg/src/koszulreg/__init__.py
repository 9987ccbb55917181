"""Koszul cycles, minimal free resolutions and regularity bounds over polynomial rings."""

from .field import Field, GF, GF32003, QQ
from .ring import Monomial, PolyRing, Polynomial, TermOrder, max_var, min_var, monomial_compare
from .ideal import (Ideal, buchberger, colon_power, ideal_as_module, krull_dimension,
                    minimal_generators, quotient_module, truncation)
from .modules import (FreeModule, GradedMap, Submodule, Subquotient, kernel, kernel_subquotient,
                      module_gb, submodule_equal, syzygies, tensor_presentation)
from .koszul import DoubleKoszul, KoszulComplex, zz_symmetry_check
from .resolution import BettiTable, betti_oracle, betti_table, minimal_resolution, regularity
from .borel import (borel_closure, ek_regularity, is_borel_fixed, random_borel,
                    strand_initial_module, apply_action)
from .verify import BoundReport, run_harness

__version__ = "0.1.0"
