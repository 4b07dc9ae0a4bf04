"""Exact graded commutative algebra with a verification laboratory on top.

The package has two layers. The kernel (rings, poly, groebner, submodule,
hilbert, fpmodule, invariants, multigraded, functors) does exact computation
over GF(p) or Q: Groebner bases of submodules, finitely presented graded
modules and their maps, Hom/Tensor/Ext/Tor, Hilbert series, associated
primes, grade, Rees algebras, and certified Artin-Rees exponents. The lab
(fitting, stability, scenario, reports, cli) drives families of such
computations along grids of exponents, detects when the answers stabilize
into polynomial or eventually-constant behaviour, and certifies the observed
onset against the a-priori bounds the kernel can prove.

Two things answer to "normal form": the Groebner remainder (exported here
as normal_form) and the eventual shape of a functor applied to a family
(stability.normal_form). The bare name means the remainder; reach the
family construction through the stability module.
"""

__version__ = "0.1.0"

from .errors import (
    CapExceeded,
    ConfigurationError,
    ContractViolation,
    FitError,
    FunctorLabError,
    HomogeneityError,
    ScenarioError,
    StrategyExhausted,
    WindowExceeded,
)
from .fitting import FittedPolynomial, fit_polynomial
from .fpmodule import FPModule, block_module, free_resolution, hom_ext_tor, quotient_by
from .functors import FunctorExpression, evaluate, evaluate_expression, evaluate_via_diagram
from .grid import GridBox
from .invariants import (
    associated_primes,
    bass_number,
    betti_number,
    depth,
    grade,
    injective_dimension,
    projective_dimension,
)
from .multigraded import (
    analytic_spread,
    artin_rees_exponent,
    graded_component,
    rees_module,
)
from .ops import groebner_basis, hilbert_function, normal_form, syzygies
from .poly import Poly, Vec, parse_poly, parse_vec, quotient_ring
from .rings import GREVLEX, PolyRing, TermOrder
from .scenario import build_scenario, bundled_scenario_path, bundled_scenarios, load_scenario
from .stability import (
    FamilySpec,
    betti_bass_asymptotics,
    component_track,
    degree_bound_check,
    detect_stabilization,
    grade_asymptotics,
    grid_evaluate,
)
from .submodule import IdealFamily, Submodule, ideal, submodule, unit_ideal, zero_submodule

__all__ = [
    "CapExceeded",
    "ConfigurationError",
    "ContractViolation",
    "FPModule",
    "FamilySpec",
    "FitError",
    "FittedPolynomial",
    "FunctorExpression",
    "FunctorLabError",
    "GREVLEX",
    "GridBox",
    "HomogeneityError",
    "IdealFamily",
    "Poly",
    "PolyRing",
    "ScenarioError",
    "StrategyExhausted",
    "Submodule",
    "TermOrder",
    "Vec",
    "WindowExceeded",
    "analytic_spread",
    "artin_rees_exponent",
    "associated_primes",
    "bass_number",
    "betti_bass_asymptotics",
    "betti_number",
    "block_module",
    "build_scenario",
    "bundled_scenario_path",
    "bundled_scenarios",
    "component_track",
    "degree_bound_check",
    "depth",
    "detect_stabilization",
    "evaluate",
    "evaluate_expression",
    "evaluate_via_diagram",
    "fit_polynomial",
    "free_resolution",
    "grade",
    "grade_asymptotics",
    "graded_component",
    "grid_evaluate",
    "groebner_basis",
    "hilbert_function",
    "hom_ext_tor",
    "ideal",
    "injective_dimension",
    "load_scenario",
    "normal_form",
    "parse_poly",
    "parse_vec",
    "projective_dimension",
    "quotient_by",
    "quotient_ring",
    "rees_module",
    "submodule",
    "syzygies",
    "unit_ideal",
    "zero_submodule",
    "__version__",
]
