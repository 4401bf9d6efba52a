"""Numerical verification of C*-algebra-valued controlled F_c-metric type spaces
and of the fixed-point theorem for contractive self-maps on them."""

from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    Tolerance,
    abs_element,
    adjoint,
    componentwise_algebra,
    is_admissible_control_value,
    is_positive,
    leq,
    matrix_algebra,
    operator_norm,
    spectrum,
)
from .contraction import (
    ContractionSpec,
    HypothesisReport,
    coefficient_norm_condition,
    orbit,
    verify_contraction_inequality,
    verify_control_limits,
    verify_suplim,
)
from .families import ExampleConfig, build_example_interval, build_example_naturals, build_family
from .solver import cauchy_bound_check, picard, uniqueness_probe
from .space import (
    AxiomReport,
    SpaceInstance,
    Witness,
    check_axiom_controlled_triangle,
    check_axiom_identity,
    check_axiom_order,
    check_control_admissibility,
    check_symmetry,
    check_zero_implies_equal,
    refute_extended,
)

__version__ = "0.1.0"
