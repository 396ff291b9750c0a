"""Entanglement witnesses built from mutually unbiased measurements (MUMs)."""

from .criteria import DetectionReport, coincidence_sum, detect, isotropic_witness_value, j_index, j_report
from .estimators import JCriterionDetector, MUMWitnessDetector, check_states
from .generators import GeneratorBasis, generator_basis, gellmann_generators, verify_generator_axioms
from .measurements import (
    MUM,
    MUBSet,
    constructed_mums,
    max_feasible_t,
    mub_fixture_d6,
    mub_to_mum,
    mum_fixture_d3,
    mum_fixture_d6,
    named_mum,
    exact_mums,
    verify_mum_axioms,
)
from .numerics import ToleranceConfig, ValidationError, tolerance_profile
from .rotations import RotationSet, axis_rotation_d3, parse_angle, rodrigues
from .states import (
    DensityMatrix,
    isotropic_state,
    max_entangled,
    maximally_mixed,
    random_density,
    random_product_state,
    rho_fixture_3x3,
    rho_fixture_6x6,
)
from .witness import (
    Witness,
    apply_positive_map,
    block_positivity_scan,
    build_witness_choi,
    build_witness_direct,
    evaluate_witness,
)

__version__ = "0.1.0"
