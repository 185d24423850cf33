"""Confined harmonic oscillator as a deformed oscillator.

Subpackages cover the truncated-basis operator algebra, the confined
spectrum and its finite-difference cross-check, nonlinear coherent states,
photon statistics and squeezing, deformed field quantization factors, and
classical-current driving of field modes.  ``cqho`` on the command line
exposes each piece with deterministic CSV output.
"""

from .algebra import (
    DeformationFunction,
    commutator,
    deform_ladder,
    deformed_commutator_diagonal,
    excitation_levels,
    f_hamiltonian,
    heisenberg_closed_form,
    heisenberg_evolve,
    ladder_from_spectrum,
    ladder_operators,
)
from .drive import CurrentProfile, DriveResult, displacement_amplitude, evolve_mode
from .field import (
    DeformedPair,
    FieldMode,
    MetricOperator,
    ModeRegistry,
    build_dual_pair,
    deformed_inner_product,
    field_commutator_check,
    propagator_scale,
    smatrix_scale,
)
from .spectrum import (
    ConvergenceError,
    DeformationParams,
    PotentialSpec,
    SpectrumResult,
    derive_params,
    energy_analytic,
    energy_rescaled,
    solve_schrodinger,
    table1_report,
)
from .states import (
    FockState,
    GeneralizedBessel,
    build_nlcs,
    eigenvalue_residual,
    f_factorial,
    nlcs_normalization,
    resolution_of_identity_check,
)
from .stats import (
    SweepSpec,
    deformed_squeezing,
    mandel_parameter,
    quadrature_squeezing,
    run_sweep,
)

__version__ = "0.1.0"
