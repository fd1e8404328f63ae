"""Entanglement and spin squeezing of three bosons in two modes."""

__version__ = "0.1.0"

from .canonical import (
    CanonicalForm,
    DecompositionPair,
    EliminationTarget,
    EntanglementClass,
    ParamPoint,
    SolverRoot,
    canonicalize,
    classify,
    decompose_ghz,
    decompose_w,
    eliminate_coefficient,
    solve_mixed_newton,
)
from .errors import (
    ConsistencyError,
    DegenerateFrame,
    NoRootFound,
    NonUnitary,
    NotDegenerate,
    NotNormalized,
    OutOfRange,
    ThreeBosonError,
    WrongClass,
    ZeroState,
)
from .measures import (
    EntanglementReport,
    bipartite_concurrence,
    concurrence_closed,
    concurrence_wootters,
    hyperdeterminant,
    report,
    tau_ckw,
    tau_closed,
    tau_hyperdeterminant,
    wootters_spectrum,
)
from .squeezing import (
    AbcCoefficients,
    Frame,
    Method,
    SpinVector,
    SqueezingResult,
    SqueezingSlice,
    abc_coefficients,
    abc_coefficients_expanded,
    build_frame,
    full_sphere_min,
    mean_spin,
    mean_spin_oracle,
    transverse_variance_oracle,
    variance_at_theta,
    xi_closed,
    xi_direct,
    xi_special,
)
from .state import (
    FockAmplitudes,
    ModeTransform,
    ThreeBosonState,
    apply_mode_transform,
    from_qubit_expansion,
    make_state,
    random_mode_transform,
    random_state,
    reduced_density_one,
    reduced_density_two,
    reduced_density_two_modes,
    to_qubit_expansion,
    two_body_density,
)
