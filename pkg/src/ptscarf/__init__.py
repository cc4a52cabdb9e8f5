"""Analytic spectral theory of the complexified Scarf II well.

Closed-form spectra, wavefunctions, domain classification, spectral
singularities, isospectral deformation checks, and an optics mapping,
validated against an independent finite-difference oracle.
"""

__version__ = "0.1.0"

from .core import (
    Branch,
    FieldSample,
    OpticsMap,
    ScarfParams,
    energy_from_incidence,
    permittivity,
    potential_general,
    potential_minus_from_w,
    potential_plus_from_w,
    potential_pt,
    refractive_index,
    refractive_index_profile,
    superpotential,
    superpotential_derivative,
)
from .deform import (
    DeformationCheck,
    bernoulli_residual,
    deformation_profile,
    deformation_v,
    miura_check,
    miura_profile,
    partner_consistency,
    profile_difference,
    profile_scale,
    profile_sum,
    sech2_profile,
    stationary_kdv_residual,
    stationary_mkdv_residual,
    tanh_kink_profile,
    tilde_superpotential,
)
from .domains import (
    Classification,
    DomainClass,
    EventKind,
    HyperbolaClass,
    HyperbolaRegion,
    PathEvent,
    classify,
    classify_pt,
    classify_susy,
    ground_state_branch,
    kdv_points,
    on_asymptote,
    spectral_singularity_orders,
    ss_energy,
    trace_path,
)
from .errors import (
    BranchUnavailable,
    GridTooSmall,
    NoConvergence,
    NonDecayedPotential,
    NotOnIsospectralLine,
    NotOnPTLine,
    NotRealPhase,
    NotSpectralSingularity,
    RecurrenceDegenerate,
    RequiresRealPhase,
    ScarfError,
    StiffFailure,
    VerificationFailed,
)
from .oracle import (
    EigRefineResult,
    Grid,
    MatchPair,
    MatchReport,
    TriDiag,
    bound_candidates,
    build_hamiltonian,
    default_box,
    eig_all,
    eig_refine,
    match_spectrum,
    richardson_pair,
)
from .scatter import (
    ScatteringResult,
    SsProbePoint,
    default_window,
    scatter,
    ss_divergence_probe,
    transmission_scan,
)
from .spectra import (
    JacobiArgs,
    SpectrumEntry,
    SpectrumResult,
    eigenfunction_broken,
    eigenfunction_energy,
    eigenfunction_sample,
    eigenfunction_ss,
    eigenvalues_complex,
    eigenvalues_real,
    jacobi,
    jacobi_recurrence,
    normalizable_broken_levels,
    susy_ladder_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
