"""Numerical laboratory for the quasienergy holonomy of a kicked spin-1/2.

The package builds the one-period propagator of a periodically kicked
spin-1/2, tracks its spectrum into complex coupling, locates the
exceptional points hiding there, and verifies that real-coupling loops
pick up the eigenvalue/eigenspace holonomy those points dictate, both
through the gauge-connection machinery and by direct stroboscopic
time evolution.
"""

from .adiabatic import (SweepResult, SweepSchedule, adiabatic_convergence_scan,
                        predicted_final_state, stroboscopic_evolve)
from .errors import (DefectivePointError, DegenerateModelError, InvalidPathError,
                     KickedSpinError, NumericalError, SearchFailureError,
                     UnwrapAmbiguityError)
from .holonomy import (ConnectionSample, HolonomyResult, ParamPath, connection,
                       dtheta_dlambda, factor_permutation_phases, holonomy,
                       ordered_exponential, rotation, transported_overlap,
                       winding_integral)
from .linalg2 import (Eig2Result, adjoint, eig2, frob_dist, mat_mul, projector,
                      projector_phase_exp)
from .model import (ComplexParam, EpPair, ModelParams, SpectralData, alpha_beta,
                    analytic_eigenvalues, eigenframe, ep_distance, ep_locations,
                    floquet, floquet_entries, frame_from_angle, gap, mixing_angle,
                    normal_form_axis)
from .riemann import (ContinuationTrace, GridSpec, SheetGrid, continue_eigenvalues,
                      eigenvalue_pair, reference_gap_difference, refine_ep,
                      sample_sheet)

__version__ = "0.1.0"

__all__ = [
    "ComplexParam", "ConnectionSample", "ContinuationTrace", "DefectivePointError",
    "DegenerateModelError", "Eig2Result", "EpPair", "GridSpec", "HolonomyResult",
    "InvalidPathError", "KickedSpinError", "ModelParams", "NumericalError",
    "ParamPath", "SearchFailureError", "SheetGrid", "SpectralData", "SweepResult",
    "SweepSchedule", "UnwrapAmbiguityError", "adiabatic_convergence_scan",
    "adjoint", "alpha_beta", "analytic_eigenvalues", "connection",
    "continue_eigenvalues", "dtheta_dlambda", "eig2", "eigenframe",
    "eigenvalue_pair", "ep_distance", "ep_locations", "factor_permutation_phases",
    "floquet", "floquet_entries", "frame_from_angle", "frob_dist", "gap",
    "holonomy", "mat_mul", "mixing_angle", "normal_form_axis",
    "ordered_exponential", "predicted_final_state", "projector",
    "projector_phase_exp", "reference_gap_difference", "refine_ep", "rotation",
    "sample_sheet", "stroboscopic_evolve", "transported_overlap",
    "winding_integral",
]
