"""Stroboscopic adiabatic sweeps: the holonomy seen as actual dynamics.

One kick period is propagated by the exact operator U(lam_m), with the
coupling updated between periods along a slow ramp from 0 to 2 pi x loops.
In the adiabatic limit a state prepared in one quasienergy band rides that
band while the band's eigenvector rotates into the other one; after a full
loop the state therefore sits in the other band of the starting frame with
near-unit probability, and after two loops it returns to the starting band
carrying the geometric phase pi.

Band populations are recorded against the instantaneous principal
eigenframe (which is continuous inside each 2 pi cell of the coupling);
the final populations, the transition probability and the frame-relative
phase refer to the frame at lam = 0, where the loop physically closes.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import DegenerateModelError
from .holonomy import ParamPath, holonomy as _holonomy_matrix


@dataclass(frozen=True)
class SweepSchedule:
    """Ramp plan: `kicks` periods carrying lam from 0 to 2 pi x loops.

    ramp "linear" advances lam uniformly; "smooth" uses the C^1 profile
    x - sin(2 pi x)/(2 pi), which starts and ends with zero sweep rate.
    loops = 0 is allowed and means the coupling never moves.
    """

    kicks: int
    loops: int = 1
    ramp: str = "linear"

    def __post_init__(self):
        if self.kicks < 1:
            raise ValueError("kicks must be a positive integer")
        if self.loops < 0:
            raise ValueError("loops must be >= 0")
        if self.ramp not in ("linear", "smooth"):
            raise ValueError("ramp must be 'linear' or 'smooth'")

    def lambda_values(self):
        """lam_m for m = 0 .. kicks-1 (the coupling used for the m-th period)."""
        x = np.arange(self.kicks) / self.kicks
        if self.ramp == "smooth":
            x = x - np.sin(2.0 * np.pi * x) / (2.0 * np.pi)
        return 2.0 * np.pi * self.loops * x


@dataclass(frozen=True)
class SweepResult:
    """Outcome of one stroboscopic sweep.

    p_plus/p_minus hold |<xi_pm(lam_m)|psi_m>|^2 for m = 0 .. kicks, with
    the last entry measured in the lam = 0 frame where the loop closes.
    transition_probability is the final weight in the band the state did
    not start in; frame_phase is the phase of the final state against the
    starting frame of its final band, with the dynamical phase (accumulated
    quasienergy of the tracked band) removed.
    """

    lambdas: np.ndarray
    p_plus: np.ndarray
    p_minus: np.ndarray
    final_state: np.ndarray
    start_band: int
    transition_probability: float
    frame_phase: float


def principal_mixing_angles(p, lam):
    """Resolved principal mixing angle at each real coupling (vectorized).

    Matches model.mixing_angle pointwise for real couplings: the arctan2
    quadrant fixes the branch pairing with the principal gap, because
    (sin 2 Theta, cos 2 Theta) is proportional to the (numerator,
    denominator) pair with the positive factor sin(Delta/2).
    """
    lam = np.asarray(lam, dtype=float)
    s_mu, c_mu = math.sin(p.mu / 2.0), math.cos(p.mu / 2.0)
    s_th, c_th = math.sin(p.theta), math.cos(p.theta)
    s_half, c_half = np.sin(lam / 2.0), np.cos(lam / 2.0)
    den = s_mu * c_half + c_th * c_mu * s_half
    num = s_th * s_half
    out = 0.5 * np.arctan2(num, den)
    # vanishing numerator: degenerate pairing, pinned to Theta = 0 (exact
    # coupling zeros and the theta = 0 axis)
    out[num == 0.0] = 0.0
    return out


def stroboscopic_evolve(p, schedule, initial=None, assert_degenerate=False):
    """Evolve psi_{m+1} = U(lam_m) psi_m along the ramp and track the bands.

    initial defaults to the plus-band eigenvector at lam = 0 (spin up).
    Models with beta = 0 are rejected unless assert_degenerate is set
    (they evolve fine but have no holonomy to verify).
    """
    _, beta = model.alpha_beta(p)
    if abs(beta) <= model.BETA_DEGENERATE and not assert_degenerate:
        raise DegenerateModelError("beta = 0 sweep is trivial; pass assert_degenerate=True")

    lam = schedule.lambda_values()
    frame0 = model.frame_from_angle(0.0, p.phi)
    if initial is None:
        initial = frame0[0]
        start_band = 0
    else:
        initial = np.asarray(initial, dtype=complex)
        if abs(np.linalg.norm(initial) - 1.0) > 1e-10:
            raise ValueError("initial state must be normalized")
        start_band = 0 if abs(np.vdot(frame0[0], initial)) >= abs(np.vdot(frame0[1], initial)) else 1

    # continued gap along a real ramp is just the principal arccos: |w| < 1
    # throughout, so the branch never meets its cut
    alpha, _ = model.alpha_beta(p)
    w = np.cos((lam - alpha) / 2.0) / math.cosh(beta / 2.0)
    delta = 2.0 * np.arccos(np.clip(w, -1.0, 1.0))
    band_sign = 1.0 if start_band == 0 else -1.0
    gamma_tracked = (p.mu + lam + band_sign * delta) / 2.0

    theta_p = principal_mixing_angles(p, lam)
    u00, u01, u10, u11 = (c.tolist() for c in model.floquet_entries(p, lam))
    ct, st = np.cos(theta_p).tolist(), np.sin(theta_p).tolist()
    e_phi = complex(math.cos(p.phi), math.sin(p.phi))
    e_phi_c = e_phi.conjugate()

    n = schedule.kicks
    p_plus = np.empty(n + 1)
    p_minus = np.empty(n + 1)
    a, b = complex(initial[0]), complex(initial[1])
    dyn = 0.0
    for m in range(n):
        bb = e_phi_c * b
        op = ct[m] * a + st[m] * bb
        om = -st[m] * a + ct[m] * bb
        p_plus[m] = abs(op) ** 2
        p_minus[m] = abs(om) ** 2
        a, b = u00[m] * a + u01[m] * b, u10[m] * a + u11[m] * b
        dyn += gamma_tracked[m]

    final_state = np.array([a, b])
    over_plus = np.vdot(frame0[0], final_state)
    over_minus = np.vdot(frame0[1], final_state)
    p_plus[n] = abs(over_plus) ** 2
    p_minus[n] = abs(over_minus) ** 2
    transition = p_minus[n] if start_band == 0 else p_plus[n]
    final_band_overlap = over_plus if p_plus[n] >= p_minus[n] else over_minus
    frame_phase = math.remainder(np.angle(final_band_overlap) + dyn, 2.0 * np.pi)
    return SweepResult(lambdas=np.append(lam, 2.0 * np.pi * schedule.loops),
                       p_plus=p_plus, p_minus=p_minus,
                       final_state=final_state, start_band=start_band,
                       transition_probability=float(transition),
                       frame_phase=float(frame_phase))


def predicted_final_state(p, loops, start_band=0, samples_per_loop=10_000):
    """Adiabatic prediction: apply M(C^loops) to the starting band label."""
    frame0 = model.frame_from_angle(0.0, p.phi)
    if loops == 0:
        return frame0[start_band]
    path = ParamPath.real_axis_loop(loops=loops, samples_per_loop=samples_per_loop)
    m = _holonomy_matrix(p, path).matrix
    return m[0, start_band] * frame0[0] + m[1, start_band] * frame0[1]


def adiabatic_convergence_scan(p, loops, kick_counts, start_band=0):
    """Fidelity of the sweep against the holonomy prediction for each T.

    Returns a list of (kicks, fidelity) pairs; fidelity approaches 1 from
    below as the ramp slows, beyond the crossover where the sweep becomes
    adiabatic.  loops = 0 returns fidelity 1 exactly.
    """
    if list(kick_counts) != sorted(kick_counts):
        raise ValueError("kick_counts must be ascending")
    target = predicted_final_state(p, loops, start_band)
    frame0 = model.frame_from_angle(0.0, p.phi)
    out = []
    for kicks in kick_counts:
        if loops == 0:
            out.append((int(kicks), 1.0))
            continue
        schedule = SweepSchedule(kicks=int(kicks), loops=loops)
        res = stroboscopic_evolve(p, schedule, frame0[start_band])
        fid = abs(np.vdot(target, res.final_state)) ** 2
        out.append((int(kicks), float(fid)))
    return out
