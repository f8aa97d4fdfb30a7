"""Closed-form physics of the periodically kicked spin-1/2.

The one-period propagator of the kicked spin is

    U(lam) = exp(-i mu P(e_z)/2) exp(-i lam P(n)) exp(-i mu P(e_z)/2),

with P(v) = (I + sigma.v)/2 and kick axis
n = (cos(phi) sin(theta), sin(phi) sin(theta), cos(theta)).  Its spectrum
is known in closed form:

    z_pm(lam) = exp(-i [mu + lam +- Delta(lam)] / 2),
    Delta(lam) = 2 arccos[ cos((lam - alpha)/2) / cosh(beta/2) ],
    alpha = 2 arctan[-cos(theta) tan(mu/2)],
    beta  = 2 artanh[ sin(theta) sin(mu/2)].

The two quasienergy branches touch only at complex couplings
lam = alpha +- i beta (mod 2 pi), where U is defective: these are the
exceptional points that drive the eigenvalue / eigenspace holonomy along
real-lam loops.  Gap and mixing-angle branches are multivalued in lam, so
every branch-sensitive routine takes an optional unwrap hint (the value at
a neighbouring point); without a hint the principal branch is returned.

All functions are pure; hints are plain values, so distinct paths can be
tracked concurrently while a single path is stepped sequentially.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (DefectivePointError, DegenerateModelError, NumericalError,
                     UnwrapAmbiguityError)
from .linalg2 import projector, projector_phase_exp

# couplings closer than this to an exceptional point have no usable eigenframe
EP_PROXIMITY = 1e-8
# |beta| below this counts as the degenerate (no complex EP) geometry
BETA_DEGENERATE = 1e-10
# unwrap step contracts: per-step branch motion must stay below these
THETA_STEP_MAX = np.pi / 4
GAP_STEP_MAX = np.pi / 2

_EZ = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the kicked spin: static strength mu, kick axis angles.

    theta must lie in [0, pi]; phi is normalized into [0, 2 pi).  Angles are
    radians throughout.
    """

    mu: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi):
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", float(self.phi) % (2.0 * np.pi))
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def kick_axis(self):
        """Unit vector n of the kicked projector."""
        st = math.sin(self.theta)
        return np.array([math.cos(self.phi) * st, math.sin(self.phi) * st, math.cos(self.theta)])


@dataclass(frozen=True)
class ComplexParam:
    """A point lam in the complexified coupling space.

    The stored value is unreduced so unwrapped paths keep their winding;
    `angle` reports the real part modulo 2 pi for the polar picture, where a
    point sits at radius e^{-Im lam} and polar angle Re lam.
    """

    value: complex

    @classmethod
    def from_polar(cls, radius, angle):
        if radius <= 0.0:
            raise ValueError("polar radius must be positive")
        return cls(angle - 1j * math.log(radius))

    @property
    def lambda_r(self):
        return self.value.real

    @property
    def lambda_i(self):
        return self.value.imag

    @property
    def angle(self):
        return self.value.real % (2.0 * np.pi)

    @property
    def radius(self):
        return math.exp(-self.value.imag)

    def __complex__(self):
        return complex(self.value)


def _as_complex(lam):
    """Accept ComplexParam, complex or float couplings interchangeably."""
    if isinstance(lam, ComplexParam):
        return complex(lam.value)
    return complex(lam)


@dataclass(frozen=True)
class SpectralData:
    """Spectrum of U at one coupling, with enough branch state to continue it.

    gap and mixing_angle are the unwrapped (hint-continued) branches; sheet
    counts how many quarter-turns the mixing angle has accumulated relative
    to the principal branch at the same point, so odd sheets mean the band
    labels are currently exchanged.
    """

    z_plus: complex
    z_minus: complex
    gamma_plus: complex
    gamma_minus: complex
    gap: complex
    mixing_angle: complex
    sheet: int


@dataclass(frozen=True)
class EpPair:
    """The conjugate pair of exceptional points alpha +- i beta (fundamental cell)."""

    lambda_plus: complex
    lambda_minus: complex
    alpha: float
    beta: float


def floquet(p, lam):
    """One-period propagator U(lam) as a 2x2 complex matrix.

    Complex lam is allowed (the result is then non-unitary); for real lam
    the product of the three projector exponentials is unitary.
    """
    lam = _as_complex(lam)
    half_kick = projector_phase_exp(p.mu / 2.0, projector(_EZ))
    kick = projector_phase_exp(lam, projector(p.kick_axis))
    return half_kick @ kick @ half_kick


def floquet_entries(p, lam):
    """Entries (u00, u01, u10, u11) of U(lam), vectorized over an array of lam.

    Same matrix as floquet(), written out so sweeps and grids can evaluate
    it without building per-point matrices.
    """
    lam = np.asarray(lam, dtype=complex)
    st, ct = math.sin(p.theta), math.cos(p.theta)
    e_lam = np.exp(-1j * lam)
    a = cmath.exp(-1j * p.mu / 2.0)
    u00 = a * a * (1.0 + (e_lam - 1.0) * 0.5 * (1.0 + ct))
    u01 = a * (e_lam - 1.0) * 0.5 * st * cmath.exp(-1j * p.phi)
    u10 = a * (e_lam - 1.0) * 0.5 * st * cmath.exp(1j * p.phi)
    u11 = 1.0 + (e_lam - 1.0) * 0.5 * (1.0 - ct)
    return u00, u01, u10, u11


def alpha_beta(p):
    """Gap-centre alpha and EP offset beta of the quasienergy gap.

    alpha is returned in (-pi, pi], with the mu = pi limit mapped to the
    boundary value pi.  beta = 0 signals the degenerate geometry
    (sin(theta) sin(mu/2) = 0) in which no complex degeneracy exists.
    """
    s_mu, c_mu = math.sin(p.mu / 2.0), math.cos(p.mu / 2.0)
    x = math.sin(p.theta) * s_mu
    if abs(x) >= 1.0:
        raise ValueError("artanh argument |sin(theta) sin(mu/2)| >= 1: beta diverges")
    beta = 2.0 * math.atanh(x)
    if c_mu == 0.0:
        alpha = np.pi
    else:
        alpha = 2.0 * math.atan(-math.cos(p.theta) * math.tan(p.mu / 2.0))
        if alpha <= -np.pi:  # rounding at the mu = pi limit; boundary belongs to +pi
            alpha = np.pi
    return alpha, beta


def _cos_half(z):
    """cos(z/2) by explicit real/imaginary split.

    Keeps cos((lam - alpha)/2) exactly real when Re(lam) = alpha, so the gap
    evaluates to exactly zero at the exceptional points instead of picking
    up sqrt(ulp) noise from a generic complex cosine.
    """
    x, y = z.real / 2.0, z.imag / 2.0
    return complex(math.cos(x) * math.cosh(y), -math.sin(x) * math.sinh(y))


def _nearest_branch(value, hint, deck_shift, reflect, step_max, what):
    """Pick the deck image of a principal value closest to the hint.

    The deck is {value + k*deck_shift} and, when reflect is True, also
    {-value + k*deck_shift}.  Raises when even the best image violates the
    per-step contract, which means the caller's sampling is too coarse.
    """
    best = None
    for v in ((value, -value) if reflect else (value,)):
        k = round(((hint - v) / deck_shift).real)
        for kk in (k - 1, k, k + 1):
            cand = v + kk * deck_shift
            if best is None or abs(cand - hint) < abs(best - hint):
                best = cand
    if abs(best - hint) >= step_max:
        raise UnwrapAmbiguityError(
            f"{what} moved by {abs(best - hint):.3g} in one step "
            f"(contract: < {step_max:.3g}); sample the path more finely")
    return best


def gap(p, lam, hint=None):
    """Quasienergy gap Delta(lam) = 2 arccos[cos((lam-alpha)/2)/cosh(beta/2)].

    Without a hint the principal arccos branch is returned (real part in
    [0, 2 pi]).  With a hint (a previous SpectralData or a bare gap value)
    the deck image {+-Delta + 4 pi k} continuous with the hint is chosen;
    a per-step change above pi/2 raises UnwrapAmbiguityError.
    """
    lam = _as_complex(lam)
    alpha, beta = alpha_beta(p)
    w = _cos_half(lam - alpha) / math.cosh(beta / 2.0)
    principal = 2.0 * _arccos(w)
    if hint is None:
        return principal
    hint = hint.gap if isinstance(hint, SpectralData) else complex(hint)
    return _nearest_branch(principal, hint, 4.0 * np.pi, True, GAP_STEP_MAX, "gap")


def _arccos(w):
    """Principal arccos that stays exactly 0.0 for w = 1 and pi for w = -1."""
    if w.imag == 0.0 and abs(w.real) <= 1.0:
        return complex(math.acos(w.real), 0.0)
    return cmath.acos(w)


def mixing_angle(p, lam, hint=None):
    """Unwrapped mixing angle Theta(lam) of the propagator's normal form.

    Theta solves tan(2 Theta) = sin(theta) / (sin(mu/2) cot(lam/2)
    + cos(theta) cos(mu/2)).  The branch is fixed so that the eigenvector
    cos(Theta)|up> + e^{i phi} sin(Theta)|down> belongs to the z_plus
    branch of the principal gap; at exact lam = 0 (mod 2 pi) the one-sided
    limit Theta = 0 is returned.  With a hint, Theta is continued to the
    deck image nearest the hint (contract: per-step change < pi/4).

    Returns a float for real lam, complex otherwise.
    """
    lam_c = _as_complex(lam)
    real_input = lam_c.imag == 0.0
    theta = _mixing_angle_complex(p, lam_c, hint)
    if real_input and abs(theta.imag) < 1e-12:
        return theta.real
    return theta


def _mixing_angle_complex(p, lam, hint):
    s_mu, c_mu = math.sin(p.mu / 2.0), math.cos(p.mu / 2.0)
    s_th, c_th = math.sin(p.theta), math.cos(p.theta)
    if hint is not None:
        hint = hint.mixing_angle if isinstance(hint, SpectralData) else complex(hint)

    s_half = cmath.sin(lam / 2.0)
    if s_half == 0.0:
        # cot(lam/2) diverges: Theta -> 0 on the principal sheet
        principal = 0.0 + 0.0j
    else:
        den = s_mu * cmath.cos(lam / 2.0) + c_th * c_mu * s_half
        if den == 0.0:
            principal = complex(np.pi / 4.0)
        else:
            principal = 0.5 * cmath.atan(s_th * s_half / den)
        principal = _resolve_theta_branch(p, lam, principal, s_th)
    if hint is None:
        return principal
    return _nearest_branch(principal, hint, np.pi / 2.0, False, THETA_STEP_MAX,
                           "mixing angle")


def _resolve_theta_branch(p, lam, t, s_th):
    """Select t or t +- pi/2 so Theta pairs with the principal gap branch.

    The atan principal value only fixes Theta modulo pi/2.  The correct
    representative satisfies sin(Delta/2) sin(2 Theta) = sin(theta)
    sin(lam/2), which ties the eigenvector branch to the z_plus eigenvalue;
    both candidates are tested and the closer match wins.  The result is
    kept in (-pi/2, pi/2] by its real part.
    """
    target = s_th * cmath.sin(lam / 2.0)
    sd2 = cmath.sin(gap(p, lam) / 2.0)
    cands = [t, t + np.pi / 2.0 if t.real <= 0.0 else t - np.pi / 2.0]
    errs = [abs(sd2 * cmath.sin(2.0 * c) - target) for c in cands]
    return cands[0] if errs[0] <= errs[1] else cands[1]


def analytic_eigenvalues(p, lam, hint=None):
    """Closed-form SpectralData at lam, branch-continued against the hint.

    The returned eigenvalues agree with the numeric eigendecomposition of
    floquet(p, lam) as an unordered set; with hints threaded along a path
    the labels follow the branches continuously, which is what exhibits the
    eigenvalue exchange after a full real-axis loop.
    """
    lam = _as_complex(lam)
    delta = gap(p, lam, hint)
    theta = _mixing_angle_complex(p, lam, hint)
    g_plus = (p.mu + lam + delta) / 2.0
    g_minus = (p.mu + lam - delta) / 2.0
    # sheet counts quarter-turns of the frame against the principal branch of
    # the reduced coupling, so completed loops show up as nonzero sheets
    lam_reduced = complex(lam.real % (2.0 * np.pi), lam.imag)
    principal_theta = _mixing_angle_complex(p, lam_reduced, None)
    sheet = int(round(((theta - principal_theta) / (np.pi / 2.0)).real))
    return SpectralData(
        z_plus=cmath.exp(-1j * g_plus),
        z_minus=cmath.exp(-1j * g_minus),
        gamma_plus=g_plus,
        gamma_minus=g_minus,
        gap=delta,
        mixing_angle=theta,
        sheet=sheet,
    )


def ep_distance(p, lam):
    """Distance from lam to the nearest exceptional point of the 2 pi lattice."""
    try:
        alpha, beta = alpha_beta(p)
    except ValueError:
        return np.inf
    if abs(beta) <= BETA_DEGENERATE:
        return np.inf
    lam = _as_complex(lam)
    d = np.inf
    for ep in (complex(alpha, beta), complex(alpha, -beta)):
        dre = (lam.real - ep.real + np.pi) % (2.0 * np.pi) - np.pi
        d = min(d, math.hypot(dre, lam.imag - ep.imag))
    return d


def eigenframe(p, lam, hint=None):
    """Right eigenvectors (xi_plus, xi_minus) and their biorthogonal partners.

    xi_plus = cos(Theta)|up> + e^{i phi} sin(Theta)|down> and
    xi_minus = -sin(Theta)|up> + e^{i phi} cos(Theta)|down>, with Theta
    unwrapped against the hint.  The partners satisfy
    <xi_b_m | xi_n> = delta_mn exactly; for real lam they coincide with
    xi_pm.  Raises DefectivePointError within EP_PROXIMITY of an
    exceptional point, where the frame degenerates.
    """
    lam_c = _as_complex(lam)
    if ep_distance(p, lam_c) < EP_PROXIMITY:
        raise DefectivePointError(f"coupling {lam_c} is within {EP_PROXIMITY} of an EP")
    theta = _mixing_angle_complex(p, lam_c, hint)
    return frame_from_angle(theta, p.phi)


def frame_from_angle(theta, phi):
    """Frame vectors for a given (possibly complex) mixing angle."""
    ph = cmath.exp(1j * phi)
    ct, st = cmath.cos(theta), cmath.sin(theta)
    xi_plus = np.array([ct, ph * st])
    xi_minus = np.array([-st, ph * ct])
    tb = complex(theta).conjugate()
    cb, sb = cmath.cos(tb), cmath.sin(tb)
    xi_b_plus = np.array([cb, ph * sb])
    xi_b_minus = np.array([-sb, ph * cb])
    return xi_plus, xi_minus, xi_b_plus, xi_b_minus


def normal_form_axis(p, lam, hint=None):
    """Effective rotation axis l(lam) of the propagator's normal form.

    U(lam) = exp{-i [mu + lam + Delta sigma.l]/2} with
    l = (cos(phi) e_x + sin(phi) e_y) sin(2 Theta) + cos(2 Theta) e_z.
    The components are complex off the real axis.
    """
    theta = _mixing_angle_complex(p, _as_complex(lam), hint)
    s2, c2 = cmath.sin(2.0 * theta), cmath.cos(2.0 * theta)
    return np.array([math.cos(p.phi) * s2, math.sin(p.phi) * s2, c2])


def ep_locations(p):
    """Exceptional points alpha +- i beta of the fundamental cell.

    Raises DegenerateModelError when beta = 0 (the problem is then trivial:
    no complex degeneracy, no holonomy).  The vanishing of the gap at both
    points is verified internally.
    """
    alpha, beta = alpha_beta(p)
    if abs(beta) <= BETA_DEGENERATE:
        raise DegenerateModelError(
            "beta = 0 (sin(theta) sin(mu/2) = 0): no exceptional points off the real axis")
    pair = EpPair(complex(alpha, beta), complex(alpha, -beta), alpha, beta)
    for ep in (pair.lambda_plus, pair.lambda_minus):
        g = gap(p, ep)
        if abs(g) >= 1e-9:
            raise NumericalError(f"gap at EP {ep} is {abs(g)}, expected < 1e-9")
    return pair
