"""Gauge connection, winding integral and holonomy matrix of coupling loops.

In the eigenframe gauge of the model module the non-Abelian connection of
the kicked spin is

    A(lam) = [[0, -i], [i, 0]] * dTheta/dlam,

whose diagonal part vanishes identically: the frame already satisfies the
parallel-transport condition, so the holonomy matrix of a closed loop C is
the plain rotation

    M(C) = [[cos eta, -sin eta], [sin eta, cos eta]],
    eta(C) = closed-loop integral of dTheta/dlam.

A real-axis loop encircles one exceptional point of the complexified
coupling in the polar picture, pinning eta to sgn(beta) pi/2: M(C) is then
a permutation of the two bands up to a sign, and M(C^2) = -I carries the
attached geometric phase.  The engine computes M three independent ways
(closed-form rotation, generic ordered product of segment exponentials,
explicit stepwise frame transport) so each can check the others.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import DefectivePointError, InvalidPathError
from .linalg2 import eig2
from .model import _as_complex

# off-pattern entries below this make the permutation-phase factorization valid
FACTORIZATION_TOL = 1e-6

_ANTISYM = np.array([[0.0, -1.0j], [1.0j, 0.0]])


@dataclass(frozen=True)
class ParamPath:
    """Discretized path in complex coupling space.

    samples are visited in order; closed paths must return to their start
    modulo 2 pi in Re(lam) and exactly in Im(lam).  loop_power records how
    many traversals of a base loop the samples represent (C^n paths).
    Adjacent samples must be close enough for branch unwrapping (mixing
    angle step < pi/4); violations surface as UnwrapAmbiguityError when the
    path is consumed.
    """

    samples: np.ndarray
    closed: bool
    loop_power: int = 1

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 1 or samples.size < 2:
            raise InvalidPathError("a path needs at least two samples")
        object.__setattr__(self, "samples", samples)
        if self.closed:
            first, last = samples[0], samples[-1]
            dre = (last.real - first.real) % (2.0 * np.pi)
            dre = min(dre, 2.0 * np.pi - dre)
            if dre > 1e-9 or abs(last.imag - first.imag) > 1e-12:
                raise InvalidPathError(
                    "closed path must end where it started (mod 2 pi in Re lam)")

    @classmethod
    def real_axis_loop(cls, loops=1, samples_per_loop=10_000):
        """The physical loop: lam real from 0 to 2 pi (traversed `loops` times)."""
        if loops < 1:
            raise InvalidPathError("loops must be >= 1")
        lam = np.linspace(0.0, 2.0 * np.pi * loops, loops * samples_per_loop + 1)
        return cls(lam.astype(complex), closed=True, loop_power=loops)

    @classmethod
    def circle(cls, center, radius, samples=2_000, loops=1):
        """Closed circle around a point of the complex coupling plane."""
        t = np.linspace(0.0, 2.0 * np.pi * loops, loops * samples + 1)
        lam = complex(center) + radius * np.exp(1j * t)
        return cls(lam, closed=True, loop_power=loops)

    @classmethod
    def from_samples(cls, samples, closed=False, loop_power=1):
        return cls(np.asarray(samples, dtype=complex), closed, loop_power)

    @property
    def arc_lengths(self):
        """|d lam| of each segment."""
        return np.abs(np.diff(self.samples))


@dataclass(frozen=True)
class ConnectionSample:
    """Gauge connection at one coupling: full matrix and its diagonal part."""

    a: np.ndarray
    a_diag: np.ndarray
    dtheta: complex


@dataclass(frozen=True)
class HolonomyResult:
    """Holonomy matrix of a closed loop and its permutation x phase split.

    matrix is M(C); permutation maps band index n to the band it lands on;
    phases are the surviving unit entries.  factorized is False when M is
    not within FACTORIZATION_TOL of a permutation-phase pattern, in which
    case permutation/phases are best-effort and matrix is authoritative.
    """

    matrix: np.ndarray
    eta: float
    permutation: tuple
    phases: tuple
    traversals: int
    factorized: bool = True


def dtheta_dlambda(p, lam):
    """Closed-form derivative of the mixing angle.

    dTheta/dlam = sin(theta) sin(mu/2) / (4 [(sin(mu/2) cos(lam/2)
    + cos(theta) cos(mu/2) sin(lam/2))^2 + sin^2(theta) sin^2(lam/2)]),
    regular everywhere except at the exceptional points.  Accepts a scalar
    coupling or an array of couplings.
    """
    if isinstance(lam, model.ComplexParam):
        lam = complex(lam)
    lam = np.asarray(lam, dtype=complex)
    s_mu, c_mu = math.sin(p.mu / 2.0), math.cos(p.mu / 2.0)
    s_th, c_th = math.sin(p.theta), math.cos(p.theta)
    s, c = np.sin(lam / 2.0), np.cos(lam / 2.0)
    den = (s_mu * c + c_th * c_mu * s) ** 2 + (s_th * s) ** 2
    out = s_th * s_mu / (4.0 * den)
    return complex(out) if out.ndim == 0 else out


def connection(p, lam, hint=None):
    """Gauge connection A(lam) in the reference eigenframe.

    The diagonal part is identically zero (parallel-transport gauge); the
    analytic derivative is used, so no finite differencing is involved.
    Raises DefectivePointError near an exceptional point.
    """
    lam = _as_complex(lam)
    if model.ep_distance(p, lam) < model.EP_PROXIMITY:
        raise DefectivePointError(f"connection undefined within {model.EP_PROXIMITY} of an EP")
    dth = dtheta_dlambda(p, lam)
    a = _ANTISYM * dth
    return ConnectionSample(a=a, a_diag=np.zeros((2, 2), dtype=complex), dtheta=dth)


def _require_closed(path):
    if not path.closed:
        raise InvalidPathError("this operation is defined for closed paths only")


def _check_path_clears_eps(p, path):
    for ep in _ep_list(p):
        dre = (path.samples.real - ep.real + np.pi) % (2.0 * np.pi) - np.pi
        d = np.hypot(dre, path.samples.imag - ep.imag)
        if np.any(d < model.EP_PROXIMITY):
            raise DefectivePointError("path passes within EP_PROXIMITY of an exceptional point")


def _ep_list(p):
    try:
        pair = model.ep_locations(p)
    except Exception:
        return ()
    return (pair.lambda_plus, pair.lambda_minus)


def winding_integral(p, path):
    """eta(C): loop integral of dTheta/dlam along a closed path.

    Trapezoid rule on the analytic integrand.  For the real-axis loop with
    beta != 0 this equals sgn(beta) pi/2 per traversal; a retraced
    (contractible) loop gives 0.
    """
    _require_closed(path)
    _check_path_clears_eps(p, path)
    f = dtheta_dlambda(p, path.samples)
    d = np.diff(path.samples)
    eta = np.sum(0.5 * (f[:-1] + f[1:]) * d)
    return float(eta.real)


def holonomy(p, path):
    """Holonomy matrix M(C) of a closed loop, with its permutation x phase split.

    The connection is proportional to one fixed antisymmetric generator, so
    the ordered product of segment exponentials collapses to the single
    rotation by eta(C); ordered_exponential() keeps the generic product
    alive as an independent route and the tests hold the two together.
    """
    eta = winding_integral(p, path)
    m = rotation(eta)
    perm, phases, ok = factor_permutation_phases(m)
    return HolonomyResult(matrix=m, eta=eta, permutation=perm, phases=phases,
                          traversals=path.loop_power, factorized=ok)


def rotation(angle):
    """Real rotation matrix generated by the antisymmetric connection."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def ordered_exponential(p, path, order="anti"):
    """Generic path-ordered product of per-segment connection exponentials.

    Each segment contributes exp(-i A(midpoint) dlam) through a generic
    2x2 matrix exponential (no use of the antisymmetric structure).
    order="anti" appends later segments on the right, order="path" on the
    left; for this model the connection commutes with itself along the
    path, so both orderings agree with the closed-form rotation.
    """
    _require_closed(path)
    _check_path_clears_eps(p, path)
    if order not in ("anti", "path"):
        raise ValueError("order must be 'anti' or 'path'")
    mids = 0.5 * (path.samples[:-1] + path.samples[1:])
    dth = dtheta_dlambda(p, mids)
    dlam = np.diff(path.samples)
    m = np.eye(2, dtype=complex)
    for k in range(mids.size):
        seg = _expm2(-1j * _ANTISYM * (dth[k] * dlam[k]))
        m = m @ seg if order == "anti" else seg @ m
    return m


def _expm2(a):
    """Matrix exponential of a 2x2 via its eigendecomposition.

    Generic diagonalizable input only; defective matrices fall back to a
    short Taylor sum, accurate for the small-norm segment generators used
    here.
    """
    dec = eig2(a)
    if not dec.defective:
        v = dec.vectors
        return (v * np.exp(dec.values)) @ np.linalg.inv(v)
    out = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, 12):
        term = term @ a / k
        out = out + term
    return out


def transported_overlap(p, path):
    """M(C) by explicit stepwise parallel transport of the eigenframe.

    Walks the loop, continuing the frame by unwrap hints and rephasing each
    band at every step so the diagonal connection accumulates nothing; the
    result is the overlap matrix of the transported frame with the starting
    frame.  Independent of the connection integral, and must agree with
    holonomy() for valid paths.
    """
    _require_closed(path)
    _check_path_clears_eps(p, path)
    samples = path.samples
    theta = _thread_mixing_angle(p, samples)
    frame0 = model.frame_from_angle(theta[0], p.phi)
    start_kets = (frame0[0], frame0[1])
    start_bras = (frame0[2], frame0[3])

    m = np.zeros((2, 2), dtype=complex)
    for col in range(2):
        psi = start_kets[col]
        for i in range(1, samples.size):
            kets = model.frame_from_angle(theta[i], p.phi)
            ket, bra = kets[col], kets[col + 2]
            s = np.vdot(bra, psi)
            if s == 0.0:
                raise DefectivePointError("frame overlap vanished during transport")
            psi = ket * (s / abs(s))
        for row in range(2):
            m[row, col] = np.vdot(start_bras[row], psi)
    return m


def _thread_mixing_angle(p, samples):
    """Unwrapped mixing angle at every path sample (sequential hint chain)."""
    theta = np.empty(samples.size, dtype=complex)
    theta[0] = model.mixing_angle(p, samples[0])
    for i in range(1, samples.size):
        theta[i] = model.mixing_angle(p, samples[i], hint=theta[i - 1])
    return theta


def factor_permutation_phases(m):
    """Split a holonomy matrix into permutation x diagonal phases.

    The permutation takes, per column, the row of largest modulus (ties
    toward the identity); phases are the surviving entries.  Returns
    (permutation, phases, ok) with ok False when m is not within
    FACTORIZATION_TOL of such a pattern.
    """
    m = np.asarray(m, dtype=complex)
    perm = []
    for n in range(2):
        col = np.abs(m[:, n])
        perm.append(n if col[n] >= col[1 - n] else 1 - n)
    ok = perm[0] != perm[1]
    if not ok:
        perm = [0, 1]
    phases = (complex(m[perm[0], 0]), complex(m[perm[1], 1]))
    residual = 0.0
    for n in range(2):
        residual = max(residual, abs(abs(phases[n]) - 1.0), abs(m[1 - perm[n], n]))
    return tuple(perm), phases, bool(ok and residual < FACTORIZATION_TOL)
