"""Complexified coupling space: sheet maps, branch cuts, EP refinement.

The propagator depends on the coupling only through e^{-i lam}, so the
polar picture (angle Re lam, radius e^{-Im lam}) is the natural chart: one
annulus holds the whole fundamental cell, with the two exceptional points
sitting at radius e^{-beta} (inside the unit circle for beta > 0) and
e^{+beta}, both at angle alpha.

The eigenvalue pair {z1, z2} is single-valued on the annulus but the
labels are not: they live on a double cover branched at the EPs.  The grid
sampler assigns labels from a fixed reference branch of the discriminant
square root and flags every grid edge across which that labelling flips.
The flagged edges organize into cut curves that terminate at the EPs; a
loop swaps the eigenvalues exactly when it crosses the flagged set an odd
number of times, which is how the real-axis loop inherits its holonomy
from a degeneracy it never touches.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import (DefectivePointError, DegenerateModelError, InvalidPathError,
                     SearchFailureError)
from .model import _as_complex


@dataclass(frozen=True)
class GridSpec:
    """Polar grid layout: n_angle columns in [0, 2 pi), n_radius rows uniform in Im lam.

    Radii run over [1/r_max, r_max] (geometric), so cells are uniform in the
    lam plane and cell distances are meaningful near both EPs.  r_max=None
    picks e^{|beta|+1}, which keeps both EP radii comfortably inside.
    """

    n_angle: int = 128
    n_radius: int = 128
    r_max: float = None

    def __post_init__(self):
        if self.n_angle < 64 or self.n_radius < 64:
            raise ValueError("grid resolution must be at least 64 x 64")
        if self.r_max is not None and self.r_max <= 1.0:
            raise ValueError("r_max must exceed 1 to include the physical circle")


@dataclass
class SheetGrid:
    """Principal-branch gap samples on the polar grid plus sheet-jump flags.

    delta[i, j] is the labelled gap at angle index i, Im-lam index j.
    cut_angle[i, j] flags the edge from (i, j) to (i+1 mod n_angle, j);
    cut_radial[i, j] the edge from (i, j) to (i, j+1).  Flags mark edges
    where the reference eigenvalue labelling flips sheet.
    """

    angles: np.ndarray
    lambda_i: np.ndarray
    delta: np.ndarray
    cut_angle: np.ndarray
    cut_radial: np.ndarray
    eps: tuple = ()

    @property
    def radii(self):
        return np.exp(-self.lambda_i)

    def node_flags(self):
        """Per-node flag: any incident edge is a cut edge."""
        n_ang, n_rad = self.delta.shape
        flags = np.zeros((n_ang, n_rad), dtype=bool)
        flags |= self.cut_angle
        flags |= np.roll(self.cut_angle, 1, axis=0)
        flags[:, :-1] |= self.cut_radial
        flags[:, 1:] |= self.cut_radial
        return flags

    def cut_components(self):
        """Connected cut curves, as lists of edge midpoints (lam values).

        Two flagged edges belong to the same curve when they border the same
        grid cell; this follows the curve through cells even where it runs
        diagonally and touches no common node.
        """
        n_ang = self.angles.size
        d_ang = 2.0 * np.pi / n_ang
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            parent[find(a)] = find(b)

        edges = []
        for i, j in zip(*np.where(self.cut_angle)):
            mid = complex(self.angles[i] + d_ang / 2.0, self.lambda_i[j])
            cells = []
            if j > 0:
                cells.append((i, j - 1))
            if j < self.lambda_i.size - 1:
                cells.append((i, j))
            edges.append((mid, cells))
        for i, j in zip(*np.where(self.cut_radial)):
            mid = complex(self.angles[i], 0.5 * (self.lambda_i[j] + self.lambda_i[j + 1]))
            edges.append((mid, [((i - 1) % n_ang, j), (i, j)]))

        for k, (_, cells) in enumerate(edges):
            for cell in cells:
                union(("e", k), ("c",) + cell)
        comps = {}
        for k, (mid, _) in enumerate(edges):
            comps.setdefault(find(("e", k)), []).append(mid)
        return list(comps.values())

    def cells_to(self, points, target):
        """Chebyshev distance, in grid cells, from a set of lam points to a target."""
        points = np.asarray(points, dtype=complex)
        d_ang = 2.0 * np.pi / self.angles.size
        d_rad = abs(self.lambda_i[1] - self.lambda_i[0])
        target = _as_complex(target)
        da = np.abs(points.real - target.real) % (2.0 * np.pi)
        da = np.minimum(da, 2.0 * np.pi - da)
        return float(np.min(np.maximum(da / d_ang, np.abs(points.imag - target.imag) / d_rad)))


@dataclass(frozen=True)
class ContinuationTrace:
    """Two eigenvalue branches tracked along a path, with the final pairing."""

    samples: np.ndarray
    z_first: np.ndarray
    z_second: np.ndarray
    pairing: str  # "identity" or "swap"
    max_step_jump: float


def eigenvalue_pair(p, lam):
    """Unordered eigenvalue pair of U(lam) from its trace and determinant.

    Purely numeric route (no closed-form gap), vectorized over lam.  The
    two returned arrays carry the reference labelling of
    reference_gap_difference(), so label flips across its cuts are visible
    to callers that compare neighbours.
    """
    if isinstance(lam, model.ComplexParam):
        lam = complex(lam)
    lam = np.asarray(lam, dtype=complex)
    u00, u01, u10, u11 = model.floquet_entries(p, lam)
    tr = u00 + u11
    diff = reference_gap_difference(p, lam)
    return 0.5 * (tr + diff), 0.5 * (tr - diff)


def reference_gap_difference(p, lam):
    """Reference branch of z_a - z_b = sqrt(tr^2 - 4 det), single-valued per node.

    The discriminant is conjugated by the unimodular field e^{i(mu+lam)}
    before the principal square root; this choice anchors the sign flips on
    cut curves that leave each exceptional point outward toward larger
    radius, so the physical (unit) circle crosses the cut attached to the
    enclosed EP once, as in the polar map of the complexified coupling.
    """
    if isinstance(lam, model.ComplexParam):
        lam = complex(lam)
    lam = np.asarray(lam, dtype=complex)
    alpha, beta = model.alpha_beta(p)
    w2 = np.cos((lam - alpha) / 2.0) ** 2 / math.cosh(beta / 2.0) ** 2
    phase = np.exp(1j * (p.mu + lam))
    return np.sqrt(-4.0 * phase * (1.0 - w2)) / phase


def _labels_flip(d1, d2):
    """True when the reference gap difference changes sign between neighbours."""
    return np.abs(d1 - d2) > np.abs(d1 + d2)


def sample_sheet(p, spec=None, assert_degenerate=False):
    """Sample the labelled gap on the polar grid and flag sheet-jump edges.

    Returns a SheetGrid whose flagged edges form the branch-cut curves of
    the reference labelling; each curve terminates at one exceptional
    point.  A degenerate model (beta = 0) is rejected unless
    assert_degenerate is set, in which case the grid is sampled with no cut
    flags (there are no off-axis branch points to cut to).
    """
    spec = spec or GridSpec()
    _, beta = model.alpha_beta(p)
    degenerate = abs(beta) <= model.BETA_DEGENERATE
    if degenerate and not assert_degenerate:
        raise DegenerateModelError("beta = 0: no sheet structure; pass assert_degenerate=True")

    r_max = spec.r_max if spec.r_max is not None else math.exp(abs(beta) + 1.0)
    li_max = math.log(r_max)
    angles = np.linspace(0.0, 2.0 * np.pi, spec.n_angle, endpoint=False)
    lambda_i = np.linspace(-li_max, li_max, spec.n_radius)
    lam = angles[:, None] + 1j * lambda_i[None, :]

    z_a, z_b = eigenvalue_pair(p, lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        delta = 1j * np.log(z_a / z_b)

    if degenerate:
        cut_angle = np.zeros(lam.shape, dtype=bool)
        cut_radial = np.zeros((spec.n_angle, spec.n_radius - 1), dtype=bool)
        eps = ()
    else:
        diff = z_a - z_b
        cut_angle = _labels_flip(diff, np.roll(diff, -1, axis=0))
        cut_radial = _labels_flip(diff[:, :-1], diff[:, 1:])
        pair = model.ep_locations(p)
        eps = (pair.lambda_plus, pair.lambda_minus)
    return SheetGrid(angles=angles, lambda_i=lambda_i, delta=delta,
                     cut_angle=cut_angle, cut_radial=cut_radial, eps=eps)


def refine_ep(p, guess, tol=1e-7, max_iter=200):
    """Newton-refine an exceptional point from the numeric discriminant.

    Iterates damped Newton steps on the discriminant of U(lam), written as
    (u00 - u11)^2 + 4 u01 u10 for conditioning, whose zeros at the EPs are
    simple.  Only the propagator matrix is used (never the closed-form
    gap), so the result is an independent cross-check of alpha_beta().

    Converges when the eigenvalue splitting |z1 - z2| = sqrt|D| drops
    below tol, or when the Newton step localizes lam to machine precision;
    the square-root branch point amplifies the double-precision noise
    floor of D to |z1 - z2| ~ 1e-7, so tol cannot usefully be smaller,
    while the refined lam itself is accurate to ~1e-14.  Raises
    SearchFailureError after max_iter iterations without convergence.
    """
    lam = _as_complex(guess)
    h = 1e-6

    def disc(x):
        u00, u01, u10, u11 = model.floquet_entries(p, x)
        return (u00 - u11) ** 2 + 4.0 * u01 * u10

    d = disc(lam)
    for _ in range(max_iter):
        if abs(d) < tol * tol:
            return lam
        dprime = (disc(lam + h) - disc(lam - h)) / (2.0 * h)
        if dprime == 0.0:
            raise SearchFailureError("discriminant derivative vanished")
        step = -d / dprime
        if abs(step) < 1e-13 * (1.0 + abs(lam)):
            return lam + step
        for _ in range(25):
            cand = lam + step
            d_cand = disc(cand)
            if abs(d_cand) <= abs(d):
                break
            step /= 2.0
            if abs(step) < 1e-15 * (1.0 + abs(lam)):
                return lam  # parked at the discriminant noise floor
        lam, d = cand, d_cand
    raise SearchFailureError(f"no EP within {max_iter} Newton iterations from {guess}")


def continue_eigenvalues(p, path):
    """Track both eigenvalue branches along a path by nearest continuation.

    At each step the new unordered pair is matched to the tracked values by
    total distance; the trace records whether the final labels are the
    starting ones ("identity") or exchanged ("swap").  A real-axis loop
    with beta != 0 swaps; traversing it twice restores the identity.
    Raises DefectivePointError when the two continuations cannot be told
    apart (the path runs too close to an EP).
    """
    samples = np.asarray(getattr(path, "samples", path), dtype=complex)
    if samples.ndim != 1 or samples.size < 2:
        raise InvalidPathError("need at least two samples to continue")
    za, zb = eigenvalue_pair(p, samples)
    z1 = np.empty_like(za)
    z2 = np.empty_like(zb)
    z1[0], z2[0] = za[0], zb[0]
    max_jump = 0.0
    for k in range(1, samples.size):
        cand = (za[k], zb[k])
        keep = abs(cand[0] - z1[k - 1]) + abs(cand[1] - z2[k - 1])
        swap = abs(cand[1] - z1[k - 1]) + abs(cand[0] - z2[k - 1])
        if abs(keep - swap) < 1e-12:
            raise DefectivePointError(
                f"branch continuation ambiguous at sample {k} (near an EP)")
        if keep <= swap:
            z1[k], z2[k] = cand
        else:
            z1[k], z2[k] = cand[1], cand[0]
        max_jump = max(max_jump, abs(z1[k] - z1[k - 1]), abs(z2[k] - z2[k - 1]))
    ident = abs(z1[-1] - z1[0]) + abs(z2[-1] - z2[0])
    crossed = abs(z1[-1] - z2[0]) + abs(z2[-1] - z1[0])
    pairing = "identity" if ident <= crossed else "swap"
    return ContinuationTrace(samples=samples, z_first=z1, z_second=z2,
                             pairing=pairing, max_step_jump=max_jump)
