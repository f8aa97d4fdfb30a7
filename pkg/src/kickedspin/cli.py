"""Command-line front end: every quantitative result as CSV/JSON artifacts.

Subcommands
    spectrum  eigenvalues, quasienergies and gap over a real-coupling grid
    eps       exceptional points: closed form vs Newton-refined cross-check
    holonomy  winding integral and holonomy matrix of real-axis loops
    riemann   polar sheet grid with branch-cut flags
    sweep     stroboscopic adiabatic sweep trace
    scan      adiabatic convergence table over kick counts

A JSON config file (--config) may preload any option of the chosen
subcommand; explicit flags win.  Angles are radians.  Floats are emitted
with 17 significant digits so artifacts are byte-reproducible and parse
back to the exact double.  Exit codes: 0 ok, 2 config error, 3 degenerate
model (beta = 0), 4 numerical failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import adiabatic, model, riemann
from .errors import DegenerateModelError, KickedSpinError
from .holonomy import (ParamPath, dtheta_dlambda, holonomy as holonomy_matrix,
                       ordered_exponential, transported_overlap)

_TAU = 2.0 * math.pi


def _fmt(x):
    """One float to 17 significant digits (exact double round-trip)."""
    return format(float(x), ".17g")


def _jsonify(obj):
    """Serialize with deterministic field order and 17-digit floats."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_jsonify(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_jsonify(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _jsonify({"re": obj.real, "im": obj.imag})
    if obj is None:
        return "null"
    return json.dumps(obj)


class _Out:
    """Route the primary artifact to --out (file) or stdout; summaries follow.

    With --out, summary lines go to stdout; without, the artifact owns
    stdout and summaries move to stderr so the artifact stays parseable.
    """

    def __init__(self, out_path):
        self.out_path = out_path

    def write_artifact(self, text):
        if self.out_path:
            with open(self.out_path, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def summary(self, line):
        stream = sys.stdout if self.out_path else sys.stderr
        stream.write(line + "\n")


def _csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) if isinstance(x, float) else str(x) for x in row))
    return "\n".join(lines) + "\n"


def _params(ns):
    return model.ModelParams(mu=ns.mu, theta=ns.theta, phi=ns.phi)


def _require_nondegenerate(p):
    _, beta = model.alpha_beta(p)
    if abs(beta) <= model.BETA_DEGENERATE:
        raise DegenerateModelError("beta = 0 (sin(theta) sin(mu/2) = 0)")
    return beta


def cmd_spectrum(ns):
    p = _params(ns)
    _require_nondegenerate(p)
    pair = model.ep_locations(p)
    out = _Out(ns.out)
    grid = np.linspace(0.0, _TAU, ns.samples + 1)
    rows = []
    hint = None
    for lam in grid:
        s = model.analytic_eigenvalues(p, lam, hint)
        hint = s
        rows.append((float(lam),
                     s.z_plus.real, s.z_plus.imag, s.z_minus.real, s.z_minus.imag,
                     s.gamma_plus.real, s.gamma_minus.real,
                     s.gap.real, s.gap.imag))
    header = ["lambda", "re_z_plus", "im_z_plus", "re_z_minus", "im_z_minus",
              "gamma_plus", "gamma_minus", "re_delta", "im_delta"]
    out.write_artifact(_csv(header, [tuple(map(float, r)) for r in rows]))
    out.summary(f"alpha = {_fmt(pair.alpha)}")
    out.summary(f"beta = {_fmt(pair.beta)}")
    out.summary(f"lambda_plus = {_fmt(pair.lambda_plus.real)} + {_fmt(pair.lambda_plus.imag)}i")
    out.summary(f"lambda_minus = {_fmt(pair.lambda_minus.real)} + {_fmt(pair.lambda_minus.imag)}i")
    return 0


def cmd_eps(ns):
    p = _params(ns)
    _require_nondegenerate(p)
    pair = model.ep_locations(p)
    refined_plus = riemann.refine_ep(p, pair.lambda_plus + (0.05 + 0.05j))
    refined_minus = riemann.refine_ep(p, pair.lambda_minus + (0.05 - 0.05j))
    # branch-point exponent: log|gap| vs log|lam - lam_plus| slope
    eps_grid = np.logspace(-5, -2, 25)
    gaps = np.array([abs(model.gap(p, pair.lambda_plus + e)) for e in eps_grid])
    slope = float(np.polyfit(np.log(eps_grid), np.log(gaps), 1)[0])
    doc = {
        "alpha": pair.alpha,
        "beta": pair.beta,
        "lambda_plus": pair.lambda_plus,
        "lambda_minus": pair.lambda_minus,
        "newton_refined_plus": refined_plus,
        "newton_refined_minus": refined_minus,
        "closed_form_vs_newton": max(abs(refined_plus - pair.lambda_plus),
                                     abs(refined_minus - pair.lambda_minus)),
        "gap_at_plus": abs(model.gap(p, pair.lambda_plus)),
        "gap_at_minus": abs(model.gap(p, pair.lambda_minus)),
        "branch_scaling_slope": slope,
    }
    _Out(ns.out).write_artifact(_jsonify(doc) + "\n")
    return 0


def cmd_holonomy(ns):
    p = _params(ns)
    _require_nondegenerate(p)
    path = ParamPath.real_axis_loop(loops=ns.loops, samples_per_loop=ns.samples)
    result = holonomy_matrix(p, path)
    ordered = ordered_exponential(p, path)
    transported = transported_overlap(p, path)
    m = result.matrix
    res_ordered = float(np.linalg.norm(m - ordered))
    res_transport = float(np.linalg.norm(m - transported))
    res_orth = float(np.linalg.norm(m.T @ m - np.eye(2)))
    # parallel-transport gauge checks: numeric diagonal connection and the
    # analytic derivative against finite differences, probed along the loop
    h = 1e-5
    worst_diag, worst_deriv = 0.0, 0.0
    for lam in np.linspace(0.05, 2 * np.pi - 0.05, 101):
        th0 = model.mixing_angle(p, lam)
        up = model.eigenframe(p, lam + h, hint=th0)
        dn = model.eigenframe(p, lam - h, hint=th0)
        mid = model.eigenframe(p, lam, hint=th0)
        for band in range(2):
            dket = (up[band] - dn[band]) / (2 * h)
            worst_diag = max(worst_diag, abs(np.vdot(mid[band + 2], dket)))
        fd = (model.mixing_angle(p, lam + h, hint=th0)
              - model.mixing_angle(p, lam - h, hint=th0)) / (2 * h)
        worst_deriv = max(worst_deriv, abs(dtheta_dlambda(p, lam) - fd))
    doc = {
        "loops": ns.loops,
        "samples_per_loop": ns.samples,
        "eta": result.eta,
        "matrix": [[m[0, 0], m[0, 1]], [m[1, 0], m[1, 1]]],
        "permutation": list(result.permutation),
        "phases": list(result.phases),
        "factorized": result.factorized,
        "residual_ordered_exponential": res_ordered,
        "residual_transported_overlap": res_transport,
        "residual_orthogonality": res_orth,
        "max_diag_connection": worst_diag,
        "max_dtheta_vs_finite_difference": worst_deriv,
    }
    _Out(ns.out).write_artifact(_jsonify(doc) + "\n")
    if max(res_ordered, res_transport) > ns.tol:
        sys.stderr.write("holonomy cross-check residual exceeds tolerance\n")
        return 4
    return 0


def cmd_riemann(ns):
    p = _params(ns)
    _require_nondegenerate(p)
    spec = riemann.GridSpec(n_angle=ns.resolution, n_radius=ns.resolution, r_max=ns.rmax)
    grid = riemann.sample_sheet(p, spec)
    flags = grid.node_flags()
    out = _Out(ns.out)
    rows = []
    for i, ang in enumerate(grid.angles):
        for j, li in enumerate(grid.lambda_i):
            d = grid.delta[i, j]
            rows.append((float(ang), float(li), float(math.exp(-li)),
                         float(d.real), float(d.imag), int(flags[i, j])))
    header = ["lambda_r", "lambda_i", "radius", "re_delta", "im_delta", "cut_flag"]
    out.write_artifact(_csv(header, rows))
    pair = model.ep_locations(p)
    comps = grid.cut_components()
    out.summary(f"lambda_plus = {_fmt(pair.lambda_plus.real)} + {_fmt(pair.lambda_plus.imag)}i")
    out.summary(f"lambda_minus = {_fmt(pair.lambda_minus.real)} + {_fmt(pair.lambda_minus.imag)}i")
    out.summary(f"cut_components = {len(comps)}")
    for k, comp in enumerate(comps):
        dp = grid.cells_to(comp, pair.lambda_plus)
        dm = grid.cells_to(comp, pair.lambda_minus)
        out.summary(f"component_{k}: edges = {len(comp)}, "
                    f"cells_to_lambda_plus = {_fmt(dp)}, cells_to_lambda_minus = {_fmt(dm)}")
    # continuation report: the unit circle's monodromy and cut crossings
    lams = np.linspace(0.0, 2.0 * np.pi, 8 * ns.resolution + 1)
    d = riemann.reference_gap_difference(p, lams)
    crossings = int(np.sum(np.abs(d[:-1] - d[1:]) > np.abs(d[:-1] + d[1:])))
    loop = ParamPath.real_axis_loop(samples_per_loop=4 * ns.resolution)
    double = ParamPath.real_axis_loop(loops=2, samples_per_loop=4 * ns.resolution)
    out.summary(f"unit_circle_cut_crossings = {crossings}")
    out.summary(f"unit_circle_pairing = {riemann.continue_eigenvalues(p, loop).pairing}")
    out.summary(f"double_circle_pairing = {riemann.continue_eigenvalues(p, double).pairing}")
    return 0


def cmd_sweep(ns):
    p = _params(ns)
    _require_nondegenerate(p)
    schedule = adiabatic.SweepSchedule(kicks=ns.kicks, loops=ns.loops, ramp=ns.ramp)
    band = 0 if ns.band == "+" else 1
    initial = model.frame_from_angle(0.0, p.phi)[band]
    result = adiabatic.stroboscopic_evolve(p, schedule, initial)
    predicted = adiabatic.predicted_final_state(p, ns.loops, band)
    fidelity = float(abs(np.vdot(predicted, result.final_state)) ** 2)
    out = _Out(ns.out)
    rows = [(m, float(result.lambdas[m]), float(result.p_plus[m]), float(result.p_minus[m]))
            for m in range(ns.kicks + 1)]
    out.write_artifact(_csv(["m", "lambda", "p_plus", "p_minus"], rows))
    out.summary(f"start_band = {'+' if band == 0 else '-'}")
    out.summary(f"transition_probability = {_fmt(result.transition_probability)}")
    out.summary(f"frame_phase = {_fmt(result.frame_phase)}")
    out.summary(f"holonomy_fidelity = {_fmt(fidelity)}")
    return 0


def cmd_scan(ns):
    p = _params(ns)
    _require_nondegenerate(p)
    kicks = [int(x) for x in ns.kicks_list.split(",") if x]
    table = adiabatic.adiabatic_convergence_scan(p, ns.loops, kicks)
    doc = {
        "loops": ns.loops,
        "table": [{"kicks": k, "fidelity": f} for k, f in table],
    }
    _Out(ns.out).write_artifact(_jsonify(doc) + "\n")
    return 0


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "eps": cmd_eps,
    "holonomy": cmd_holonomy,
    "riemann": cmd_riemann,
    "sweep": cmd_sweep,
    "scan": cmd_scan,
}

_DEFAULTS = {
    "mu": math.pi / 2, "theta": math.pi / 2, "phi": 0.0, "out": None, "tol": 1e-6,
    "samples": None, "loops": 1, "kicks": 10_000, "ramp": "linear", "band": "+",
    "resolution": 128, "rmax": None, "kicks_list": "100,1000,10000",
}

_SAMPLES_DEFAULT = {"spectrum": 1000, "holonomy": 10_000}

_COMMAND_KEYS = {
    "spectrum": {"mu", "theta", "phi", "out", "tol", "samples"},
    "eps": {"mu", "theta", "phi", "out", "tol"},
    "holonomy": {"mu", "theta", "phi", "out", "tol", "samples", "loops"},
    "riemann": {"mu", "theta", "phi", "out", "tol", "resolution", "rmax"},
    "sweep": {"mu", "theta", "phi", "out", "tol", "kicks", "loops", "ramp", "band"},
    "scan": {"mu", "theta", "phi", "out", "tol", "kicks_list", "loops"},
}


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file preloading options (flags win)")
    common.add_argument("--mu", type=float, help="static field strength (radians)")
    common.add_argument("--theta", type=float, help="kick axis polar angle in [0, pi]")
    common.add_argument("--phi", type=float, help="kick axis azimuthal angle")
    common.add_argument("--out", help="artifact file (default: stdout)")
    common.add_argument("--tol", type=float, help="cross-check tolerance")

    parser = argparse.ArgumentParser(prog="kickedspin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="real-coupling spectrum table")
    sp.add_argument("--samples", type=int, help="grid intervals over [0, 2 pi] (default 1000)")

    sub.add_parser("eps", parents=[common], help="exceptional point report")

    hp = sub.add_parser("holonomy", parents=[common], help="holonomy of the real-axis loop")
    hp.add_argument("--samples", type=int, help="path samples per loop (default 10000)")
    hp.add_argument("--loops", type=int, help="loop traversals (default 1)")

    rp = sub.add_parser("riemann", parents=[common], help="polar sheet grid with cut flags")
    rp.add_argument("--resolution", type=int, help="grid points per axis (default 128)")
    rp.add_argument("--rmax", type=float, help="outer polar radius (default e^{|beta|+1})")

    wp = sub.add_parser("sweep", parents=[common], help="stroboscopic adiabatic sweep")
    wp.add_argument("--kicks", type=int, help="total kick periods (default 10000)")
    wp.add_argument("--loops", type=int, help="coupling loops (default 1)")
    wp.add_argument("--ramp", choices=["linear", "smooth"], help="ramp profile")
    wp.add_argument("--band", choices=["+", "-"], help="starting band (default +)")

    cp = sub.add_parser("scan", parents=[common], help="adiabatic convergence table")
    cp.add_argument("--kicks-list", dest="kicks_list",
                    help="comma-separated kick counts (default 100,1000,10000)")
    cp.add_argument("--loops", type=int, help="coupling loops (default 1)")
    return parser


def _resolve_options(ns):
    """Layer config-file values under explicit flags, then hard defaults."""
    keys = _COMMAND_KEYS[ns.command]
    config = {}
    if ns.config:
        with open(ns.config) as fh:
            config = json.load(fh)
        if not isinstance(config, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(config) - keys
        if unknown:
            raise ValueError(f"unknown config keys for {ns.command}: {sorted(unknown)}")
    for key in keys:
        flag = getattr(ns, key, None)
        if flag is not None:
            continue
        if key in config:
            setattr(ns, key, config[key])
        elif key == "samples":
            setattr(ns, key, _SAMPLES_DEFAULT[ns.command])
        else:
            setattr(ns, key, _DEFAULTS[key])
    _validate(ns)
    return ns


def _validate(ns):
    if ns.tol is not None and not ns.tol > 0.0:
        raise ValueError("tol must be strictly positive")
    for key in ("samples", "loops", "kicks", "resolution"):
        val = getattr(ns, key, None)
        if val is not None and int(val) != val:
            raise ValueError(f"{key} must be an integer")
        if val is not None and val <= 0 and not (key == "loops" and ns.command in ("sweep", "scan")):
            raise ValueError(f"{key} must be positive")
        if val is not None:
            setattr(ns, key, int(val))
    if getattr(ns, "loops", 1) < 0:
        raise ValueError("loops must be >= 0")
    if not (0.0 <= ns.theta <= math.pi):
        raise ValueError("theta must lie in [0, pi]")


def main(argv=None):
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        ns = _resolve_options(ns)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    try:
        return _COMMANDS[ns.command](ns)
    except DegenerateModelError as exc:
        sys.stderr.write(f"degenerate model: {exc}\n")
        return 3
    except KickedSpinError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 4
    except ValueError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
