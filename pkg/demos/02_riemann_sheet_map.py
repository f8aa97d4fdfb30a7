#!/usr/bin/env python3
"""Map the complexified coupling plane in polar view and find the cuts.

The propagator depends on the coupling only through e^{i lam}, so the
natural chart is an annulus: polar angle Re(lam), radius e^{-Im(lam)}.
The physical couplings live on the unit circle.  One exceptional point
sits inside (radius e^{-beta}), its conjugate outside (radius e^{+beta}),
and the branch cuts of the eigenvalue labelling are curves anchored at
these points.

A sweep of real coupling from 0 to 2 pi walks the unit circle once.  It
keeps a finite gap the whole way, yet it crosses the cut attached to the
enclosed EP an odd number of times, so the two eigenvalue branches come
back exchanged.  That is the entire mechanism of the exotic holonomy.

Writes the sampled grid to demos/out/sheet_grid.csv (same format as the
`kickedspin riemann` subcommand).
"""

import os

import numpy as np

from kickedspin import (GridSpec, ModelParams, ParamPath, continue_eigenvalues,
                        ep_locations, reference_gap_difference, sample_sheet)

p = ModelParams(mu=np.pi / 2, theta=np.pi / 2, phi=0.0)
pair = ep_locations(p)
grid = sample_sheet(p, GridSpec(n_angle=128, n_radius=128))

print(f"EPs: lambda_plus = {pair.lambda_plus:.6f} (radius "
      f"{np.exp(-pair.lambda_plus.imag):.4f}), lambda_minus = {pair.lambda_minus:.6f} "
      f"(radius {np.exp(-pair.lambda_minus.imag):.4f})")

comps = grid.cut_components()
print(f"detected cut curves: {len(comps)}")
for k, comp in enumerate(comps):
    print(f"  curve {k}: {len(comp):4d} flagged edges, "
          f"{grid.cells_to(comp, pair.lambda_plus):6.2f} cells from lambda_plus, "
          f"{grid.cells_to(comp, pair.lambda_minus):6.2f} cells from lambda_minus")

# crossings of the physical circle with the cut set
lams = np.linspace(0.0, 2 * np.pi, 2049)
d = reference_gap_difference(p, lams)
flips = np.abs(d[:-1] - d[1:]) > np.abs(d[:-1] + d[1:])
print(f"unit circle crosses the cut set {int(flips.sum())} time(s), "
      f"at angle(s) {np.round(lams[:-1][flips], 4)}")

# the monodromy that crossing implies
trace = continue_eigenvalues(p, ParamPath.real_axis_loop(samples_per_loop=4000))
print(f"eigenvalue continuation around the circle: {trace.pairing}")
trace2 = continue_eigenvalues(p, ParamPath.real_axis_loop(loops=2, samples_per_loop=4000))
print(f"... and around it twice: {trace2.pairing}")

os.makedirs(os.path.join(os.path.dirname(__file__) or ".", "out"), exist_ok=True)
path = os.path.join(os.path.dirname(__file__) or ".", "out", "sheet_grid.csv")
flags = grid.node_flags()
with open(path, "w") as fh:
    fh.write("lambda_r,lambda_i,radius,re_delta,im_delta,cut_flag\n")
    for i, ang in enumerate(grid.angles):
        for j, li in enumerate(grid.lambda_i):
            fh.write(f"{ang:.17g},{li:.17g},{np.exp(-li):.17g},"
                     f"{grid.delta[i, j].real:.17g},{grid.delta[i, j].imag:.17g},"
                     f"{int(flags[i, j])}\n")
print(f"grid written to {path}")
