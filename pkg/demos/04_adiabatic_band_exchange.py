#!/usr/bin/env python3
"""Watch the holonomy happen: a slow sweep swaps the bands almost perfectly.

The state starts in the upper quasienergy band at zero coupling.  The
coupling then creeps from 0 to 2 pi over many kick periods, one exact
Floquet step per period.  Adiabatically the state rides its band; the
band's eigenvector rotates by a quarter turn over the loop, so the final
state lands in the *other* band of the starting frame with probability
approaching one.  This is excitation by holonomy: no resonance, no
Landau-Zener leakage budget, the slower the sweep the cleaner it gets.

Sweeping around twice brings the state home with a geometric phase of pi,
matching the -identity double-loop holonomy.
"""

import numpy as np

from kickedspin import (ModelParams, SweepSchedule, adiabatic_convergence_scan,
                        stroboscopic_evolve)

p = ModelParams(mu=np.pi / 2, theta=np.pi / 2, phi=0.0)

res = stroboscopic_evolve(p, SweepSchedule(kicks=10_000))
print("single loop, T = 10000 kicks, linear ramp, start in band +:")
print(f"{'m':>6} {'lambda':>9} {'p_plus':>10} {'p_minus':>10}")
for m in range(0, 10_001, 2_000):
    print(f"{m:6d} {res.lambdas[m]:9.5f} {res.p_plus[m]:10.6f} {res.p_minus[m]:10.6f}")
print(f"transition probability into band -: {res.transition_probability:.8f}")
print("(the populations ride band + the whole way; band + itself has turned"
      " into band - of the starting frame)")
print()

res2 = stroboscopic_evolve(p, SweepSchedule(kicks=20_000, loops=2))
print(f"double loop: back in band + with probability {res2.p_plus[-1]:.8f} "
      f"and frame phase {res2.frame_phase:+.6f} (geometric pi)")
print()

# convergence to the holonomy prediction; a tilted axis shows the generic
# 1/T^2-ish approach (the equatorial axis is special: even kick counts
# transfer exactly at any speed)
tilted = ModelParams(mu=np.pi / 2, theta=1.0, phi=0.0)
print("holonomy fidelity vs sweep length (mu = pi/2, theta = 1):")
for kicks, fid in adiabatic_convergence_scan(tilted, 1, [100, 1_000, 10_000, 100_000]):
    print(f"  T = {kicks:>6d}:  fidelity = {fid:.10f}   defect = {1 - fid:.3e}")
