#!/usr/bin/env python3
"""Scanning the complex spectrum with the variance-minimisation solver.

The cost <(H+ - E*)(H - E)> vanishes exactly at a right eigenpair, so
stepping the initial energy guess along the real axis and re-optimising
from each start reconstructs the spectrum without prior knowledge.  With
a shot budget per measurement the optimiser runs on sampled expectations
and independent seeded runs are pooled by median, with the median
absolute deviation as the error bar.
"""

import numpy as np

from csres import (
    PotentialModel,
    RadialBasisSpec,
    VqaConfig,
    aggregate_spectra,
    build_scaled_matrix,
    encode_gray,
    scan_spectrum,
)

basis = RadialBasisSpec.gaussian(5, 1, 1.0, 4.0)
model = PotentialModel.schematic()
h5 = build_scaled_matrix(basis, model, 24.0).matrix
classical = np.array(sorted(np.linalg.eigvals(h5), key=lambda z: z.real))
hg = encode_gray(h5)

print("classical eigenvalues (theta = 24 deg):")
for e in classical:
    print(f"    {e.real:8.4f} {e.imag:+8.4f}i")

print("\nexact-expectation scan (20 restarts, step 0.4 MeV):")
config = VqaConfig(p=3, repetitions=20, scan_step=0.4, init_energy=-1.2 - 0.01j,
                   base_seed=7)
for est in scan_spectrum(hg, config):
    near = classical[np.argmin(np.abs(classical - est.energy))]
    tag = "origin padding" if abs(est.energy) < 1e-6 else f"matches {near:.4f}"
    print(f"    {est.energy.real:8.4f} {est.energy.imag:+8.4f}i  "
          f"cost {est.cost:.1e}  x{est.multiplicity}  ({tag})")

print("\nsampled-expectation scan, 8192 shots, 8 independent runs:")
per_run = []
for r in range(8):
    cfg = VqaConfig(p=3, shots=8192, repetitions=8, scan_step=0.5,
                    init_energy=-1.2 - 0.01j, base_seed=500 + 8 * r,
                    maxiter=400, warmup_maxiter=150,
                    shot_tol_scale=0.02, fd_step_shot=1e-3)
    per_run.append(scan_spectrum(hg, cfg))
for cl in aggregate_spectra(per_run, radius=0.25):
    med, mad = cl["median"], cl["mad"]
    print(f"    median {med.real:8.4f} {med.imag:+8.4f}i   "
          f"MAD ({mad[0]:.3f}, {mad[1]:.3f})   from {cl['n_members']} runs")
print("\n(the cluster at the origin is the Gray-code padding state; "
      "levels with large widths need scan lines at deeper Im E)")
