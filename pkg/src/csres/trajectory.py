"""theta-trajectories and histogram-mode extraction of resonance positions.

A trajectory follows one spectral feature across a grid of rotation
angles.  The best resonance estimate sits where the eigenvalue moves
slowest with theta; operationally it is read off as the mode of two
independent histograms, one over the real parts and one over the
imaginary parts of the collected energies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import RadialBasisSpec
from .errors import NumericalError
from .hamiltonian import PotentialModel, build_raw_matrices, build_scaled_matrix, solve_spectrum
from .vqa import VqaConfig, encode_matrix, minimize_variance

CLASSICAL = "classical"
QUANTUM = "quantum"


@dataclass(frozen=True)
class TrajectoryPoint:
    theta_deg: float
    energy: complex
    source: str


@dataclass
class ThetaTrajectory:
    """Accepted points (theta strictly increasing) plus a per-theta log."""

    points: list
    log: list = field(default_factory=list)  # (theta, accepted, reason)
    meta: dict = field(default_factory=dict)

    @property
    def energies(self):
        return np.array([p.energy for p in self.points])

    @property
    def thetas(self):
        return np.array([p.theta_deg for p in self.points])


@dataclass(frozen=True)
class ResonanceEstimate:
    """Histogram-mode resonance position: bin centers of the maximal bins."""

    energy: complex
    bin_width_re: float
    bin_width_im: float
    counts_re: np.ndarray
    counts_im: np.ndarray
    n_points: int
    bins: int


def run_trajectory(
    basis: RadialBasisSpec,
    potential: PotentialModel,
    thetas,
    center,
    radius,
    engine=CLASSICAL,
    vqa_config: VqaConfig = None,
    attempts: int = 3,
) -> ThetaTrajectory:
    """Follow one resonance across the theta grid.

    Classical engine: solve the generalised eigenproblem at each theta and
    continue from the eigenvalue nearest the previously accepted point
    (first point: nearest the center).  Quantum engine: run the
    variational solver initialised at the configured energy guess, keeping
    converged results only.  Either way a point is accepted only inside
    the neighbourhood |E - center| <= radius; rejected thetas are logged
    and skipped.
    """
    thetas = np.asarray(thetas, dtype=float)
    if thetas.size == 0 or np.any(np.diff(thetas) <= 0):
        raise ValueError("theta grid must be non-empty and strictly increasing")
    center = complex(center)
    points, log = [], []
    if engine == CLASSICAL:
        prev = center
        for th in thetas:
            h_raw, s = build_raw_matrices(basis, potential, th)
            energies = solve_spectrum(h_raw, overlap=s).energies
            pick = energies[np.argmin(np.abs(energies - prev))]
            if abs(pick - center) <= radius:
                points.append(TrajectoryPoint(float(th), complex(pick), CLASSICAL))
                prev = pick
                log.append((float(th), True, "accepted"))
            else:
                log.append(
                    (float(th), False,
                     f"nearest eigenvalue {pick:.4f} outside neighborhood")
                )
    elif engine == QUANTUM:
        if vqa_config is None:
            raise ValueError("quantum engine needs a VqaConfig")
        for th in thetas:
            sh = build_scaled_matrix(basis, potential, th)
            h_sum = encode_matrix(sh.matrix, vqa_config.encoding)
            reason = "no attempt converged inside neighborhood"
            accepted = None
            for attempt in range(attempts):
                seed = vqa_config.base_seed + 1000 * int(round(2 * th)) + attempt
                est = minimize_variance(h_sum, vqa_config, seed=seed)
                if not est.converged:
                    reason = f"not converged (cost {est.cost:.2e})"
                    continue
                if abs(est.energy - center) > radius:
                    reason = f"converged to {est.energy:.4f} outside neighborhood"
                    continue
                accepted = est.energy
                break
            if accepted is not None:
                points.append(TrajectoryPoint(float(th), complex(accepted), QUANTUM))
                log.append((float(th), True, "accepted"))
            else:
                log.append((float(th), False, reason))
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if not points:
        detail = "; ".join(f"theta={t:g}: {r}" for t, ok, r in log if not ok)
        raise NumericalError(f"empty trajectory, no theta accepted ({detail})")
    meta = {
        "basis": basis,
        "potential": potential,
        "center": center,
        "radius": float(radius),
        "theta_grid": thetas,
        "engine": engine,
    }
    return ThetaTrajectory(points=points, log=log, meta=meta)


def _mode_center(values, bins):
    values = np.asarray(values, dtype=float)
    lo, hi = values.min(), values.max()
    if hi - lo < 1e-15:
        # degenerate histogram: every point identical
        width = 1e-15
        counts = np.zeros(bins, dtype=int)
        counts[0] = values.size
        return float(lo), width, counts
    counts, edges = np.histogram(values, bins=bins)
    centers = 0.5 * (edges[:-1] + edges[1:])
    top = np.flatnonzero(counts == counts.max())
    median = np.median(values)
    pick = top[np.argmin(np.abs(centers[top] - median))]
    return float(centers[pick]), float(edges[1] - edges[0]), counts


def extract_optimal(traj: ThetaTrajectory, bins: int = 25) -> ResonanceEstimate:
    """Mode of the real- and imaginary-part histograms (ties: nearest median)."""
    if not traj.points:
        raise ValueError("trajectory has no points")
    energies = traj.energies
    re, w_re, c_re = _mode_center(energies.real, bins)
    im, w_im, c_im = _mode_center(energies.imag, bins)
    return ResonanceEstimate(
        energy=complex(re, im),
        bin_width_re=w_re,
        bin_width_im=w_im,
        counts_re=c_re,
        counts_im=c_im,
        n_points=len(traj.points),
        bins=bins,
    )


def trajectory_speed(traj: ThetaTrajectory):
    """|dE/d theta| along the trajectory by central differences.

    The minimum-speed theta flags the stationary region (loop, kink or
    slow-down) near the optimal resonance position.
    """
    if len(traj.points) < 2:
        raise ValueError("need at least two trajectory points")
    th = traj.thetas
    e = traj.energies
    de = np.gradient(e, th)
    return [(float(t), float(abs(d))) for t, d in zip(th, de)]
