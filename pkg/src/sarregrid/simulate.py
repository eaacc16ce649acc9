"""Synthetic stripmap phase-history generation and subsampling.

Point scatterers live on the unit square; the sampling lattice is uniform
along azimuth and curved along range (each slice's range frequencies are
``sqrt(k_p**2 - curvature * nu_n**2)`` for a uniform wavenumber ladder
``k_p``), so slices bow off the integer grid the way a range-migrated
spectrum does.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ComplexGrid, UniformGrid1D
from .metrics import RegionMask
from .reconstruct import PhaseHistory

__all__ = [
    "Scatterer",
    "Scene",
    "SamplingPattern",
    "synthesize_phase_history",
    "stratified_subsample",
    "ground_truth_mask",
    "reference_image",
]

STRATUM_SIZE = 10
ALLOWED_PERCENTS = tuple(range(30, 101, 10))


@dataclass(frozen=True)
class Scatterer:
    x: float
    y: float
    amplitude: complex = 1.0 + 0.0j


@dataclass
class Scene:
    """Point-scatterer scene with optional receiver noise."""

    scatterers: list[Scatterer]
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.scatterers:
            raise ValueError("scene needs at least one scatterer")
        for s in self.scatterers:
            if not (0.0 <= s.x < 1.0 and 0.0 <= s.y < 1.0):
                raise ValueError("scatterer coordinates must lie in [0, 1)")
            if not np.isfinite(s.amplitude):
                raise ValueError("scatterer amplitude must be finite")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")


@dataclass(frozen=True)
class SamplingPattern:
    """Curved range lattice over a uniform wavenumber band.

    The defaults keep every range sample between roughly 0.025 and 0.065
    grid steps away from the integer grid: far enough off-grid that the
    corrections have work to do, close enough that the system matrices
    stay diagonally dominated.
    """

    n_azimuth: int = 64
    n_range: int = 64
    k_min: float = 160.065
    k_max: float = 223.065
    curvature: float = 0.0125

    def __post_init__(self) -> None:
        if self.n_azimuth < 1 or self.n_range < 1:
            raise ValueError("pattern dimensions must be positive")
        if not self.k_max > self.k_min:
            raise ValueError("k_max must exceed k_min")
        if self.curvature < 0:
            raise ValueError("curvature must be non-negative")
        nu_max = np.abs(self.azimuth_freqs()).max()
        if self.k_min**2 < self.curvature * nu_max**2:
            raise ValueError("k_min too small: curved range frequencies go complex")

    def azimuth_freqs(self) -> np.ndarray:
        n = self.n_azimuth
        return np.arange(n, dtype=np.float64) - n // 2

    def range_freqs(self) -> np.ndarray:
        """Per-slice curved range frequencies, shape (n_azimuth, n_range)."""
        k = np.linspace(self.k_min, self.k_max, self.n_range)
        nu = self.azimuth_freqs()
        return np.sqrt(k[None, :] ** 2 - self.curvature * nu[:, None] ** 2)


def synthesize_phase_history(scene: Scene, pattern: SamplingPattern) -> PhaseHistory:
    """Forward-model the scene onto the pattern's lattice.

    The value at frequency pair (nu, lam) is the coherent sum of
    ``amplitude * exp(-2*pi*i*(nu*x + lam*y))`` over scatterers, plus
    circularly symmetric complex Gaussian noise of total standard
    deviation ``noise_sigma``, drawn reproducibly from the scene seed.
    """
    nu = pattern.azimuth_freqs()
    lam = pattern.range_freqs()
    values = np.zeros(lam.shape, dtype=np.complex128)
    for s in scene.scatterers:
        phase = nu[:, None] * s.x + lam * s.y
        values += complex(s.amplitude) * np.exp(-2j * np.pi * phase)
    if scene.noise_sigma > 0:
        rng = np.random.default_rng(scene.seed)
        scale = scene.noise_sigma / np.sqrt(2.0)
        values = values + scale * (
            rng.standard_normal(lam.shape) + 1j * rng.standard_normal(lam.shape)
        )
    return PhaseHistory(azimuth_freqs=nu, range_freqs=lam, values=values)


def stratified_subsample(ph: PhaseHistory, percent: int, seed: int = 0) -> PhaseHistory:
    """Keep a seeded fraction of range samples within contiguous strata.

    Samples are partitioned index-wise into runs of ten; each full stratum
    keeps ``percent / 10`` samples drawn without replacement (partial tail
    strata keep a proportional rounded-up count).  Retained frequencies
    stay strictly increasing and 100 percent returns the input unchanged.
    """
    if percent not in ALLOWED_PERCENTS:
        raise ValueError(f"percent must be one of {ALLOWED_PERCENTS}")
    if percent == 100:
        return ph
    p = ph.n_range
    if p < STRATUM_SIZE:
        raise ValueError("slice too short to stratify (need at least 10 samples)")

    bounds = list(range(0, p, STRATUM_SIZE)) + [p]
    quotas = [
        int(np.ceil((hi - lo) * percent / 100.0))
        for lo, hi in zip(bounds[:-1], bounds[1:])
    ]
    rng = np.random.default_rng(seed)
    rows_freqs = []
    rows_vals = []
    for i in range(ph.n_azimuth):
        keep = []
        for (lo, hi), quota in zip(zip(bounds[:-1], bounds[1:]), quotas):
            picked = rng.choice(hi - lo, size=quota, replace=False)
            keep.extend(lo + np.sort(picked))
        keep = np.asarray(keep)
        rows_freqs.append(ph.range_freqs[i, keep])
        rows_vals.append(ph.values[i, keep])
    return PhaseHistory(
        azimuth_freqs=ph.azimuth_freqs,
        range_freqs=np.vstack(rows_freqs),
        values=np.vstack(rows_vals),
    )


def scatterer_pixel(s: Scatterer, rows: int, cols: int) -> tuple[int, int]:
    """Nearest image pixel for a scatterer, wrapping at the periodic edge."""
    return int(round(s.x * rows)) % rows, int(round(s.y * cols)) % cols


def ground_truth_mask(scene: Scene, rows: int, cols: int, halo: int = 0) -> RegionMask:
    """Target/background partition from the scene geometry.

    The target is the union of (2*halo+1)-square neighborhoods around each
    scatterer's nearest pixel, wrapped toroidally to match the periodic
    image domain.
    """
    if halo < 0:
        raise ValueError("halo must be non-negative")
    target = np.zeros((rows, cols), dtype=bool)
    span = np.arange(-halo, halo + 1)
    for s in scene.scatterers:
        r0, c0 = scatterer_pixel(s, rows, cols)
        rr = (r0 + span) % rows
        cc = (c0 + span) % cols
        target[np.ix_(rr, cc)] = True
    return RegionMask(rows=rows, cols=cols, target=target)


def reference_image(scene: Scene, pattern: SamplingPattern, grid: UniformGrid1D) -> ComplexGrid:
    """Ideal noiseless image: the scene sampled on the exact uniform lattice
    (azimuth frequencies x grid coordinates) and inverted directly."""
    nu = pattern.azimuth_freqs()
    ell = grid.coords()
    values = np.zeros((nu.size, ell.size), dtype=np.complex128)
    for s in scene.scatterers:
        phase = nu[:, None] * s.x + ell[None, :] * s.y
        values += complex(s.amplitude) * np.exp(-2j * np.pi * phase)
    return ComplexGrid(np.fft.ifft2(values))
