"""Spreading/correlation matrices, quadrature weights, and correction builders.

The regridding machinery revolves around three matrices for a single range
slice with P non-uniform sample frequencies and an M-point target grid:

* ``spread`` (M x P): window-transform values at grid-minus-sample offsets,
  truncated to a radius ``q`` around the grid point.
* ``correlation`` (P x M): unit-interval inner products between the sampled
  exponentials and the window-divided grid exponentials, in closed form.
* ``system`` (M x M): the product ``spread @ correlation``.

A correction matrix maps the spread data onto corrected grid coefficients:
``g_hat = correction @ (spread @ values)``.  The correction can be the full
pseudo-inverse of the system matrix, a banded least-squares design, a
thresholded pseudo-inverse, or a diagonal-only fast estimate.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import UniformGrid1D, WindowSpec, window_hat_eval

__all__ = [
    "FrameMatrices",
    "CorrectionMatrix",
    "trapezoidal_weights",
    "build_frame_matrices",
    "correction_full_pinv",
    "correction_banded",
    "correction_thresholded_fast",
    "band_restrict",
    "threshold_restrict",
    "bound_residuals",
]

PINV_RTOL = 1e-12


def trapezoidal_weights(freqs) -> np.ndarray:
    """Trapezoidal-rule quadrature weights for strictly increasing nodes.

    End weights are half the adjacent gap, interior weights half the
    surrounding gap; the weights sum to ``freqs[-1] - freqs[0]``.
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    if freqs.ndim != 1 or freqs.size < 2:
        raise ValueError("need at least two frequency nodes")
    gaps = np.diff(freqs)
    if not np.all(gaps > 0):
        raise ValueError("frequencies must be strictly increasing")
    w = np.empty_like(freqs)
    w[0] = gaps[0] / 2.0
    w[-1] = gaps[-1] / 2.0
    w[1:-1] = (freqs[2:] - freqs[:-2]) / 2.0
    return w


def spread_matrix(grid_coords, sample_freqs, window: WindowSpec, q: float) -> np.ndarray:
    """Window-transform spreading matrix, zero outside the truncation radius."""
    offsets = np.subtract.outer(grid_coords, sample_freqs)
    mat = window_hat_eval(window, offsets)
    mat = np.where(np.abs(offsets) < q, mat, 0.0)
    return np.asarray(mat, dtype=np.complex128)


def correlation_matrix(sample_freqs, grid_coords, window: WindowSpec) -> np.ndarray:
    """Closed-form inner products over the unit interval.

    Entry (p, m) is the integral of ``exp(2*pi*i*(lam_p - ell_m)*x)`` against
    the reciprocal window ``exp(decay * |x - center|)``, split at the window
    center into two elementary exponential integrals.
    """
    delta = np.subtract.outer(sample_freqs, grid_coords)
    a = window.decay
    c = window.center
    if a == 0.0:
        s = 2j * np.pi * delta
        safe = np.where(delta == 0.0, 1.0, s)
        out = np.where(delta == 0.0, 1.0, (np.exp(s) - 1.0) / safe)
        return np.asarray(out, dtype=np.complex128)
    s1 = 2j * np.pi * delta - a
    s2 = 2j * np.pi * delta + a
    left = np.exp(a * c) * (np.exp(s1 * c) - 1.0) / s1
    right = np.exp(-a * c) * (np.exp(s2) - np.exp(s2 * c)) / s2
    return np.asarray(left + right, dtype=np.complex128)


@dataclass
class FrameMatrices:
    """Spreading and correlation matrices for one slice; product is lazy."""

    spread: np.ndarray
    correlation: np.ndarray

    @cached_property
    def system(self) -> np.ndarray:
        return self.spread @ self.correlation

    @property
    def m_count(self) -> int:
        return self.spread.shape[0]

    @property
    def p_count(self) -> int:
        return self.spread.shape[1]


def build_frame_matrices(
    range_freqs, grid: UniformGrid1D, window: WindowSpec, q: float
) -> FrameMatrices:
    """Assemble the spreading and correlation matrices for one slice."""
    lam = np.asarray(range_freqs, dtype=np.float64)
    if lam.ndim != 1 or lam.size == 0:
        raise ValueError("range frequency list is empty")
    if not q > 0:
        raise ValueError("truncation radius q must be positive")
    ell = grid.coords()
    return FrameMatrices(
        spread=spread_matrix(ell, lam, window, q),
        correlation=correlation_matrix(lam, ell, window),
    )


@dataclass
class CorrectionMatrix:
    """Square correction matrix plus its sparsity bookkeeping.

    ``kind`` is one of ``diagonal-quadrature``, ``full-pinv``, ``banded``,
    ``thresholded``, ``thresholded-fast``.
    """

    kind: str
    matrix: np.ndarray
    nnz: int
    tau: float | None = None
    band_r: int | None = None


def _finish(kind: str, matrix: np.ndarray, **extra) -> CorrectionMatrix:
    matrix = np.asarray(matrix, dtype=np.complex128)
    return CorrectionMatrix(kind=kind, matrix=matrix, nnz=int(np.count_nonzero(matrix)), **extra)


def correction_full_pinv(frames: FrameMatrices) -> CorrectionMatrix:
    """Moore-Penrose pseudo-inverse of the system matrix.

    Singular values below ``PINV_RTOL`` times the largest are treated as
    zero, so the result is defined for rank-deficient systems too.
    """
    a = frames.system
    if not np.all(np.isfinite(a)):
        raise ValueError("system matrix contains non-finite values")
    return _finish("full-pinv", np.linalg.pinv(a, rcond=PINV_RTOL))


def correction_banded(frames: FrameMatrices, r: int) -> CorrectionMatrix:
    """Banded correction minimizing the identity residual column by column.

    Column m of the correction is supported on rows within ``r`` of m and
    solves the least-squares problem ``system[:, rows] @ d ~= e_m``.  With
    ``r >= M - 1`` this reproduces the full pseudo-inverse.
    """
    if r < 0:
        raise ValueError("band radius must be non-negative")
    a = frames.system
    m_count = a.shape[0]
    width = 2 * r + 1
    d = np.zeros((m_count, m_count), dtype=np.complex128)

    if width >= m_count:
        d[:] = np.linalg.pinv(a, rcond=PINV_RTOL)
        return _finish("banded", d, band_r=r)

    gram = a.conj().T @ a
    interior = np.arange(r, m_count - r)
    if interior.size:
        cols = interior[:, None] + np.arange(-r, r + 1)[None, :]
        blocks = gram[cols[:, :, None], cols[:, None, :]]
        rhs = np.conj(a[interior[:, None], cols])
        try:
            sol = np.linalg.solve(blocks, rhs[..., None])[..., 0]
        except np.linalg.LinAlgError:
            sol = np.stack(
                [np.linalg.lstsq(a[:, c], _unit(m_count, m), rcond=None)[0]
                 for m, c in zip(interior, cols)]
            )
        d[cols, interior[:, None]] = sol
    for m in list(range(r)) + list(range(m_count - r, m_count)):
        lo, hi = max(0, m - r), min(m_count, m + r + 1)
        sol, *_ = np.linalg.lstsq(a[:, lo:hi], _unit(m_count, m), rcond=None)
        d[lo:hi, m] = sol
    return _finish("banded", d, band_r=r)


def _unit(n: int, m: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.complex128)
    e[m] = 1.0
    return e


def correction_thresholded_fast(frames: FrameMatrices, tau: float) -> CorrectionMatrix:
    """Diagonal-only correction from the system diagonal, thresholded.

    Computes only ``d_m = system[m, m]`` from the spreading and correlation
    rows (the full system matrix and its pseudo-inverse are never formed)
    and keeps ``1 / d_m`` where its magnitude reaches ``tau``.
    """
    diag = np.einsum("mp,pm->m", frames.spread, frames.correlation)
    with np.errstate(divide="ignore", invalid="ignore"):
        recip = np.where(diag != 0, 1.0 / diag, 0.0)
    kept = np.where(np.abs(recip) >= tau, recip, 0.0)
    return _finish("thresholded-fast", np.diag(kept), tau=tau)


def band_restrict(full: CorrectionMatrix, r: int) -> CorrectionMatrix:
    """Keep entries within ``r`` of the diagonal verbatim, zero the rest."""
    d = full.matrix
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("correction matrix must be square")
    n = d.shape[0]
    idx = np.arange(n)
    mask = np.abs(idx[:, None] - idx[None, :]) <= r
    return _finish("banded", np.where(mask, d, 0.0), band_r=r)


def threshold_restrict(full: CorrectionMatrix, tau: float) -> CorrectionMatrix:
    """Keep entries whose magnitude reaches ``tau`` verbatim, zero the rest.

    The comparison uses complex magnitude; ``tau = 0`` returns the input
    matrix unchanged.
    """
    if tau < 0:
        raise ValueError("threshold must be non-negative")
    d = full.matrix
    kept = np.where(np.abs(d) >= tau, d, 0.0)
    return _finish("thresholded", kept, tau=tau)


def bound_residuals(frames: FrameMatrices, correction: CorrectionMatrix) -> dict:
    """Identity residuals and the sparsity-residual trade-off bound.

    Returns squared Frobenius norms: ``residual_right = |A D - I|^2``,
    ``residual_left = |D A - I|^2``, ``lhs = residual_right`` and
    ``rhs = |D|^2 * |A - pinv(D)|^2``.  The ``lhs <= rhs`` inequality is
    guaranteed only when the correction is invertible.
    """
    a = frames.system
    d = correction.matrix
    if a.shape != d.shape:
        raise ValueError("system and correction shapes do not conform")
    eye = np.eye(a.shape[0])
    right = float(np.linalg.norm(a @ d - eye, "fro") ** 2)
    left = float(np.linalg.norm(d @ a - eye, "fro") ** 2)
    d_pinv = np.linalg.pinv(d, rcond=PINV_RTOL)
    rhs = float(np.linalg.norm(d, "fro") ** 2 * np.linalg.norm(a - d_pinv, "fro") ** 2)
    return {
        "lhs": right,
        "rhs": rhs,
        "residual_left": left,
        "residual_right": right,
    }
