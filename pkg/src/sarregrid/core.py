"""Complex grids, mollifier windows, and reference Fourier transforms.

Conventions used throughout the package: the spatial domain is the unit
interval per axis, discretized as ``x_k = k / M`` for an M-point axis, and
the inverse transform carries the ``1 / (rows * cols)`` normalization of
the standard IDFT.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ComplexGrid",
    "NonUniformSamples1D",
    "UniformGrid1D",
    "WindowSpec",
    "window_eval",
    "window_hat_eval",
    "nudft_direct",
    "nudft2_direct",
    "fft2_uniform",
    "ifft2_uniform",
]


@dataclass
class ComplexGrid:
    """Dense 2D array of complex samples (image or spectrum), row-major.

    Parameters
    ----------
    data : ndarray, shape (rows, cols)
        Complex values; coerced to complex128.
    axis_labels : tuple of str
        Free-text label per axis.
    """

    data: np.ndarray
    axis_labels: tuple[str, str] = ("azimuth", "range")

    def __post_init__(self) -> None:
        self.data = np.asarray(self.data, dtype=np.complex128)
        if self.data.ndim != 2 or self.data.size == 0:
            raise ValueError("grid data must be a non-empty 2D array")
        if not np.all(np.isfinite(self.data)):
            raise ValueError("grid data contains non-finite values")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


@dataclass
class NonUniformSamples1D:
    """Non-uniform 1D spectral samples: coordinates plus complex values."""

    freqs: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        self.freqs = np.asarray(self.freqs, dtype=np.float64)
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.freqs.ndim != 1 or self.freqs.size < 1:
            raise ValueError("freqs must be a 1D array with at least one entry")
        if self.values.shape != self.freqs.shape:
            raise ValueError("freqs and values must have equal length")
        if self.freqs.size > 1 and not np.all(np.diff(self.freqs) > 0):
            raise ValueError("freqs must be strictly increasing")


@dataclass(frozen=True)
class UniformGrid1D:
    """Uniform frequency grid: the m-th coordinate is ``start + m * step``."""

    m_count: int
    start: float = 0.0
    step: float = 1.0

    def __post_init__(self) -> None:
        if self.m_count < 1:
            raise ValueError("grid needs at least one point")
        if not self.step > 0:
            raise ValueError("grid step must be positive")

    def coords(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.m_count)


@dataclass(frozen=True)
class WindowSpec:
    """Exponential mollifier ``w(x) = exp(-decay * |x - center|)``.

    ``decay = 0`` is the degenerate no-window configuration: ``w`` is
    identically one and its transform is taken over the unit interval,
    which vanishes at every nonzero integer offset.
    """

    decay: float = 0.01
    center: float = 0.5

    def __post_init__(self) -> None:
        if self.decay < 0:
            raise ValueError("window decay must be non-negative")


def window_eval(spec: WindowSpec, x) -> np.ndarray | float:
    """Evaluate the window at spatial coordinate(s) ``x``; always in (0, 1]."""
    x = np.asarray(x, dtype=np.float64)
    out = np.exp(-spec.decay * np.abs(x - spec.center))
    return out if out.ndim else float(out)


def window_hat_eval(spec: WindowSpec, xi) -> np.ndarray | complex:
    """Continuous Fourier transform of the window at frequency ``xi``.

    For positive decay the transform is taken over the whole real line:
    ``exp(-2*pi*i*xi*center) * 2a / (a**2 + 4*pi**2*xi**2)``.  For the
    degenerate ``decay == 0`` window the unit-interval transform is used,
    ``exp(-i*pi*xi) * sinc(xi)``, so integer offsets map to the Kronecker
    delta.
    """
    xi = np.asarray(xi, dtype=np.float64)
    a = spec.decay
    if a == 0.0:
        out = np.exp(-1j * np.pi * xi) * np.sinc(xi)
    else:
        phase = np.exp(-2j * np.pi * xi * spec.center)
        out = phase * (2.0 * a) / (a * a + 4.0 * np.pi**2 * xi * xi)
    return out if out.ndim else complex(out)


def nudft_direct(freqs, values, weights, eval_points) -> np.ndarray:
    """Brute-force weighted non-uniform inverse DFT.

    Computes ``sum_n weights[n] * values[n] * exp(2*pi*i*freqs[n]*x)`` at
    every ``x`` in ``eval_points``.  This is the slow reference all fast
    paths are tested against.
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    values = np.asarray(values, dtype=np.complex128)
    weights = np.asarray(weights, dtype=np.float64)
    if not (freqs.shape == values.shape == weights.shape):
        raise ValueError("freqs, values and weights must have equal length")
    x = np.asarray(eval_points, dtype=np.float64)
    kernel = np.exp(2j * np.pi * np.multiply.outer(x, freqs))
    return kernel @ (weights * values)


def nudft2_direct(coords, values, weights, eval_points) -> np.ndarray:
    """2D variant of :func:`nudft_direct` for (n, 2) frequency coordinates."""
    coords = np.asarray(coords, dtype=np.float64)
    values = np.asarray(values, dtype=np.complex128)
    weights = np.asarray(weights, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise ValueError("coords must have shape (n, 2)")
    if values.shape[0] != coords.shape[0] or weights.shape[0] != coords.shape[0]:
        raise ValueError("coords, values and weights must have equal length")
    pts = np.asarray(eval_points, dtype=np.float64)
    phase = pts @ coords.T  # (k, n) dot products x . lambda
    kernel = np.exp(2j * np.pi * phase)
    return kernel @ (weights * values)


def _as_array(spectrum) -> tuple[np.ndarray, bool]:
    if isinstance(spectrum, ComplexGrid):
        return spectrum.data, True
    arr = np.asarray(spectrum, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError("expected a 2D array")
    return arr, False


def fft2_uniform(image):
    """Unnormalized forward 2D DFT; inverse of :func:`ifft2_uniform`."""
    arr, wrap = _as_array(image)
    out = np.fft.fft2(arr)
    return ComplexGrid(out, image.axis_labels) if wrap else out


def ifft2_uniform(spectrum):
    """Standard 2D inverse DFT with ``1 / (rows * cols)`` normalization."""
    arr, wrap = _as_array(spectrum)
    out = np.fft.ifft2(arr)
    return ComplexGrid(out, spectrum.axis_labels) if wrap else out
