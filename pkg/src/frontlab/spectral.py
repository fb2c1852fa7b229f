"""Periodic grid bookkeeping and dealiased spectral operations.

Fourier coefficients follow the convention

    coeff(k) = (1/N) sum_j f(x_j) exp(-i k x_j),   x_j = 2 pi j / N,

i.e. the discrete analogue of (1/2pi) times the integral over a period.
Front states are real-valued, zero-mean fields: Hermitian symmetry and a
vanishing k = 0 (and Nyquist) coefficient are enforced at construction, not
assumed.  Coefficients are stored as the full complex array in numpy FFT
order for clarity; performance-critical loops may build on the same layout.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
from scipy import fft as sfft

from . import kernels


class SpectralError(ValueError):
    pass


def fft_workers() -> int:
    """Worker cap for the FFT backend, from FRONTLAB_THREADS (default 1)."""
    raw = os.environ.get("FRONTLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise SpectralError(f"FRONTLAB_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise SpectralError(f"FRONTLAB_THREADS must be positive, got {n}")
    return n


@dataclass(frozen=True)
class Grid:
    """Uniform collocation grid on [0, 2pi) with a power-of-two mode count."""

    n_modes: int
    domain_length: float = field(default=2.0 * np.pi, init=False)

    def __post_init__(self):
        n = self.n_modes
        if n < 4 or n & (n - 1) != 0:
            raise SpectralError(f"n_modes must be a power of two >= 4, got {n}")

    @property
    def points(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_modes) / self.n_modes

    @property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers in FFT order: 0, 1, ..., n/2-1, -n/2, ..., -1."""
        return np.fft.fftfreq(self.n_modes, d=1.0 / self.n_modes).astype(int)

    @property
    def k_max(self) -> int:
        return self.n_modes // 2

    def index_of(self, k: int) -> int:
        if not -self.n_modes // 2 <= k < self.n_modes // 2:
            raise SpectralError(f"wavenumber {k} outside grid of {self.n_modes} modes")
        return k % self.n_modes


def _sanitize_coeffs(grid: Grid, coeffs: np.ndarray) -> np.ndarray:
    """Enforce Hermitian symmetry, zero mean, and a zero Nyquist mode."""
    c = np.asarray(coeffs, dtype=complex)
    if c.shape != (grid.n_modes,):
        raise SpectralError(
            f"coefficient array has shape {c.shape}, expected ({grid.n_modes},)"
        )
    if not np.all(np.isfinite(c.view(float))):
        raise SpectralError("non-finite Fourier coefficients")
    # average coeff(k) with conj(coeff(-k)); index -k is (n - k) mod n
    flipped = np.conj(np.roll(c[::-1], 1))
    c = 0.5 * (c + flipped)
    c[0] = 0.0
    c[grid.n_modes // 2] = 0.0
    c.setflags(write=False)
    return c


@dataclass(frozen=True)
class FrontState:
    """Real, zero-mean front displacement in Fourier representation."""

    grid: Grid
    coeffs: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _sanitize_coeffs(self.grid, self.coeffs))

    @classmethod
    def from_values(cls, grid: Grid, values, time: float = 0.0) -> "FrontState":
        return forward_transform(grid, values, time=time)

    @classmethod
    def zero(cls, grid: Grid, time: float = 0.0) -> "FrontState":
        return cls(grid, np.zeros(grid.n_modes, dtype=complex), time)

    def coeff(self, k: int) -> complex:
        return complex(self.coeffs[self.grid.index_of(k)])

    def values(self) -> np.ndarray:
        return inverse_transform(self)

    def with_coeffs(self, coeffs, time: float | None = None) -> "FrontState":
        return FrontState(self.grid, coeffs, self.time if time is None else time)

    def scaled(self, factor: float) -> "FrontState":
        return self.with_coeffs(self.coeffs * factor)

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def forward_transform(grid: Grid, values, time: float = 0.0) -> FrontState:
    """Collocation values -> FrontState coefficients (mean removed)."""
    v = np.asarray(values, dtype=float)
    if v.shape != (grid.n_modes,):
        raise SpectralError(f"value array has shape {v.shape}, expected ({grid.n_modes},)")
    if not np.all(np.isfinite(v)):
        raise SpectralError("non-finite collocation values")
    c = sfft.fft(v, workers=fft_workers()) / grid.n_modes
    return FrontState(grid, c, time)


def inverse_transform(state: FrontState) -> np.ndarray:
    """FrontState coefficients -> real collocation values."""
    n = state.grid.n_modes
    return np.real(sfft.ifft(state.coeffs * n, workers=fft_workers()))


def apply_multiplier(state: FrontState, symbol) -> FrontState:
    """Apply a real, even Fourier multiplier: coeff_out(k) = symbol(k) coeff(k)."""
    s = np.asarray(symbol, dtype=float)
    n = state.grid.n_modes
    if s.shape != (n,):
        raise SpectralError(f"symbol array has shape {s.shape}, expected ({n},)")
    if not np.allclose(s, np.roll(s[::-1], 1), rtol=0.0, atol=1e-12 * (1 + np.abs(s).max())):
        raise SpectralError("multiplier symbol must be even in k")
    return state.with_coeffs(state.coeffs * s)


@dataclass(frozen=True)
class SymbolTable:
    """Per-grid arrays of the nonlinear symbol a(k) and dispersive symbol b(k).

    Entries follow the grid's FFT ordering.  a(0) = 0 by the continuity
    convention; the b entry at k = 0 (and Nyquist) is unused for zero-mean
    states and stored as 0.
    """

    grid: Grid
    alpha: kernels.AlphaFamily
    a_values: np.ndarray
    b_values: np.ndarray

    @classmethod
    def build(cls, grid: Grid, alpha: kernels.AlphaFamily) -> "SymbolTable":
        k = grid.wavenumbers.astype(float)
        a = np.asarray(kernels.symbol_a(k, alpha), dtype=float)
        b = np.zeros_like(a)
        nz = k != 0.0
        b[nz] = kernels.symbol_b(k[nz], alpha)
        b[grid.n_modes // 2] = 0.0  # Nyquist never evolves
        a.setflags(write=False)
        b.setflags(write=False)
        return cls(grid, alpha, a, b)

    def linear_only(self) -> "SymbolTable":
        """Same dispersion, nonlinearity switched off (a = 0)."""
        return SymbolTable(self.grid, self.alpha, np.zeros_like(self.a_values),
                           self.b_values)


# ---------------------------------------------------------------------------
# Dealiased products
# ---------------------------------------------------------------------------

def pad_spectrum(coeffs: np.ndarray, n: int, m: int) -> np.ndarray:
    """Embed an n-mode spectrum into an m-mode array (m >= n), FFT order."""
    out = np.zeros(m, dtype=complex)
    half = n // 2
    out[:half] = coeffs[:half]
    out[m - half:] = coeffs[half:]
    return out


def truncate_spectrum(coeffs: np.ndarray, m: int, n: int) -> np.ndarray:
    """Restrict an m-mode spectrum back to n modes, FFT order."""
    half = n // 2
    out = np.empty(n, dtype=complex)
    out[:half] = coeffs[:half]
    out[half:] = coeffs[m - half:]
    return out


def padded_values(coeffs: np.ndarray, n: int, m: int) -> np.ndarray:
    """Exact band-limited resampling of an n-mode spectrum on m points."""
    return np.real(sfft.ifft(pad_spectrum(coeffs, n, m) * m, workers=fft_workers()))


def dealiased_triple_product(p: FrontState, q: FrontState, r: FrontState) -> FrontState:
    """Fourier coefficients of the pointwise product p*q*r, alias-free.

    Each factor is zero-padded to 2 n collocation points before multiplying;
    with modes |k| <= n/2 - 1 the spurious cubic images live at |k| >= n/2 + 3,
    so every retained coefficient is exact.  The k = 0 coefficient of the
    product is dropped (front states are zero-mean containers).
    """
    if not (p.grid == q.grid == r.grid):
        raise SpectralError("triple product requires a common grid")
    n = p.grid.n_modes
    m = 2 * n
    u = padded_values(p.coeffs, n, m)
    v = padded_values(q.coeffs, n, m)
    w = padded_values(r.coeffs, n, m)
    prod = sfft.fft(u * v * w, workers=fft_workers()) / m
    return p.with_coeffs(truncate_spectrum(prod, m, n))
