"""Time integration of the cubic approximate front equation.

The evolution solved here is

    phi_t + (1/2) d_x { phi^2 A phi - phi A phi^2 + (1/3) A phi^3 } + L phi_x = 0

with A and L the Fourier multipliers a(k), b(k) of the chosen alpha-family.
The quadratic-invariant structure is preserved exactly by the spatial
discretization: products are dealiased by zero padding, so the truncated
system is itself Hamiltonian and any drift in the invariants measures pure
time-integration error.

Stepping is integrating-factor RK4: the dispersive phase exp(-i k b(k) dt)
is unitary and integrated exactly, RK4 acts on the transformed nonlinear
term.  High-wavenumber stabilization is an exponential filter applied once
per step (production default) or a spectral-viscosity damping folded into
the integrating factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import fft as sfft

from . import io as flio
from . import kernels
from .spectral import (
    FrontState,
    Grid,
    SpectralError,
    SymbolTable,
    fft_workers,
)


class NumericalAbort(RuntimeError):
    """Integration produced a non-finite state."""


# ---------------------------------------------------------------------------
# Run specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ViscositySpec:
    """High-wavenumber dissipation attached to the stepper.

    exp_filter multiplies coefficients by exp(-strength (|k|/k_max)^order)
    once per step; spectral_viscosity adds a damping -strength |k|^order on
    modes above cutoff_fraction * k_max, integrated exactly.  strength = 0
    if and only if kind = "none".
    """

    kind: str = "none"
    order: int = 36
    strength: float = 0.0
    cutoff_fraction: float = 0.5

    def __post_init__(self):
        if self.kind not in ("none", "exp_filter", "spectral_viscosity"):
            raise ValueError(f"unknown viscosity kind {self.kind!r}")
        if (self.strength == 0.0) != (self.kind == "none"):
            raise ValueError("strength must be zero exactly when kind is 'none'")
        if self.strength < 0.0:
            raise ValueError("viscosity strength must be nonnegative")
        if self.order <= 0 or self.order % 2 != 0:
            raise ValueError("viscosity order must be a positive even integer")
        if not 0.0 < self.cutoff_fraction < 1.0:
            raise ValueError("cutoff_fraction must lie in (0, 1)")

    @classmethod
    def none(cls) -> "ViscositySpec":
        return cls()

    @classmethod
    def exp_filter(cls, order: int = 36, strength: float = 36.0) -> "ViscositySpec":
        return cls(kind="exp_filter", order=order, strength=strength)

    @classmethod
    def spectral(cls, strength: float, order: int = 2,
                 cutoff_fraction: float = 0.5) -> "ViscositySpec":
        return cls(kind="spectral_viscosity", order=order, strength=strength,
                   cutoff_fraction=cutoff_fraction)


@dataclass(frozen=True)
class InitialData:
    """Named initial profiles; all are sampled and mean-subtracted."""

    kind: str
    parameters: tuple = ()

    KINDS = ("two_cosine", "sech_squared", "single_mode", "fourier_list")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown initial data kind {self.kind!r}")
        object.__setattr__(self, "parameters", tuple(float(p) for p in self.parameters))

    def sample(self, grid: Grid) -> np.ndarray:
        x = grid.points
        if self.kind == "two_cosine":
            return np.cos(x + np.pi) + 0.5 * np.cos(2.0 * (x + np.pi + 2.0 * np.pi**2))
        if self.kind == "sech_squared":
            return 1.0 / np.cosh(5.0 * (x - np.pi) / 2.0) ** 2
        if self.kind == "single_mode":
            if len(self.parameters) < 2:
                raise ValueError("single_mode needs parameters [k, amplitude, (phase)]")
            k = int(self.parameters[0])
            amp = self.parameters[1]
            phase = self.parameters[2] if len(self.parameters) > 2 else 0.0
            return 2.0 * amp * np.cos(k * x + phase)
        # fourier_list: flat triples (k, re, im)
        if len(self.parameters) % 3 != 0 or not self.parameters:
            raise ValueError("fourier_list needs a flat list of (k, re, im) triples")
        vals = np.zeros_like(x)
        for j in range(0, len(self.parameters), 3):
            k = int(self.parameters[j])
            c = self.parameters[j + 1] + 1j * self.parameters[j + 2]
            vals += 2.0 * np.real(c * np.exp(1j * k * x))
        return vals

    def build(self, grid: Grid) -> FrontState:
        v = self.sample(grid)
        return FrontState.from_values(grid, v - v.mean())


@dataclass(frozen=True)
class SimulationConfig:
    grid: Grid
    alpha: kernels.AlphaFamily
    dt: float
    t_end: float
    initial_data: InitialData
    viscosity: ViscositySpec
    output_every: int = 100
    output_dir: str | None = None
    sobolev_orders: tuple = ()
    snapshot_every: int = 1  # snapshots every this many output events

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.t_end <= 0.0:
            raise ValueError("t_end must be positive")
        if self.output_every < 1:
            raise ValueError("output_every must be a positive integer")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be a positive integer")
        object.__setattr__(self, "sobolev_orders",
                           tuple(float(s) for s in self.sobolev_orders))


def default_dt(grid: Grid, alpha: kernels.AlphaFamily, cfl: float = 0.5) -> float:
    """dt = cfl / max_k |k b(k)|, the dispersive-phase resolution scale."""
    k = np.arange(1, grid.k_max + 1, dtype=float)
    return cfl / float(np.max(np.abs(k * kernels.symbol_b(k, alpha))))


def stability_proxy(grid: Grid, alpha: kernels.AlphaFamily, dt: float) -> float:
    k = np.arange(1, grid.k_max + 1, dtype=float)
    return dt * float(np.max(np.abs(k * kernels.symbol_b(k, alpha))))


# ---------------------------------------------------------------------------
# Right-hand side
# ---------------------------------------------------------------------------

def half_from_full(c: np.ndarray, n: int) -> np.ndarray:
    """Nonnegative-wavenumber half of a Hermitian full spectrum (rfft layout)."""
    half = np.array(c[:n // 2 + 1], dtype=complex)
    half[-1] = 0.0
    return half


def full_from_half(half: np.ndarray, n: int) -> np.ndarray:
    """Rebuild the full FFT-ordered spectrum from the rfft half."""
    return np.concatenate([half, np.conj(half[-2:0:-1])])


class _Workspace:
    """Precomputed arrays for the nonlinear flux on one grid.

    Operates on rfft half-spectra (wavenumbers 0..n/2): real transforms
    halve the FFT cost and make Hermitian symmetry structural.
    """

    def __init__(self, grid: Grid, symbols: SymbolTable):
        self.grid = grid
        self.symbols = symbols
        self.n = grid.n_modes
        self.m = 2 * self.n
        self.half_len = self.n // 2 + 1
        k_half = np.arange(self.half_len, dtype=float)
        self.ik = 1j * k_half
        self.ik[-1] = 0.0  # Nyquist never evolves
        self.a = symbols.a_values[:self.half_len].copy()
        self.b = symbols.b_values[:self.half_len].copy()
        if np.any(symbols.a_values != 0.0):
            self.a_big = np.asarray(
                kernels.symbol_a(np.arange(self.n + 1, dtype=float), symbols.alpha),
                dtype=float)
        else:
            self.a_big = np.zeros(self.n + 1)
        self.workers = fft_workers()

    def pad_values(self, half: np.ndarray) -> np.ndarray:
        padded = np.zeros(self.n + 1, dtype=complex)
        padded[:self.half_len] = half
        return sfft.irfft(padded * self.m, n=self.m, workers=self.workers)

    def nonlinear(self, half: np.ndarray) -> np.ndarray:
        """Coefficients of -(1/2) d_x {phi^2 A phi - phi A phi^2 + A phi^3 / 3}."""
        u = self.pad_values(half)
        au = self.pad_values(self.a * half)
        u2 = u * u
        u3 = u2 * u
        s2 = sfft.rfft(u2, workers=self.workers) / self.m
        s3 = sfft.rfft(u3, workers=self.workers) / self.m
        au2 = sfft.irfft(self.a_big * s2 * self.m, n=self.m, workers=self.workers)
        au3 = sfft.irfft(self.a_big * s3 * self.m, n=self.m, workers=self.workers)
        flux = 0.5 * (u2 * au - u * au2 + au3 / 3.0)
        fhat = sfft.rfft(flux, workers=self.workers)[:self.half_len] / self.m
        out = -self.ik * fhat
        out[0] = 0.0
        return out

    def full_rhs_half(self, half: np.ndarray) -> np.ndarray:
        return self.nonlinear(half) - self.ik * self.b * half

    def full_rhs(self, c: np.ndarray) -> np.ndarray:
        """Full-spectrum wrapper around the half-spectrum pipeline."""
        out = self.full_rhs_half(half_from_full(c, self.n))
        return full_from_half(out, self.n)

    def nonlinear_full(self, c: np.ndarray) -> np.ndarray:
        return full_from_half(self.nonlinear(half_from_full(c, self.n)), self.n)


def rhs_approx(state: FrontState, symbols: SymbolTable) -> FrontState:
    """Tendency of the cubic approximate equation, dealiased and real."""
    if symbols.grid != state.grid:
        raise SpectralError("symbol table grid mismatch")
    ws = _Workspace(state.grid, symbols)
    out = ws.full_rhs(np.asarray(state.coeffs))
    if not np.all(np.isfinite(out.view(float))):
        raise NumericalAbort("non-finite tendency (overflow in nonlinear products)")
    return state.with_coeffs(out)


# ---------------------------------------------------------------------------
# Stepping
# ---------------------------------------------------------------------------

class _Stepper:
    """Integrating-factor RK4 with a fixed step and viscosity treatment.

    Works on rfft half-spectra; use step_full for full-layout arrays.
    """

    def __init__(self, grid: Grid, symbols: SymbolTable, viscosity: ViscositySpec,
                 dt: float):
        if dt == 0.0:
            raise ValueError("dt must be nonzero")
        self.ws = _Workspace(grid, symbols)
        self.dt = dt
        k = np.arange(self.ws.half_len, dtype=float)
        b = self.ws.b
        lam = -1j * k * b  # exact dispersive generator
        if viscosity.kind == "spectral_viscosity":
            mask = k > viscosity.cutoff_fraction * grid.k_max
            lam = lam - viscosity.strength * k ** viscosity.order * mask
        self.e_half = np.exp(lam * dt / 2.0)
        self.e_full = self.e_half * self.e_half
        if viscosity.kind == "exp_filter":
            self.filter = np.exp(-viscosity.strength
                                 * (k / grid.k_max) ** viscosity.order)
        else:
            self.filter = None

    def step(self, half: np.ndarray) -> np.ndarray:
        dt, e1, e2 = self.dt, self.e_half, self.e_full
        nl = self.ws.nonlinear
        a1 = nl(half)
        a2 = nl(e1 * (half + 0.5 * dt * a1))
        a3 = nl(e1 * half + 0.5 * dt * a2)
        a4 = nl(e2 * half + dt * e1 * a3)
        out = e2 * half + (dt / 6.0) * (e2 * a1 + 2.0 * e1 * (a2 + a3) + a4)
        if self.filter is not None:
            out = self.filter * out
        if not np.all(np.isfinite(out.view(float))):
            raise NumericalAbort("non-finite state after step")
        return out

    def step_full(self, c: np.ndarray) -> np.ndarray:
        return full_from_half(self.step(half_from_full(c, self.ws.n)), self.ws.n)


def step(state: FrontState, dt: float, symbols: SymbolTable,
         viscosity: ViscositySpec = ViscositySpec.none()) -> FrontState:
    """Advance one integrating-factor RK4 step (dt may be negative)."""
    stepper = _Stepper(state.grid, symbols, viscosity, dt)
    return state.with_coeffs(stepper.step_full(np.asarray(state.coeffs)),
                             time=state.time + dt)


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StripFit:
    """Least-squares fit |phi_hat(k)| ~ C k^-p exp(-delta k) over a k-window."""

    delta: float
    decay_power: float
    log_amplitude: float
    n_used: int
    ok: bool


@dataclass(frozen=True)
class DiagnosticsRecord:
    time: float
    hamiltonian: float
    momentum: float
    sobolev_norms: dict
    strip_width: float  # nan flags a degenerate fit
    max_slope: float
    max_slope_location: float


def hamiltonian(state: FrontState, symbols: SymbolTable) -> float:
    """H = int [phi A phi^3 / 6 - phi^2 A phi^2 / 8] dx + int phi L phi dx / 2.

    Computed with alias-free products on the doubled grid; this is exactly
    the invariant of the truncated system.
    """
    ws = _Workspace(state.grid, symbols)
    half = half_from_full(np.asarray(state.coeffs), ws.n)
    u = ws.pad_values(half)
    u2 = u * u
    s2 = sfft.rfft(u2, workers=ws.workers) / ws.m
    s3 = sfft.rfft(u2 * u, workers=ws.workers)[:ws.half_len] / ws.m
    # Hermitian pairs double every k > 0 contribution; the padded-grid
    # Nyquist (|m| = n) appears only once in the full wavenumber sum
    term_cubic = 2.0 * np.real(np.sum(ws.a * np.conj(half) * s3))
    quad_weights = np.full(ws.n + 1, 2.0)
    quad_weights[0] = 1.0
    quad_weights[-1] = 1.0
    term_quad = np.real(np.sum(quad_weights * ws.a_big * np.abs(s2) ** 2))
    h_quartic = 2.0 * np.pi * (term_cubic / 6.0 - term_quad / 8.0)
    h_linear = 2.0 * np.pi * np.real(np.sum(ws.b * np.abs(half) ** 2))
    return float(h_quartic + h_linear)


def momentum(state: FrontState) -> float:
    """P = (1/2) int phi^2 dx = pi sum |phi_hat|^2."""
    return float(np.pi * np.sum(np.abs(state.coeffs) ** 2))


def sobolev_norm(state: FrontState, s: float) -> float:
    k = np.abs(state.grid.wavenumbers).astype(float)
    mask = k > 0
    return float(np.sqrt(np.sum(k[mask] ** (2.0 * s)
                                * np.abs(state.coeffs[mask]) ** 2)))


def estimate_strip_width(state: FrontState, window=(0.125, 0.5),
                         floor_rel: float = 1e-10,
                         min_modes: int = 16,
                         coverage: float = 0.9) -> StripFit:
    """Analyticity-strip estimate from the positive-k spectrum.

    Fits log|phi_hat(k)| = log C - p log k - delta k over k in
    [window[0] k_max, window[1] k_max], using only modes above a relative
    noise floor; delta is clamped at zero.  The fit is flagged degenerate
    unless at least ``min_modes`` usable modes exist AND the usable modes
    reach ``coverage`` of the window top: a cascade that has not yet filled
    the window (or bare roundoff noise) must not produce a width estimate.
    """
    n = state.grid.n_modes
    kmax = n // 2
    k = np.arange(1, kmax)
    amps = np.abs(state.coeffs[1:kmax])
    lo = max(1, int(math.floor(window[0] * kmax)))
    hi = max(lo + 1, int(math.floor(window[1] * kmax)))
    sel = (k >= lo) & (k <= hi)
    floor = floor_rel * max(float(amps.max()), 1e-300)
    sel &= amps > floor
    n_used = int(np.count_nonzero(sel))
    covered = n_used >= min_modes and float(np.max(k[sel])) >= coverage * hi
    if not covered:
        return StripFit(math.nan, math.nan, math.nan, n_used, False)
    kk = k[sel].astype(float)
    ll = np.log(amps[sel])
    design = np.column_stack([np.ones_like(kk), -np.log(kk), -kk])
    coef, *_ = np.linalg.lstsq(design, ll, rcond=None)
    log_c, p, delta = coef
    return StripFit(max(delta, 0.0), float(p), float(log_c), n_used, True)


def singularity_threshold(grid: Grid) -> float:
    """Declare loss of analyticity once delta falls to two grid wavelengths."""
    return 2.0 * (2.0 * np.pi / grid.n_modes)


def diagnostics(state: FrontState, symbols: SymbolTable,
                s_list=()) -> DiagnosticsRecord:
    slope = spatial_derivative_values(state)
    j = int(np.argmax(np.abs(slope)))
    fit = estimate_strip_width(state)
    return DiagnosticsRecord(
        time=state.time,
        hamiltonian=hamiltonian(state, symbols),
        momentum=momentum(state),
        sobolev_norms={s: sobolev_norm(state, s) for s in s_list},
        strip_width=fit.delta if fit.ok else math.nan,
        max_slope=float(np.abs(slope[j])),
        max_slope_location=float(state.grid.points[j]),
    )


def spatial_derivative_values(state: FrontState) -> np.ndarray:
    ik = 1j * state.grid.wavenumbers.astype(float)
    n = state.grid.n_modes
    return np.real(sfft.ifft(ik * state.coeffs * n, workers=fft_workers()))


# ---------------------------------------------------------------------------
# Runs
# ---------------------------------------------------------------------------

@dataclass
class RunResult:
    config: SimulationConfig
    final_state: FrontState
    records: list
    stop_reason: str  # "completed" | "singularity" | "aborted"
    singularity_time: float | None = None
    singularity_location: float | None = None
    abort_message: str | None = None
    manifest: dict = field(default_factory=dict)


def run(config: SimulationConfig, echo_config: dict | None = None) -> RunResult:
    """Integrate to t_end or to the analyticity-strip singularity stop.

    Artifacts (snapshots, spectra, diagnostics series, manifest) go under
    config.output_dir when set; the manifest is written even on abort.
    """
    grid = config.grid
    symbols = SymbolTable.build(grid, config.alpha)
    stepper = _Stepper(grid, symbols, config.viscosity, config.dt)
    state = config.initial_data.build(grid)
    threshold = singularity_threshold(grid)
    n_steps = int(round(config.t_end / config.dt))

    writer = flio.ArtifactWriter(config.output_dir) if config.output_dir else None
    records: list[DiagnosticsRecord] = []
    result = RunResult(config, state, records, "completed")

    def observe(st: FrontState) -> bool:
        rec = diagnostics(st, symbols, config.sobolev_orders)
        records.append(rec)
        if writer is not None:
            if (len(records) - 1) % config.snapshot_every == 0:
                writer.snapshot(st)
            writer.diagnostics_row(rec)
        if (not math.isnan(rec.strip_width)) and rec.strip_width <= threshold:
            result.stop_reason = "singularity"
            result.singularity_time = rec.time
            result.singularity_location = rec.max_slope_location
            return True
        return False

    try:
        c = half_from_full(np.asarray(state.coeffs), grid.n_modes)
        if not observe(state):
            for i in range(1, n_steps + 1):
                c = stepper.step(c)
                t = i * config.dt
                if i % config.output_every == 0 or i == n_steps:
                    state = FrontState(grid, full_from_half(c, grid.n_modes), time=t)
                    if observe(state):
                        break
        result.final_state = state
    except NumericalAbort as exc:
        result.stop_reason = "aborted"
        result.abort_message = str(exc)
        result.final_state = state  # last state that passed observation

    result.manifest = flio.build_manifest(
        command="simulate",
        config=echo_config if echo_config is not None else _config_echo(config),
        outcomes={
            "stop_reason": result.stop_reason,
            "final_time": result.final_state.time,
            "n_records": len(records),
            "singularity_time": result.singularity_time,
            "singularity_location": result.singularity_location,
            "stability_proxy": stability_proxy(grid, config.alpha, config.dt),
            "abort_message": result.abort_message,
        },
    )
    if writer is not None:
        writer.manifest(result.manifest)
    return result


def _config_echo(config: SimulationConfig) -> dict:
    return {
        "n_modes": config.grid.n_modes,
        "alpha": config.alpha.alpha,
        "dt": config.dt,
        "t_end": config.t_end,
        "initial_data": {"kind": config.initial_data.kind,
                         "parameters": list(config.initial_data.parameters)},
        "viscosity": {
            "kind": config.viscosity.kind,
            "order": config.viscosity.order,
            "strength": config.viscosity.strength,
            "cutoff_fraction": config.viscosity.cutoff_fraction,
        },
        "output_every": config.output_every,
        "output_dir": config.output_dir,
        "sobolev_orders": list(config.sobolev_orders),
        "snapshot_every": config.snapshot_every,
    }
