"""Evolution: tendency, stepping, diagnostics, strip fit, runs."""

import json
import math
import os

import numpy as np
import pytest

import oracles
from frontlab import kernels as K
from frontlab import evolution as ev
from frontlab.spectral import FrontState, Grid, SymbolTable, forward_transform

ALL_REGIMES = [K.euler(), K.sqg(), K.gsqg(1.5), K.gsqg(0.5)]


def random_state(grid, rng, scale=1.0):
    return forward_transform(grid, scale * rng.standard_normal(grid.n_modes))


class TestRhsApprox:
    def test_zero_state(self):
        g = Grid(32)
        out = ev.rhs_approx(FrontState.zero(g), SymbolTable.build(g, K.sqg()))
        assert np.all(out.coeffs == 0.0)

    def test_single_mode_linearization(self):
        # at amplitude eps the k-mode tendency is -i k b(k) phi_hat + O(eps^3)
        g = Grid(64)
        alpha = K.gsqg(1.5)
        table = SymbolTable.build(g, alpha)
        eps = 1e-5
        st = forward_transform(g, eps * np.cos(3 * g.points))
        out = ev.rhs_approx(st, table)
        expect = -1j * 3 * K.symbol_b(3.0, alpha) * st.coeff(3)
        assert abs(out.coeff(3) - expect) < 1e-12 * abs(expect) + 10 * eps ** 3

    @pytest.mark.parametrize("alpha", ALL_REGIMES, ids=lambda a: f"alpha{a.alpha}")
    def test_matches_spectral_sum_oracle(self, alpha):
        g = Grid(32)
        rng = np.random.default_rng(42)
        st = random_state(g, rng)
        mine = ev.rhs_approx(st, SymbolTable.build(g, alpha)).coeffs
        ref = oracles.rhs_spectral_sum(st, alpha)
        assert np.max(np.abs(mine - ref)) < 1e-10

    def test_output_real_and_zero_mean(self):
        g = Grid(64)
        rng = np.random.default_rng(1)
        out = ev.rhs_approx(random_state(g, rng), SymbolTable.build(g, K.sqg()))
        assert out.coeff(0) == 0.0
        flipped = np.conj(np.roll(out.coeffs[::-1], 1))
        assert np.max(np.abs(out.coeffs - flipped)) < 1e-14


class TestStep:
    def test_zero_stays_zero(self):
        g = Grid(32)
        table = SymbolTable.build(g, K.sqg())
        out = ev.step(FrontState.zero(g), 0.1, table)
        assert np.all(out.coeffs == 0.0)
        assert out.time == pytest.approx(0.1)

    def test_pure_linear_phase_exact(self):
        g = Grid(64)
        alpha = K.gsqg(1.5)
        table = SymbolTable.build(g, alpha).linear_only()
        st = forward_transform(g, np.cos(5 * g.points))
        dt = 0.037
        out = ev.step(st, dt, table)
        expect = st.coeff(5) * np.exp(-1j * 5 * K.symbol_b(5.0, alpha) * dt)
        assert abs(out.coeff(5) - expect) < 1e-14

    def test_fourth_order_convergence(self):
        g = Grid(128)
        alpha = K.sqg()
        table = SymbolTable.build(g, alpha)
        st = forward_transform(g, 0.1 * (np.cos(4 * g.points)
                                         + 0.5 * np.cos(5 * g.points + 0.7)))

        def advance(dt, n):
            stepper = ev._Stepper(g, table, ev.ViscositySpec.none(), dt)
            c = np.asarray(st.coeffs)
            for _ in range(n):
                c = stepper.step_full(c)
            return c

        ref = advance(0.0025, 400)
        e1 = np.linalg.norm(advance(0.02, 50) - ref)
        e2 = np.linalg.norm(advance(0.01, 100) - ref)
        order = math.log2(e1 / e2)
        assert order == pytest.approx(4.0, abs=0.2)

    def test_exp_filter_damps_high_modes(self):
        g = Grid(64)
        table = SymbolTable.build(g, K.sqg()).linear_only()
        st = forward_transform(g, np.cos(30 * g.points))
        out = ev.step(st, 1e-3, table, ev.ViscositySpec.exp_filter())
        expect = 0.5 * math.exp(-36.0 * (30.0 / 32.0) ** 36)
        assert abs(out.coeff(30)) == pytest.approx(expect, rel=1e-12)

    def test_spectral_viscosity_damps_only_above_cutoff(self):
        g = Grid(64)
        table = SymbolTable.build(g, K.sqg()).linear_only()
        dt = 1e-2
        spec = ev.ViscositySpec.spectral(strength=5.0, cutoff_fraction=0.5)
        low = forward_transform(g, np.cos(3 * g.points))
        high = forward_transform(g, np.cos(20 * g.points))
        out_low = ev.step(low, dt, table, spec)
        out_high = ev.step(high, dt, table, spec)
        assert abs(out_low.coeff(3)) == pytest.approx(0.5, abs=1e-14)
        assert abs(out_high.coeff(20)) == pytest.approx(
            0.5 * math.exp(-5.0 * 20 ** 2 * dt), rel=1e-12)


class TestDiagnostics:
    def test_zero_state(self):
        g = Grid(32)
        rec = ev.diagnostics(FrontState.zero(g), SymbolTable.build(g, K.sqg()), (1.0,))
        assert rec.hamiltonian == 0.0
        assert rec.momentum == 0.0
        assert rec.sobolev_norms[1.0] == 0.0
        assert rec.max_slope == 0.0

    def test_single_cosine_euler_hand_values(self):
        # phi = cos x: P = pi/2, quartic part pi/32, dispersive part pi/4
        g = Grid(64)
        st = forward_transform(g, np.cos(g.points))
        table = SymbolTable.build(g, K.euler())
        assert ev.momentum(st) == pytest.approx(np.pi / 2.0, rel=1e-13)
        assert ev.hamiltonian(st, table) == pytest.approx(
            np.pi / 32.0 + np.pi / 4.0, rel=1e-12)

    def test_momentum_conserved_exactly_by_tendency(self):
        g = Grid(64)
        rng = np.random.default_rng(4)
        st = random_state(g, rng, 0.3)
        rhs = ev.rhs_approx(st, SymbolTable.build(g, K.sqg()))
        dP = 2.0 * np.pi * np.real(np.sum(np.conj(st.coeffs) * rhs.coeffs))
        assert abs(dP) < 1e-12

    @pytest.mark.parametrize("alpha", ALL_REGIMES, ids=lambda a: f"alpha{a.alpha}")
    def test_hamiltonian_matches_spectral_sum(self, alpha):
        g = Grid(32)
        rng = np.random.default_rng(9)
        st = random_state(g, rng, 0.5)
        mine = ev.hamiltonian(st, SymbolTable.build(g, alpha))
        ref = oracles.hamiltonian_spectral_sum(st, alpha)
        assert mine == pytest.approx(ref, rel=1e-9)

    def test_sobolev_norm(self):
        g = Grid(32)
        st = forward_transform(g, np.cos(2 * g.points))
        # |phi_hat(+-2)| = 1/2: sum 2^(2s)/4 * 2
        assert ev.sobolev_norm(st, 1.5) == pytest.approx(
            math.sqrt(2.0 * 2.0 ** 3.0 / 4.0), rel=1e-13)


class TestStripWidth:
    def test_exponential_spectrum(self):
        g = Grid(128)
        n = g.n_modes
        c = np.zeros(n, dtype=complex)
        for k in range(1, n // 2):
            c[k] = np.exp(-k)
            c[n - k] = np.exp(-k)
        fit = ev.estimate_strip_width(FrontState(g, c), floor_rel=0.0)
        assert fit.ok
        assert fit.delta == pytest.approx(1.0, abs=0.01)

    def test_power_law_spectrum(self):
        g = Grid(256)
        n = g.n_modes
        c = np.zeros(n, dtype=complex)
        for k in range(1, n // 2):
            c[k] = float(k) ** -4.0
            c[n - k] = c[k]
        fit = ev.estimate_strip_width(FrontState(g, c))
        assert fit.ok
        assert fit.delta == pytest.approx(0.0, abs=0.01)
        assert fit.decay_power == pytest.approx(4.0, abs=0.01)

    def test_band_limited_flagged(self):
        g = Grid(256)
        st = forward_transform(g, np.cos(3 * g.points))
        fit = ev.estimate_strip_width(st)
        assert not fit.ok
        rec = ev.diagnostics(st, SymbolTable.build(g, K.sqg()))
        assert math.isnan(rec.strip_width)


class TestConservationShortRun:
    def test_invariants_drift_with_viscosity_off(self):
        g = Grid(256)
        table = SymbolTable.build(g, K.sqg())
        x = g.points
        st = forward_transform(g, 0.07 * (np.cos(6 * x) + 0.5 * np.cos(7 * x + 0.7)))
        h0, p0 = ev.hamiltonian(st, table), ev.momentum(st)
        stepper = ev._Stepper(g, table, ev.ViscositySpec.none(), 1e-3)
        c = np.asarray(st.coeffs)
        for _ in range(250):
            c = stepper.step_full(c)
        final = FrontState(g, c, 0.25)
        assert abs(ev.hamiltonian(final, table) - h0) / abs(h0) < 1e-10
        assert abs(ev.momentum(final) - p0) / p0 < 1e-11

    def test_reversible(self):
        g = Grid(128)
        table = SymbolTable.build(g, K.sqg())
        st = forward_transform(g, 0.1 * (np.cos(3 * g.points)
                                         + 0.4 * np.cos(5 * g.points)))
        fwd = ev._Stepper(g, table, ev.ViscositySpec.none(), 1e-3)
        bwd = ev._Stepper(g, table, ev.ViscositySpec.none(), -1e-3)
        c = np.asarray(st.coeffs)
        for _ in range(200):
            c = fwd.step_full(c)
        for _ in range(200):
            c = bwd.step_full(c)
        assert np.linalg.norm(c - st.coeffs) < 1e-10


class TestSpecsValidation:
    def test_viscosity_strength_zero_iff_none(self):
        with pytest.raises(ValueError):
            ev.ViscositySpec(kind="none", strength=1.0)
        with pytest.raises(ValueError):
            ev.ViscositySpec(kind="exp_filter", strength=0.0)

    def test_viscosity_order_even(self):
        with pytest.raises(ValueError):
            ev.ViscositySpec(kind="exp_filter", strength=36.0, order=3)

    def test_initial_data_kinds(self):
        g = Grid(64)
        for kind, params in [("two_cosine", ()), ("sech_squared", ()),
                             ("single_mode", (2, 0.1)),
                             ("fourier_list", (1, 0.05, 0.0, 3, 0.0, 0.02))]:
            st = ev.InitialData(kind, params).build(g)
            assert abs(st.coeff(0)) == 0.0
        with pytest.raises(ValueError):
            ev.InitialData("gaussian")

    def test_single_mode_amplitude_convention(self):
        g = Grid(64)
        st = ev.InitialData("single_mode", (1, 0.1)).build(g)
        assert abs(st.coeff(1)) == pytest.approx(0.1, abs=1e-15)

    def test_simulation_config_rejects_bad_dt(self):
        g = Grid(16)
        with pytest.raises(ValueError):
            ev.SimulationConfig(g, K.sqg(), dt=0.0, t_end=1.0,
                                initial_data=ev.InitialData("two_cosine"),
                                viscosity=ev.ViscositySpec.none())

    def test_default_dt(self):
        g = Grid(64)
        dt = ev.default_dt(g, K.sqg())
        k = np.arange(1.0, 33.0)
        assert dt == pytest.approx(0.5 / np.max(2.0 * k * np.log(k)))


class TestRun:
    def _config(self, tmp_path, **overrides):
        base = dict(
            grid=Grid(64),
            alpha=K.sqg(),
            dt=1e-3,
            t_end=0.05,
            initial_data=ev.InitialData("single_mode", (1, 0.05)),
            viscosity=ev.ViscositySpec.none(),
            output_every=10,
            output_dir=str(tmp_path / "out"),
        )
        base.update(overrides)
        return ev.SimulationConfig(**base)

    def test_completed_run_writes_artifacts(self, tmp_path):
        config = self._config(tmp_path, sobolev_orders=(1.0, 2.0))
        result = ev.run(config)
        assert result.stop_reason == "completed"
        out = tmp_path / "out"
        assert (out / "manifest.json").exists()
        assert (out / "diagnostics.csv").exists()
        assert (out / "snapshot_000000.csv").exists()
        assert (out / "spectrum_000000.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["outcomes"]["stop_reason"] == "completed"
        header = (out / "diagnostics.csv").read_text().splitlines()[0]
        assert header == "t,H,P,strip_width,max_slope,Hs_1,Hs_2"

    def test_snapshot_roundtrip_precision(self, tmp_path):
        from frontlab import io as flio
        config = self._config(tmp_path)
        ev.run(config)
        t, x, phi = flio.read_snapshot(str(tmp_path / "out" / "snapshot_000000.csv"))
        st = config.initial_data.build(config.grid)
        assert t == 0.0
        assert np.array_equal(x, config.grid.points)
        assert np.max(np.abs(phi - st.values())) == 0.0  # 17 digits round-trips

    def test_abort_is_recorded(self, tmp_path):
        # a grotesquely large step overflows the cubic flux immediately
        config = self._config(tmp_path, dt=1e6, t_end=3e6,
                              initial_data=ev.InitialData("two_cosine"))
        with np.errstate(all="ignore"):
            result = ev.run(config)
        assert result.stop_reason == "aborted"
        assert result.abort_message
        manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
        assert manifest["outcomes"]["stop_reason"] == "aborted"

    def test_deterministic_given_config(self, tmp_path):
        c1 = self._config(tmp_path, output_dir=str(tmp_path / "a"))
        c2 = self._config(tmp_path, output_dir=str(tmp_path / "b"))
        ev.run(c1)
        ev.run(c2)
        d1 = (tmp_path / "a" / "diagnostics.csv").read_bytes()
        d2 = (tmp_path / "b" / "diagnostics.csv").read_bytes()
        assert d1 == d2
