"""Analysis: expansions, constants, tau-ODE, inequality verifiers."""

import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from frontlab import analysis as an
from frontlab import kernels as K
from frontlab.kernels import DomainError

SQRT_2PI = math.sqrt(2.0 * math.pi)

nonzero_int = st.integers(min_value=-200, max_value=200).filter(lambda k: k != 0)


class TestShearProfile:
    def test_euler_absolute_value(self):
        assert an.shear_profile(2.0, K.euler()) == 2.0
        assert an.shear_profile(-2.0, K.euler()) == 2.0

    def test_sqg_logarithm(self):
        assert an.shear_profile(1.0, K.sqg()) == 0.0

    def test_gsqg_power(self):
        assert an.shear_profile(4.0, K.gsqg(1.5)) == pytest.approx(2.0)

    def test_singular_at_front_for_small_alpha(self):
        with pytest.raises(DomainError):
            an.shear_profile(0.0, K.sqg())
        with pytest.raises(DomainError):
            an.shear_profile(0.0, K.gsqg(0.5))
        assert an.shear_profile(0.0, K.gsqg(1.5)) == 0.0


class TestDispersion:
    def test_euler_constant_frequency(self):
        assert an.dispersion_omega0(7.3, K.euler()) == 0.5
        assert an.dispersion_omega0(-7.3, K.euler()) == -0.5

    def test_sqg_values(self):
        assert an.dispersion_omega0(1.0, K.sqg()) == 0.0
        assert an.dispersion_omega0(2.0, K.sqg()) == pytest.approx(-4.0 * math.log(2.0))

    def test_gsqg(self):
        assert an.dispersion_omega0(1.0, K.gsqg(1.5)) == pytest.approx(SQRT_2PI)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            an.dispersion_omega0(0.0, K.sqg())


class TestStokes:
    def test_euler_k1(self):
        res = an.stokes_expansion(1, 0.1, K.euler())
        assert res.sigma2 == pytest.approx(0.5)
        assert res.psi3_ratio == 0.0
        assert res.omega2 == pytest.approx(0.005)

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_euler_matches_exact_harmonic_wave(self, k):
        # omega0 + omega2 = (1 + k^2 |psi|^2) / 2 for the vorticity front
        psi = 0.07
        res = an.stokes_expansion(k, psi, K.euler())
        assert res.omega0 + res.omega2 == pytest.approx(
            0.5 * (1.0 + k * k * psi * psi), rel=1e-13)

    def test_sqg_k1(self):
        res = an.stokes_expansion(1, 0.1, K.sqg())
        assert res.sigma2 == pytest.approx(2.0 * math.log(2.0), rel=1e-13)

    @pytest.mark.parametrize("alpha", [K.euler(), K.sqg(), K.gsqg(0.5), K.gsqg(1.5)],
                             ids=lambda a: f"alpha{a.alpha}")
    @pytest.mark.parametrize("k", [1, 2, 4])
    def test_sigma2_positive(self, alpha, k):
        assert an.stokes_expansion(k, 0.1, alpha).sigma2 > 0.0

    def test_rejects_bad_k(self):
        with pytest.raises(DomainError):
            an.stokes_expansion(0, 0.1, K.sqg())


class TestNls:
    def test_sqg_k2(self):
        res = an.nls_coefficients(2.0, K.sqg())
        assert res.omega0_pp == pytest.approx(-1.0, rel=1e-13)
        assert res.focusing

    def test_gsqg_three_halves(self):
        res = an.nls_coefficients(1.0, K.gsqg(1.5))
        assert res.omega0_pp == pytest.approx(-SQRT_2PI / 4.0, rel=1e-12)

    def test_euler_excluded(self):
        with pytest.raises(DomainError):
            an.nls_coefficients(1.0, K.euler())

    @pytest.mark.parametrize("alpha_value", [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75])
    @pytest.mark.parametrize("k", [1.0, 2.0, 4.0])
    def test_focusing_everywhere(self, alpha_value, k):
        res = an.nls_coefficients(k, K.AlphaFamily.from_alpha(alpha_value))
        assert res.omega0_pp * res.sigma2 < 0.0
        assert res.focusing

    @pytest.mark.parametrize("alpha_value", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("k", [1.0, 2.0, 4.0])
    def test_closed_form_agrees_with_finite_difference(self, alpha_value, k):
        alpha = K.AlphaFamily.from_alpha(alpha_value)
        res = an.nls_coefficients(k, alpha)
        h = 1e-4 * k  # relative step keeps the second difference above roundoff
        fd = (an.dispersion_omega0(k + h, alpha)
              - 2.0 * an.dispersion_omega0(k, alpha)
              + an.dispersion_omega0(k - h, alpha)) / h ** 2
        assert fd == pytest.approx(res.omega0_pp, rel=1e-6)


class TestConstants:
    def test_c0_values(self):
        assert an.c0_constant(1.0) == 8.0
        assert an.c0_constant(3.0) == pytest.approx(81.0 - 1.0 / 9.0, rel=1e-15)

    def test_s0(self):
        s0 = an.s0_root()
        assert s0 == pytest.approx(0.6365, abs=5e-4)
        assert an.c0_constant(s0) == pytest.approx(2.0 * (2.0 * s0 + 1.0), abs=1e-9)

    def test_zeta_against_scipy(self):
        for s in (1.05, 1.5, 2.0, 3.0, 7.0, 40.0):
            assert an.zeta_em(s) == pytest.approx(float(scipy.special.zeta(s)),
                                                  abs=1e-12)

    def test_z_value(self):
        assert an.zeta_Z(1.0) == pytest.approx(math.pi / math.sqrt(3.0), rel=1e-12)

    def test_c3_diverges_at_both_ends(self):
        c4, s_at = an.c4_infimum()
        assert an.c3_constant(2.5 + 1e-6) > 100 * c4
        assert an.c3_constant(59.9) > 100 * c4
        assert 2.5 < s_at < 59.9

    def test_c4_at_least_1000(self):
        c4, _ = an.c4_infimum()
        assert c4 >= 1000.0

    def test_domains(self):
        with pytest.raises(DomainError):
            an.c0_constant(0.0)
        with pytest.raises(DomainError):
            an.zeta_Z(0.5)
        with pytest.raises(DomainError):
            an.c3_constant(2.5)


class TestTauExistence:
    def test_zero_forcing_reaches_horizon(self):
        res = an.tau_existence(3.0, 0.0, 2.0, horizon=10.0)
        assert math.isinf(res.t_star)
        assert res.reached_horizon
        assert np.all(res.taus == 3.0)

    def test_rescaling_identity(self):
        # tau' = -(M E0) C3(tau) is autonomous: T*(c M E0) = T*(M E0) / c
        base = an.tau_existence(3.0, 1.0, 2.0)
        scaled = an.tau_existence(3.0, 1.0, 8.0)
        assert scaled.t_star == pytest.approx(base.t_star / 4.0, rel=1e-8)

    def test_against_fixed_step_euler(self):
        res = an.tau_existence(3.0, 1.0, 2.0)
        ref = oracles.tau_euler(3.0, 1.0, 2.0)
        assert res.t_star == pytest.approx(ref, rel=1e-6)

    def test_curve_monotone(self):
        res = an.tau_existence(4.0, 0.5, 2.0)
        assert np.all(np.diff(res.taus) <= 1e-12)
        assert res.taus[0] == pytest.approx(4.0)

    def test_rejects_bad_tau0(self):
        with pytest.raises(DomainError):
            an.tau_existence(2.0, 1.0, 2.0)


class TestOrderedQuadruples:
    def test_generic_case(self):
        q = an.ordered_quadruple(10, -9, -6, 5)
        assert q.m == (10, -9, -6, 5)
        fp = q.feasible_point()
        assert (fp.x, fp.y) == (0.9, 0.6)
        assert fp.in_region()

    def test_all_equal_tie_lands_on_vertex(self):
        fp = an.ordered_quadruple(1, 1, -1, -1).feasible_point()
        assert (fp.x, fp.y) == (1.0, 1.0)
        assert fp.in_region()

    def test_m3_zero_maps_to_corner(self):
        fp = an.ordered_quadruple(5, -5, 1, -1).feasible_point()
        assert fp.in_region()

    def test_rejects_zero_entries(self):
        with pytest.raises(DomainError):
            an.ordered_quadruple(1, 0, 2, -3)

    @given(k1=nonzero_int, k2=nonzero_int, k3=nonzero_int)
    @settings(max_examples=400, deadline=None)
    def test_feasible_point_property(self, k1, k2, k3):
        k4 = -(k1 + k2 + k3)
        if k4 == 0:
            return
        q = an.ordered_quadruple(k1, k2, k3, k4)
        mags = [abs(v) for v in q.m]
        assert mags == sorted(mags, reverse=True)
        assert sorted(q.m) == sorted((k1, k2, k3, k4))
        assert q.feasible_point().in_region()

    def test_bulk_feasibility_million(self):
        rng = np.random.default_rng(17)
        n = 1_000_000
        k = rng.integers(-1000, 1001, size=(n, 3))
        k4 = -k.sum(axis=1)
        quad = np.column_stack([k, k4]).astype(float)
        quad = quad[np.all(quad != 0.0, axis=1)]
        x, y = an.feasible_points_bulk(quad)
        assert np.all(y >= -1e-12)
        assert np.all(y <= x + 1e-12)
        assert np.all(x <= 1.0 + 1e-12)
        assert np.all(x + 2.0 * y >= 1.0 - 1e-12)


class TestFBound:
    def test_s1_supremum_is_c0_at_third_third(self):
        rep = an.verify_f_bound(1.0, n_grid=1200)
        assert rep.sup == pytest.approx(8.0, abs=1e-9)
        assert rep.argmax[0] == pytest.approx(1.0 / 3.0, abs=1e-6)
        assert rep.argmax[1] == pytest.approx(1.0 / 3.0, abs=1e-6)
        assert rep.within_c0

    def test_boundary_layer_limit(self):
        for s in (0.7, 1.0, 2.0):
            rep = an.verify_f_bound(s, n_grid=400)
            assert rep.boundary_layer_limit == pytest.approx(
                2.0 * (2.0 * s + 1.0), rel=1e-4)

    def test_small_s_diagnostic_only(self):
        # below s0 the supremum migrates toward the boundary layer; we only
        # report it, no bound is asserted
        rep = an.verify_f_bound(0.3, n_grid=400)
        assert rep.sup > 0.0
        assert rep.boundary_layer_limit > rep.c0  # 2(2s+1) > C0(s) for s < s0


class TestHBound:
    def test_h_vanishes_on_edges(self):
        alpha = K.sqg()
        xs = np.linspace(0.4, 1.0, 20)
        on_line = an.h_value(xs, 1.0 - xs, alpha)  # x + y = 1
        assert np.max(np.abs(on_line)) < 1e-12
        at_y0 = an.h_value(xs, np.zeros_like(xs), alpha)
        assert np.max(np.abs(at_y0)) < 1e-12

    @pytest.mark.parametrize("alpha", [K.sqg(), K.gsqg(1.5)],
                             ids=lambda a: f"alpha{a.alpha}")
    def test_constant_stable_under_refinement(self, alpha):
        rep = an.verify_h_bound(alpha, n_samples=160_000)
        assert rep.c_fit > 0.0
        assert rep.stable


class TestKernelBounds:
    def test_sqg_hand_case(self):
        s = float(K.kernel_S(1.0, 1.0, -1.0, -1.0, K.sqg()))
        assert abs(s) <= an.C2_SQG * 1.0 * 1.0 * math.log(2.0)

    def test_sqg_random_quadruples(self):
        rep = an.verify_kernel_bounds(K.sqg(), n_trials=30_000, k_max=500, seed=3)
        assert rep.passes
        assert rep.worst_ratio <= 1.0
        assert rep.corollary_worst_ratio <= 1.0

    def test_gsqg_constant_stable(self):
        rep = an.verify_kernel_bounds(K.gsqg(1.5), n_trials=30_000, k_max=500, seed=4)
        assert rep.passes
        assert rep.fitted_constant > 0.0

    def test_euler_constant_stable(self):
        rep = an.verify_kernel_bounds(K.euler(), n_trials=20_000, k_max=300, seed=5)
        assert rep.passes

    def test_low_alpha_rejected(self):
        with pytest.raises(DomainError):
            an.verify_kernel_bounds(K.gsqg(0.5), n_trials=10, k_max=10)

    def test_shell_sharpness_difference_quotient(self):
        # S(k+1, -(k+2), -1, 2) = 2ab log k + c + o(1); the difference
        # quotient between decades isolates the log coefficient
        for k in (1000, 10_000):
            s1 = K.kernel_S(float(k + 1), float(-(k + 2)), -1.0, 2.0, K.sqg())
            s2 = K.kernel_S(float(10 * k + 1), float(-(10 * k + 2)), -1.0, 2.0,
                            K.sqg())
            dq = (s2 - s1) / (2.0 * 1.0 * 2.0 * math.log(10.0))
            assert dq == pytest.approx(1.0, abs=0.05)

    def test_shell_offset_constant(self):
        # the o(1)-free offset is 3ab - a^2 log a - b^2 log b + (a-b)^2 log|a-b|
        s = float(K.kernel_S(1e5 + 1, -(1e5 + 2), -1.0, 2.0, K.sqg()))
        offset = s - 4.0 * math.log(1e5)
        assert offset == pytest.approx(6.0 - 4.0 * math.log(2.0), abs=1e-3)
