import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beamkit import beamformers as bf
from beamkit.config import bundled_config_path, load_config
from beamkit.errors import ParameterError
from beamkit.harness import run_beampattern
from beamkit.metrics import (
    SinrRecord,
    beampattern,
    mdn_estimate,
    output_sinr,
    sinr_loss_avg,
    sinr_opt,
    sinr_record,
)
from beamkit.scenario import Scenario, Ula, generate_snapshots, steering, true_covariance

from conftest import crandn


class TestOutputSinr:
    def test_matched_white(self):
        s = steering(8, 0.0)
        assert output_sinr(s, s, 1.0, np.eye(8)) == pytest.approx(0.0, abs=1e-12)

    def test_scaled_weight(self):
        s = steering(8, 0.0)
        assert output_sinr(5j * s, s, 1.0, np.eye(8)) == pytest.approx(0.0, abs=1e-12)

    def test_optimum_attains_bound(self):
        sc = Scenario.from_db(24, 3.0, -5.0, [(-20.0, 30.0), (35.0, 20.0)])
        s = steering(sc.array, 3.0)
        r = true_covariance(sc)
        w = bf.mvdr_optimal(r, s)
        p = sc.desired.power
        assert abs(output_sinr(w, s, p, r) - sinr_opt(s, p, r)) <= 1e-9

    def test_zero_weight_rejected(self):
        with pytest.raises(ParameterError):
            output_sinr(np.zeros(4), steering(4, 0.0), 1.0, np.eye(4))

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(0, 2 ** 32 - 1),
        mag=st.floats(1e-3, 1e3),
        phase=st.floats(-np.pi, np.pi),
    )
    def test_scale_invariance(self, seed, mag, phase):
        rng = np.random.default_rng(seed)
        s = steering(10, 12.0)
        b = crandn(rng, 10, 10)
        r = b @ b.conj().T + np.eye(10)
        w = crandn(rng, 10)
        c = mag * np.exp(1j * phase)
        assert output_sinr(c * w, s, 2.0, r) == pytest.approx(output_sinr(w, s, 2.0, r), abs=1e-9)


class TestSinrOpt:
    def test_identity(self):
        assert sinr_opt(steering(6, 0.0), 1.0, np.eye(6)) == pytest.approx(0.0, abs=1e-12)

    def test_white_noise_equals_input_snr(self):
        assert sinr_opt(steering(6, 0.0), 4.0, 2.0 * np.eye(6)) == pytest.approx(10 * np.log10(2.0))

    def test_far_interferer_costs_little(self):
        sc = Scenario.from_db(32, 0.0, 0.0, [(50.0, 30.0)])
        s = steering(sc.array, 0.0)
        r = true_covariance(sc)
        # direct solve as the independent route
        direct = 10 * np.log10(np.vdot(s, np.linalg.solve(r, s)).real)
        got = sinr_opt(s, 1.0, r)
        assert got == pytest.approx(direct, abs=1e-9)
        assert abs(got - 0.0) < 0.1


class TestSinrLossAvg:
    def test_optimal_weights(self):
        sc = Scenario.from_db(12, 0.0, 0.0, [(30.0, 20.0)])
        s = steering(sc.array, 0.0)
        r = true_covariance(sc)
        opt = sinr_opt(s, 1.0, r)
        w = bf.mvdr_optimal(r, s)
        assert sinr_loss_avg([sinr_record(w, s, 1.0, r, opt)] * 3) == pytest.approx(0.0, abs=1e-9)

    def test_single_record(self):
        assert sinr_loss_avg([SinrRecord(-7.0, -4.2)]) == pytest.approx(-4.2)

    def test_equal_records(self):
        assert sinr_loss_avg([SinrRecord(0, -3.0), SinrRecord(0, -3.0)]) == pytest.approx(-3.0)

    def test_linear_domain_convention(self):
        recs = [SinrRecord(0, 0.0), SinrRecord(0, -10.0)]
        assert sinr_loss_avg(recs) == pytest.approx(10 * np.log10(0.55))
        assert sinr_loss_avg(recs) != pytest.approx(-5.0)

    def test_empty(self):
        with pytest.raises(ParameterError):
            sinr_loss_avg([])

    def test_zero_weight_is_floored(self):
        s = steering(4, 0.0)
        rec = sinr_record(np.zeros(4), s, 1.0, np.eye(4), 0.0)
        assert rec.loss_db == pytest.approx(-300.0)

    def test_no_method_beats_optimum(self):
        sc = Scenario.from_db(20, 3.0, -10.0, [(-20.0, 30.0), (15.0, 25.0)])
        s = steering(sc.array, 3.0)
        r = true_covariance(sc)
        p = sc.desired.power
        opt = sinr_opt(s, p, r)
        for t in range(10):
            x = generate_snapshots(sc, 8, t)
            for wv in (bf.smi(x, s), bf.lsmi(x, s, 10.0), bf.eigenspace(x, s, 3), bf.kernel_beamformer(x, s, 2)):
                assert sinr_record(wv, s, p, r, opt).loss_db <= 1e-9


class TestBeampattern:
    def test_look_direction_is_zero_db(self):
        s = steering(16, 10.0)
        bp = beampattern(s, Ula(16), [10.0], 10.0)
        assert bp.gain_db[0] == pytest.approx(0.0, abs=1e-12)

    def test_first_null_of_uniform_taper(self):
        n, doa = 400, 3.0
        # first null at sin(theta) = sin(theta_s) + 2/N
        expected = np.degrees(np.arcsin(np.sin(np.radians(doa)) + 2 / n))
        assert 0 < expected - doa < 0.6
        grid = np.linspace(doa + 0.05, expected + 0.1, 2001)
        bp = beampattern(steering(n, doa), Ula(n), grid, doa)
        null = grid[np.argmin(bp.gain_db)]
        assert abs(null - expected) < 0.002
        assert beampattern(steering(n, doa), Ula(n), [expected], doa).gain_db[0] < -200

    def test_scale_invariant(self, rng):
        w = crandn(rng, 12)
        grid = np.linspace(-80, 80, 33)
        a = beampattern(w, Ula(12), grid, 0.0).gain_db
        b = beampattern((2 - 3j) * w, Ula(12), grid, 0.0).gain_db
        np.testing.assert_allclose(a, b, atol=1e-10)

    def test_degenerate(self):
        s = steering(8, 0.0)
        w = steering(8, np.degrees(np.arcsin(2 / 8)))  # null of s
        w = w - s * np.vdot(s, w)
        with pytest.raises(ParameterError):
            beampattern(w, Ula(8), [0.0], 0.0)

    def test_grid_domain(self):
        with pytest.raises(ParameterError):
            beampattern(steering(8, 0.0), Ula(8), [90.0], 0.0)

    def test_kernel_nulls_in_fig4_scenario(self):
        cfg = load_config(bundled_config_path("fig4"))
        patterns = run_beampattern(cfg)
        bp = patterns["kernel"]
        for src in cfg.scenario.interferers:
            idx = np.argmin(np.abs(bp.angles_deg - src.doa_deg))
            assert bp.gain_db[idx] <= -40.0


class TestMdn:
    def test_smi(self):
        assert mdn_estimate("smi", 400, 30) == 400 ** 2 * 30 + 400 ** 3 == 6.88e7

    def test_kernel(self):
        assert mdn_estimate("kernel", 400, 30) == 3.6e5 + 2.7e4 + 1.2e4 == 3.99e5

    def test_ratio(self):
        assert mdn_estimate("smi", 400, 30) / mdn_estimate("kernel", 400, 30) > 100

    def test_eigenspace_uses_order(self):
        assert mdn_estimate("eigenspace", 100, 10, 4) == 100 * 100 + 1000 + 4000

    def test_unknown(self):
        with pytest.raises(ParameterError):
            mdn_estimate("music", 10, 10)

    def test_sizes(self):
        with pytest.raises(ParameterError):
            mdn_estimate("smi", 0, 10)
