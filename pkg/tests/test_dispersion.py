"""Hilbert transform, causality residuals, sum rules, winding integral."""

import numpy as np
import pytest

from tauspec.core import (
    ComplexSpectrum,
    FrequencyGrid,
    PoleZeroModel,
    TemporalSpectrum,
    model_tau,
)
from tauspec.dispersion import (
    Contour,
    frequency_sum_rule,
    hilbert_transform,
    kk_residual,
    residue_time_domain,
    sum_rule_scale,
    tau_kk_residual,
    time_sum_rule,
    winding_number,
)
from tauspec.errors import (
    GridError,
    InsufficientDecay,
    NonUniformGrid,
    OriginInGrid,
    SingularityOnContour,
)


def pole_spectrum(sign, n=40001, half=60.0):
    """Simple pole at omega = 1 with the half-plane chosen by sign."""
    g = FrequencyGrid.linspace(-half, half, n)
    vals = 1.0 / (g.values - 1.0 + sign * 0.1j)
    return ComplexSpectrum(g, vals)


class TestHilbertTransform:
    def test_lorentzian_pair_annihilates(self):
        """Real and imaginary parts of a retarded pole are KK partners."""
        g = FrequencyGrid.linspace(-40.0, 40.0, 16001)
        vals = 1.0 / (g.values - 0.5 + 0.2j)
        h = hilbert_transform(vals, g, tail_model="one_over_omega")
        resid = np.abs(vals - 1j * h)
        assert resid[len(g) // 4 : -len(g) // 4].max() < 1e-4

    def test_advanced_pole_doubles(self):
        """With the pole above the axis, S - iH[S] tends to 2S instead."""
        g = FrequencyGrid.linspace(-40.0, 40.0, 16001)
        vals = 1.0 / (g.values - 1.0 - 0.1j)
        h = hilbert_transform(vals, g, tail_model="one_over_omega")
        mid = slice(len(g) // 4, -len(g) // 4)
        resid = np.abs(vals - 1j * h)[mid]
        doubled = np.abs(2.0 * vals - (vals - 1j * h))[mid]
        assert doubled.max() < 1e-3
        assert resid.max() > 0.5 * np.abs(vals[mid]).max()

    def test_tail_model_lifts_truncation_floor(self):
        g = FrequencyGrid.linspace(-30.0, 30.0, 12001)
        vals = 1.0 / (g.values - 1.0 + 0.1j)
        bare = kk_residual(ComplexSpectrum(g, vals))
        w1 = kk_residual(ComplexSpectrum(g, vals), tail_model="one_over_omega")
        assert w1.residual_max < 0.2 * bare.residual_max

    def test_unknown_tail_rejected(self):
        g = FrequencyGrid.linspace(-1.0, 1.0, 11)
        with pytest.raises(ValueError):
            hilbert_transform(np.ones(11, dtype=complex), g, tail_model="cubic")

    def test_tail_needs_origin_straddle(self):
        g = FrequencyGrid.linspace(0.5, 2.0, 301)
        with pytest.raises(ValueError):
            hilbert_transform(np.ones(301, dtype=complex), g, "one_over_omega")

    def test_non_uniform_grid_rejected(self):
        vals = np.array([0.0, 1.0, 3.0, 3.5, 7.0])
        g = FrequencyGrid(vals)
        with pytest.raises(NonUniformGrid):
            hilbert_transform(np.ones(5, dtype=complex), g)


class TestKKResidual:
    def test_causal_pole_report(self):
        report = kk_residual(pole_spectrum(+1), tail_model="one_over_omega")
        assert report.residual_max < 2e-2
        assert report.residual_max < 5e-4
        assert report.nodes == 36001
        assert report.tail_model == "one_over_omega"

    def test_acausal_pole_much_worse(self):
        causal = kk_residual(pole_spectrum(+1), tail_model="one_over_omega")
        acausal = kk_residual(pole_spectrum(-1), tail_model="one_over_omega")
        assert acausal.residual_max > 10.0 * causal.residual_max

    def test_tau_variant_on_completed_resonance(self):
        """tau of a causal pole pair closes on itself under the transform."""
        z = 5.0 - 0.2j
        g = FrequencyGrid.linspace(0.01, 40.0, 4000)
        tau = 1j / (np.pi * (g.values - z)) + np.conj(
            1j / (np.pi * (-g.values - z))
        )
        report = tau_kk_residual(
            TemporalSpectrum(g, tau.real, tau.imag), tail_model="one_over_omega"
        )
        assert report.residual_max < 5e-3
        assert report.origin_gap == pytest.approx(0.01)

    def test_tau_variant_flags_incommensurate_grid(self):
        g = FrequencyGrid.linspace(0.0503, 3.0, 60)
        t = TemporalSpectrum(g, np.ones(60), np.zeros(60))
        with pytest.raises(NonUniformGrid):
            tau_kk_residual(t)


class TestFrequencySumRule:
    def test_inverse_frequency_model_is_exact(self):
        """For S = c/omega the weighted integrand cancels identically."""
        g = FrequencyGrid.linspace(0.5, 50.0, 992)
        full = np.concatenate([-g.values[::-1], g.values])
        grid = FrequencyGrid(full)
        spec = ComplexSpectrum(grid, (2.3 + 0.4j) / grid.values)
        temp = TemporalSpectrum(grid, np.zeros(len(grid)), 1.0 / grid.values)
        assert frequency_sum_rule(spec, temp) == 0j

    def test_single_resonance_balance(self):
        """One sharp resonance with a 1/omega prefactor balances to O(gamma)."""
        model = PoleZeroModel(p=1, resonances=((10.0, 0.02),))
        pos = np.arange(0.5, 60.0 + 1e-9, 0.001)
        grid = FrequencyGrid(np.concatenate([-pos[::-1], pos]))
        from tauspec.core import evaluate_model

        s_pos = evaluate_model(model, pos)
        values = np.concatenate([np.conj(s_pos)[::-1], s_pos])
        tau_pos = model_tau(model, pos)
        tau = np.concatenate([np.conj(tau_pos)[::-1], tau_pos])
        spec = ComplexSpectrum(grid, values)
        temp = TemporalSpectrum(grid, tau.real, tau.imag)
        value = frequency_sum_rule(spec, temp)
        scale = sum_rule_scale(spec, temp)
        analytic = 4j * np.pi * 0.02 / 10.0**3
        assert abs(value) / scale < 1e-2
        assert value.imag == pytest.approx(analytic.imag, rel=0.02)
        assert abs(value.real) < 1e-12

    def test_origin_node_rejected(self):
        g = FrequencyGrid.linspace(-1.0, 1.0, 21)
        spec = ComplexSpectrum(g, np.ones(21, dtype=complex))
        temp = TemporalSpectrum(g, np.ones(21), np.zeros(21))
        with pytest.raises(OriginInGrid):
            frequency_sum_rule(spec, temp)

    def test_grid_mismatch_rejected(self):
        g1 = FrequencyGrid.linspace(0.5, 1.5, 21)
        g2 = FrequencyGrid.linspace(0.5, 1.5, 22)
        spec = ComplexSpectrum(g1, np.ones(21, dtype=complex))
        temp = TemporalSpectrum(g2, np.ones(22), np.zeros(22))
        with pytest.raises(GridError):
            frequency_sum_rule(spec, temp)


class TestTimeSumRule:
    def test_decaying_wave_balances_to_inverse_width(self):
        times = np.arange(0.0, 14000.0, 0.05)
        s_t = -1j * np.exp((-1j - 0.001) * times)
        tau_t = np.exp((-1j - 0.001) * times)
        value = time_sum_rule(s_t, tau_t, times)
        assert value == pytest.approx(-500j, rel=1e-3)

    def test_insufficient_decay_raises(self):
        times = np.arange(0.0, 10.0, 0.01)
        s_t = np.exp(-1j * times)
        with pytest.raises(InsufficientDecay):
            time_sum_rule(s_t, s_t, times)

    def test_zero_signal_is_zero(self):
        times = np.arange(0.0, 10.0, 0.01)
        zero = np.zeros_like(times, dtype=complex)
        assert time_sum_rule(zero, zero, times) == 0j


class TestResidueSeries:
    def test_single_resonance_at_pi(self):
        model = PoleZeroModel(resonances=((1.0, 0.2),))
        tau1, tau2 = residue_time_domain(model, np.array([np.pi]))
        assert tau1[0] == pytest.approx(np.exp(-0.2 * np.pi), rel=1e-12)
        assert tau2[0] == pytest.approx(-1j * tau1[0])

    def test_origin_counts_resonances(self):
        model = PoleZeroModel(
            resonances=((1.0, 0.2), (2.0, 0.5), (3.5, 1.0))
        )
        tau1, tau2 = residue_time_domain(model, np.array([0.0]))
        assert tau1[0] == -3.0
        assert tau2[0] == 0j

    def test_negative_time_parity(self):
        model = PoleZeroModel(resonances=((1.3, 0.4),))
        t = np.array([-2.0, 2.0])
        tau1, tau2 = residue_time_domain(model, t)
        assert tau1[0] == pytest.approx(tau1[1])
        assert tau2[0] == pytest.approx(np.conj(tau2[1]))


class TestWinding:
    def test_zero_pole_nothing(self):
        model = PoleZeroModel(resonances=((1.0, 0.2),))
        upper = Contour.rectangle(0.0, 2.0, 0.0, 1.0)
        lower = Contour.rectangle(0.0, 2.0, -1.0, 0.0)
        empty = Contour.rectangle(3.0, 4.0, -1.0, 1.0)
        assert winding_number(model, upper) == pytest.approx(1.0, abs=1e-3)
        assert winding_number(model, lower) == pytest.approx(-1.0, abs=1e-3)
        assert winding_number(model, empty) == pytest.approx(0.0, abs=1e-3)

    def test_full_rectangle_cancels(self):
        model = PoleZeroModel(resonances=((1.0, 0.2), (1.5, 0.3)))
        both = Contour.rectangle(0.5, 2.0, -1.0, 1.0)
        assert winding_number(model, both) == pytest.approx(0.0, abs=1e-3)

    def test_singularity_on_contour_detected(self):
        model = PoleZeroModel(resonances=((1.0, 0.2),))
        grazing = Contour.rectangle(0.0, 2.0, 0.1, 1.0)
        with pytest.raises(SingularityOnContour):
            winding_number(model, grazing)

    def test_minimum_sampling_enforced(self):
        model = PoleZeroModel(resonances=((1.0, 0.2),))
        box = Contour.rectangle(0.0, 2.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            winding_number(model, box, samples_per_edge=8)

    def test_contour_validation(self):
        with pytest.raises(ValueError):
            Contour(vertices=(0.0 + 0j, 1.0 + 0j, 1.0 + 1j))
        with pytest.raises(ValueError):
            Contour(vertices=(0j, 1.0 + 0j, 1.0 + 1j, 1j, 0.5 + 0.5j))
        clockwise = (0j, 1j, 1.0 + 1j, 1.0 + 0j, 0j)
        with pytest.raises(ValueError):
            Contour(vertices=clockwise)
