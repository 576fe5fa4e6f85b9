"""Model table: families, parameter validation, force and phase-rate terms."""

import numpy as np
import pytest

from svealab.errors import DomainError
from svealab.models import Family, ModelSpec, kappa_curve, kg_force, nls_nonlinear_phase_rate

from oracles import FIRST_J1_ZERO, J1_VALUES


def test_family_partition():
    nls = {f for f in Family if f.is_nls}
    kg = {f for f in Family if f.is_kg}
    assert len(Family) == 8
    assert len(nls) == 4 and len(kg) == 4
    assert nls.isdisjoint(kg)


class TestModelSpec:
    def test_dispersion_values(self):
        assert ModelSpec(Family.CUBIC_NLS, omega=2.0).dispersion == 0.5
        assert ModelSpec(Family.CUBIC_QUINTIC_NLS, sigma=1.0).dispersion == 1.0
        assert ModelSpec(Family.BESSEL_NLS, omega=2.0).dispersion == 0.25

    def test_rejects_nonpositive_omega(self):
        with pytest.raises(DomainError):
            ModelSpec(Family.CUBIC_NLS, omega=0.0)

    def test_mapping_round_trip(self):
        spec = ModelSpec(Family.DOUBLE_WELL_NLS, lam=2.0, mass=1.3, omega=0.7)
        data = spec.to_mapping()
        assert data["lambda"] == "2.0"
        assert ModelSpec.from_mapping(data) == spec

    def test_from_mapping_rejects_unknown_family(self):
        with pytest.raises((DomainError, ValueError, KeyError)):
            ModelSpec.from_mapping({"family": "quartic_nls"})

    def test_from_mapping_rejects_typoed_key(self):
        # a silently dropped coefficient would run with the default instead
        with pytest.raises(DomainError):
            ModelSpec.from_mapping({"family": "cubic_nls", "lamda": "2.0"})


class TestKgForce:
    def test_cubic(self):
        m = ModelSpec(Family.CUBIC_KG, lam=2.0)
        assert kg_force(m, 3.0) == pytest.approx(2.0 * 27.0)

    def test_double_well(self):
        m = ModelSpec(Family.DOUBLE_WELL_KG, lam=1.0, mass=2.0)
        assert kg_force(m, 1.5) == pytest.approx(-4.0 * 1.5 + 1.5**3)

    def test_cubic_quintic(self):
        m = ModelSpec(Family.CUBIC_QUINTIC_KG, lam=0.9375, sigma=1.0)
        phi = 0.8
        assert kg_force(m, phi) == pytest.approx(-phi**3 + 0.9375 * phi**5)

    def test_sine_gordon(self):
        m = ModelSpec(Family.SINE_GORDON_KG, lam=2.0)
        assert kg_force(m, 0.5) == pytest.approx(4.0 * np.sin(0.5))

    def test_complex_argument(self):
        m = ModelSpec(Family.CUBIC_KG, lam=1.0)
        z = 1.0 + 0.5j
        assert kg_force(m, z) == pytest.approx(z**3)


class TestPhaseRate:
    def test_cubic(self):
        m = ModelSpec(Family.CUBIC_NLS, lam=2.0, omega=4.0)
        assert nls_nonlinear_phase_rate(m, 3.0) == pytest.approx(2.0 * 9.0 / 4.0)

    def test_double_well_sign_change(self):
        m = ModelSpec(Family.DOUBLE_WELL_NLS, lam=1.0, mass=1.2, omega=1.0)
        assert nls_nonlinear_phase_rate(m, 0.5) < 0.0
        assert nls_nonlinear_phase_rate(m, 2.0) > 0.0

    def test_bessel_reference_value(self):
        m = ModelSpec(Family.BESSEL_NLS, lam=1.0, omega=1.0)
        assert nls_nonlinear_phase_rate(m, 3.0) == pytest.approx(
            J1_VALUES[3.0] / 3.0, rel=1e-13)

    def test_bessel_small_amplitude_limit(self):
        m = ModelSpec(Family.BESSEL_NLS, lam=2.0, omega=1.0)
        assert nls_nonlinear_phase_rate(m, 1e-9) == pytest.approx(2.0, rel=1e-12)
        assert nls_nonlinear_phase_rate(m, 0.0) == pytest.approx(2.0, rel=1e-12)

    def test_bessel_series_matches_direct_branch(self):
        m = ModelSpec(Family.BESSEL_NLS, lam=1.0, omega=1.0)
        below, above = 9.9e-5, 1.01e-4
        assert nls_nonlinear_phase_rate(m, below) == pytest.approx(
            nls_nonlinear_phase_rate(m, above), rel=1e-7)

    def test_rejects_negative_amplitude(self):
        m = ModelSpec(Family.CUBIC_NLS)
        with pytest.raises(DomainError):
            nls_nonlinear_phase_rate(m, -1.0)

    def test_array_input(self):
        m = ModelSpec(Family.BESSEL_NLS)
        amps = np.array([0.0, 1.0, 5.0])
        out = nls_nonlinear_phase_rate(m, amps)
        assert out.shape == amps.shape
        assert np.all(np.isfinite(out))


def test_kappa_curve_sign_flip_at_first_zero():
    lo, hi = FIRST_J1_ZERO - 0.05, FIRST_J1_ZERO + 0.05
    samples = kappa_curve([lo, hi])
    assert samples[0].kappa > 0.0 > samples[1].kappa
