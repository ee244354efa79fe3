import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from aclab.errors import DomainError, SymmetryError
from aclab.ground_state import ground_state_spectrum
from aclab.spectral import (
    SineSpectrum,
    TorusField,
    TorusGrid,
    sine_transform,
    spectral_derivative,
    spectrum_l2,
    synthesize,
)


@pytest.fixture(scope="module")
def grid64():
    return TorusGrid(64)


def test_grid_validation():
    with pytest.raises(DomainError):
        TorusGrid(100)  # not a power of two
    with pytest.raises(DomainError):
        TorusGrid(8)  # too small
    g = TorusGrid(16)
    assert g.x[0] == -np.pi
    assert g.x[8] == pytest.approx(0.0)


def test_basis_function_transforms(grid64):
    x = grid64.x
    s = sine_transform(TorusField(grid64, np.sin(x)))
    assert s.coeffs[0] == pytest.approx(1.0, abs=1e-14)
    assert np.max(np.abs(s.coeffs[1:])) < 1e-14

    s2 = sine_transform(TorusField(grid64, 3.0 * np.sin(2.0 * x)))
    assert s2.coeffs[1] == pytest.approx(3.0, abs=1e-13)


def test_symmetry_violation_rejected(grid64):
    x = grid64.x
    with pytest.raises(SymmetryError, match="symmetry violation"):
        sine_transform(TorusField(grid64, np.cos(x)))


def test_derivative_examples(grid64):
    x = grid64.x
    d2 = spectral_derivative(sine_transform(TorusField(grid64, np.sin(x))), 2, grid64)
    assert np.max(np.abs(d2.values + np.sin(x))) < 1e-12

    d1 = spectral_derivative(sine_transform(TorusField(grid64, np.sin(3 * x))), 1, grid64)
    assert np.max(np.abs(d1.values - 3.0 * np.cos(3 * x))) < 1e-12

    with pytest.raises(DomainError):
        spectral_derivative(SineSpectrum([1.0]), 3)


def test_ground_state_band_gap(gs_cache):
    # even-index sine modes of the steady profile vanish: it is symmetric
    # about pi/2, which kills every even harmonic
    spec = ground_state_spectrum(gs_cache(0.5))
    even = spec.coeffs[1::2]
    assert np.max(np.abs(even)) < 1e-10
    assert np.max(np.abs(spec.coeffs[0::2])) > 0.1


def test_ground_state_second_derivative_residual(gs_cache):
    gs = gs_cache(0.5)
    spec = ground_state_spectrum(gs)
    u = gs.field.values
    u_xx = spectral_derivative(spec, 2, gs.field.grid).values
    residual = 0.25 * u_xx + u - u**3
    assert np.max(np.abs(residual)) < 1e-8


def test_field_validation(grid64):
    with pytest.raises(DomainError):
        TorusField(grid64, np.ones(10))
    with pytest.raises(DomainError):
        TorusField(grid64, np.full(64, np.nan))


def test_l2_norm():
    assert spectrum_l2(SineSpectrum([1.0])) == pytest.approx(np.sqrt(np.pi))


@given(
    coeffs=arrays(
        float,
        st.integers(1, 16),
        elements=st.floats(-5.0, 5.0, allow_nan=False),
    )
)
def test_round_trip_band_limited(coeffs, grid64):
    # band-limited means M <= n/4; round trip is exact to 1e-10
    spec = SineSpectrum(coeffs)
    back = sine_transform(synthesize(spec, grid64))
    assert np.max(np.abs(back.coeffs[: spec.max_mode] - spec.coeffs)) < 1e-10
    assert np.max(np.abs(back.coeffs[spec.max_mode :])) < 1e-10
