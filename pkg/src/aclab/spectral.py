"""Torus grids, odd sine spectra, and the transforms between them.

The grid is x_j = -pi + 2*pi*j/n.  An odd 2*pi-periodic field is carried by
its sine coefficients c_m, f(x) = sum_{m>=1} c_m sin(m x); on this grid
sin(m x_j) = (-1)^m sin(2*pi*m*j/n), which is what the FFT index mapping
below accounts for.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SymmetryError

ODD_TOL = 1e-8


def _is_pow2(n):
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class TorusGrid:
    """Uniform grid of ``n_points`` samples covering [-pi, pi)."""

    n_points: int

    def __post_init__(self):
        n = self.n_points
        if not isinstance(n, (int, np.integer)) or n < 16 or not _is_pow2(n):
            raise DomainError(f"domain error: n_points must be a power of two >= 16, got {n!r}")

    @property
    def x(self):
        n = self.n_points
        return -np.pi + 2.0 * np.pi * np.arange(n) / n

    @property
    def dx(self):
        return 2.0 * np.pi / self.n_points


def _freeze(arr):
    out = np.array(arr, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class TorusField:
    """Real samples of a 2*pi-periodic function on a :class:`TorusGrid`."""

    grid: TorusGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.n_points,):
            raise DomainError(
                f"domain error: values shape {v.shape} does not match grid "
                f"({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(v)):
            raise DomainError("domain error: field values must be finite")
        object.__setattr__(self, "values", _freeze(v))


@dataclass(frozen=True)
class SineSpectrum:
    """Coefficients c_m of sum_{m=1..M} c_m sin(m x)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size < 1:
            raise DomainError("domain error: coeffs must be a non-empty 1d array")
        if not np.all(np.isfinite(c)):
            raise DomainError("domain error: coefficients must be finite")
        object.__setattr__(self, "coeffs", _freeze(c))

    @property
    def max_mode(self):
        return self.coeffs.size

    @property
    def modes(self):
        return np.arange(1, self.coeffs.size + 1)


def odd_defect(values):
    """Max deviation of grid samples from odd symmetry about x = 0."""
    v = np.asarray(values, dtype=float)
    n = v.size
    defect = max(abs(v[0]), abs(v[n // 2]))
    if n > 2:
        defect = max(defect, float(np.max(np.abs(v[1:] + v[:0:-1]))))
    return defect


def sine_transform(field: TorusField) -> SineSpectrum:
    """Project an odd field onto the sine basis, c_m = (1/pi) * int f sin(mx).

    The field must be odd about x = 0 to within ``ODD_TOL``; asymmetric input
    raises :class:`SymmetryError`.  Round trip with :func:`synthesize` is
    exact to round-off for band-limited fields.
    """
    v = field.values
    n = field.grid.n_points
    defect = odd_defect(v)
    if defect > ODD_TOL:
        raise SymmetryError(f"symmetry violation: odd defect {defect:.3e} exceeds {ODD_TOL}")
    F = np.fft.rfft(v)
    m = np.arange(1, n // 2)
    signs = np.where(m % 2 == 0, 1.0, -1.0)
    coeffs = -(2.0 / n) * signs * F[1 : n // 2].imag
    return SineSpectrum(coeffs)


def synthesize(spec: SineSpectrum, grid: TorusGrid) -> TorusField:
    """Evaluate a sine spectrum on a grid (inverse of :func:`sine_transform`)."""
    n = grid.n_points
    M = spec.max_mode
    if M > n // 2 - 1:
        raise DomainError(f"domain error: grid with {n} points cannot hold {M} sine modes")
    return TorusField(grid, _synthesize_values(spec.coeffs, n))


def _synthesize_values(coeffs, n):
    M = coeffs.size
    m = np.arange(1, M + 1)
    signs = np.where(m % 2 == 0, 1.0, -1.0)
    R = np.zeros(n // 2 + 1, dtype=complex)
    R[1 : M + 1] = -0.5j * n * signs * coeffs
    return np.fft.irfft(R, n)


def _cosine_series_values(coeffs, n):
    # f(x_j) = sum_m a_m cos(m x_j) with cos(m x_j) = (-1)^m cos(2 pi m j / n)
    M = coeffs.size
    m = np.arange(1, M + 1)
    signs = np.where(m % 2 == 0, 1.0, -1.0)
    R = np.zeros(n // 2 + 1, dtype=complex)
    R[1 : M + 1] = 0.5 * n * signs * coeffs
    return np.fft.irfft(R, n)


def spectral_derivative(spec: SineSpectrum, order: int, grid: TorusGrid | None = None) -> TorusField:
    """Differentiate a sine spectrum term by term and sample on a grid.

    Order 1 yields sum m c_m cos(mx); order 2 yields -sum m^2 c_m sin(mx).
    """
    if order not in (1, 2):
        raise DomainError(f"domain error: order must be 1 or 2, got {order!r}")
    if grid is None:
        n = 16
        while n // 2 - 1 < spec.max_mode:
            n *= 2
        grid = TorusGrid(n)
    m = spec.modes.astype(float)
    if order == 1:
        return TorusField(grid, _cosine_series_values(m * spec.coeffs, grid.n_points))
    return TorusField(grid, _synthesize_values(-(m**2) * spec.coeffs, grid.n_points))


def spectrum_l2(spec: SineSpectrum) -> float:
    """L2 norm on the torus; int sin^2(mx) dx = pi."""
    return float(np.sqrt(np.pi * np.sum(spec.coeffs**2)))


def spectrum_sobolev(spec: SineSpectrum, s: int = 10) -> float:
    """Weighted-coefficient Sobolev norm sqrt(pi * sum (1+m^2)^s c_m^2)."""
    m = spec.modes.astype(float)
    return float(np.sqrt(np.pi * np.sum((1.0 + m**2) ** s * spec.coeffs**2)))
