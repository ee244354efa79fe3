"""Post-processing of evolution runs: projections, rate fits, convexity.

Fit windows exclude t < 1 by default and refuse signals within a factor 100
of the absolute floor 1e-13, where exponentially decaying quantities sit on
the round-off plateau and any fitted rate would be meaningless.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, SignError, WindowError
from .spectral import SineSpectrum

SIGNAL_FLOOR = 1e-13
MIN_FIT_POINTS = 20


@dataclass(frozen=True)
class DiagnosticSeries:
    """Scalar time series recorded along one evolution run.

    ``mass`` is the squared L2 norm |u|_2^2; ``hi_mass`` is the (plain) L2
    norm of the tail sum_{m>=2} c_m sin(mx); ``linf`` is the grid max norm.
    """

    times: np.ndarray
    mass: np.ndarray
    energy: np.ndarray
    c1: np.ndarray
    hi_mass: np.ndarray
    linf: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if np.any(np.diff(t) <= 0.0):
            raise DomainError("domain error: snapshot times must be strictly increasing")
        for name in ("mass", "energy", "c1", "hi_mass", "linf"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != t.shape:
                raise DomainError(f"domain error: series {name} length mismatch")
        if np.any(np.asarray(self.mass) < 0.0):
            raise DomainError("domain error: mass must be nonnegative")


def project_mode1(spec: SineSpectrum) -> float:
    """First sine coefficient."""
    return float(spec.coeffs[0])


def project_high_mass(spec: SineSpectrum) -> float:
    """L2 norm of the m >= 2 tail, sqrt(pi * sum_{m>=2} c_m^2)."""
    return float(np.sqrt(np.pi * np.sum(spec.coeffs[1:] ** 2)))


@dataclass(frozen=True)
class RateFit:
    window: tuple
    model: str
    rate_or_exponent: float
    prefactor: float
    residual: float
    rejected: bool


def fit_rate(times, values, model, window=None) -> RateFit:
    """Least-squares decay fit on a window.

    ``exponential`` regresses ln y on t (rate = -slope); ``algebraic``
    regresses ln y on ln t (exponent = -slope).  ``residual`` is the max
    relative deviation of the fit on the window; fits with residual > 0.1
    are flagged rejected rather than silently returned.
    """
    if model not in ("exponential", "algebraic"):
        raise DomainError(f"domain error: unknown model {model!r}")
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if window is None:
        window = (max(1.0, float(t[0])), float(t[-1]))
    lo, hi = window
    sel = (t >= lo) & (t <= hi)
    if model == "algebraic":
        sel &= t > 0.0
    t_w, y_w = t[sel], y[sel]
    if t_w.size < MIN_FIT_POINTS:
        raise WindowError(
            f"window error: need >= {MIN_FIT_POINTS} points in [{lo}, {hi}], got {t_w.size}"
        )
    if np.any(y_w <= 0.0):
        raise DomainError("domain error: values must be positive on the window")
    if float(np.min(y_w)) < 100.0 * SIGNAL_FLOOR:
        raise WindowError(
            f"window error: signal reaches {np.min(y_w):.2e}, within 100x of the "
            f"round-off floor {SIGNAL_FLOOR}"
        )
    abscissa = t_w if model == "exponential" else np.log(t_w)
    slope, intercept = np.polyfit(abscissa, np.log(y_w), 1)
    y_hat = np.exp(intercept + slope * abscissa)
    residual = float(np.max(np.abs(y_hat / y_w - 1.0)))
    return RateFit(
        window=(float(lo), float(hi)),
        model=model,
        rate_or_exponent=float(-slope),
        prefactor=float(np.exp(intercept)),
        residual=residual,
        rejected=residual > 0.1,
    )


@dataclass(frozen=True)
class ProfileEstimate:
    value: float
    stability: float
    zero_mode: bool


def extract_profile(series: DiagnosticSeries, kappa, window=None, n_windows=4) -> ProfileEstimate:
    """Late-time first-mode amplitude of the decaying solution.

    For kappa > 1 the compensated amplitude c1(t) exp((kappa^2-1) t) is
    averaged over consecutive late sub-windows; for kappa = 1 the squared
    compensated amplitude c1(t)^2 t is extrapolated linearly in 1/t per
    sub-window (its remainder is O(1/t)).  ``stability`` is the spread of
    the sub-window estimates; a first mode at round-off level is reported
    as the zero profile.
    """
    if kappa < 1.0:
        raise DomainError(f"domain error: profile extraction needs kappa >= 1, got {kappa}")
    t = series.times
    if window is None:
        window = (max(1.0, float(t[0])), float(t[-1]))
    lo, hi = window
    sel = (t >= lo) & (t <= hi)
    t_w = t[sel]
    c1_w = series.c1[sel]
    if t_w.size < n_windows * 5:
        raise WindowError(
            f"window error: need >= {n_windows * 5} points in [{lo}, {hi}], got {t_w.size}"
        )
    if float(np.max(np.abs(c1_w))) < SIGNAL_FLOOR:
        return ProfileEstimate(value=0.0, stability=0.0, zero_mode=True)

    edges = np.linspace(lo, hi, n_windows + 1)
    estimates = []
    for a, b in zip(edges[:-1], edges[1:]):
        m = (t_w >= a) & (t_w <= b)
        tt, cc = t_w[m], c1_w[m]
        if tt.size < 3:
            raise WindowError("window error: sub-window too thin for extraction")
        if kappa > 1.0:
            comp = cc * np.exp((kappa**2 - 1.0) * tt)
            estimates.append(float(np.mean(comp)))
        else:
            theta = cc**2 * tt
            slope, intercept = np.polyfit(1.0 / tt, theta, 1)
            sign = 1.0 if np.mean(cc) >= 0.0 else -1.0
            estimates.append(sign * math.sqrt(max(float(intercept), 0.0)))
    spread = float(np.max(estimates) - np.min(estimates))
    return ProfileEstimate(value=float(estimates[-1]), stability=spread, zero_mode=False)


@dataclass(frozen=True)
class LogConvexityReport:
    t1: float
    t2: float
    factor: float
    worst_ratio: float
    worst_time: float
    n_checked: int
    passed: bool


def check_log_convexity(series: DiagnosticSeries, t1, t2, factor=1.0) -> LogConvexityReport:
    """Interpolation test m(t) <= factor * m(t1)^(1-l) m(t2)^l on (t1, t2).

    ``factor=1`` is the sharp test.  The pass criterion carries relative
    round-off slack 1e-12 so the exact log-linear equality case passes.
    """
    t = series.times
    m = series.mass
    if not (t[0] <= t1 < t2 <= t[-1]):
        raise DomainError(f"domain error: [{t1}, {t2}] outside the recorded range")
    i1 = int(np.argmin(np.abs(t - t1)))
    i2 = int(np.argmin(np.abs(t - t2)))
    m1, m2 = m[i1], m[i2]
    if m1 <= 0.0 or m2 <= 0.0:
        raise DomainError("domain error: mass must be positive at the window ends")
    inner = (t > t[i1]) & (t < t[i2])
    if not np.any(inner):
        return LogConvexityReport(t1, t2, factor, 0.0, t1, 0, True)
    lam = (t[inner] - t[i1]) / (t[i2] - t[i1])
    bound = factor * m1 ** (1.0 - lam) * m2**lam
    ratios = m[inner] / bound
    worst = int(np.argmax(ratios))
    return LogConvexityReport(
        t1=float(t[i1]),
        t2=float(t[i2]),
        factor=float(factor),
        worst_ratio=float(ratios[worst]),
        worst_time=float(t[inner][worst]),
        n_checked=int(ratios.size),
        passed=bool(ratios[worst] <= 1.0 + 1e-12),
    )


@dataclass(frozen=True)
class Eta0Report:
    lhs: float
    rhs: float
    ratio: float
    eta0: float | None


def check_eta0_inequality(spec: SineSpectrum, gamma) -> Eta0Report:
    """Evaluate int u^3 L^gamma u dx against eta0 |u|_4^4.

    For gamma = 2 the constant eta0 = 3/4 is known and ``rhs`` is the full
    right-hand side.  For gamma < 2 no quotable constant exists, so ``rhs``
    carries the empirical ratio lhs / |u|_4^4 instead of an asserted bound.
    """
    if not 0.0 < gamma <= 2.0:
        raise DomainError(f"domain error: gamma={gamma!r} outside (0, 2]")
    c = spec.coeffs
    M = c.size
    n_pad = 16
    while n_pad < 8 * M:
        n_pad *= 2
    m = np.arange(1, M + 1)
    signs = np.where(m % 2 == 0, 1.0, -1.0)
    R = np.zeros(n_pad // 2 + 1, dtype=complex)
    R[1 : M + 1] = -0.5j * n_pad * signs * c
    u = np.fft.irfft(R, n_pad)
    cube = u**3
    F = np.fft.rfft(cube)
    d = -(2.0 / n_pad) * signs * F[1 : M + 1].imag  # alias-free: 3M < n_pad/2
    lhs = float(np.pi * np.sum(d * m.astype(float) ** gamma * c))
    l4 = float((2.0 * np.pi / n_pad) * np.sum(u**4))
    ratio = lhs / l4 if l4 > 0.0 else math.inf
    if gamma == 2.0:
        return Eta0Report(lhs=lhs, rhs=0.75 * l4, ratio=ratio, eta0=0.75)
    return Eta0Report(lhs=lhs, rhs=ratio, ratio=ratio, eta0=None)


@dataclass(frozen=True)
class ThetaFit:
    theta_star: float
    remainder_bound: float
    t_end: float
    theta_end: float
    evaluate: object  # dense solution, callable t -> theta


def theta_ode_oracle(theta0, t0, forcing, t_end) -> ThetaFit:
    """Integrate theta' = -(3/2) theta^2 + F(t) and extract the 1/t level.

    ``theta_star`` is the limit of t*theta(t), estimated by a linear fit in
    1/t over the last decade (the remainder of t*theta is O(1/t)); the
    remainder bound reports sup |theta - theta_star/t| * t^2 / ln t there.
    The map must keep theta in [0, inf); leaving it raises SignError.
    """
    if t0 < 3.0:
        raise DomainError(f"domain error: need t0 >= 3, got {t0}")
    if theta0 < 0.0:
        raise DomainError(f"domain error: need theta0 >= 0, got {theta0}")
    if t_end <= t0 * 2.0:
        raise DomainError("domain error: t_end must exceed 2*t0")
    F = forcing if forcing is not None else (lambda t: 0.0)

    def rhs(t, y):
        return [-1.5 * y[0] * y[0] + F(t)]

    def left_range(t, y):  # terminal guard: theta must stay in [0, inf)
        return y[0] + 1e-8 * max(1.0, theta0)

    left_range.terminal = True
    left_range.direction = -1.0

    sol = solve_ivp(
        rhs,
        (t0, t_end),
        [float(theta0)],
        method="DOP853",
        rtol=1e-12,
        atol=1e-16,
        dense_output=True,
        events=left_range,
    )
    if sol.t_events[0].size:
        raise SignError(f"sign error: theta left [0, inf) at t = {sol.t_events[0][0]:.6g}")
    if not sol.success:
        raise RuntimeError(f"theta integration failed: {sol.message}")

    ts = np.geomspace(t_end / 10.0, t_end, 200)
    th = sol.sol(ts)[0]
    if float(np.min(th)) < -1e-10 * max(1.0, theta0):
        raise SignError(f"sign error: theta reached {np.min(th):.3e}")
    slope, intercept = np.polyfit(1.0 / ts, ts * th, 1)
    theta_star = float(intercept)
    remainder = float(np.max(np.abs(th - theta_star / ts) * ts**2 / np.log(ts)))
    return ThetaFit(
        theta_star=theta_star,
        remainder_bound=remainder,
        t_end=float(t_end),
        theta_end=float(sol.sol(t_end)[0]),
        evaluate=lambda t: float(sol.sol(t)[0]),
    )
