"""Independent truth sources used by tests and the verification suites.

Nothing here shares code paths with the construction it checks: the peak
value is re-solved with mpmath tanh-sinh quadrature and the steady profile
re-derived by Taylor-series shooting of the second-order ODE in arbitrary
precision.  Plain double-precision shooting cannot serve as an oracle for
small kappa: the profile rides the saddle at u = 1 and initial-condition
round-off is amplified by ~1/(1-N), which reaches 1e9 already at kappa=0.1.
"""

import math

import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp


def composite_simpson(f, a, b, n=1_000_000):
    """Composite Simpson rule with n+1 nodes (n even)."""
    if n % 2:
        n += 1
    x = np.linspace(a, b, n + 1)
    y = f(x)
    h = (b - a) / n
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum())


def peak_complement_mp(kappa, dps=40):
    """Solve the quarter-period identity for w = 1 - N in mp precision."""
    with mp.workdps(dps):
        target = mp.pi / (2 * mp.sqrt(2) * mp.mpf(kappa))

        def g_of_s(s):
            w = mp.e**s
            q = w * (2 - w)
            return (
                mp.quad(
                    lambda p: 1 / mp.sqrt(mp.sin(p) ** 2 + q * (1 + mp.cos(p) ** 2)),
                    [0, mp.pi / 2],
                )
                - target
            )

        s_lo = -2 * target - 8
        s = mp.findroot(g_of_s, (s_lo, mp.mpf(0)), solver="anderson", tol=mp.mpf(10) ** (-2 * dps + 8))
        return mp.e**s


def _taylor_coeffs(u0, v0, kappa2, order):
    # recurrence for kappa^2 u'' = u^3 - u; b = u*u and c = u^3 grow with k
    a = [u0, v0] + [mp.mpf(0)] * order
    b = [mp.mpf(0)] * (order + 1)
    c = [mp.mpf(0)] * (order + 1)
    for k in range(order):
        b[k] = mp.fsum(a[i] * a[k - i] for i in range(k + 1))
        c[k] = mp.fsum(b[i] * a[k - i] for i in range(k + 1))
        a[k + 2] = (c[k] - a[k]) / (kappa2 * (k + 1) * (k + 2))
    return a


def _horner2(a, h):
    u = mp.mpf(0)
    v = mp.mpf(0)
    for k in range(len(a) - 1, 0, -1):
        u = a[k] + u * h
        v = k * a[k] + v * h
    return a[0] + u * h, v


def shoot_profile(kappa, xs, dps=40, order=50):
    """Steady profile u at points ``xs`` in [0, pi/2] by Taylor shooting.

    Launches from (u, u') = (0, sqrt(1 - (1 - N^2)^2) / (sqrt 2 kappa)), the
    slope the orbit invariant dictates at u = 0, and marches fixed Taylor
    steps sized well inside the series' convergence disk.  Also returns the
    drift of the orbit invariant as an internal error estimate.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.size and (xs.min() < -1e-15 or xs.max() > 0.5 * math.pi + 1e-15):
        raise ValueError("shoot_profile expects points inside [0, pi/2]")
    with mp.workdps(dps):
        kap = mp.mpf(kappa)
        w = peak_complement_mp(kappa, dps=dps)
        q = w * (2 - w)
        v0 = mp.sqrt(1 - q * q) / (mp.sqrt(2) * kap)
        c_init = kap**2 * v0**2  # invariant at u=0: kappa^2 v^2 + u^2 - u^4/2
        h_step = min(0.44 * float(kap), 0.3)
        order_eff = order
        u, v, x = mp.mpf(0), v0, mp.mpf(0)
        out = np.empty(xs.size)
        idx = np.argsort(xs)
        pos = 0
        x_end = 0.5 * math.pi
        drift = mp.mpf(0)
        while True:
            h = min(h_step, x_end - float(x) + 1e-18)
            a = _taylor_coeffs(u, v, kap**2, order_eff)
            # evaluate any requested points inside [x, x+h]
            while pos < xs.size and xs[idx[pos]] <= float(x) + h + 1e-15:
                uu, _ = _horner2(a, mp.mpf(xs[idx[pos]]) - x)
                out[idx[pos]] = float(uu)
                pos += 1
            if float(x) + h >= x_end - 1e-15:
                u, v = _horner2(a, mp.mpf(x_end) - x)
                break
            u, v = _horner2(a, mp.mpf(h))
            x += mp.mpf(h)
            drift = max(drift, abs(kap**2 * v**2 + u**2 - u**4 / 2 - c_init))
        peak_u, peak_v = u, v
        return out, {
            "invariant_drift": float(drift),
            "peak_value_gap": float(abs(peak_u - (1 - w))),
            "peak_slope": float(peak_v),
        }


def first_return_period(u0, v0, kappa, t_max):
    """Minimal period of a closed steady-ODE orbit by event detection.

    Integrates kappa^2 u'' = u^3 - u from (u0, v0) and measures the gap
    between consecutive upward zero crossings of u, which closed orbits hit
    exactly once per period.
    """

    def rhs(t, y):
        return [y[1], (y[0] ** 3 - y[0]) / kappa**2]

    def upward_zero(t, y):
        return y[0]

    upward_zero.direction = 1.0
    sol = solve_ivp(
        rhs,
        (0.0, t_max),
        [u0, v0],
        method="DOP853",
        rtol=1e-12,
        atol=1e-12,
        events=upward_zero,
        dense_output=False,
        max_step=t_max / 50.0,
    )
    crossings = sol.t_events[0]
    if crossings.size < 2:
        raise RuntimeError(
            f"first-return oracle saw {crossings.size} upward crossings in t <= {t_max}"
        )
    return float(crossings[1] - crossings[0])
