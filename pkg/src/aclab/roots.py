"""Bracketed scalar root finding: bisection with secant acceleration."""

from .errors import AclabError, BracketError, DomainError

_MAX_ITER = 400


def find_root(f, lo, hi, tol=1e-13, *, ftol=None, xtol=None):
    """Locate a root of ``f`` inside the bracket ``[lo, hi]``.

    Requires ``f(lo) * f(hi) <= 0``.  Secant steps are taken whenever they
    land strictly inside the current bracket and halve it fast enough;
    otherwise the step falls back to bisection, so the bracket always
    contains the root and the returned point lies inside the original one.

    Stops when ``|f(r)| <= ftol`` or the bracket width is ``<= xtol``
    (both default to ``tol``).
    """
    lo = float(lo)
    hi = float(hi)
    if not lo <= hi:
        raise DomainError(f"domain error: need lo <= hi, got lo={lo}, hi={hi}")
    if ftol is None:
        ftol = tol
    if xtol is None:
        xtol = tol

    fa = float(f(lo))
    if fa == 0.0:
        return lo
    fb = float(f(hi))
    if fb == 0.0:
        return hi
    if (fa < 0.0) == (fb < 0.0):
        raise BracketError(
            f"bracket error: f({lo})={fa:.6e} and f({hi})={fb:.6e} have the same sign"
        )

    a, b = lo, hi
    x_prev, f_prev = a, fa
    x, fx = b, fb
    force_bisect = False
    for _ in range(_MAX_ITER):
        width = b - a
        cand = None
        if not force_bisect and fx != f_prev:
            sec = x - fx * (x - x_prev) / (fx - f_prev)
            if a < sec < b:
                cand = sec
        if cand is None:
            cand = 0.5 * (a + b)
        fc = float(f(cand))
        x_prev, f_prev = x, fx
        x, fx = cand, fc
        if fc == 0.0 or abs(fc) <= ftol:
            return cand
        if (fa < 0.0) == (fc < 0.0):
            a, fa = cand, fc
        else:
            b, fb = cand, fc
        if b - a <= xtol:
            return 0.5 * (a + b)
        # secant made too little progress: force a bisection next round
        force_bisect = (b - a) > 0.5 * width
    raise AclabError("root search did not converge within the iteration limit")
