"""Adaptive Simpson quadrature with an interval-doubling error estimate."""

from .errors import DomainError, NumericalError, ValidationError

DEFAULT_TOL = 1e-10
MAX_DEPTH = 40


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth >= MAX_DEPTH:
        raise NumericalError(
            f"adaptive Simpson failed to converge on [{a},{b}] within depth {MAX_DEPTH}"
        )
    half = 0.5 * tol
    return _adapt(f, a, fa, m, fm, lm, flm, left, half, depth + 1) + _adapt(
        f, m, fm, b, fb, rm, frm, right, half, depth + 1
    )


def adaptive_simpson(f, a, b, tol=DEFAULT_TOL):
    """Integrate f over [a, b] to absolute accuracy ~tol.

    Each interval is accepted when halving it changes the Simpson value by
    at most 15*tol, and the Richardson term delta/15 is added back.  Raises
    NumericalError if the subdivision depth cap is hit.
    """
    if not tol > 0:
        raise ValidationError(f"tolerance must be positive, got {tol}")
    if b < a:
        raise DomainError(f"integration bounds reversed: [{a}, {b}]")
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    return _adapt(f, a, fa, b, fb, m, fm, whole, tol, 0)
