"""Tanh-type speed-regulating function.

phi(t, mu) = tanh(t / mu) climbs from 0 toward 1 on a timescale set by mu.
The switching logic multiplies its monitored signal by phi to throttle how
early a switch can fire; the key analytic fact is the lower bound
t * phi(t, mu) >= t - 0.2785 * mu.
"""

from __future__ import annotations

import math

__all__ = ["phi", "phi_deriv", "phi_lower_bound_check"]


def _check_args(t: float, mu: float):
    if not mu > 0.0 or not math.isfinite(mu):
        raise ValueError("mu must be a finite positive constant")
    if t < 0.0:
        raise ValueError("speed-regulating function is defined on t >= 0")


def phi(t: float, mu: float) -> float:
    """tanh(t/mu); strictly increasing in t with phi(0)=0 and limit 1.

    The library tanh is used directly: it is the numerically stable form of
    the defining ratio of exponentials and never overflows for large t/mu.
    """
    _check_args(t, mu)
    return math.tanh(t / mu)


def phi_deriv(t: float, mu: float) -> float:
    """d/dt phi(t, mu) = (1/mu) sech^2(t/mu), strictly positive."""
    _check_args(t, mu)
    sech = 1.0 / math.cosh(t / mu)
    return sech * sech / mu


def phi_lower_bound_check(t: float, mu: float) -> bool:
    """True iff t * phi(t, mu) >= t - 0.2785 * mu holds at this point."""
    _check_args(t, mu)
    return t * phi(t, mu) >= t - 0.2785 * mu
