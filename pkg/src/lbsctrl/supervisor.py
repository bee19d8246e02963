"""Logic-based switching supervisor.

The supervisor watches a monitored signal chi built from the scaled
estimates and, whenever chi * phi(chi, mu_m) crosses the interval's
threshold omega_m, declares a switching moment: the interval index m
advances, the threshold is recomputed from the accumulated integral of
theta_bar, the gain ratchets up through a max-update, and the windowed
integral J restarts. A "robust" flavour (for disturbed plants) inflates
the threshold by +1, scales omega by (t_m + 1), and inserts a fixed
2^(1/(1-n*p)) factor into the gain update.

All threshold arithmetic runs in log space: the growth function phi_of_omega
can be double-exponential, so overflow is a designed-for state in which
omega saturates to +inf, the switching condition goes permanently false,
and the gain freezes (capped with a warning if the update itself overflows).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

from .speedreg import phi

__all__ = [
    "SwitchingSequences",
    "SupervisorState",
    "theta_bar_integrand",
    "omega",
    "gain_update",
    "chi",
    "should_switch",
    "apply_switch",
    "make_initial_state",
    "make_sequence",
    "make_phi_one",
    "make_phi_derived",
    "SEQUENCE_FORMULAS",
]

log = logging.getLogger(__name__)

# exp() overflows just above this; beyond it omega saturates to +inf
_LOG_OVERFLOW = 709.0
# omega must stay strictly positive even when the exponent underflows
_OMEGA_FLOOR = 1e-300


@dataclass(frozen=True)
class SwitchingSequences:
    """Designer-chosen schedule driving the switching logic.

    sigma_bar(m) must increase without bound, sigma_under(m) must decrease
    to zero, mu(m) sets the speed-regulating timescale per interval, and
    phi_of_omega is the known nondecreasing growth function entering both
    the monitored signal and the gain update. varsigma scales theta_bar.
    """

    sigma_bar: Callable[[int], float]
    sigma_under: Callable[[int], float]
    mu: Callable[[int], float]
    r0: float
    phi_of_omega: Callable[[float], float]
    varsigma: float = 1.0 / 2.8

    def __post_init__(self):
        if self.r0 < 1.0:
            raise ValueError("initial gain r0 must be >= 1")
        if not self.varsigma > 0.0:
            raise ValueError("varsigma must be positive")


@dataclass
class SupervisorState:
    """Per-run switching state; owned by exactly one simulation."""

    m: int
    r: float
    t_m: float
    I_theta: float
    J: float
    omega_m: float
    robust: bool
    gain_capped: bool = False


def theta_bar_integrand(y: float, u: float, r: float, gamma: Callable[[float], float],
                        p: float, varsigma: float) -> float:
    """Integrand of the accumulated threshold exponent, scaled by 1/r^2.

    Uses only measured quantities (y, u) and the known envelope shape
    (gamma, p); the unknown theta never appears. With p = 0 the factor
    (1 + |y|^p) is identically 2 (pow convention |y|**0 == 1).
    """
    vs_inv = 1.0 / varsigma
    return (vs_inv * gamma(u) * (1.0 + abs(y) ** p) + vs_inv) / (r * r)


def omega(m: int, t_m: float, I_theta_at_tm: float, seqs: SwitchingSequences,
          robust: bool) -> float:
    """Threshold for interval m: sigma_bar^m * exp(sigma_bar * I_theta).

    The robust flavour multiplies by (t_m + 1). Computed in log space;
    overflow saturates to +inf (a defined state that disables switching)
    and underflow clamps to a tiny positive floor.
    """
    if I_theta_at_tm < 0.0:
        raise ValueError("accumulated integral must be nonnegative")
    sb = seqs.sigma_bar(m)
    if not sb > 0.0:
        raise ValueError(f"sigma_bar({m}) = {sb} must be positive")
    log_w = m * math.log(sb) + sb * I_theta_at_tm
    if robust:
        log_w += math.log(t_m + 1.0)
    if log_w > _LOG_OVERFLOW:
        return math.inf
    return max(math.exp(log_w), _OMEGA_FLOOR)


def gain_update(prev_r: float, m: int, omega_m: float, seqs: SwitchingSequences,
                n: int, p: float, robust: bool, gain_cap: float = 1e9) -> float:
    """Ratchet the gain: max of the previous gain and the schedule candidate.

    The candidate is sigma_bar(m) * phi_of_omega(omega_m)^(1/(1-n*p)), with
    an extra 2^(1/(1-n*p)) factor in the robust flavour. A saturated
    (infinite) omega or an overflowing power is capped at gain_cap with a
    logged warning; the result is never below prev_r.
    """
    n_p = n * p
    if n_p >= 1.0:
        raise ValueError(f"n*p = {n_p} must be < 1")
    expo = 1.0 / (1.0 - n_p)
    if math.isinf(omega_m):
        candidate = math.inf
    else:
        phi_w = seqs.phi_of_omega(omega_m)
        if not phi_w > 0.0:
            raise ValueError("phi_of_omega must be positive")
        if math.isinf(phi_w):
            candidate = math.inf
        else:
            try:
                candidate = seqs.sigma_bar(m) * phi_w**expo
            except OverflowError:
                candidate = math.inf
            if robust:
                candidate *= 2.0**expo
    if candidate > gain_cap:
        log.warning("gain candidate %.3g at interval %d exceeds cap %.3g; capping",
                    candidate, m, gain_cap)
        candidate = gain_cap
    return max(prev_r, candidate)


def chi(state: SupervisorState, eta, eps1: float, seqs: SwitchingSequences,
        n: int, p: float) -> float:
    """Monitored signal for the current interval.

    chi = sigma_under(m) * (|eta|^2 + eps1^2)
        + phi_of_omega(omega_m) / r^(2 - n*p) * J,
    where J is the windowed integral of (|eta|^2 + eps1^2) since the last
    switch. With omega_m saturated the weight is infinite; the value is
    then +inf (never NaN) and the switching condition stays false upstream.
    """
    quad = eps1 * eps1
    for e in eta:
        quad += e * e
    first = seqs.sigma_under(state.m) * quad
    if math.isinf(state.omega_m):
        return first if state.J == 0.0 else math.inf
    weight = seqs.phi_of_omega(state.omega_m) / state.r ** (2.0 - n * p)
    return first + weight * state.J


def should_switch(chi_val: float, mu_m: float, omega_m: float, robust: bool) -> bool:
    """Switching condition: chi * phi(chi, mu_m) >= threshold.

    The threshold is omega_m (standard) or omega_m + 1 (robust); a saturated
    threshold never fires. Callers must only evaluate this strictly after
    the interval's start time.
    """
    threshold = omega_m + 1.0 if robust else omega_m
    if math.isinf(threshold):
        return False
    if chi_val < 0.0:
        raise ValueError("monitored signal cannot be negative")
    if math.isinf(chi_val):
        return True
    return chi_val * phi(chi_val, mu_m) >= threshold


def apply_switch(state: SupervisorState, t: float, seqs: SwitchingSequences,
                 n: int, p: float, gain_cap: float = 1e9) -> SupervisorState:
    """Advance to the next interval at switching moment t.

    Returns a fresh state with m+1, t_m = t, the threshold recomputed from
    the *current* accumulated I_theta, the gain ratcheted, and J reset.
    """
    m_next = state.m + 1
    omega_next = omega(m_next, t, state.I_theta, seqs, state.robust)
    r_next = gain_update(state.r, m_next, omega_next, seqs, n, p, state.robust, gain_cap)
    return SupervisorState(m=m_next, r=r_next, t_m=t, I_theta=state.I_theta, J=0.0,
                           omega_m=omega_next, robust=state.robust,
                           gain_capped=state.gain_capped or r_next >= gain_cap)


def make_initial_state(seqs: SwitchingSequences, n: int, p: float, robust: bool,
                       gain_cap: float = 1e9) -> SupervisorState:
    """State for the first interval [0, t_2): m = 1, omega_1 = sigma_bar(1)
    (times 1 in the robust flavour) and the gain already ratcheted from r0."""
    omega_1 = omega(1, 0.0, 0.0, seqs, robust)
    r_1 = gain_update(seqs.r0, 1, omega_1, seqs, n, p, robust, gain_cap)
    return SupervisorState(m=1, r=r_1, t_m=0.0, I_theta=0.0, J=0.0,
                           omega_m=omega_1, robust=robust,
                           gain_capped=r_1 >= gain_cap)


# --- registered sequence formulas and growth functions -----------------------

SEQUENCE_FORMULAS = ("linear", "scaled-index", "exp-decay", "piecewise-mu", "constant")


def make_sequence(formula: str, **params) -> Callable[[int], float]:
    """Build an index->value schedule from a registered formula.

    linear: c*m + d; scaled-index: c*m; exp-decay: e^(-m);
    piecewise-mu: 'first' for m = 1 then 'rest'; constant: c.
    """
    def _take(names):
        extra = set(params) - set(names)
        if extra:
            raise ValueError(f"formula '{formula}' got unknown parameters {sorted(extra)}")
        missing = [k for k in names if k not in params]
        if missing:
            raise ValueError(f"formula '{formula}' missing parameters {missing}")
        return [float(params[k]) for k in names]

    if formula == "linear":
        c, d = _take(("c", "d"))
        return lambda m: c * m + d
    if formula == "scaled-index":
        (c,) = _take(("c",))
        return lambda m: c * m
    if formula == "exp-decay":
        _take(())
        return lambda m: math.exp(-m)
    if formula == "piecewise-mu":
        first, rest = _take(("first", "rest"))
        return lambda m: first if m == 1 else rest
    if formula == "constant":
        (c,) = _take(("c",))
        return lambda m: c
    raise ValueError(f"unknown sequence formula '{formula}'; "
                     f"registered: {', '.join(SEQUENCE_FORMULAS)}")


def make_phi_one() -> Callable[[float], float]:
    """The trivial growth function, constant 1."""
    return lambda w: 1.0


def make_phi_derived(gamma: Callable[[float], float], p: float, b_max: float,
                     lambda_min: float, varsigma: float = 1.0 / 2.8
                     ) -> Callable[[float], float]:
    """Growth function built from a Lyapunov certificate scale.

    phi(w) = vs^-1 * gamma(b_max * sqrt(3) * lambda_min^-0.5 * sqrt(w))
                  * (1 + c3 * w^(p/2)) + vs^-1,
    with c3 = 2^(p/2) * lambda_min^(-p/2). Overflow inside gamma or the
    power saturates to +inf, which downstream logic treats as a disabled
    switching condition.
    """
    if not lambda_min > 0.0:
        raise ValueError("lambda_min must be positive")
    c3 = 2.0 ** (p / 2.0) * lambda_min ** (-p / 2.0)
    coef = b_max * math.sqrt(3.0) / math.sqrt(lambda_min)
    vs_inv = 1.0 / varsigma

    def phi_w(w: float) -> float:
        if w < 0.0:
            raise ValueError("growth function defined for w >= 0")
        if math.isinf(w):
            return math.inf
        try:
            g = gamma(coef * math.sqrt(w))
            return vs_inv * g * (1.0 + c3 * w ** (p / 2.0)) + vs_inv
        except OverflowError:
            return math.inf

    return phi_w
