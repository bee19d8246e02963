"""Feedforward plant definitions and growth-envelope checking.

A plant is an integrator chain x_i' = x_{i+1} + f_i + w_i (x_n' = u + w_n)
whose nonlinearities f_i are bounded by a known-shape growth envelope
|f_i| <= theta * gamma(u) * (1 + |y|^p) * (sum_{j>=i+2} |x_j| + |u|)
with theta unknown to the controller. Plants are plain closures over fixed
parameters; theta never leaves this module's plant objects, which the
controller and supervisor are never handed directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

__all__ = [
    "GrowthEnvelope",
    "Plant",
    "EnvelopeReport",
    "DisturbanceBoundWitness",
    "make_example1_plant",
    "make_example2_plant",
    "make_chain_plant",
    "circuit_to_feedforward",
    "circuit_input_from_control",
    "circuit_control_from_input",
    "envelope_check",
    "disturbance_witness",
]


@dataclass(frozen=True)
class GrowthEnvelope:
    """Envelope triple (p, theta, gamma) bounding the chain nonlinearities.

    Note the p = 0 convention: |y|**0 evaluates to 1 for every y (including
    y = 0, following float pow semantics), so the factor (1 + |y|^p) is the
    constant 2 in that case.
    """

    p: float
    theta: float
    gamma: Callable[[float], float]

    def __post_init__(self):
        if not 0.0 <= self.p:
            raise ValueError("output power p must be nonnegative")
        if self.theta < 0.0:
            raise ValueError("theta must be nonnegative")


@dataclass(frozen=True)
class Plant:
    """Feedforward chain with additive nonlinearities and disturbances.

    ``nonlinearity(t, x, u)`` returns (f_1, ..., f_{n-1}, 0); the last
    component is structurally zero. ``disturbance(t)`` returns the additive
    signals (w_1, ..., w_n). ``disturbance_bound`` is a closed-form witness
    for sup_t (|w_i| + integral of w_i^2), zero for undisturbed plants.
    """

    n: int
    name: str
    nonlinearity: Callable
    disturbance: Callable
    envelope: GrowthEnvelope
    disturbance_bound: float = 0.0

    def drift(self, t: float, x, u: float):
        """Full state derivative: chain shift + nonlinearity + disturbance."""
        f = self.nonlinearity(t, x, u)
        w = self.disturbance(t)
        out = [x[i + 1] + f[i] + w[i] for i in range(self.n - 1)]
        out.append(u + f[self.n - 1] + w[self.n - 1])
        return out


def make_example1_plant(theta: float = 0.2) -> Plant:
    """Three-state disturbed chain with input-output-dependent growth rate.

    f_1 couples exp(u), a log of the output, a bounded trigonometric ratio
    of the upper states, and an arctan-damped input term; f_2 is the same
    log-exp factor times u. Disturbances decay as exp(-t), 2/sqrt(1+t^2)
    and exp(-2t). The envelope is (p=1/4, gamma=exp, theta).
    """
    if theta < 0.0:
        raise ValueError("theta must be nonnegative")

    def nonlinearity(t, x, u):
        rate = theta * math.exp(u) * math.log(2.0 + abs(x[0]) ** 0.25)
        # exp(x3^2) sits in a denominator; past the overflow threshold the
        # ratio is an exact float zero rather than an OverflowError
        sq = x[2] * x[2]
        den = (1.0 - 0.1 * x[0]) ** 2 + (math.exp(sq) if sq < 709.0 else math.inf)
        f1 = rate * (x[2] * math.sin(x[1]) / den
                     + u / (1.0 + math.atan(x[0] * x[0])))
        return (f1, rate * u, 0.0)

    def disturbance(t):
        return (math.exp(-t), 2.0 / math.sqrt(1.0 + t * t), math.exp(-2.0 * t))

    # sup_t(|w_i| + int w_i^2) <= max(1 + 1/2, 2 + 2*pi, 1 + 1/4) componentwise
    bound = 2.0 + 2.0 * math.pi
    return Plant(n=3, name="example1", nonlinearity=nonlinearity,
                 disturbance=disturbance,
                 envelope=GrowthEnvelope(p=0.25, theta=theta, gamma=math.exp),
                 disturbance_bound=bound)


def make_example2_plant(theta_r: float = 0.1) -> Plant:
    """Feedforward form of the resonant-circuit benchmark.

    In transformed coordinates the dynamics are linear: x1' = x2 + 2*theta_r*x3,
    x2' = x3, x3' = u, with no disturbances. Envelope (p=0, gamma=1, 2*theta_r).
    """
    if theta_r < 0.0:
        raise ValueError("theta_r must be nonnegative")

    def nonlinearity(t, x, u):
        return (2.0 * theta_r * x[2], 0.0, 0.0)

    def disturbance(t):
        return (0.0, 0.0, 0.0)

    return Plant(n=3, name="example2", nonlinearity=nonlinearity,
                 disturbance=disturbance,
                 envelope=GrowthEnvelope(p=0.0, theta=2.0 * theta_r, gamma=lambda u: 1.0))


def make_chain_plant(n: int, p: float = 0.0) -> Plant:
    """Bare integrator chain: zero nonlinearity and zero disturbance."""
    if n < 1:
        raise ValueError("need at least one state")
    zeros = (0.0,) * n

    def nonlinearity(t, x, u):
        return zeros

    def disturbance(t):
        return zeros

    return Plant(n=n, name="chain", nonlinearity=nonlinearity, disturbance=disturbance,
                 envelope=GrowthEnvelope(p=p, theta=0.0, gamma=lambda u: 1.0))


def circuit_to_feedforward(i_l1: float, v_c: float, i_l2: float):
    """Map physical circuit coordinates to the feedforward chain coordinates.

    Fixed parameters: both inductances and the load resistance are 1, the
    capacitance is 2. The map is x = (i_l1, -v_c, -(i_l2 - sin(v_c)/2)/2).
    """
    return (i_l1, -v_c, -0.5 * (i_l2 - 0.5 * math.sin(v_c)))


def circuit_input_from_control(u: float, v_c: float, i_l2: float) -> float:
    """Recover the physical control voltage from the chain-coordinate input."""
    return i_l2 + (0.25 * i_l2 - 0.125 * math.sin(v_c)) * math.cos(v_c) - 2.0 * u


def circuit_control_from_input(v: float, v_c: float, i_l2: float) -> float:
    """Chain-coordinate input produced by a physical control voltage."""
    return 0.5 * i_l2 - 0.5 * v + (0.125 * i_l2 - 0.0625 * math.sin(v_c)) * math.cos(v_c)


@dataclass(frozen=True)
class EnvelopeReport:
    """Outcome of a sampled envelope check; falsy when a violation exists."""

    ok: bool
    violation: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def envelope_check(plant: Plant, samples) -> EnvelopeReport:
    """Check |f_i| against the growth envelope on the given (t, x, u) samples.

    The envelope sum starts two indices above i (x_{n+1} reads as 0), which
    is what makes the structure feedforward; a plant whose f_i touches
    x_{i+1} fails here. Returns the first violating sample, if any, as
    (t, x, u, i, |f_i|, bound).
    """
    env = plant.envelope
    slack = 1e-9
    for t, x, u in samples:
        f = plant.nonlinearity(t, x, u)
        common = env.theta * env.gamma(u) * (1.0 + abs(x[0]) ** env.p)
        for i in range(plant.n):
            tail = sum(abs(x[j]) for j in range(i + 2, plant.n))
            bound = common * (tail + abs(u))
            if abs(f[i]) > bound * (1.0 + slack) + slack:
                return EnvelopeReport(ok=False, violation=(t, tuple(x), u, i + 1, abs(f[i]), bound))
    return EnvelopeReport(ok=True)


@dataclass(frozen=True)
class DisturbanceBoundWitness:
    """Running check of sup_t (|w_i(t)| + integral_0^t w_i^2) <= omega_star."""

    omega_star: float
    running_sup: float

    @property
    def holds(self) -> bool:
        return self.running_sup <= self.omega_star


def disturbance_witness(plant: Plant, t_grid) -> DisturbanceBoundWitness:
    """Evaluate the disturbance-energy witness on a time grid.

    The integral of w_i^2 is accumulated by the trapezoid rule along the
    grid; the witness passes when the running supremum over components and
    times stays below the plant's declared closed-form bound.
    """
    grid = [float(t) for t in t_grid]
    if not grid or any(t < 0 for t in grid) or sorted(grid) != grid:
        raise ValueError("need a nondecreasing grid of nonnegative times")
    n = plant.n
    acc = [0.0] * n
    prev_t = grid[0]
    prev_w = plant.disturbance(prev_t)
    sup = max(abs(w) for w in prev_w)
    for t in grid[1:]:
        w = plant.disturbance(t)
        for i in range(n):
            acc[i] += 0.5 * (prev_w[i] ** 2 + w[i] ** 2) * (t - prev_t)
            sup = max(sup, abs(w[i]) + acc[i])
        prev_t, prev_w = t, w
    return DisturbanceBoundWitness(omega_star=plant.disturbance_bound, running_sup=sup)
