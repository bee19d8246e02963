"""Competing gain strategies for head-to-head comparison runs.

Four published alternatives to the switching gain, each wired to the same
observer and feedback law so comparisons isolate the gain strategy:

  case1  static gain r = 80
  case2  bounded time-varying gain, r' = max(80 - r, 0) / (1.4 r), r(0) = 1
  case3  unbounded time-varying gain r(t) = ln(t + 6)
  case4  dynamic gain driven by the innovation and estimate energies

A GainLaw bundles whichever of {closed-form value, ODE right-hand side,
switching schedule} a strategy needs; the engine dispatches on `kind`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .supervisor import SwitchingSequences

__all__ = [
    "GainLaw",
    "static_gain",
    "bounded_tv_gain_deriv",
    "unbounded_tv_gain",
    "dynamic_gain_deriv",
    "make_case_law",
    "make_lbs_law",
    "BASELINE_CASES",
]


def static_gain(t: float = 0.0) -> float:
    """Constant gain r = 80 for all times."""
    return 80.0


def bounded_tv_gain_deriv(r: float) -> float:
    """r' = max(80 - r, 0) / (1.4 r): nondecreasing, saturating at 80."""
    if r < 1.0:
        raise ValueError("gain must satisfy r >= 1")
    return max(80.0 - r, 0.0) / (1.4 * r)


def unbounded_tv_gain(t: float) -> float:
    """r(t) = ln(t + 6), monotone and unbounded in t."""
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    return math.log(t + 6.0)


def dynamic_gain_deriv(r: float, x1: float, xhat) -> float:
    """Innovation/estimate-energy gain: r' = (x1 - xhat1)^2 / r^7
    + xhat1^2 / r^7 + xhat2^2 / r^5 + xhat3^2 / r^3 (three-state form)."""
    if r < 1.0:
        raise ValueError("gain must satisfy r >= 1")
    innov = x1 - xhat[0]
    return (innov * innov / r**7 + xhat[0] ** 2 / r**7
            + xhat[1] ** 2 / r**5 + xhat[2] ** 2 / r**3)


@dataclass(frozen=True)
class GainLaw:
    """A gain strategy the engine can run.

    kind: one of static | bounded-tv | unbounded-tv | dynamic | lbs.
    Exactly one of value(t), deriv(r, x1, xhat), or (seqs, robust) is
    populated, matching the kind.
    """

    kind: str
    r_init: float = 1.0
    value: Optional[Callable[[float], float]] = None
    deriv: Optional[Callable] = None
    seqs: Optional[SwitchingSequences] = None
    robust: bool = False

    def __post_init__(self):
        kinds = ("static", "bounded-tv", "unbounded-tv", "dynamic", "lbs")
        if self.kind not in kinds:
            raise ValueError(f"unknown gain law kind '{self.kind}'")
        if self.r_init < 1.0:
            raise ValueError("initial gain must be >= 1")
        if self.kind == "lbs" and self.seqs is None:
            raise ValueError("switching law needs its sequences")


BASELINE_CASES = ("case1", "case2", "case3", "case4")


def make_case_law(case: str) -> GainLaw:
    """Instantiate one of the four baseline strategies by case name."""
    if case == "case1":
        return GainLaw(kind="static", r_init=80.0, value=static_gain)
    if case == "case2":
        return GainLaw(kind="bounded-tv", r_init=1.0,
                       deriv=lambda r, x1, xhat: bounded_tv_gain_deriv(r))
    if case == "case3":
        return GainLaw(kind="unbounded-tv", r_init=unbounded_tv_gain(0.0),
                       value=unbounded_tv_gain)
    if case == "case4":
        return GainLaw(kind="dynamic", r_init=1.0, deriv=dynamic_gain_deriv)
    raise ValueError(f"unknown baseline case '{case}'; choose from {BASELINE_CASES}")


def make_lbs_law(seqs: SwitchingSequences, robust: bool = False) -> GainLaw:
    """Wrap a switching schedule as a GainLaw for the engine."""
    return GainLaw(kind="lbs", r_init=seqs.r0, seqs=seqs, robust=robust)
