"""Slice classes, per-resource performance functions, and system utilities.

Two slice classes are supported. Broadband ("embb") flows score each resource
with a smooth concave cubic, so partially met demands still earn partial
credit. Low-latency ("urllc") flows score each resource with a unit step, so
a single unmet requirement zeroes the whole flow.

Every demand/assignment in the package is a 4-vector ordered as
(throughput bps, compute bps, memory bits, delay s); the module-level index
constants ETA/COMPUTE/MEMORY/DELAY fix that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EMBB = "embb"
URLLC = "urllc"
SLICE_TAGS = (EMBB, URLLC)

ETA, COMPUTE, MEMORY, DELAY = 0, 1, 2, 3
RESOURCES = ("eta", "compute", "memory", "delay")

DEFAULT_ALPHA = (0.25, 0.25, 0.25, 0.25)
DEFAULT_BETA = (1.5, 0.0, -0.5)

_ALPHA_TOL = 1e-12


@dataclass(frozen=True)
class SliceClass:
    """Per-class scoring shape: weights and cubic coefficients for embb.

    ``alpha`` orders the weights as (eta, compute, memory, delay); it must be
    nonnegative and sum to 1. ``beta`` are the cubic coefficients; they must
    give a monotone increasing, concave score on [0, 1] with value 1 at 1.
    Both are ignored for urllc, whose step score has no parameters.
    """

    tag: str
    alpha: tuple[float, float, float, float] = DEFAULT_ALPHA
    beta: tuple[float, float, float] = DEFAULT_BETA

    def __post_init__(self) -> None:
        if self.tag not in SLICE_TAGS:
            raise ValueError(f"unknown slice tag {self.tag!r}")
        if self.tag == EMBB:
            _validate_alpha(self.alpha)
            _validate_beta(self.beta)


def _validate_alpha(alpha: tuple[float, ...]) -> None:
    if len(alpha) != 4:
        raise ValueError("alpha must have 4 entries (eta, compute, memory, delay)")
    if any(a < 0 for a in alpha):
        raise ValueError(f"alpha weights must be nonnegative, got {alpha}")
    if abs(sum(alpha) - 1.0) > _ALPHA_TOL:
        raise ValueError(f"alpha weights must sum to 1, got {alpha}")


def _validate_beta(beta: tuple[float, float, float]) -> None:
    b1, b2, b3 = beta
    if abs((b1 + b2 + b3) - 1.0) > _ALPHA_TOL:
        raise ValueError(f"beta must satisfy b1+b2+b3 = 1 (continuity at 1), got {beta}")
    # Monotone on [0,1]: derivative b1 + 2*b2*x + 3*b3*x^2 >= 0 at the endpoints
    # and at the interior stationary point, if any.
    derivative = [b1, b1 + 2.0 * b2 + 3.0 * b3]
    if b3 != 0.0:
        x_star = -b2 / (3.0 * b3)
        if 0.0 < x_star < 1.0:
            derivative.append(b1 + 2.0 * b2 * x_star + 3.0 * b3 * x_star**2)
    if min(derivative) < -_ALPHA_TOL:
        raise ValueError(f"beta {beta} is not monotone increasing on [0,1]")
    # Concave on [0,1]: second derivative 2*b2 + 6*b3*x <= 0 at both endpoints.
    if max(2.0 * b2, 2.0 * b2 + 6.0 * b3) > _ALPHA_TOL:
        raise ValueError(f"beta {beta} is not concave on [0,1]")


@dataclass(frozen=True)
class DemandVector:
    """Per-slot requirement of a flow; all fields strictly positive."""

    eta: float
    compute: float
    memory: float
    delay: float

    def __post_init__(self) -> None:
        for name, value in zip(RESOURCES, self.as_array()):
            if not value > 0:
                raise ValueError(f"demand {name} must be > 0, got {value}")

    def as_array(self) -> np.ndarray:
        return np.array([self.eta, self.compute, self.memory, self.delay], dtype=float)


@dataclass(frozen=True)
class AssignedVector:
    """Resources actually granted to a flow; delay may be the +inf sentinel."""

    eta: float
    compute: float
    memory: float
    delay: float

    def __post_init__(self) -> None:
        for name, value in zip(RESOURCES, self.as_array()):
            if not value >= 0:
                raise ValueError(f"assignment {name} must be >= 0, got {value}")

    def as_array(self) -> np.ndarray:
        return np.array([self.eta, self.compute, self.memory, self.delay], dtype=float)


def f_embb(x, beta: tuple[float, float, float] = DEFAULT_BETA):
    """Concave cubic score: b1*x + b2*x^2 + b3*x^3 on [0,1), saturating at 1.

    Accepts scalars or arrays; rejects negative fulfillment ratios.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("fulfillment ratio must be nonnegative")
    b1, b2, b3 = beta
    clipped = np.minimum(arr, 1.0)
    cubic = b1 * clipped + b2 * clipped**2 + b3 * clipped**3
    out = np.where(arr >= 1.0, 1.0, cubic)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def f_urllc(x):
    """Step score: 0 below full fulfillment, 1 at or above it."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("fulfillment ratio must be nonnegative")
    out = np.where(arr >= 1.0, 1.0, 0.0)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def resource_score(slice_class: SliceClass, x):
    """Score one fulfillment ratio with the class's shape (cubic or step)."""
    if slice_class.tag == EMBB:
        return f_embb(x, slice_class.beta)
    return f_urllc(x)


def delay_ratio(demanded_delay: float, assigned_delay: float) -> float:
    """Fulfillment ratio for delay: demanded/assigned, oriented so bigger is better.

    An infinite assigned delay (nothing serviced yet) gives ratio 0; a zero
    assigned delay is treated as perfect service (ratio +inf, score 1).
    """
    if math.isinf(assigned_delay):
        return 0.0
    if assigned_delay <= 0.0:
        return math.inf
    return demanded_delay / assigned_delay


def _ratios(demand: np.ndarray, assigned: np.ndarray) -> np.ndarray:
    """Fulfillment ratios per resource: assigned/demand, delay inverted."""
    out = np.empty(4)
    for i in (ETA, COMPUTE, MEMORY):
        out[i] = assigned[i] / demand[i]
    out[DELAY] = delay_ratio(demand[DELAY], assigned[DELAY])
    return out


def _coerce4(vec) -> np.ndarray:
    if isinstance(vec, (DemandVector, AssignedVector)):
        return vec.as_array()
    arr = np.asarray(vec, dtype=float)
    if arr.shape != (4,):
        raise ValueError(f"expected a 4-vector, got shape {arr.shape}")
    return arr


def flow_performance(slice_class: SliceClass, demand, assigned) -> float:
    """Overall SLA fulfillment of one flow in [0, 1].

    embb: weighted sum of the four per-resource cubic scores.
    urllc: product of the four step scores (any miss zeroes the flow).
    """
    d = _coerce4(demand)
    a = _coerce4(assigned)
    ratios = _ratios(d, a)
    if slice_class.tag == EMBB:
        scores = f_embb(ratios, slice_class.beta)
        return float(np.dot(np.asarray(slice_class.alpha), scores))
    scores = f_urllc(ratios)
    return float(np.prod(scores))


def _split_by_tag(flows):
    scores = {EMBB: [], URLLC: []}
    for slice_class, demand, assigned in flows:
        scores[slice_class.tag].append(flow_performance(slice_class, demand, assigned))
    return scores


def _combine(per_tag: dict[str, list[float]]) -> tuple[float, float | None, float | None]:
    n_e, n_u = len(per_tag[EMBB]), len(per_tag[URLLC])
    total = n_e + n_u
    omega_e = float(np.mean(per_tag[EMBB])) if n_e else None
    omega_u = float(np.mean(per_tag[URLLC])) if n_u else None
    omega = ((omega_e or 0.0) * n_e + (omega_u or 0.0) * n_u) / total
    return omega, omega_e, omega_u


def system_utility(flows) -> tuple[float, float | None, float | None]:
    """Flow-count-weighted mean performance: (overall, embb, urllc).

    ``flows`` is a sequence of (SliceClass, demand, assigned) triples. A class
    with no flows contributes zero weight and reports None.
    """
    flows = list(flows)
    if not flows:
        raise ValueError("system utility is undefined for an empty flow set")
    return _combine(_split_by_tag(flows))


def resource_utility(flows, resource: str) -> tuple[float, float | None, float | None]:
    """Utility restricted to one resource: (overall, embb, urllc).

    Delay uses the demanded/assigned ratio, the other resources use
    assigned/demanded, so every ratio grows with fulfillment.
    """
    flows = list(flows)
    if not flows:
        raise ValueError("resource utility is undefined for an empty flow set")
    if resource not in RESOURCES:
        raise ValueError(f"unknown resource {resource!r}")
    idx = RESOURCES.index(resource)
    per_tag: dict[str, list[float]] = {EMBB: [], URLLC: []}
    for slice_class, demand, assigned in flows:
        d = _coerce4(demand)
        a = _coerce4(assigned)
        ratio = _ratios(d, a)[idx]
        per_tag[slice_class.tag].append(float(resource_score(slice_class, ratio)))
    return _combine(per_tag)
