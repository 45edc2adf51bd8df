"""Single-waveguide single-antenna solver: forbidden zone, closed-form position,
and the 1-D transmit-power search."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import Scenario


class CovertnessInfeasibleError(ValueError):
    """Raised when rho_w = 0 leaves no positive transmit power covert."""


@dataclass(frozen=True)
class ForbiddenZone:
    """Interval of antenna positions where covertness can fail somewhere in the
    warden's uncertainty disk. ``interval`` is None when the zone is empty."""

    d_bou: float  # m, minimum 3-D distance guaranteeing covertness
    d_tot: float  # m, ground-projected distance inflated by the position radius
    interval: tuple[float, float] | None
    theta: float | None  # rad

    @property
    def empty(self) -> bool:
        return self.interval is None

    def contains(self, x: float) -> bool:
        if self.interval is None:
            return False
        return self.interval[0] <= x <= self.interval[1]


def _zone_bounds(powers: np.ndarray, sc: Scenario):
    """Vectorized zone geometry for an array of transmit powers.

    Returns (exists, x_lo, x_hi, d_bou, d_tot); x_lo/x_hi are meaningful only
    where ``exists``.
    """
    rho = sc.covertness.rho_w
    if rho <= 0.0:
        if np.any(powers > 0.0):
            raise CovertnessInfeasibleError(
                "rho_w = 0 admits no positive transmit power")
        zeros = np.zeros_like(powers)
        return zeros.astype(bool), zeros, zeros, zeros, np.full_like(powers, sc.willie.radius)
    nu = sc.noise_w
    denom = nu.nominal * (nu.delta ** (2.0 * rho) - 1.0)
    d_bou = np.sqrt(powers * sc.pc.eta * nu.delta / denom)
    h = sc.geom.height
    proj = np.sqrt(np.maximum(d_bou**2 - h**2, 0.0))
    d_tot = proj + sc.willie.radius
    y_w = sc.willie.center[1]
    exists = (d_bou > h) & (np.abs(y_w) < d_tot)
    half = np.sqrt(np.maximum(d_tot**2 - y_w**2, 0.0))
    x_lo = sc.willie.center[0] - half
    x_hi = sc.willie.center[0] + half
    return exists, x_lo, x_hi, d_bou, d_tot


def forbidden_zone(power: float, sc: Scenario) -> ForbiddenZone:
    """Forbidden interval of antenna positions at transmit power ``power``."""
    if power < 0.0:
        raise ValueError("transmit power must be non-negative")
    p = np.asarray([float(power)])
    exists, x_lo, x_hi, d_bou, d_tot = _zone_bounds(p, sc)
    if not exists[0]:
        return ForbiddenZone(float(d_bou[0]), float(d_tot[0]), None, None)
    theta = math.acos(abs(sc.willie.center[1]) / float(d_tot[0]))
    return ForbiddenZone(float(d_bou[0]), float(d_tot[0]),
                         (float(x_lo[0]), float(x_hi[0])), theta)


def _positions_for(powers: np.ndarray, sc: Scenario) -> np.ndarray:
    """Optimal antenna x per power; NaN where the feasible set is empty.

    The feasible set is [0, L] minus the open zone interior: zone boundary
    points satisfy the covertness constraint with equality and stay feasible.
    """
    exists, x_lo, x_hi, _, _ = _zone_bounds(powers, sc)
    length = sc.geom.length
    x_b = sc.r_b[0]
    clamped = np.clip(x_b, 0.0, length)

    blocking = exists & (x_hi > 0.0) & (x_lo < length)
    has_left = blocking & (x_lo >= 0.0)
    has_right = blocking & (x_hi <= length)

    cand_left = np.clip(x_b, 0.0, np.where(has_left, x_lo, np.nan))
    cand_right = np.clip(x_b, np.where(has_right, x_hi, np.nan), length)
    dist_left = np.where(has_left, np.abs(cand_left - x_b), np.inf)
    dist_right = np.where(has_right, np.abs(cand_right - x_b), np.inf)
    # ties break toward the left candidate, i.e. the smaller coordinate
    blocked_choice = np.where(dist_left <= dist_right, cand_left, cand_right)
    blocked_choice = np.where(has_left | has_right, blocked_choice, np.nan)

    return np.where(blocking, blocked_choice, clamped)


def optimal_position(power: float, sc: Scenario) -> float | None:
    """Feasible antenna x closest to Bob at the given power, or None."""
    if power < 0.0:
        raise ValueError("transmit power must be non-negative")
    x = _positions_for(np.asarray([float(power)]), sc)[0]
    return None if math.isnan(x) else float(x)


def achievable_rate(x: float, power: float, sc: Scenario) -> float:
    """Covert rate log2(1 + gamma_b) with the antenna at ``x``."""
    d_sq = (sc.r_b[0] - x) ** 2 + sc.r_b[1] ** 2 + sc.geom.height**2
    return float(np.log2(1.0 + power * sc.pc.eta / (d_sq * sc.sigma_b_sq)))


@dataclass(eq=False)
class SwspSolution:
    p_opt: float  # W
    x_opt: float | None  # m
    rate: float  # bits/s/Hz
    feasible: bool


def _search(sc: Scenario, delta_p: float):
    """Power grid, rates and positions visited by the 1-D search (after the
    early stop at the first infeasible power)."""
    if delta_p <= 0.0:
        raise ValueError("power search resolution must be positive")
    n = int(math.floor(sc.p_max / delta_p + 1e-9))
    if sc.covertness.rho_w <= 0.0 or n == 0:
        return np.empty(0), np.empty(0), np.empty(0)
    powers = delta_p * np.arange(1, n + 1)
    xs = _positions_for(powers, sc)
    feasible = ~np.isnan(xs)
    if not feasible.all():
        # the zone grows monotonically with power, so stop at the first gap
        stop = int(np.argmin(feasible))
        powers, xs = powers[:stop], xs[:stop]
    if powers.size == 0:
        return np.empty(0), np.empty(0), np.empty(0)
    d_sq = (sc.r_b[0] - xs) ** 2 + sc.r_b[1] ** 2 + sc.geom.height**2
    rates = np.log2(1.0 + powers * sc.pc.eta / (d_sq * sc.sigma_b_sq))
    return powers, xs, rates


def solve(sc: Scenario, delta_p: float) -> SwspSolution:
    """1-D linear power search with the closed-form position at each step."""
    powers, xs, rates = _search(sc, delta_p)
    if powers.size == 0:
        return SwspSolution(0.0, None, 0.0, False)
    # the update rule keeps the latest maximizer, i.e. the largest power on ties
    best = int(np.flatnonzero(rates == rates.max())[-1])
    return SwspSolution(float(powers[best]), float(xs[best]), float(rates[best]), True)


def rate_trace(sc: Scenario, delta_p: float) -> np.ndarray:
    """Best-rate-so-far after each power step of the 1-D search."""
    _, _, rates = _search(sc, delta_p)
    if rates.size == 0:
        return np.zeros(1)
    return np.maximum.accumulate(rates)
