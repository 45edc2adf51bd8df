"""Joint transmit/pinching beamforming via a twin-swarm particle optimizer.

Two swarms alternate: position-seeking (PS) particles move the first-antenna
coordinates (kept in normalized [0, 1] units, scaled to meters only when a
layout is evaluated), while beamforming-seeking (BS) particles move the complex
per-waveguide weights (kept unit-norm). Each swarm is evaluated against the
other swarm's global best.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import _effective_batch, beam_gain
from .constants import PhysConstants
from .detection import worst_case_gain
from .geometry import PinchLayout
from .scenario import Scenario


@dataclass(frozen=True)
class PsoParams:
    n_bs: int = 30
    n_ps: int = 30
    inertia_bs: float = 0.8
    inertia_ps: float = 0.8
    cognitive_bs: float = 2.0
    social_bs: float = 2.0
    cognitive_ps: float = 2.0
    social_ps: float = 2.0
    iterations: int = 100
    v_max: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if self.n_bs < 1 or self.n_ps < 1:
            raise ValueError("both swarms need at least one particle")
        if self.iterations < 1:
            raise ValueError("need at least one iteration")
        if self.v_max <= 0.0:
            raise ValueError("velocity cap must be positive")


@dataclass(eq=False)
class MwmpSolution:
    w_tilde: np.ndarray  # unit-norm complex (N,)
    x_init: np.ndarray  # meters, (N,)
    power: float  # W
    rate: float  # bits/s/Hz
    trace: np.ndarray  # best fitness after each iteration


def clamp_ps(position: np.ndarray) -> np.ndarray:
    """Componentwise clamp of normalized antenna positions to [0, 1]."""
    return np.clip(position, 0.0, 1.0)


def normalize_bs(position: np.ndarray) -> np.ndarray:
    """Scale a beamforming particle back onto the unit sphere."""
    pos = np.asarray(position, dtype=complex)
    norm = np.linalg.norm(pos)
    if norm == 0.0:
        raise ValueError("cannot normalize a zero beamforming particle")
    return pos / norm


def optimal_power(layout: PinchLayout, w_tilde, samples, gamma_w: float,
                  p_max: float, pc: PhysConstants) -> float:
    """Transmit power saturating the sampled gain budget, capped at the budget."""
    g_max = worst_case_gain(layout, w_tilde, samples, pc)
    if g_max == 0.0:
        return float(p_max)
    return float(min(gamma_w / g_max, p_max))


@dataclass(eq=False)
class _EvalContext:
    """Receivers and constants shared by every fitness evaluation of one solve."""

    receivers: np.ndarray  # (1 + S, 3), Bob first
    wg_y: np.ndarray
    height: float
    pa_offsets: np.ndarray  # (M,) spacing steps
    usable_len: float
    sigma_b_sq: float
    gamma_w: float
    p_max: float
    pc: PhysConstants


def _context(sc: Scenario, k: int) -> _EvalContext:
    receivers = np.vstack([sc.r_b[None, :], sc.willie_samples(k)])
    geom = sc.geom
    return _EvalContext(receivers, geom.wg_y_array, geom.height,
                        np.arange(geom.m_pa) * geom.pa_spacing, geom.usable_length,
                        sc.sigma_b_sq, sc.gain_budget(), sc.p_max, sc.pc)


def _rates_from_gains(bob_gain: np.ndarray, willie_max: np.ndarray,
                      ctx: _EvalContext) -> np.ndarray:
    gamma_b = bob_gain / ctx.sigma_b_sq
    with np.errstate(divide="ignore"):
        p_budget = np.where(willie_max > 0.0, ctx.gamma_w / willie_max, np.inf)
    power = np.minimum(p_budget, ctx.p_max)
    return np.log2(1.0 + power * gamma_b)


def _eval_layouts(ps_pos: np.ndarray, w: np.ndarray, ctx: _EvalContext) -> np.ndarray:
    """Fitness of a batch of normalized PS positions under a fixed weight vector."""
    pa_x = ps_pos[:, :, None] * ctx.usable_len + ctx.pa_offsets[None, None, :]
    eff = _effective_batch(pa_x, ctx.wg_y, ctx.height, ctx.receivers, ctx.pc)
    gains = np.abs(eff @ w) ** 2  # (J, 1 + S)
    return _rates_from_gains(gains[:, 0], gains[:, 1:].max(axis=1), ctx)


def _eval_weights(x_norm: np.ndarray, bs_pos: np.ndarray, ctx: _EvalContext) -> np.ndarray:
    """Fitness of a batch of unit weight vectors under a fixed layout."""
    pa_x = x_norm[None, :, None] * ctx.usable_len + ctx.pa_offsets[None, None, :]
    eff = _effective_batch(pa_x, ctx.wg_y, ctx.height, ctx.receivers, ctx.pc)[0]
    gains = np.abs(bs_pos @ eff.T) ** 2  # (I, 1 + S)
    return _rates_from_gains(gains[:, 0], gains[:, 1:].max(axis=1), ctx)


def fitness(p_ps, p_bs, sc: Scenario, k: int = 1) -> float:
    """Covert rate achieved by one (position, weight) particle pair.

    ``p_ps`` holds normalized [0, 1] coordinates and ``p_bs`` must already be
    unit-norm; the power follows the sampled gain budget.
    """
    ctx = _context(sc, k)
    pos = np.asarray(p_ps, dtype=float).reshape(1, -1)
    w = np.asarray(p_bs, dtype=complex).reshape(-1)
    return float(_eval_layouts(pos, w, ctx)[0])


@dataclass(eq=False)
class TwinSwarms:
    """Mutable optimizer state; positions always satisfy their constraints."""

    ps_pos: np.ndarray
    ps_vel: np.ndarray
    ps_best_pos: np.ndarray
    ps_best_score: np.ndarray
    ps_glo_pos: np.ndarray
    ps_glo_score: float
    bs_pos: np.ndarray
    bs_vel: np.ndarray
    bs_best_pos: np.ndarray
    bs_best_score: np.ndarray
    bs_glo_pos: np.ndarray
    bs_glo_score: float
    rng: np.random.Generator


def _random_unit_rows(rng: np.random.Generator, rows: int, n: int) -> np.ndarray:
    raw = rng.standard_normal((rows, n)) + 1j * rng.standard_normal((rows, n))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    zero = norms[:, 0] == 0.0
    while np.any(zero):  # pragma: no cover - measure-zero event
        raw[zero] = rng.standard_normal((int(zero.sum()), n)) + 1j * rng.standard_normal((int(zero.sum()), n))
        norms = np.linalg.norm(raw, axis=1, keepdims=True)
        zero = norms[:, 0] == 0.0
    return raw / norms


def _renormalize_rows(pos: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Unit-normalize each particle; a zero particle is re-randomized."""
    norms = np.linalg.norm(pos, axis=1, keepdims=True)
    zero = norms[:, 0] == 0.0
    if np.any(zero):
        pos = pos.copy()
        pos[zero] = _random_unit_rows(rng, int(zero.sum()), pos.shape[1])
        norms = np.linalg.norm(pos, axis=1, keepdims=True)
    return pos / norms


def init_swarms(n_wg: int, params: PsoParams, rng: np.random.Generator) -> TwinSwarms:
    """Random start: PS uniform on [0,1]^N, BS complex-normal rows normalized,
    zero velocities, best scores at -inf, random global-best positions."""
    ps_pos = rng.random((params.n_ps, n_wg))
    bs_pos = _random_unit_rows(rng, params.n_bs, n_wg)
    ps_glo = rng.random(n_wg)
    bs_glo = _random_unit_rows(rng, 1, n_wg)[0]
    return TwinSwarms(
        ps_pos=ps_pos,
        ps_vel=np.zeros((params.n_ps, n_wg)),
        ps_best_pos=ps_pos.copy(),
        ps_best_score=np.full(params.n_ps, -np.inf),
        ps_glo_pos=ps_glo,
        ps_glo_score=-np.inf,
        bs_pos=bs_pos,
        bs_vel=np.zeros((params.n_bs, n_wg), dtype=complex),
        bs_best_pos=bs_pos.copy(),
        bs_best_score=np.full(params.n_bs, -np.inf),
        bs_glo_pos=bs_glo,
        bs_glo_score=-np.inf,
        rng=rng,
    )


def step(swarms: TwinSwarms, sc_or_ctx, params: PsoParams, k: int = 1) -> tuple[float, float]:
    """One full alternating iteration; returns both swarms' global best scores.

    Random factors are drawn per dimension in a fixed order (PS cognitive, PS
    social, BS cognitive, BS social), so a seeded run is reproducible.
    """
    ctx = sc_or_ctx if isinstance(sc_or_ctx, _EvalContext) else _context(sc_or_ctx, k)
    rng = swarms.rng

    # position half: weights fixed to the BS global best
    w = swarms.bs_glo_pos
    scores = _eval_layouts(swarms.ps_pos, w, ctx)
    improved = scores > swarms.ps_best_score
    swarms.ps_best_score[improved] = scores[improved]
    swarms.ps_best_pos[improved] = swarms.ps_pos[improved]
    best = int(np.argmax(swarms.ps_best_score))
    if swarms.ps_best_score[best] > swarms.ps_glo_score:
        swarms.ps_glo_score = float(swarms.ps_best_score[best])
        swarms.ps_glo_pos = swarms.ps_best_pos[best].copy()
    theta1 = rng.random(swarms.ps_pos.shape)
    theta2 = rng.random(swarms.ps_pos.shape)
    swarms.ps_vel = (params.inertia_ps * swarms.ps_vel
                     + params.cognitive_ps * theta1 * (swarms.ps_best_pos - swarms.ps_pos)
                     + params.social_ps * theta2 * (swarms.ps_glo_pos - swarms.ps_pos))
    np.clip(swarms.ps_vel, -params.v_max, params.v_max, out=swarms.ps_vel)
    swarms.ps_pos = clamp_ps(swarms.ps_pos + swarms.ps_vel)

    # beamforming half: layout fixed to the PS global best
    x_norm = swarms.ps_glo_pos
    scores = _eval_weights(x_norm, swarms.bs_pos, ctx)
    improved = scores > swarms.bs_best_score
    swarms.bs_best_score[improved] = scores[improved]
    swarms.bs_best_pos[improved] = swarms.bs_pos[improved]
    best = int(np.argmax(swarms.bs_best_score))
    if swarms.bs_best_score[best] > swarms.bs_glo_score:
        swarms.bs_glo_score = float(swarms.bs_best_score[best])
        swarms.bs_glo_pos = swarms.bs_best_pos[best].copy()
    theta1 = rng.random(swarms.bs_pos.shape)
    theta2 = rng.random(swarms.bs_pos.shape)
    swarms.bs_vel = (params.inertia_bs * swarms.bs_vel
                     + params.cognitive_bs * theta1 * (swarms.bs_best_pos - swarms.bs_pos)
                     + params.social_bs * theta2 * (swarms.bs_glo_pos - swarms.bs_pos))
    # the cap applies to real and imaginary parts independently
    swarms.bs_vel = (np.clip(swarms.bs_vel.real, -params.v_max, params.v_max)
                     + 1j * np.clip(swarms.bs_vel.imag, -params.v_max, params.v_max))
    swarms.bs_pos = _renormalize_rows(swarms.bs_pos + swarms.bs_vel, rng)

    return swarms.ps_glo_score, swarms.bs_glo_score


def solve(sc: Scenario, params: PsoParams, k: int = 1) -> MwmpSolution:
    """Run the twin-swarm optimizer and evaluate the returned pair."""
    ctx = _context(sc, k)
    rng = np.random.default_rng(params.seed)
    swarms = init_swarms(sc.geom.n_wg, params, rng)
    trace = np.empty(params.iterations)
    best = -np.inf
    for t in range(params.iterations):
        ps_score, bs_score = step(swarms, ctx, params)
        best = max(best, ps_score, bs_score)
        trace[t] = best

    w_tilde = swarms.bs_glo_pos
    x_init = swarms.ps_glo_pos * ctx.usable_len
    layout = PinchLayout(sc.geom, x_init)
    samples = ctx.receivers[1:]
    power = optimal_power(layout, w_tilde, samples, ctx.gamma_w, ctx.p_max, sc.pc)
    gamma_unit = float(beam_gain(layout, w_tilde, sc.r_b[None, :], sc.pc)[0]) / sc.sigma_b_sq
    rate = float(np.log2(1.0 + power * gamma_unit))
    return MwmpSolution(w_tilde.copy(), x_init, power, rate, trace)
