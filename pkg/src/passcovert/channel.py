"""Line-of-sight propagation and effective per-waveguide channels."""

from __future__ import annotations

import numpy as np

from .constants import PhysConstants
from .geometry import BeamVector, PinchLayout, as_vec3


def los_coeff(p, r, pc: PhysConstants) -> complex:
    """Spherical-wave LoS coefficient sqrt(eta) * exp(-j k_c d) / d between two points."""
    p = as_vec3(p)
    r = as_vec3(r)
    d = float(np.linalg.norm(r - p))
    if d == 0.0:
        raise ValueError("transmit and receive points coincide")
    return complex(np.sqrt(pc.eta) * np.exp(-1j * pc.k_c * d) / d)


def inwg_phase(x: float, pc: PhysConstants) -> complex:
    """Unit phasor accumulated over x meters of guided propagation from the feed."""
    return complex(np.exp(-1j * pc.k_g * float(x)))


def inwg_vector(x_pa, pc: PhysConstants) -> np.ndarray:
    """Equal-power in-waveguide channel for the antennas at positions ``x_pa``."""
    x = np.asarray(x_pa, dtype=float).reshape(-1)
    if x.size == 0:
        raise ValueError("waveguide carries no pinch antennas")
    return np.exp(-1j * pc.k_g * x) / np.sqrt(x.size)


def freespace_vector(x_pa, wg_y: float, r, geom, pc: PhysConstants) -> np.ndarray:
    """Per-antenna LoS coefficients from one waveguide's antennas to receiver ``r``."""
    r = as_vec3(r)
    x = np.asarray(x_pa, dtype=float).reshape(-1)
    dist = np.sqrt((r[0] - x) ** 2 + (r[1] - wg_y) ** 2 + (r[2] - geom.height) ** 2)
    return np.sqrt(pc.eta) * np.exp(-1j * pc.k_c * dist) / dist


def _effective_batch(pa_x: np.ndarray, wg_y: np.ndarray, height: float,
                     receivers: np.ndarray, pc: PhysConstants) -> np.ndarray:
    """Effective channels h^H(X) G(X) for a batch of layouts and receivers.

    pa_x: (..., N, M) antenna x coordinates; receivers: (K, 3).
    Returns (..., K, N) where entry n is sum_m conj(h_nm) * g_m, so the received
    amplitude is the plain dot product with the weight vector.
    """
    px = pa_x[..., None, :, :]  # (..., 1, N, M)
    dx = receivers[:, 0][:, None, None] - px
    dy = receivers[:, 1][:, None, None] - wg_y[None, :, None]
    dz = receivers[:, 2][:, None, None] - height
    dist = np.sqrt(dx * dx + dy * dy + dz * dz)
    m = pa_x.shape[-1]
    phase = pc.k_c * dist - pc.k_g * px
    return np.sqrt(pc.eta / m) * np.sum(np.exp(1j * phase) / dist, axis=-1)


def effective_channel_at(layout: PinchLayout, receivers, pc: PhysConstants) -> np.ndarray:
    """Effective N-vector channels for several receivers, shape (K, N)."""
    rcv = np.atleast_2d(np.asarray(receivers, dtype=float))
    if rcv.shape[1] != 3:
        raise ValueError(f"receivers must be (K, 3), got {rcv.shape}")
    return _effective_batch(layout.pa_x(), layout.geom.wg_y_array, layout.geom.height, rcv, pc)


def effective_channel(layout: PinchLayout, r, pc: PhysConstants) -> np.ndarray:
    """Effective N-vector channel so that received amplitude = channel . weights."""
    return effective_channel_at(layout, as_vec3(r)[None, :], pc)[0]


def beam_gain(layout: PinchLayout, weights, receivers, pc: PhysConstants) -> np.ndarray:
    """Received power |channel . w|^2 at each receiver, shape (K,)."""
    eff = effective_channel_at(layout, receivers, pc)
    amp = eff @ np.asarray(weights, dtype=complex)
    return np.abs(amp) ** 2


def snr_bob(layout: PinchLayout, beam: BeamVector, r_b, sigma_b_sq: float,
            pc: PhysConstants) -> float:
    """Receive SNR at Bob for the given layout and beamformer."""
    if sigma_b_sq <= 0.0:
        raise ValueError("noise power at Bob must be positive")
    gain = beam_gain(layout, beam.weights, as_vec3(r_b)[None, :], pc)[0]
    return float(gain / sigma_b_sq)


def beam_pattern_grid(layout: PinchLayout, beam: BeamVector, xs, ys, pc: PhysConstants,
                      normalize: bool = False) -> np.ndarray:
    """Received power over a ground-plane grid, shape (len(xs), len(ys)).

    With ``normalize`` the grid is divided by its maximum, so the peak is 1.
    """
    xs = np.asarray(xs, dtype=float).reshape(-1)
    ys = np.asarray(ys, dtype=float).reshape(-1)
    if xs.size == 0 or ys.size == 0:
        raise ValueError("beam pattern grid must contain at least one cell")
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    cells = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(gx.size)])
    gains = beam_gain(layout, beam.weights, cells, pc).reshape(xs.size, ys.size)
    if normalize:
        peak = gains.max()
        if peak > 0.0:
            gains = gains / peak
    return gains
