"""Carrier-derived constants and power-unit helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 2.998e8  # m/s


@dataclass(frozen=True)
class PhysConstants:
    """Free-space/in-waveguide wavelengths, wavenumbers and the path-gain constant."""

    carrier_freq: float  # Hz
    n_eff: float  # effective refractive index of the dielectric waveguide
    wavelength: float  # m
    guided_wavelength: float  # m
    k_c: float  # rad/m, free-space wavenumber
    k_g: float  # rad/m, in-waveguide wavenumber
    eta: float  # m^2, wavelength**2 / (16 pi^2)


def derive_constants(carrier_freq: float, n_eff: float = 1.4) -> PhysConstants:
    """Build :class:`PhysConstants` from carrier frequency and refractive index."""
    if carrier_freq <= 0.0:
        raise ValueError(f"carrier frequency must be positive, got {carrier_freq}")
    if n_eff < 1.0:
        raise ValueError(f"effective refractive index must be >= 1, got {n_eff}")
    wavelength = SPEED_OF_LIGHT / carrier_freq
    guided_wavelength = wavelength / n_eff
    k_c = 2.0 * math.pi / wavelength
    k_g = 2.0 * math.pi / guided_wavelength
    eta = wavelength**2 / (16.0 * math.pi**2)
    return PhysConstants(carrier_freq, n_eff, wavelength, guided_wavelength, k_c, k_g, eta)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


def watts_to_dbm(watts: float) -> float:
    if watts <= 0.0:
        raise ValueError("cannot express non-positive power in dBm")
    return 10.0 * math.log10(watts * 1e3)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)
