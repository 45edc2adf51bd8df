"""Experiment configuration: flat key-value file, defaults, scenario builders.

All dB/dBm inputs are converted to linear watts on access; solvers only ever
see linear units.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from .constants import PhysConstants, dbm_to_watts, db_to_linear, derive_constants
from .detection import CovertnessSpec, NoiseUncertainty, WillieUncertainty
from .geometry import PassGeometry
from .mwmp import PsoParams
from .scenario import Scenario


@dataclass(frozen=True)
class ExperimentConfig:
    # propagation
    carrier_freq_hz: float = 28e9
    n_eff: float = 1.4
    # PASS layout
    height_m: float = 3.0
    waveguide_length_m: float = 25.0
    num_waveguides: int = 4
    pas_per_waveguide: int = 3
    pa_spacing_m: float | None = None  # default: half a carrier wavelength
    pa_min_spacing_m: float | None = None  # default: pa_spacing_m
    wg_spacing_m: float = 3.0
    # power and noise
    p_max_dbm: float = 30.0
    sigma_b_dbm: float = -100.0
    sigma_w_dbm: float = -70.0
    delta_sigma_db: float = 2.0
    # covertness and uncertainty
    rho_w: float = 0.1
    delta_r_m: float = 0.5
    willie_samples_k: int = 1
    # fixed illustration layout
    bob_x_m: float = 20.0
    bob_y_m: float = 6.0
    willie_x_m: float = 7.0
    willie_y_m: float = -9.0
    # solver knobs
    delta_p_watts: float | None = None  # default: p_max / 1e5
    pso_pop_bs: int = 30
    pso_pop_ps: int = 30
    pso_inertia_bs: float = 0.8
    pso_inertia_ps: float = 0.8
    pso_cognitive_bs: float = 2.0
    pso_social_bs: float = 2.0
    pso_cognitive_ps: float = 2.0
    pso_social_ps: float = 2.0
    pso_iterations: int = 100
    pso_vmax: float = 0.3
    # harness
    trials: int = 200
    converge_inits: int = 200
    converge_delta_p_watts: float | None = None  # default: p_max / 5000
    pattern_res_m: float = 0.25
    pattern_y_halfwidth_m: float = 12.0
    seed: int = 20250801

    # ---- derived linear quantities ----

    @property
    def p_max_watts(self) -> float:
        return dbm_to_watts(self.p_max_dbm)

    @property
    def sigma_b_sq_watts(self) -> float:
        return dbm_to_watts(self.sigma_b_dbm)

    @property
    def sigma_w_sq_watts(self) -> float:
        return dbm_to_watts(self.sigma_w_dbm)

    @property
    def delta_sigma(self) -> float:
        return db_to_linear(self.delta_sigma_db)

    def phys_constants(self) -> PhysConstants:
        return derive_constants(self.carrier_freq_hz, self.n_eff)

    def pa_spacing(self) -> float:
        if self.pa_spacing_m is not None:
            return self.pa_spacing_m
        return self.phys_constants().wavelength / 2.0

    def delta_p(self) -> float:
        return self.delta_p_watts if self.delta_p_watts is not None else self.p_max_watts / 1e5

    def converge_delta_p(self) -> float:
        if self.converge_delta_p_watts is not None:
            return self.converge_delta_p_watts
        return self.p_max_watts / 5000.0

    # ---- builders ----

    def geometry_mwmp(self) -> PassGeometry:
        spacing = self.pa_spacing()
        min_spacing = self.pa_min_spacing_m if self.pa_min_spacing_m is not None else spacing
        n = self.num_waveguides
        wg_y = tuple((i + 1 - (n + 1) / 2.0) * self.wg_spacing_m for i in range(n))
        return PassGeometry(self.height_m, self.waveguide_length_m, n,
                            self.pas_per_waveguide, wg_y, spacing, min_spacing)

    def geometry_swsp(self) -> PassGeometry:
        return PassGeometry.single_waveguide(self.height_m, self.waveguide_length_m,
                                             self.pa_spacing())

    def noise_uncertainty(self) -> NoiseUncertainty:
        return NoiseUncertainty(self.sigma_w_sq_watts, self.delta_sigma)

    def scenario(self, kind: str = "mwmp", r_b=None, willie_center=None) -> Scenario:
        """Single fixed-layout scenario; positions default to the config keys."""
        if kind == "mwmp":
            geom = self.geometry_mwmp()
        elif kind == "swsp":
            geom = self.geometry_swsp()
        else:
            raise ValueError(f"unknown scenario kind {kind!r}; valid kinds: swsp, mwmp")
        r_b = np.array([self.bob_x_m, self.bob_y_m, 0.0]) if r_b is None else r_b
        center = (np.array([self.willie_x_m, self.willie_y_m, 0.0])
                  if willie_center is None else willie_center)
        return Scenario(
            r_b=r_b,
            willie=WillieUncertainty(center, self.delta_r_m),
            noise_w=self.noise_uncertainty(),
            covertness=CovertnessSpec(self.rho_w),
            sigma_b_sq=self.sigma_b_sq_watts,
            p_max=self.p_max_watts,
            geom=geom,
            pc=self.phys_constants(),
        )

    def pso_params(self, seed: int | None = None) -> PsoParams:
        return PsoParams(
            n_bs=self.pso_pop_bs,
            n_ps=self.pso_pop_ps,
            inertia_bs=self.pso_inertia_bs,
            inertia_ps=self.pso_inertia_ps,
            cognitive_bs=self.pso_cognitive_bs,
            social_bs=self.pso_social_bs,
            cognitive_ps=self.pso_cognitive_ps,
            social_ps=self.pso_social_ps,
            iterations=self.pso_iterations,
            v_max=self.pso_vmax,
            seed=self.seed if seed is None else seed,
        )


_FIELD_TYPES = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
_INT_KEYS = {"num_waveguides", "pas_per_waveguide", "willie_samples_k", "pso_pop_bs",
             "pso_pop_ps", "pso_iterations", "trials", "converge_inits", "seed"}


def config_from_dict(values: dict) -> ExperimentConfig:
    """Build a config from a flat key-value mapping; unknown keys are an error."""
    unknown = sorted(set(values) - set(_FIELD_TYPES))
    if unknown:
        valid = ", ".join(sorted(_FIELD_TYPES))
        raise ValueError(f"unknown config keys {unknown}; valid keys: {valid}")
    coerced = {}
    for key, raw in values.items():
        if raw is None:
            coerced[key] = None
        elif key in _INT_KEYS:
            coerced[key] = int(raw)
        else:
            coerced[key] = float(raw)
    return ExperimentConfig(**coerced)


def load_config(path) -> ExperimentConfig:
    """Read a flat JSON object of config keys (missing keys keep their defaults)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            values = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(values, dict):
        raise ValueError(f"config file {path} must hold a flat JSON object")
    return config_from_dict(values)
