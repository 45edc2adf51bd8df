"""Reference schemes: array channels, weight policies, and power control."""

import numpy as np
import pytest

from passcovert import (BeamVector, CovertnessSpec, ExperimentConfig, NoiseUncertainty,
                        PassGeometry, Scenario, WillieUncertainty, los_coeff,
                        willie_gain)
from passcovert.benchmarks import (BenchmarkKind, DegenerateChannelError, evaluate,
                                   heuristic_pass_layout, mrt_weights, ula_channel,
                                   ula_positions, zf_weights)
from passcovert.geometry import PinchLayout


def _scenario(bob=(20.0, 6.0), willie=(7.0, -9.0), delta_r=0.5):
    cfg = ExperimentConfig()
    return Scenario(
        r_b=np.array([bob[0], bob[1], 0.0]),
        willie=WillieUncertainty(np.array([willie[0], willie[1], 0.0]), delta_r),
        noise_w=NoiseUncertainty(cfg.sigma_w_sq_watts, cfg.delta_sigma),
        covertness=CovertnessSpec(0.1),
        sigma_b_sq=cfg.sigma_b_sq_watts,
        p_max=cfg.p_max_watts,
        geom=cfg.geometry_mwmp(),
        pc=cfg.phys_constants(),
    )


def test_ula_positions_centered(pc28):
    pos = ula_positions(4, 3.0, pc28)
    np.testing.assert_allclose(pos[:, 0],
                               np.array([-1.5, -0.5, 0.5, 1.5]) * pc28.wavelength / 2)
    assert np.all(pos[:, 2] == 3.0)
    assert pos[:, 0].sum() == pytest.approx(0.0, abs=1e-15)


def test_ula_channel_matches_los(pc28):
    r = (20.0, 6.0, 0.0)
    ch = ula_channel(r, 4, 3.0, pc28)
    for i, p in enumerate(ula_positions(4, 3.0, pc28)):
        assert ch[i] == pytest.approx(los_coeff(p, r, pc28), rel=1e-12)
    single = ula_channel(r, 1, 3.0, pc28)
    assert single[0] == pytest.approx(los_coeff((0.0, 0.0, 3.0), r, pc28), rel=1e-12)
    dists = np.linalg.norm(np.asarray(r) - ula_positions(4, 3.0, pc28), axis=1)
    np.testing.assert_allclose(np.abs(ch), np.sqrt(pc28.eta) / dists, rtol=1e-12)


def test_mrt_weights(rng):
    h = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    w = mrt_weights(h)
    assert np.linalg.norm(w) == pytest.approx(1.0, abs=1e-12)
    assert abs(h @ w) == pytest.approx(np.linalg.norm(h), rel=1e-12)
    # no random unit vector beats the conjugate match
    trials = rng.standard_normal((10_000, 4)) + 1j * rng.standard_normal((10_000, 4))
    trials /= np.linalg.norm(trials, axis=1, keepdims=True)
    assert np.all(np.abs(trials @ h) <= abs(h @ w) + 1e-12)
    scalar = mrt_weights(np.array([1.0 - 1.0j]))
    assert abs(scalar[0]) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DegenerateChannelError):
        mrt_weights(np.zeros(3))


def test_zf_weights_null_and_projection(rng):
    for _ in range(20):
        h_b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        h_w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = zf_weights(h_b, h_w)
        assert np.linalg.norm(w) == pytest.approx(1.0, abs=1e-12)
        assert abs(h_w @ w) <= 1e-10 * np.linalg.norm(h_w)


def test_zf_reduces_to_mrt_when_orthogonal():
    h_b = np.array([1.0, 1.0j, 0.0, 0.0])
    h_w = np.array([0.0, 0.0, 2.0, -1.0j])  # conj-orthogonal pair
    assert abs(np.vdot(np.conj(h_w), np.conj(h_b))) == 0.0
    np.testing.assert_allclose(zf_weights(h_b, h_w), mrt_weights(h_b), atol=1e-12)


def test_zf_gram_schmidt_oracle(rng):
    h_b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    h_w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    w = zf_weights(h_b, h_w)
    # Gram-Schmidt on {conj(h_w), conj(h_b)} yields the same direction
    c = np.conj(h_w) / np.linalg.norm(h_w)
    a = np.conj(h_b)
    gs = a - np.vdot(c, a) * c
    gs /= np.linalg.norm(gs)
    phase = gs @ np.conj(w) / abs(gs @ np.conj(w))
    np.testing.assert_allclose(w * phase, gs, atol=1e-12)


def test_zf_degenerate_cases():
    with pytest.raises(DegenerateChannelError):
        zf_weights(np.array([1.0 + 0j]), np.array([1.0 + 0j]))  # one antenna
    with pytest.raises(DegenerateChannelError):
        zf_weights(np.array([1.0, 1.0j]), np.zeros(2))
    h = np.array([1.0, 2.0j])
    with pytest.raises(DegenerateChannelError):
        zf_weights(h, 3.0 * h)  # parallel channels leave no null space


def test_heuristic_layout(pc28):
    geom = PassGeometry(3.0, 25.0, 4, 1, (-4.5, -1.5, 1.5, 4.5), 0.0054, 0.0054)
    layout = heuristic_pass_layout((12.0, 3.0, 0.0), geom)
    np.testing.assert_allclose(layout.x_init, 12.0)
    clamped = heuristic_pass_layout((-5.0, 3.0, 0.0), geom)
    np.testing.assert_allclose(clamped.x_init, 0.0)
    lam_half = pc28.wavelength / 2
    geom3 = PassGeometry(3.0, 25.0, 2, 3, (-1.5, 1.5), lam_half, lam_half)
    centered = heuristic_pass_layout((20.0, 3.0, 0.0), geom3)
    np.testing.assert_allclose(centered.x_init, 20.0 - lam_half, rtol=1e-12)


def test_mimo_zf_exact_null_gets_full_budget():
    sc = _scenario(delta_r=0.0)  # all sample points collapse onto the nulled center
    res = evaluate(BenchmarkKind.MIMO_ZF, sc)
    assert res.power == pytest.approx(sc.p_max)
    assert res.rate > 0.0


def test_benchmarks_are_covert_on_samples():
    for willie in [(7.0, -9.0), (15.0, 2.0), (3.0, -1.0)]:
        sc = _scenario(willie=willie)
        gamma_w = sc.gain_budget()
        samples = sc.willie_samples(1)
        for kind in BenchmarkKind:
            res = evaluate(kind, sc)
            assert res.rate >= 0.0
            if res.w_tilde is None:
                continue
            if kind in (BenchmarkKind.PASS_ZF, BenchmarkKind.PASS_MRT):
                layout = heuristic_pass_layout(sc.r_b, sc.geom)
                beam = BeamVector(res.w_tilde, res.power)
                for pt in samples:
                    assert willie_gain(layout, beam, pt, sc.pc) <= gamma_w + 1e-12
            else:
                ch = np.stack([ula_channel(p, 4, 3.0, sc.pc) for p in samples])
                gains = res.power * np.abs(ch @ res.w_tilde) ** 2
                assert np.all(gains <= gamma_w + 1e-12)


def test_mrt_beats_zf_under_orthogonal_channels():
    # same power control, orthogonal channels: the ZF projection is the MRT
    # match, so the rates coincide and MRT can never be worse
    sc = _scenario()
    h_b = np.array([1.0, 1.0j, 0.0, 0.0])
    h_w = np.array([0.0, 0.0, 2.0, -1.0j])
    w_zf = zf_weights(h_b, h_w)
    w_mrt = mrt_weights(h_b)
    assert abs(h_b @ w_mrt) >= abs(h_b @ w_zf) - 1e-12


def test_benchmark_kind_parse():
    assert BenchmarkKind.parse("MIMO_ZF") is BenchmarkKind.MIMO_ZF
    with pytest.raises(ValueError, match="valid kinds"):
        BenchmarkKind.parse("zf")
