import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridclust.channel import (
    ArrayGeometry,
    ChannelParams,
    design_combiner,
    design_combiners,
    equivalent_channel,
    generate_channels,
    quantize_phases,
    upa_response,
)
from hybridclust.errors import DegenerateChannel, InvalidInput

from conftest import crandn, small_params


def test_upa_response_index_order_and_norm():
    geom = ArrayGeometry(3, 2, 0.5)
    theta, phi = 0.7, 1.1
    a = upa_response(geom, theta, phi)
    assert a.shape == (6,)
    assert np.linalg.norm(a) == pytest.approx(1.0)
    for w in range(3):
        for v in range(2):
            expected = np.exp(1j * np.pi * (w * np.sin(theta) * np.sin(phi) + v * np.cos(phi))) / np.sqrt(6)
            assert a[w * 2 + v] == pytest.approx(expected)


def test_channel_shapes_and_average_power():
    params = small_params()
    rng = np.random.default_rng(7)
    total = 0.0
    n = 400
    for _ in range(n):
        real = generate_channels(params, rng)
        assert len(real.channels) == 4
        assert real.channels[0].shape == (4, 16)
        assert real.paths[0].gains.shape == (5, 10)
        total += np.linalg.norm(real.channels[0]) ** 2
    # E||H_k||^2 = N_t N_r = 64
    assert total / n == pytest.approx(64.0, rel=0.1)


def test_channel_draw_is_reproducible():
    params = small_params()
    a = generate_channels(params, np.random.default_rng(3))
    b = generate_channels(params, np.random.default_rng(3))
    assert a.digest() == b.digest()
    c = generate_channels(params, np.random.default_rng(4))
    assert a.digest() != c.digest()


def test_zero_spread_puts_rays_on_cluster_centres():
    params = ChannelParams(ArrayGeometry(2, 2), (ArrayGeometry(1, 1),), angular_spread=0.0)
    rec = generate_channels(params, np.random.default_rng(0)).paths[0]
    assert np.all(rec.theta_t == rec.theta_t[:, :1])


@pytest.mark.parametrize("bad", [dict(clusters=0), dict(offset_law="gauss"), dict(spread_on="x"), dict(angular_spread=-1)])
def test_channel_params_validation(bad):
    with pytest.raises(InvalidInput):
        ChannelParams(ArrayGeometry(2, 2), (ArrayGeometry(1, 1),), **bad)


def _brute_quantize(v, q_bits, mag):
    levels = 1 << q_bits
    grid = mag * np.exp(2j * np.pi * np.arange(levels) / levels)
    out = []
    for z in np.ravel(v):
        ph = np.angle(z) if z != 0 else 0.0
        d = np.abs(np.angle(np.exp(1j * (ph - 2 * np.pi * np.arange(levels) / levels))))
        out.append(grid[int(np.argmin(d))])
    return np.array(out).reshape(np.shape(v))


@settings(max_examples=80, deadline=None)
@given(q=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_quantize_matches_nearest_grid_point(q, seed):
    v = crandn(np.random.default_rng(seed), 12)
    got = quantize_phases(v, q, 0.5)
    assert np.allclose(np.abs(got), 0.5)
    assert np.allclose(got, _brute_quantize(v, q, 0.5))


def test_quantize_ties():
    # Q = 1: grid {0, pi}; pi/2 is an exact tie -> index 0, and 3pi/2 wraps back to 0
    v = np.exp(1j * np.array([np.pi / 2, -np.pi / 2]))
    assert np.allclose(quantize_phases(v, 1, 1.0), [1.0, 1.0])
    # Q = 2: pi/4 lies between indices 0 and 1 -> smaller index
    assert np.allclose(quantize_phases(np.exp(1j * np.pi / 4), 2, 1.0), 1.0)
    # zero input has phase 0
    assert quantize_phases(np.zeros(1), 3, 1.0)[0] == 1.0


def test_quantize_rejects_bad_bits():
    with pytest.raises(InvalidInput):
        quantize_phases(np.ones(2), 0, 1.0)


def test_combiner_is_constant_modulus_and_matched(rng):
    h = crandn(rng, 4, 16)
    w = design_combiner(h)
    assert np.allclose(np.abs(w), 0.5)
    u = np.linalg.svd(h)[0][:, 0]
    assert np.allclose(np.angle(w / u * np.abs(u)), 0.0, atol=1e-9)
    wq = design_combiner(h, q_bits=2)
    assert np.allclose(np.abs(wq), 0.5)
    assert set(np.round(np.angle(wq) / (np.pi / 2)).astype(int) % 4) <= {0, 1, 2, 3}


def test_combiner_degenerate():
    with pytest.raises(DegenerateChannel):
        design_combiner(np.zeros((2, 3)))


def test_equivalent_channel_rows(rng):
    real = generate_channels(small_params(), rng)
    cs = design_combiners(real)
    assert cs.H_eq.shape == (4, 16)
    for k in range(4):
        assert np.allclose(cs.H_eq[k], cs.combiners[k].conj() @ real.channels[k])
    with pytest.raises(InvalidInput):
        equivalent_channel(real, cs.combiners[:2])
