import numpy as np
import pytest

from hybridclust.channel import generate_channels, design_combiners
from hybridclust.digital import full_digital_precoder
from hybridclust.errors import InvalidInput
from hybridclust.metrics import (
    PowerParams,
    power_consumption,
    power_efficiency,
    rate_for_precoder,
    sinr_from_gains,
    sinr_per_user,
    spectral_efficiency,
)
from hybridclust.structures import HybridPrecoder

from conftest import small_params


def test_sinr_hand_computed():
    g = np.array([[1.0, 0.5j], [0.0, 2.0]])
    # K = 2, P = 2, sigma2 = 0.5: noise term K sigma2 = 1
    sinr = sinr_from_gains(g, 2.0, 0.5)
    assert sinr[0] == pytest.approx(2 * 1.0 / (1 + 2 * 0.25))
    assert sinr[1] == pytest.approx(2 * 4.0 / 1.0)


def test_spectral_efficiency():
    assert spectral_efficiency([1.0, 3.0]) == pytest.approx(1 + 2)
    assert spectral_efficiency([]) == 0.0
    with pytest.raises(InvalidInput):
        spectral_efficiency([-0.1])


def test_sinr_per_user_accepts_precoder_object(rng):
    real = generate_channels(small_params(), rng)
    cs = design_combiners(real)
    f = full_digital_precoder(cs.H_eq)
    pre = HybridPrecoder(np.eye(16, dtype=complex), f, "digital")
    a = sinr_per_user(real, cs.combiners, pre, 1.0, 0.1)
    b = sinr_per_user(real, cs.combiners, f, 1.0, 0.1)
    assert np.allclose(a, b)
    assert spectral_efficiency(a) == pytest.approx(rate_for_precoder(cs.H_eq, f, 1.0, 0.1))


def test_zf_rate_is_interference_free(rng):
    real = generate_channels(small_params(), rng)
    h = design_combiners(real).H_eq
    f = full_digital_precoder(h)
    gamma = 4 / np.linalg.norm(np.linalg.pinv(h)) ** 2
    assert rate_for_precoder(h, f, 1.0, 0.2) == pytest.approx(4 * np.log2(1 + gamma / (4 * 0.2)))


def test_power_model_values():
    assert power_consumption("full", 64, 8) == 27.44
    assert power_consumption("sub", 64, 8) == 18.48
    assert power_consumption("adaptive", 64, 8) == 19.12
    assert power_consumption("digital", 64, 64) == 22.8
    p = PowerParams(P_com=1, P_RF=2, P_PA=3, P_APS=4, P_SW=5)
    assert power_consumption("full", 10, 2, p) == 1 + 4 + 30 + 80
    assert power_consumption("adaptive", 10, 2, p) == 1 + 4 + 30 + 90
    with pytest.raises(InvalidInput):
        power_consumption("hybrid", 4, 2)
    with pytest.raises(InvalidInput):
        PowerParams(P_RF=-1)


def test_power_efficiency():
    assert power_efficiency(10.0, 20.0) == 0.5
    with pytest.raises(InvalidInput):
        power_efficiency(1.0, 0.0)
