import numpy as np
import pytest

from hybridclust.channel import ArrayGeometry, ChannelParams, design_combiners, generate_channels
from hybridclust.digital import full_digital_precoder


def small_params(w=4, v=4, users=4, user_array=(2, 2)):
    return ChannelParams(
        bs_array=ArrayGeometry(w, v),
        user_arrays=tuple(ArrayGeometry(*user_array) for _ in range(users)),
    )


def draw_instance(rng, params=None, method="ZF", sigma2=1.0):
    """One realization with its equivalent channel and target precoder."""
    params = params or small_params()
    real = generate_channels(params, rng)
    comb = design_combiners(real)
    f_opt = full_digital_precoder(comb.H_eq, method, 1.0, sigma2)
    return real, comb, f_opt


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
