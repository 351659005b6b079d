"""SINR, sum spectral efficiency, hardware power consumption and power efficiency."""
import dataclasses
from dataclasses import dataclass
from decimal import Decimal

import numpy as np

from .errors import InvalidInput


@dataclass(frozen=True)
class PowerParams:
    """Per-component power draw in watts."""

    P_com: float = 10.0
    P_RF: float = 0.1
    P_PA: float = 0.1
    P_APS: float = 0.02
    P_SW: float = 0.01

    def __post_init__(self):
        for name in ("P_com", "P_RF", "P_PA", "P_APS", "P_SW"):
            if getattr(self, name) < 0:
                raise InvalidInput(f"{name} must be nonnegative")


def effective_gains(h_eq, f):
    """``K x K`` matrix ``G = H_eq F``; ``G[k, l]`` is user k's gain on stream l."""
    return np.asarray(h_eq) @ np.asarray(f)


def sinr_from_gains(gains, power, sigma2):
    g2 = np.abs(gains) ** 2
    k = g2.shape[0]
    signal = power * np.diagonal(g2)
    interference = power * (g2.sum(axis=1) - np.diagonal(g2))
    return signal / (k * sigma2 + interference)


def sinr_per_user(realization, combiners, precoder, power, sigma2):
    """Per-user SINR ``P|g_kk|^2 / (K sigma2 + sum_{l != k} P |g_kl|^2)``."""
    from .channel import equivalent_channel

    h_eq = equivalent_channel(realization, combiners)
    f = precoder.F if hasattr(precoder, "F") else precoder
    return sinr_from_gains(effective_gains(h_eq, f), power, sigma2)


def spectral_efficiency(sinrs):
    """Sum rate ``sum_k log2(1 + SINR_k)`` in bit/s/Hz."""
    sinrs = np.asarray(sinrs, dtype=float)
    if np.any(sinrs < 0):
        raise InvalidInput("SINR values must be nonnegative")
    return float(np.sum(np.log2(1.0 + sinrs)))


def rate_for_precoder(h_eq, f, power, sigma2):
    return spectral_efficiency(sinr_from_gains(effective_gains(h_eq, f), power, sigma2))


def power_consumption(structure, n_t, n_rf, params=PowerParams()):
    """Transmitter power for a structure with ``n_t`` antennas and ``n_rf`` chains.

    ``"digital"`` assumes one RF chain and one amplifier per antenna and no
    phase shifters; it is an extrapolation used only for reference curves.
    """
    # Summed in decimal so tabulated wattages come back as the nearest float
    # rather than picking up binary rounding from the products.
    d = {k: Decimal(repr(float(v))) for k, v in dataclasses.asdict(params).items()}
    n_t, n_rf = int(n_t), int(n_rf)
    base = d["P_com"] + n_rf * d["P_RF"] + n_t * d["P_PA"]
    if structure == "full":
        total = base + n_rf * n_t * d["P_APS"]
    elif structure == "sub":
        total = base + n_t * d["P_APS"]
    elif structure == "adaptive":
        total = base + n_t * (d["P_APS"] + d["P_SW"])
    elif structure == "digital":
        total = d["P_com"] + n_t * (d["P_RF"] + d["P_PA"])
    else:
        raise InvalidInput(f"unknown structure {structure!r}")
    return float(total)


def power_efficiency(rate, power_watts):
    if not power_watts > 0:
        raise InvalidInput("power must be positive")
    return rate / power_watts
