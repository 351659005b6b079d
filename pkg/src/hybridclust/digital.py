"""Full-digital MF / ZF / RZF precoders and the exact 2K-chain hybrid decomposition."""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChannel, DegenerateColumn, InvalidInput
from .numerics import as_matrix, fro2, phase, pseudo_inverse

METHODS = ("MF", "ZF", "RZF")


@dataclass(frozen=True)
class DigitalMethod:
    """Linear precoding rule. ``beta=None`` for RZF means ``K * sigma2 / P``."""

    tag: str = "ZF"
    beta: float | None = None

    def __post_init__(self):
        tag = self.tag.upper()
        if tag not in METHODS:
            raise InvalidInput(f"unknown digital method {self.tag!r}; expected one of {METHODS}")
        object.__setattr__(self, "tag", tag)
        if self.beta is not None and not self.beta > 0:
            raise InvalidInput("RZF regularizer beta must be positive")

    def regularizer(self, k, power, sigma2):
        if self.beta is not None:
            return float(self.beta)
        return k * sigma2 / power


def as_method(method):
    if isinstance(method, DigitalMethod):
        return method
    return DigitalMethod(str(method))


def linear_precoder(h, method, power=1.0, sigma2=1.0):
    """Unnormalized MF / ZF / RZF matrix for a ``K x N`` channel ``h``."""
    method = as_method(method)
    k = h.shape[0]
    if method.tag == "MF":
        return h.conj().T
    if method.tag == "ZF":
        return pseudo_inverse(h)
    beta = method.regularizer(k, power, sigma2)
    gram = h @ h.conj().T + beta * np.eye(k)
    return h.conj().T @ np.linalg.inv(gram)


def full_digital_precoder(h_eq, method="ZF", power=1.0, sigma2=1.0):
    """``N_t x K`` digital precoder scaled so that ``||F||_F^2 = K``."""
    h_eq = as_matrix(h_eq, "H_eq")
    k, n_t = h_eq.shape
    if k > n_t:
        raise InvalidInput(f"need K <= N_t, got K={k}, N_t={n_t}")
    if not np.any(h_eq):
        raise DegenerateChannel("equivalent channel is identically zero")
    f = linear_precoder(h_eq, method, power, sigma2)
    norm2 = fro2(f)
    if norm2 == 0.0:
        raise DegenerateChannel("digital precoder vanished")
    return f * np.sqrt(k / norm2)


def optimal_hybrid_decomposition(f_opt):
    """Split ``f_opt`` exactly into ``2K`` unit-modulus RF columns and a sparse baseband.

    Column ``j`` of ``f_opt`` is written entrywise as a sum of two phasors of
    common amplitude ``alpha_j = max_i |f_opt[i, j]| / 2``. RF columns ``2j`` and
    ``2j + 1`` carry the two phasors and ``F_BB[2j, j] = F_BB[2j + 1, j] = alpha_j``.
    """
    f_opt = as_matrix(f_opt, "F_opt")
    n_t, k = f_opt.shape
    mag = np.abs(f_opt)
    alpha = mag.max(axis=0) / 2.0
    if np.any(alpha == 0.0):
        raise DegenerateColumn(f"column(s) {np.flatnonzero(alpha == 0.0).tolist()} of F_opt are zero")
    ratio = np.clip(mag / (2.0 * alpha[np.newaxis, :]), 0.0, 1.0)
    delta = np.arccos(ratio)
    base = phase(f_opt)
    f_rf = np.empty((n_t, 2 * k), dtype=np.complex128)
    f_rf[:, 0::2] = np.exp(1j * (base + delta))
    f_rf[:, 1::2] = np.exp(1j * (base - delta))
    f_bb = np.zeros((2 * k, k), dtype=np.complex128)
    cols = np.arange(k)
    f_bb[2 * cols, cols] = alpha
    f_bb[2 * cols + 1, cols] = alpha
    return f_rf, f_bb
