"""Fully-connected hybrid precoding by hierarchical agglomerative clustering.

The exact ``2K``-chain decomposition of the full-digital precoder yields ``2K``
rank-one components, one per RF chain. When fewer chains are available the
components are merged greedily (mean linkage over inverse inner products of
their RF columns), each merged cluster gets one unit-modulus RF column from the
dominant left-singular vector of its member sum, and the baseband stage is
refitted.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .digital import as_method, linear_precoder, optimal_hybrid_decomposition
from .errors import (
    BoundUndefined,
    DegenerateChannel,
    DegenerateCluster,
    DegeneratePrecoder,
    InvalidInput,
)
from .numerics import as_matrix, fro2, numerical_rank, phase, pseudo_inverse, svd
from .structures import ClusterPartition, HybridPrecoder

REFINEMENTS = ("ls", "effective")


@dataclass(frozen=True)
class RfSampleSet:
    """The ``2K`` rank-one components ``F_RF*[:, m] F_BB*[m, :]`` and their distance table."""

    F_RF_star: np.ndarray
    F_BB_star: np.ndarray
    pairwise: np.ndarray

    @property
    def size(self):
        return self.F_RF_star.shape[1]

    @classmethod
    def from_decomposition(cls, f_rf_star, f_bb_star):
        return cls(f_rf_star, f_bb_star, pairwise_distances(f_rf_star))

    @classmethod
    def from_precoder(cls, f_opt):
        return cls.from_decomposition(*optimal_hybrid_decomposition(f_opt))


def _inverse_abs(x):
    x = np.abs(x)
    with np.errstate(divide="ignore"):
        return np.where(x == 0.0, np.inf, 1.0 / np.where(x == 0.0, 1.0, x))


def sample_distance(f_rf_star, m, n):
    """``1 / |F[:, m]^H F[:, n]|``, infinite for orthogonal columns."""
    if m == n:
        raise InvalidInput("sample distance needs two distinct samples")
    ip = np.vdot(f_rf_star[:, m], f_rf_star[:, n])
    return float(_inverse_abs(ip))


def pairwise_distances(f_rf_star):
    """Full symmetric table of sample distances; the diagonal is set to 0 and never used."""
    gram = f_rf_star.conj().T @ f_rf_star
    table = _inverse_abs(gram)
    table = np.minimum(table, table.T)  # exact symmetry despite rounding in the Gram product
    np.fill_diagonal(table, 0.0)
    return table


def cluster_distance(partition, c, d, pairwise):
    """Mean sample distance between the members of clusters ``c`` and ``d``."""
    if c == d:
        raise InvalidInput("cluster distance needs two distinct clusters")
    gc, gd = partition.gamma[c], partition.gamma[d]
    if not gc or not gd:
        raise InvalidInput("cluster distance of an empty cluster")
    block = np.asarray(pairwise)[np.ix_(gc, gd)]
    if np.any(np.isinf(block)):
        return np.inf
    return float(block.sum() / (len(gc) * len(gd)))


def hac_cluster(sampleset, target, return_history=False):
    """Merge the globally nearest pair of clusters until ``target`` remain.

    Ties are resolved in favour of the lexicographically smallest ``(c, d)`` of
    the current cluster numbering; after each merge the survivors are
    renumbered in order, the merged cluster keeping the lower index.
    """
    table = sampleset.pairwise if isinstance(sampleset, RfSampleSet) else np.asarray(sampleset)
    n = table.shape[0]
    target = int(target)
    if not 1 <= target <= n:
        raise InvalidInput(f"target cluster count must lie in [1, {n}], got {target}")
    labels, history = kernels.hac_merge(table, target)
    partition = ClusterPartition.from_labels(labels)
    if return_history:
        return partition, history
    return partition


def design_rf_column(sampleset, members):
    """Unit-modulus RF column from the dominant left-singular vector of the member sum.

    The singular vector's free global phase is fixed by aligning it with the
    sum of the members' own RF columns, so a singleton cluster reproduces its
    RF column exactly.
    """
    members = list(members)
    if not members:
        raise InvalidInput("cluster has no members")
    total = sampleset.F_RF_star[:, members] @ sampleset.F_BB_star[members, :]
    if not np.any(total):
        raise DegenerateCluster(f"member sum of cluster {members} is zero")
    u = svd(total).U[:, 0]
    anchor = np.vdot(u, sampleset.F_RF_star[:, members].sum(axis=1))
    u = u * np.exp(1j * phase(anchor))
    return np.exp(1j * phase(u))


def _normalize_cascade(f_rf, f_bb_raw, k):
    power = fro2(f_rf @ f_bb_raw)
    if power == 0.0:
        raise DegeneratePrecoder("hybrid precoder vanished after refinement")
    return f_bb_raw * np.sqrt(k / power)


def refine_baseband_ls(f_rf, f_opt):
    """Least-squares baseband ``F_RF^+ F_opt`` rescaled to satisfy the power constraint."""
    f_rf = as_matrix(f_rf, "F_RF")
    f_opt = as_matrix(f_opt, "F_opt")
    if f_rf.shape[0] != f_opt.shape[0]:
        raise InvalidInput(f"F_RF {f_rf.shape} and F_opt {f_opt.shape} are not conformable")
    return _normalize_cascade(f_rf, pseudo_inverse(f_rf) @ f_opt, f_opt.shape[1])


def refine_baseband_effective(f_rf, h_eq, method="ZF", power=1.0, sigma2=1.0):
    """Digital precoding on the effective channel ``H_eq F_RF``, normalized on the cascade."""
    f_rf = as_matrix(f_rf, "F_RF")
    h_eq = as_matrix(h_eq, "H_eq")
    if h_eq.shape[1] != f_rf.shape[0]:
        raise InvalidInput(f"H_eq {h_eq.shape} and F_RF {f_rf.shape} are not conformable")
    h_bb = h_eq @ f_rf
    if not np.any(h_bb):
        raise DegenerateChannel("effective baseband channel is identically zero")
    f_bb = linear_precoder(h_bb, method, power, sigma2)
    return _normalize_cascade(f_rf, f_bb, h_eq.shape[0])


def refinement_rate_bounds(h_eq, f_rf, power=1.0, sigma2=1.0):
    """Interference-free sum-rate bounds for LS and ZF baseband refinement.

    Returns ``(r_ls, r_zf)`` with ``r_ls = K log2(1 + P / (sigma2 ||H_eq^+||^2))``
    and ``r_zf = K log2(1 + P / (sigma2 ||F_RF (H_eq F_RF)^+||^2))``.
    """
    h_eq = as_matrix(h_eq, "H_eq")
    f_rf = as_matrix(f_rf, "F_RF")
    k = h_eq.shape[0]
    if numerical_rank(h_eq) < k:
        raise BoundUndefined("H_eq is not full row rank")
    r_ls = k * np.log2(1.0 + power / (sigma2 * fro2(pseudo_inverse(h_eq))))
    h_bb = h_eq @ f_rf
    if numerical_rank(h_bb) < k:
        raise BoundUndefined("effective channel H_eq F_RF is not full row rank")
    r_zf = k * np.log2(1.0 + power / (sigma2 * fro2(f_rf @ pseudo_inverse(h_bb))))
    return float(r_ls), float(r_zf)


def _padding_columns(n_t, count):
    # unused extra chains get DFT beams; their baseband rows come out of the refit
    i = np.arange(n_t)[:, np.newaxis]
    n = (np.arange(count) % n_t)[np.newaxis, :]
    return np.exp(-2j * np.pi * i * n / n_t)


def hac_analog(f_opt, n_rf):
    """Analog stage of the HAC design. Returns ``(F_RF, partition)``.

    For ``n_rf >= 2K`` the exact decomposition is used as is; chains beyond
    ``2K`` are padded with DFT columns (partition is then ``None`` for them).
    """
    f_opt = as_matrix(f_opt, "F_opt")
    n_t, k = f_opt.shape
    n_rf = int(n_rf)
    if n_rf < k:
        raise InvalidInput(f"need N_RF >= K, got N_RF={n_rf}, K={k}")
    samples = RfSampleSet.from_precoder(f_opt)
    target = min(n_rf, samples.size)
    partition = hac_cluster(samples, target)
    f_rf = np.column_stack([design_rf_column(samples, g) for g in partition.gamma])
    if n_rf > samples.size:
        f_rf = np.hstack([f_rf, _padding_columns(n_t, n_rf - samples.size)])
    return f_rf, partition


def hac_fhp(f_opt, n_rf, refinement="ls", h_eq=None, method="ZF", power=1.0, sigma2=1.0, q_bits=None):
    """Fully-connected hybrid precoder from the HAC design.

    Parameters
    ----------
    f_opt : (N_t, K) array
        Target full-digital precoder.
    n_rf : int
        Number of RF chains, at least K. Values above 2K are accepted; the
        surplus chains cannot improve on the exact decomposition.
    refinement : {"ls", "effective"}
        Baseband refit: least squares against ``f_opt``, or ``method`` applied
        to the effective channel ``h_eq @ F_RF`` (requires ``h_eq``).
    q_bits : int, optional
        Quantize the analog phases to ``q_bits`` bits before the refit.
    """
    from .channel import quantize_phases

    refinement = refinement.lower()
    if refinement not in REFINEMENTS:
        raise InvalidInput(f"unknown refinement {refinement!r}; expected one of {REFINEMENTS}")
    f_rf, _ = hac_analog(f_opt, n_rf)
    if q_bits is not None:
        f_rf = quantize_phases(f_rf, q_bits, 1.0)
    if refinement == "ls":
        f_bb = refine_baseband_ls(f_rf, f_opt)
    else:
        if h_eq is None:
            raise InvalidInput("effective-channel refinement needs H_eq")
        f_bb = refine_baseband_effective(f_rf, h_eq, as_method(method), power, sigma2)
    return HybridPrecoder(f_rf, f_bb, "full")
