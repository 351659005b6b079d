"""Adaptively- and sub-connected hybrid precoding.

With ``F_RF^H F_RF = M I`` the design reduces to factorizing ``sqrt(M) U_opt``
(the ``K`` dominant left-singular vectors of the target precoder) as
``F_RF U_BB`` with ``U_BB`` semi-unitary. Rows of ``sqrt(M) U_opt`` (one per
antenna) are clustered around the rows of ``U_BB`` (one per RF chain) by a
modified K-means: balanced round-robin assignment under a rotation-invariant
distance, then an alternating-optimization refit of the centres (Procrustes
step for ``U_BB``, closed-form phase step for ``F_RF``).
"""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .digital import as_method
from .errors import DegenerateBlock, InvalidConfig, InvalidInput
from .fhp import refine_baseband_effective
from .numerics import as_matrix, fro2, phase, random_semi_unitary, svd
from .structures import ClusterPartition, HybridPrecoder

INIT_MODES = ("specific", "random")


@dataclass(frozen=True)
class AoConfig:
    """Stopping rule and initialization of the alternating optimization.

    Both loops stop once the objective decreases by less than ``epsilon``.
    ``warm_start`` seeds each inner run of the K-means loop with the optimal
    phases for the current centres instead of the fresh per-block SVD init.
    """

    epsilon: float = 1e-4
    max_inner_iters: int = 200
    max_outer_iters: int = 50
    init_mode: str = "specific"
    warm_start: bool = False

    def __post_init__(self):
        if not self.epsilon > 0:
            raise InvalidInput("epsilon must be positive")
        if self.max_inner_iters < 1 or self.max_outer_iters < 1:
            raise InvalidInput("iteration caps must be >= 1")
        if self.init_mode not in INIT_MODES:
            raise InvalidInput(f"init_mode must be one of {INIT_MODES}, got {self.init_mode!r}")


@dataclass
class AoResult:
    F_RF: np.ndarray
    U_BB: np.ndarray
    iterations: int
    trace: list
    converged: bool


@dataclass
class MkmResult:
    precoder: HybridPrecoder
    outer_iterations: int
    inner_iterations: list
    trace: list
    partition: ClusterPartition
    U_BB: np.ndarray = field(repr=False)
    rolled_back: bool = False
    inner_traces: list = field(default_factory=list, repr=False)

    @property
    def mean_inner_iterations(self):
        return float(np.mean(self.inner_iterations))


@dataclass
class ShpResult:
    precoder: HybridPrecoder
    inner_iterations: int
    trace: list
    U_BB: np.ndarray = field(repr=False)


def assignment_distance(s, c):
    """``|s - exp(j arg(s c^H)) c|^2``: distance after the best phase rotation of ``c``.

    Evaluates the closed form ``|s|^2 + |c|^2 - 2 |s c^H|``.
    """
    s = np.asarray(s).reshape(-1)
    c = np.asarray(c).reshape(-1)
    if s.shape != c.shape:
        raise InvalidInput(f"length mismatch: {s.shape[0]} vs {c.shape[0]}")
    return float(np.vdot(s, s).real + np.vdot(c, c).real - 2.0 * abs(np.vdot(c, s)))


def assignment_distances(samples, centres):
    """Table ``D[i, n] = assignment_distance(samples[i], centres[n])``."""
    s2 = np.sum(np.abs(samples) ** 2, axis=1)[:, np.newaxis]
    c2 = np.sum(np.abs(centres) ** 2, axis=1)[np.newaxis, :]
    return s2 + c2 - 2.0 * np.abs(samples @ centres.conj().T)


def _block_size(n_t, n_rf):
    if n_rf < 1 or n_t % n_rf:
        raise InvalidConfig(f"N_t={n_t} is not a multiple of N_RF={n_rf}")
    return n_t // n_rf


def round_robin_assign(u_opt_k, u_bb_k, m):
    """Balanced clustering of the rows of ``sqrt(m) u_opt_k`` around the rows of ``u_bb_k``.

    ``m`` passes; in each, clusters ``0 .. N_RF-1`` in turn claim their nearest
    unclaimed row (ties to the smallest row index).
    """
    n_t = u_opt_k.shape[0]
    n_rf = u_bb_k.shape[0]
    if int(m) * n_rf != n_t:
        raise InvalidConfig(f"N_t={n_t} != M*N_RF = {m}*{n_rf}")
    dist = assignment_distances(np.sqrt(m) * u_opt_k, u_bb_k)
    claims = kernels.round_robin(dist, int(m))
    return ClusterPartition(tuple(tuple(row) for row in claims), n_t)


def ao_init(blocks):
    """Per-block phases of the dominant left-singular vector (specific initialization)."""
    out = []
    for n, block in enumerate(blocks):
        block = as_matrix(block, f"block {n}")
        if not np.any(block):
            raise DegenerateBlock(f"block {n} is identically zero")
        out.append(np.exp(1j * phase(svd(block).U[:, 0])))
    return np.concatenate(out)


def _procrustes(f, u_tilde, n_rf, m):
    k = u_tilde.shape[1]
    a = (f.conj()[:, np.newaxis] * u_tilde).reshape(n_rf, m, k).sum(axis=1)
    u, _, vh = np.linalg.svd(a, full_matrices=False)
    return u @ vh


def ao_center_update(u_opt_k, partition, config=AoConfig(), rng=None, init_phases=None):
    """Alternate Procrustes and phase updates for a fixed antenna partition.

    Parameters
    ----------
    u_opt_k : (N_t, K) array
        Dominant left-singular vectors of the target precoder.
    partition : ClusterPartition
        ``N_RF`` sets of ``M`` antenna indices.
    config : AoConfig
    rng : numpy.random.Generator, optional
        Needed only for ``init_mode="random"``.
    init_phases : (N_t,) array, optional
        Initial phase per antenna (in antenna order); overrides ``init_mode``.

    Returns
    -------
    AoResult
        ``F_RF`` in antenna order, semi-unitary ``U_BB``, iteration count and
        the objective trace ``||sqrt(M) U_opt - F_RF U_BB||_F^2``.
    """
    u_opt_k = as_matrix(u_opt_k, "U_opt")
    n_t, k = u_opt_k.shape
    n_rf = len(partition)
    m = _block_size(n_t, n_rf)
    if any(len(g) != m for g in partition.gamma):
        raise InvalidConfig(f"every cluster must hold exactly M={m} antennas")
    if n_rf < k:
        raise InvalidInput(f"need N_RF >= K, got N_RF={n_rf}, K={k}")
    perm = np.concatenate([np.asarray(g, dtype=np.int64) for g in partition.gamma])
    u_tilde = u_opt_k[perm]
    target = np.sqrt(m) * u_tilde
    block_of = np.repeat(np.arange(n_rf), m)

    if init_phases is not None:
        f = np.exp(1j * phase(np.asarray(init_phases)[perm]))
    elif config.init_mode == "specific":
        f = ao_init([u_tilde[n * m:(n + 1) * m] for n in range(n_rf)])
    else:
        if rng is None:
            raise InvalidInput("random initialization needs an rng")
        f = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=n_t))

    trace = []
    v_prev = np.inf
    converged = False
    u_bb = None
    for _ in range(config.max_inner_iters):
        u_bb = _procrustes(f, u_tilde, n_rf, m)
        rows = u_bb[block_of]
        f = np.exp(1j * phase(np.sum(u_tilde * rows.conj(), axis=1)))
        v = fro2(target - f[:, np.newaxis] * rows)
        trace.append(v)
        if v_prev - v < config.epsilon:
            converged = True
            break
        v_prev = v

    f_rf = np.zeros((n_t, n_rf), dtype=np.complex128)
    f_rf[perm, block_of] = f
    return AoResult(f_rf, u_bb, len(trace), trace, converged)


def _optimal_phases(u_opt_k, u_bb_k, partition):
    labels = partition.labels()
    return np.exp(1j * phase(np.sum(u_opt_k * u_bb_k[labels].conj(), axis=1)))


def _quantize_rf(f_rf, q_bits):
    from .channel import quantize_phases

    nz = f_rf != 0
    out = np.zeros_like(f_rf)
    out[nz] = quantize_phases(f_rf[nz], q_bits, 1.0)
    return out


def _dominant_subspace(f_opt):
    f_opt = as_matrix(f_opt, "F_opt")
    k = f_opt.shape[1]
    return svd(f_opt).U[:, :k]


def mkm_ahp(f_opt, n_rf, config=AoConfig(), rng=None, h_eq=None, method="ZF", power=1.0, sigma2=1.0, q_bits=None):
    """Adaptively-connected hybrid precoder by modified K-means.

    Starting from random semi-unitary centres, alternate balanced assignment
    and AO centre refits until the objective improves by less than
    ``config.epsilon``. If an outer round makes the objective worse, that round
    is discarded and the previous clustering is kept (``rolled_back=True``).
    The baseband stage is ``method`` applied to ``h_eq @ F_RF``.
    """
    if rng is None:
        raise InvalidInput("mkm_ahp needs an rng for the initial centres")
    if h_eq is None:
        raise InvalidInput("mkm_ahp needs H_eq for the baseband refit")
    u_opt_k = _dominant_subspace(f_opt)
    n_t, k = u_opt_k.shape
    n_rf = int(n_rf)
    m = _block_size(n_t, n_rf)
    if n_rf < k:
        raise InvalidInput(f"need N_RF >= K, got N_RF={n_rf}, K={k}")

    u_bb = random_semi_unitary(n_rf, k, rng)
    best = None
    trace = []
    inner = []
    inner_traces = []
    rolled_back = False
    v_prev = np.inf
    outer = 0
    for outer in range(1, config.max_outer_iters + 1):
        partition = round_robin_assign(u_opt_k, u_bb, m)
        init = _optimal_phases(u_opt_k, u_bb, partition) if config.warm_start else None
        ao = ao_center_update(u_opt_k, partition, config, rng, init_phases=init)
        inner.append(ao.iterations)
        inner_traces.append(ao.trace)
        v = ao.trace[-1]
        if v > v_prev:
            rolled_back = True
            break
        best = (ao, partition)
        trace.append(v)
        u_bb = ao.U_BB
        if v_prev - v < config.epsilon:
            break
        v_prev = v

    ao, partition = best
    f_rf = ao.F_RF if q_bits is None else _quantize_rf(ao.F_RF, q_bits)
    f_bb = refine_baseband_effective(f_rf, h_eq, as_method(method), power, sigma2)
    return MkmResult(
        HybridPrecoder(f_rf, f_bb, "adaptive"), outer, inner, trace, partition, ao.U_BB, rolled_back, inner_traces
    )


def ao_shp(f_opt, n_rf, config=AoConfig(), h_eq=None, method="ZF", power=1.0, sigma2=1.0, rng=None, q_bits=None):
    """Sub-connected hybrid precoder: one AO run on the fixed contiguous partition."""
    if h_eq is None:
        raise InvalidInput("ao_shp needs H_eq for the baseband refit")
    u_opt_k = _dominant_subspace(f_opt)
    n_t, k = u_opt_k.shape
    n_rf = int(n_rf)
    _block_size(n_t, n_rf)
    partition = ClusterPartition.contiguous(n_t, n_rf)
    ao = ao_center_update(u_opt_k, partition, config, rng)
    f_rf = ao.F_RF if q_bits is None else _quantize_rf(ao.F_RF, q_bits)
    f_bb = refine_baseband_effective(f_rf, h_eq, as_method(method), power, sigma2)
    return ShpResult(HybridPrecoder(f_rf, f_bb, "sub"), ao.iterations, ao.trace, ao.U_BB)
