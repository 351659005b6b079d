"""Saleh-Valenzuela mmWave channels with UPA responses, and per-user RF combiners."""
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateChannel, InvalidInput
from .numerics import as_matrix, phase, svd

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform planar array of ``W x V`` elements spaced ``spacing_ratio`` wavelengths."""

    W: int
    V: int
    spacing_ratio: float = 0.5

    def __post_init__(self):
        if int(self.W) < 1 or int(self.V) < 1:
            raise InvalidInput(f"array dimensions must be >= 1, got {self.W}x{self.V}")
        if not self.spacing_ratio > 0:
            raise InvalidInput(f"spacing_ratio must be positive, got {self.spacing_ratio}")

    @property
    def size(self):
        return int(self.W) * int(self.V)


@dataclass(frozen=True)
class ChannelParams:
    """Parameters of the clustered channel shared by all users.

    ``angular_spread`` is in radians. ``offset_law`` selects how path angles are
    scattered around their cluster centre: ``"uniform"`` draws offsets on
    ``[-spread/2, spread/2]``, ``"laplacian"`` uses a zero-mean Laplacian with
    standard deviation ``spread``. ``spread_on`` restricts the spread to the
    azimuth or elevation angles (``"both"`` by default).
    """

    bs_array: ArrayGeometry
    user_arrays: tuple
    clusters: int = 5
    paths: int = 10
    angular_spread: float = np.deg2rad(10.0)
    offset_law: str = "uniform"
    spread_on: str = "both"

    def __post_init__(self):
        object.__setattr__(self, "user_arrays", tuple(self.user_arrays))
        if len(self.user_arrays) < 1:
            raise InvalidInput("at least one user is required")
        if self.clusters < 1 or self.paths < 1:
            raise InvalidInput("clusters and paths per cluster must be >= 1")
        if self.angular_spread < 0:
            raise InvalidInput("angular_spread must be nonnegative")
        if self.offset_law not in ("uniform", "laplacian"):
            raise InvalidInput(f"unknown offset_law {self.offset_law!r}")
        if self.spread_on not in ("both", "azimuth", "elevation"):
            raise InvalidInput(f"unknown spread_on {self.spread_on!r}")

    @property
    def n_users(self):
        return len(self.user_arrays)

    @property
    def n_tx(self):
        return self.bs_array.size


@dataclass(frozen=True)
class PathRecord:
    """Per-path parameters of one user's channel, each of shape (clusters, paths)."""

    gains: np.ndarray
    theta_r: np.ndarray
    phi_r: np.ndarray
    theta_t: np.ndarray
    phi_t: np.ndarray


@dataclass(frozen=True)
class ChannelRealization:
    channels: tuple
    paths: tuple = field(repr=False)

    @property
    def n_users(self):
        return len(self.channels)

    @property
    def n_tx(self):
        return self.channels[0].shape[1]

    def digest(self):
        """Stable hash of the channel matrices, used to check trial pairing."""
        import hashlib

        h = hashlib.sha256()
        for hk in self.channels:
            h.update(np.ascontiguousarray(hk).tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class CombinerSet:
    combiners: tuple
    H_eq: np.ndarray
    q_bits: int | None = None


def upa_response(geom, theta, phi):
    """Normalized UPA response; element ``(w, v)`` sits at index ``w * V + v``."""
    w = np.arange(geom.W)[:, np.newaxis]
    v = np.arange(geom.V)[np.newaxis, :]
    arg = TWO_PI * geom.spacing_ratio * (w * np.sin(theta) * np.sin(phi) + v * np.cos(phi))
    return np.exp(1j * arg).reshape(-1) / np.sqrt(geom.size)


def _upa_responses(geom, theta, phi):
    # columns are responses for each (theta, phi) pair in the flattened inputs
    theta = np.asarray(theta).reshape(-1)
    phi = np.asarray(phi).reshape(-1)
    w = np.repeat(np.arange(geom.W), geom.V)[:, np.newaxis]
    v = np.tile(np.arange(geom.V), geom.W)[:, np.newaxis]
    arg = TWO_PI * geom.spacing_ratio * (
        w * (np.sin(theta) * np.sin(phi))[np.newaxis, :] + v * np.cos(phi)[np.newaxis, :]
    )
    return np.exp(1j * arg) / np.sqrt(geom.size)


def _draw_angles(rng, params, spread_here):
    nc, npth = params.clusters, params.paths
    centres = rng.uniform(0.0, TWO_PI, size=(nc, 1))
    if not spread_here or params.angular_spread == 0:
        # still consume the offsets so that toggling the spread keeps streams aligned
        rng.random((nc, npth))
        return np.broadcast_to(centres, (nc, npth)).copy()
    s = params.angular_spread
    if params.offset_law == "uniform":
        offsets = rng.uniform(-s / 2.0, s / 2.0, size=(nc, npth))
    else:
        offsets = rng.laplace(0.0, s / np.sqrt(2.0), size=(nc, npth))
    return centres + offsets


def generate_channels(params, rng):
    """Draw one realization of all users' channels.

    Each user gets ``clusters`` scattering clusters of ``paths`` rays with
    CN(0, 1) gains, normalized so that ``E ||H_k||_F^2 = N_t * N_r,k``.
    """
    nc, npth = params.clusters, params.paths
    n_t = params.n_tx
    on_az = params.spread_on in ("both", "azimuth")
    on_el = params.spread_on in ("both", "elevation")
    channels = []
    records = []
    for geom in params.user_arrays:
        theta_r = _draw_angles(rng, params, on_az)
        phi_r = _draw_angles(rng, params, on_el)
        theta_t = _draw_angles(rng, params, on_az)
        phi_t = _draw_angles(rng, params, on_el)
        gains = (rng.standard_normal((nc, npth)) + 1j * rng.standard_normal((nc, npth))) / np.sqrt(2.0)
        a_r = _upa_responses(geom, theta_r, phi_r)
        a_t = _upa_responses(params.bs_array, theta_t, phi_t)
        scale = np.sqrt(n_t * geom.size / (nc * npth))
        hk = scale * (a_r * gains.reshape(-1)[np.newaxis, :]) @ a_t.conj().T
        channels.append(hk)
        records.append(PathRecord(gains, theta_r, phi_r, theta_t, phi_t))
    return ChannelRealization(tuple(channels), tuple(records))


def quantize_phases(v, q_bits, magnitude):
    """Snap every entry of ``v`` to ``magnitude * exp(j 2 pi q / 2^Q)``.

    ``q`` is the nearest grid index in angle (equivalently in Euclidean distance);
    exact ties go to the smaller index, with index 0 beating ``2^Q - 1``.
    """
    q_bits = int(q_bits)
    if q_bits < 1:
        raise InvalidInput(f"quantization bits must be >= 1, got {q_bits}")
    if not magnitude > 0:
        raise InvalidInput("magnitude must be positive")
    levels = 1 << q_bits
    step = TWO_PI / levels
    ph = np.mod(phase(v), TWO_PI)
    x = ph / step
    lo = np.floor(x)
    frac = x - lo
    q = np.where(frac > 0.5, lo + 1, lo)
    wrap_tie = (frac == 0.5) & (lo == levels - 1)
    q = np.where(wrap_tie, 0, q)
    q = np.mod(q, levels).astype(np.int64)
    return magnitude * np.exp(1j * step * q)


def design_combiner(h_k, q_bits=None):
    """Constant-modulus combiner matched to the dominant left-singular vector of ``h_k``."""
    h_k = as_matrix(h_k, "H_k")
    if not np.any(h_k):
        raise DegenerateChannel("channel matrix is identically zero")
    n_r = h_k.shape[0]
    u = svd(h_k).U[:, 0]
    w = np.exp(1j * phase(u)) / np.sqrt(n_r)
    if q_bits is not None:
        w = quantize_phases(w, q_bits, 1.0 / np.sqrt(n_r))
    return w


def equivalent_channel(realization, combiners):
    """Stack ``w_k^H H_k`` into the ``K x N_t`` equivalent channel."""
    channels = realization.channels if isinstance(realization, ChannelRealization) else realization
    if len(channels) != len(combiners):
        raise InvalidInput(f"{len(channels)} channels but {len(combiners)} combiners")
    rows = []
    for hk, wk in zip(channels, combiners):
        wk = np.asarray(wk).reshape(-1)
        if wk.shape[0] != hk.shape[0]:
            raise InvalidInput(f"combiner length {wk.shape[0]} does not match {hk.shape[0]} receive antennas")
        rows.append(wk.conj() @ hk)
    return np.vstack(rows)


def design_combiners(realization, q_bits=None):
    """Design every user's combiner and assemble the equivalent channel."""
    combiners = tuple(design_combiner(hk, q_bits) for hk in realization.channels)
    return CombinerSet(combiners, equivalent_channel(realization, combiners), q_bits)
