"""Dense complex linear-algebra primitives.

Everything here is a thin, checked wrapper around numpy so that the rest of the
package can rely on a handful of conventions:

* singular values come back in descending order,
* the phase of an exact zero is 0 (``phase(0) == 0``),
* randomness is always passed in explicitly as a ``numpy.random.Generator``.
"""
from typing import NamedTuple

import numpy as np

from .errors import InvalidInput


class SvdResult(NamedTuple):
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex array or raise InvalidInput."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise InvalidInput(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    a = a.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} contains NaN or Inf")
    return a


def phase(z):
    """Entrywise argument with the convention ``phase(0) = 0``.

    ``np.angle`` returns pi for ``-0.0 + 0j``; exact zeros are mapped to 0 here
    so that phase extraction never depends on the sign of a zero.
    """
    z = np.asarray(z)
    out = np.angle(z)
    return np.where(z == 0, 0.0, out)


def unit_phasor(z):
    """``exp(j * phase(z))`` entrywise."""
    return np.exp(1j * phase(z))


def svd(a, full_matrices=False):
    """Singular value decomposition ``A = U @ diag(S) @ V^H``.

    Parameters
    ----------
    a : (m, n) array_like
        Finite complex (or real) matrix.
    full_matrices : bool
        Return square ``U`` and ``V`` instead of the thin factors.

    Returns
    -------
    SvdResult
        ``U`` with orthonormal columns, ``S`` descending and nonnegative, and
        ``V`` (not ``V^H``) with orthonormal columns. Singular vectors are only
        defined up to a per-column phase.
    """
    a = as_matrix(a, "A")
    u, s, vh = np.linalg.svd(a, full_matrices=full_matrices)
    return SvdResult(u, s, vh.conj().T)


def pseudo_inverse(a):
    """Moore-Penrose pseudo-inverse with rank tolerance ``max(m, n) * s_max * 1e-12``."""
    a = as_matrix(a, "A")
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.complex128)
    tol = max(a.shape) * s[0] * 1e-12
    keep = s > tol
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    return (vh.conj().T * inv_s) @ u.conj().T


def numerical_rank(a):
    a = as_matrix(a, "A")
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > max(a.shape) * s[0] * 1e-12))


def fro2(a):
    """Squared Frobenius norm."""
    a = np.asarray(a)
    return float(np.vdot(a, a).real)


def random_semi_unitary(n, k, rng):
    """Draw an ``n x k`` matrix with orthonormal columns.

    The columns are obtained by a QR factorization of an ``n x k`` matrix of
    i.i.d. CN(0, 1) entries, with the phases of ``diag(R)`` folded back into
    ``Q`` so that the result is Haar distributed.
    """
    n, k = int(n), int(k)
    if n < 1 or k < 1:
        raise InvalidInput(f"dimensions must be positive, got n={n}, k={k}")
    if k > n:
        raise InvalidInput(f"cannot draw {k} orthonormal columns in dimension {n}")
    g = (rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))) / np.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * unit_phasor(d)[np.newaxis, :]
