"""Backend selection for the clustering kernels.

The compiled extension is used when it was built; otherwise the pure-Python
implementation is used. ``use_backend`` switches at runtime (handy for tests
and benchmarks).
"""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

_active = _compiled if _compiled is not None else _kernels_py


def backend_name():
    return "compiled" if _active is _compiled and _compiled is not None else "python"


def use_backend(name):
    """Select ``"compiled"`` or ``"python"`` kernels for subsequent calls."""
    global _active
    try:
        _active = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def hac_merge(pairwise, target):
    return _active.hac_merge(pairwise, target)


def round_robin(dist, m):
    return _active.round_robin(dist, m)
