"""F_p hot kernels: compiled extension when built, numpy fallback otherwise.

All callers go through the module-level names below so that
:func:`set_backend` can switch implementations at runtime (benchmarks and
cross-checking tests use this).
"""
from __future__ import annotations

from . import _pycore

try:
    from . import _fastcore
except ImportError:  # extension not built
    _fastcore = None

_IMPLS = {"python": _pycore}
if _fastcore is not None:
    _IMPLS["cython"] = _fastcore

BACKEND = "cython" if _fastcore is not None else "python"
rref_modp = _IMPLS[BACKEND].rref_modp
batch_rank_modp = _IMPLS[BACKEND].batch_rank_modp
orbit_min_index = _IMPLS[BACKEND].orbit_min_index
orbit_indices = _IMPLS[BACKEND].orbit_indices


def available_backends() -> list[str]:
    return sorted(_IMPLS)


def set_backend(name: str) -> None:
    global BACKEND, rref_modp, batch_rank_modp, orbit_min_index, orbit_indices
    if name not in _IMPLS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    impl = _IMPLS[name]
    BACKEND = name
    rref_modp = impl.rref_modp
    batch_rank_modp = impl.batch_rank_modp
    orbit_min_index = impl.orbit_min_index
    orbit_indices = impl.orbit_indices
