"""Backend selection for the hot mesh kernels.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
numpy implementation in ``_kernels_py`` is used. Both expose
``triangle_bivectors``, ``mesh_area``, ``projected_area``, ``ring_xy`` and
``lantern_sums``.
"""
from types import ModuleType

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _kernels_py}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
impl: ModuleType = BACKENDS[BACKEND]


def get_backend(name: str) -> ModuleType:
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None
