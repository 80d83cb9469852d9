"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise the pure-Python
implementation.  Both expose ``defeat_relation``, ``fixpoint_trace`` and
``apply_pi`` with identical results.
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active: ModuleType = _ckernels or _pykernels


def backend_name() -> str:
    return "cython" if _active is _ckernels else "python"


def use_backend(name: str) -> None:
    """Switch the process-wide backend (``"python"`` or ``"cython"``)."""
    global _active
    try:
        _active = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available; have {sorted(BACKENDS)}") from None


def get() -> ModuleType:
    return _active
