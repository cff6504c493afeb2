"""Backend selection for the LCS kernels.

The compiled extension is used when importable.  Setting
``INSDELCODES_BACKEND=python`` forces the numpy fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def available_backends() -> dict[str, ModuleType]:
    out = {"python": _fallback}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def _select() -> tuple[str, ModuleType]:
    wanted = os.environ.get("INSDELCODES_BACKEND", "").strip().lower()
    backends = available_backends()
    if wanted:
        if wanted not in backends:
            raise ImportError(f"INSDELCODES_BACKEND={wanted!r} is not available; have {sorted(backends)}")
        return wanted, backends[wanted]
    if "cython" in backends:
        return "cython", backends["cython"]
    return "python", _fallback


BACKEND, _impl = _select()

lcs = _impl.lcs
lcs_many = _impl.lcs_many
best_against = _impl.best_against
best_pair = _impl.best_pair
