"""Backend selection for the hot loops.

The compiled module is used when it imported successfully, the data fits in
int64 with headroom, and ``CONTRACT_FORGE_PURE_PYTHON`` is not set. Otherwise
the pure-Python implementation runs on arbitrary-precision ints.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_INT64_HEADROOM = 2**62

if os.environ.get("CONTRACT_FORGE_PURE_PYTHON") == "1":
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def _pick(backend: str | None, magnitude: int, n: int, m: int):
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    # payments are bounded by (m+1)*max|c| and payoffs by n times that plus rewards
    if _compiled is not None and magnitude * (n + 2) * (n + m + 2) < _INT64_HEADROOM:
        return _compiled
    return _kernels_py


def _magnitude(rows) -> int:
    return max((abs(v) for row in rows for v in row), default=0)


def oracle_search(rewards, costs, first_lo, first_hi, backend=None):
    mod = _pick(backend, _magnitude([rewards, *costs]), len(costs), len(rewards) - 1)
    return mod.oracle_search(rewards, costs, first_lo, first_hi)


def minimal_payments(rewards, costs, target, backend=None):
    mod = _pick(backend, _magnitude([rewards, *costs]), len(costs), len(rewards) - 1)
    return mod.minimal_payments(rewards, costs, target)


def dp_table(phi, backend=None):
    mod = _pick(backend, _magnitude(phi), len(phi), len(phi[0]) - 1)
    return mod.dp_table(phi)
