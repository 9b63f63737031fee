"""Kernel backend selection.

Imports the compiled kernels when they were built and the environment
variable ``CAMBRIAN_FORCE_PURE`` is unset, otherwise the pure-Python twins.
The compiled clique kernel packs vertex sets into two machine words, so
graphs beyond 128 vertices silently fall back to the pure path.
"""

from __future__ import annotations

import os

from . import _pykernels

_COMPILED_CLIQUE_LIMIT = 128

if os.environ.get("CAMBRIAN_FORCE_PURE"):
    _ckernels = None
else:
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        _ckernels = None


def active_backend() -> str:
    """Name of the kernel set in use: 'compiled' or 'pure'."""
    return "pure" if _ckernels is None else "compiled"


def maximal_cliques(compat: list[int]) -> list[int]:
    if _ckernels is not None and len(compat) <= _COMPILED_CLIQUE_LIMIT:
        return _ckernels.maximal_cliques(compat)
    return _pykernels.maximal_cliques(compat)


def lattice_violation(
    upsets: list[int], downsets: list[int]
) -> tuple[str, int, int] | None:
    if _ckernels is not None:
        return _ckernels.lattice_violation(upsets, downsets)
    return _pykernels.lattice_violation(upsets, downsets)
