"""Backend selection: compiled core when built, pure Python otherwise.

SEMISPEC_PURE=1 forces the pure backend.
"""

from __future__ import annotations

import os

from . import _purecore

if os.environ.get("SEMISPEC_PURE") == "1":
    core = _purecore
else:
    try:
        from . import _fastcore as core  # type: ignore[no-redef]
    except ImportError:
        core = _purecore

BACKEND: str = core.BACKEND_NAME
pure = _purecore


def backend_name() -> str:
    return BACKEND
