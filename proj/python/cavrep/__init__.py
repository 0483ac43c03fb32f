"""Secret-key distribution rates for cavity-based quantum repeater chains.

Thin wrapper around the compiled ``_cavrep`` extension.  When the extension
is not importable from the normal path (editable/source builds), the
``CAVREP_MODULE_DIR`` environment variable may point at the directory that
contains it.
"""

from __future__ import annotations

import json
import os
import sys

try:
    from ._cavrep import *  # noqa: F401,F403
    from . import _cavrep as _impl
except ImportError:  # pragma: no cover - source-tree fallback
    _module_dir = os.environ.get("CAVREP_MODULE_DIR")
    if not _module_dir:
        raise
    if _module_dir not in sys.path:
        sys.path.insert(0, _module_dir)
    import _cavrep as _impl
    from _cavrep import *  # noqa: F401,F403

__all__ = [name for name in dir(_impl) if not name.startswith("_")] + [
    "evaluate",
    "optimize",
    "validate",
    "default_config",
]


def default_config() -> dict:
    """Default run configuration as a Python dictionary."""
    return json.loads(_impl.default_config_json())


def evaluate(config: dict) -> dict:
    """Evaluate the ``repeater`` block of a configuration dictionary."""
    return json.loads(_impl.evaluate_json(json.dumps(config)))


def optimize(config: dict) -> list:
    """Optimize over the ``sweep`` block; one result row per sweep family."""
    return json.loads(_impl.optimize_json(json.dumps(config)))


def validate(config: dict) -> list:
    """Monte-Carlo-check the analytic timing model per the ``validate`` block."""
    return json.loads(_impl.validate_json(json.dumps(config)))
