"""Size-guard knobs.

Enumerations over function spaces blow up exponentially, so every search
carries a node-visit budget, and categories carry a hard arrow cap.  Both
can be widened explicitly; nothing in the package ever widens them
silently.
"""

import os

DEFAULT_MAX_ARROWS = 64
DEFAULT_VISIT_BUDGET = 20_000_000

_ENV_BUDGET = "MODALTOPOS_SIZE_GUARD"
_ENV_KERNEL = "MODALTOPOS_KERNEL"


def visit_budget(override=None):
    if override is not None:
        return int(override)
    env = os.environ.get(_ENV_BUDGET)
    if env:
        return int(env)
    return DEFAULT_VISIT_BUDGET


def kernel_choice():
    """Requested enumeration backend: "c", "py" or "" (auto)."""
    return os.environ.get(_ENV_KERNEL, "").strip().lower()
