"""Enumeration backend selection.

Prefers the compiled kernel when it imported cleanly; falls back to the
pure-Python twin.  Set MODALTOPOS_KERNEL=py (or =c) to force a backend.
"""

from . import _nat_kernel_py
from .config import kernel_choice, visit_budget
from .errors import SizeGuardExceeded

_choice = kernel_choice()
if _choice == "py":
    _impl = _nat_kernel_py
else:
    try:
        from . import _nat_kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "c":
            raise
        _impl = _nat_kernel_py

BACKEND = "c" if _impl.__name__.endswith("_nat_kernel") else "py"


def enumerate_families(src_sizes, tgt_sizes, arrows, *, count_only=False,
                       max_visits=None):
    """All natural families as index tables, or their count.

    Raises SizeGuardExceeded when the search outgrows the visit budget.
    """
    budget = visit_budget(max_visits)
    out, visits, exhausted = _impl.enumerate_families(
        list(src_sizes), list(tgt_sizes), list(arrows), count_only, budget)
    if exhausted:
        raise SizeGuardExceeded(
            "natural-family search exceeded %d visits "
            "(sizes %r -> %r); raise the size guard to proceed"
            % (budget, list(src_sizes), list(tgt_sizes)))
    return out
