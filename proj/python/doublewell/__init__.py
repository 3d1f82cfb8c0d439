"""Semiclassical thermal density of the quartic double well.

Thin re-export of the compiled extension; see the project README for the
physics conventions (dimensionless q0, Theta, g).
"""

from ._doublewell import *  # noqa: F401,F403
from ._doublewell import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
