"""Zeta zeros, derivatives of zeta at the zeros and their discrete moments.

Thin bindings over the C++ library. Heavy calls release the GIL.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.3.0"
