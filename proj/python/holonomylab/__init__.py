"""Holonomy displacement on unitary frame bundles over Grassmannians.

Thin Python surface over the C++ core: frames, geodesic surfaces, loop
transport and the verification suites.
"""

try:
    from holonomylab._holonomylab import *  # noqa: F401,F403
    from holonomylab import _holonomylab as _core
except ImportError:  # development layout: extension sits on sys.path directly
    from _holonomylab import *  # noqa: F401,F403
    import _holonomylab as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
