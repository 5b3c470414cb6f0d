"""Noisy compound Poisson decompounding: simulation and spectral estimators."""

try:
    from ._decompound import *  # noqa: F401,F403
    from ._decompound import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension next to the package
    from _decompound import *  # noqa: F401,F403
    from _decompound import __version__  # noqa: F401
