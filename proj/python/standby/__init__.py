"""Lifetime distribution of an n-element cold-standby repairable system.

Thin Python layer over the C++ core: transient Kolmogorov solution by
uniformization, exact Laplace transforms of the state probabilities,
reproducible Monte Carlo, and convergence diagnostics for the
high-reliability limit of the normalized lifetime.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
