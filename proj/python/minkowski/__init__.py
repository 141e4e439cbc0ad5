"""Lorentz-Minkowski 3-space geometry: causal structure, curves, surfaces and CMC solvers."""

from ._minkowski import *  # noqa: F401,F403
from ._minkowski import __doc__  # noqa: F401

E1 = (1.0, 0.0, 0.0)
E2 = (0.0, 1.0, 0.0)
E3 = (0.0, 0.0, 1.0)
