"""Integral binary quartic forms: invariants, GL2(Z)-classes, p-adic densities,
2-Selmer sizes and class-group 2-torsion statistics."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
