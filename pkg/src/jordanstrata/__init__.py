"""Exact computations with Jordan classes, sheets and strata in simple groups.

Modules: ``core`` (root systems, exact lattices), ``weyl`` (Weyl groups),
``pseudolevi`` (pseudo-Levi subsystems and torus cosets), ``orbits``
(classical nilpotent orbits and induction), ``classical`` (epsilon model and
classical factors), ``stratify`` (Jordan classes and closures),
``localgeom`` (local branch counts) and ``cli``.
"""

from .core import build_root_system
from .weyl import enumerate_weyl
from .pseudolevi import enumerate_pseudo_levis, pseudo_levi, pseudo_levi_from_nodes
from .orbits import OrbitLabel, parse_orbit_label
from .stratify import (
    JordanTriple, GroupPoint, canonical_triple, enumerate_jordan_classes, group_point,
    jordan_triple,
)

__version__ = "0.1.0"
