"""Recognition and construction of stick graphs.

Vertical sticks (set A) and horizontal sticks (set B) stand on a common
ground line of slope -1.  The package decides whether a bipartite graph has
such a representation under given orders and lengths, builds one when it
exists, and generates hard instances with witnesses.
"""
from .core import (
    Infeasible,
    Instance,
    IsolatedVertexPresent,
    MalformedInstance,
    MissingVertex,
    Representation,
    StickError,
    VerifyReport,
    components,
    intersects,
    verify_representation,
)
from .fixed_length import build_system, solve_fixed_with_order, solve_stick_fix_ab
from .stick_a import solve_stick_a
from .sweep_ab import ground_order, solve_stick_ab

__all__ = [
    "Infeasible",
    "Instance",
    "IsolatedVertexPresent",
    "MalformedInstance",
    "MissingVertex",
    "Representation",
    "StickError",
    "VerifyReport",
    "build_system",
    "components",
    "ground_order",
    "intersects",
    "solve_fixed_with_order",
    "solve_stick_a",
    "solve_stick_ab",
    "solve_stick_fix_ab",
    "verify_representation",
]
