"""Root systems, star-closed line systems, 3-gradings and Chevalley algebras, in exact arithmetic."""

from .roots import RootSystem, build, build_non_simply_laced, build_simply_laced, identify_type
from .lines import LineSystem, lines_of, star_closure, star_decomposition
from .gradings import ThreeGrading, build_mesh, enumerate_three_gradings, exceptional_sequence
from .chevalley import LieAlgebra, build_chevalley, verify_jacobi

__all__ = [
    "RootSystem", "build", "build_non_simply_laced", "build_simply_laced", "identify_type",
    "LineSystem", "lines_of", "star_closure", "star_decomposition",
    "ThreeGrading", "build_mesh", "enumerate_three_gradings", "exceptional_sequence",
    "LieAlgebra", "build_chevalley", "verify_jacobi",
]
__version__ = "0.1.0"
