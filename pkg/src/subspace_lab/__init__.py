"""Distant graph and Grassmann graph on the m-subspaces of GF(q)^(2m)."""
from .field import FieldSpec, arith, frobenius_orbit, make_field
from .grassmann import (
    Grassmannian,
    Pencil,
    Subspace,
    annihilator,
    enumerate_grassmannian,
    gaussian_binomial,
    is_complement,
    join,
    meet,
    pencil,
    pencil_through,
    subspace_from_rows,
)
from .graphs import Graph, bfs_distances, build_distant_graph, build_grassmann_graph, diameter, export
from .linalg import Matrix, invert, kernel, rref
from .report import VerificationReport

__all__ = [
    "FieldSpec", "arith", "frobenius_orbit", "make_field",
    "Grassmannian", "Pencil", "Subspace", "annihilator", "enumerate_grassmannian",
    "gaussian_binomial", "is_complement", "join", "meet", "pencil", "pencil_through",
    "subspace_from_rows",
    "Graph", "bfs_distances", "build_distant_graph", "build_grassmann_graph", "diameter", "export",
    "Matrix", "invert", "kernel", "rref",
    "VerificationReport",
]
