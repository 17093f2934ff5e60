"""Bipartizing matchings: exact, parameterized and class-specific solvers,
structural NO-certificates, a neighborhood-diversity kernel, and the gadget
reduction from 1-in-3 SAT."""

from .classes import ClassPromiseError, NoSmallDominatingSet, solve_domset, solve_p5_free, solve_triangle_only
from .exact import SizeLimitError, SolveStats, enumerate_all, solve_abm, solve_brute, solve_exact
from .fpt_vc import minimum_vertex_cover, solve_vc
from .graph import Certificate, Graph, Instance, check_certificate, verify_certificate
from .io import format_graph, parse_graph
from .kernel import Rejected, kernelize, lift_certificate, nd_decompose

__version__ = "0.1.0"

__all__ = [
    "Certificate", "ClassPromiseError", "Graph", "Instance", "NoSmallDominatingSet", "Rejected",
    "SizeLimitError", "SolveStats", "check_certificate", "enumerate_all", "format_graph",
    "kernelize", "lift_certificate", "minimum_vertex_cover", "nd_decompose", "parse_graph",
    "solve_abm", "solve_brute", "solve_domset", "solve_exact", "solve_p5_free",
    "solve_triangle_only", "solve_vc", "verify_certificate",
]
