"""Spectral feasibility tools for bipartite (k, g)-graphs of excess 4."""

from .polycore import IntPolynomial, cyclotomic, cycle_charpoly, dickson, euler_totient, half_trace
from .irreducibility import (
    IrreducibilityCertificate,
    eisenstein_check,
    is_irreducible_over_Q,
    rational_roots,
    shifted_dickson_certificate,
)
from .graphcore import Graph, builtin, excess_graph, moore_bound, parse_graph6, profile, write_graph6
from .feasibility import scan

__version__ = "0.1.0"


def load_schema(verb: str) -> dict:
    """JSON schema for the ``--format json`` output of a CLI verb."""
    import json
    from importlib.resources import files

    return json.loads(files(__name__).joinpath("schemas", f"{verb}.json").read_text())
