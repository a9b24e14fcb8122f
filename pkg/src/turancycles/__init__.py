"""Exact cycle counting, cycle blow-ups, weight certificates, structure
extraction, and small-graph extremal search, with independent brute-force
oracles at desk scale."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("turancycles")
except PackageNotFoundError:  # pragma: no cover - source tree without install
    __version__ = "0.0.0+source"

from .graph import Graph, build_graph, density, distance, vertex_density
from .cycles import count_cycles, enumerate_cycles, has_cycle_of_length, shortest_odd_cycle
from .blowup import BlowupSpec, exact_blowup_cycle_count, leading_coefficient, materialize

__all__ = [
    "Graph",
    "build_graph",
    "density",
    "vertex_density",
    "distance",
    "count_cycles",
    "enumerate_cycles",
    "has_cycle_of_length",
    "shortest_odd_cycle",
    "BlowupSpec",
    "materialize",
    "exact_blowup_cycle_count",
    "leading_coefficient",
    "__version__",
]
