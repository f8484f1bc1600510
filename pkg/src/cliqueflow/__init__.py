"""Clique-to-interdiction reduction, its LP relaxation, and an audit harness."""

from cliqueflow.graph_core import CliqueWitness, Graph

__all__ = ["CliqueWitness", "Graph"]
__version__ = "0.1.0"
