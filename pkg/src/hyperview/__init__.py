"""Collaboration hypergraphs and the clique vs extra-node comparison."""

__version__ = "0.1.0"
