"""Ontology visualization engine: parse OWL, classify, lay out, serve."""

__version__ = "0.1.0"
