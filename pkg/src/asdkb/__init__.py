"""AsdKB: an ontology-validated triple store of autism spectrum disorder
knowledge with question answering, screening, and expert recommendation."""

__version__ = "0.1.0"
