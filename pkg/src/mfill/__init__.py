"""Metric geometry of fillings: normed planes, finite metric spaces and discrete filling problems."""

__version__ = "0.1.0"
