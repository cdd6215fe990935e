"""Multilinear identities of the pre-Jordan product in the free dendriform algebra."""

__version__ = "0.1.0"
