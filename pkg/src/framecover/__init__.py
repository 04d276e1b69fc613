"""Secure frameproof codes, biclique covers of Kneser graphs, and cover-free families."""

__version__ = "0.1.0"
