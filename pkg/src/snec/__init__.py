"""snec: exact partition/Kronecker datasets, elliptic-curve a_p murmurations,
and a small from-scratch ML kit, behind a batch CLI."""

__version__ = "0.1.0"
