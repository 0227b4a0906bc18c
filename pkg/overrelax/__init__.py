# overrelax/__init__.py
"""Gibbs sampling, Adler overrelaxation and ordered over/underrelaxation"""

__version__ = "0.1.0"
