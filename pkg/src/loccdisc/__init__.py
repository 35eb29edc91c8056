"""Local (in)distinguishability of maximally entangled states."""

__version__ = "0.1.0"
