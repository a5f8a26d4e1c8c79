"""First L^p-cohomology of solvable Lie groups: exact classification and desk-scale numerics."""

__version__ = "0.1.0"
