"""vergen: exact tools for vertex-generated polytopes.

This package decides whether a rational polytope is covered by its
λ-homothetic copies at the vertices, brackets the best such λ, and builds
the constructions that produce vertex-generated polytopes.
"""

__version__ = "0.1.0"
