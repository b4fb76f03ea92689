"""Exact arithmetic for finite-rank torsion-free abelian groups.

Groups are given as finite sums of rank-1 subgroups Z[S^-1]*v of Q^n.  The
submodules cover rational linear algebra (linalg), rank-1 types (rank1),
the group model (groups), bases and decompositions (bases, decomp),
quasi-equality (quasi), Jonsson bases (jonsson), strong indecomposability
(indec), brute-force cross-checks (oracle), seeded test corpora (corpus),
the text format (fileformat) and the command line (cli).
"""

__version__ = "0.1.0"
