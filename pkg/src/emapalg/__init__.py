"""emapalg: exact computations with equivariant map algebras.

Core objects: exact scalars in Q(zeta_N), Lie algebras by structure constants,
finite group actions, graded coordinate rings, fixed-point map algebras in
degree windows, and their finite-dimensional representations.
"""

__version__ = "0.1.0"
