"""Numerical laboratory for exact classical automata dual to quantum systems.

The package builds, side by side, classical deterministic systems
(permutation automata, integer strings, +-1 sign fields) and the
quantum operator structures they reproduce (Hamiltonians with
exp(-iH dt) equal to the automaton step, canonical position/momentum
pairs on integer windows, lattice mover algebras, fermion chains), and
verifies the dictionary between the two numerically.
"""

__version__ = "0.1.0"
