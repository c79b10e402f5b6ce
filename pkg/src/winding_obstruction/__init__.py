"""Quantized obstructions for almost representations of discrete groups."""

from .almostrep import (
    AlmostRep,
    amplify,
    defect,
    defect_report,
    evaluate,
    heisenberg_rep,
    perturb,
    surface_pullback,
    voiculescu_pair,
    z2_projective_rep,
)
from .cohomology import Chain2, Cocycle2, hopf_to_bar, is_cycle, kronecker, standard_z2_cycle
from .groups import H3, GroupModel, Word, Z2
from .linalg import TraceKind
from .obstruction import Family, omega, pairing_bar, pairing_hopf, sweep, winding
from .predeterminant import L_tau, Lattice, PathOfInvertibles, path_predeterminant

__version__ = "0.1.0"
