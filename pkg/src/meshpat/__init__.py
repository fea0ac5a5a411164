"""Mesh patterns whose mesh is superfluous: decision, counting and brute-force checks."""

from .coincidence import av_count, coincidence_sweep, minimal_basis_check, verify_coincidence, witness
from .diagonals import EnclosedDiagonal, candidate_diagonals, enclosed_diagonals, is_superfluous
from .enumeration import sup_mesh_direct, sup_mesh_ie, sup_mesh_table
from .errors import BoundExceeded, PreconditionError, TheoremViolation
from .mesh import MeshPattern, contains_mesh, mesh_occurrences, parse_mesh_pattern, repair_occurrence
from .perm import Permutation, contains_classical, flatten, occurrences, parse_perm

__version__ = "0.1.0"
