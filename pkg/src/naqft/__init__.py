"""Fast Fourier transform circuits for the binary tetrahedral/octahedral groups
and the Delta(27)/Delta(54)/Sigma(36x3) subgroups of SU(3), with a brute-force
representation-theoretic verifier and Clifford+T resource accounting."""

from .groups import (
    GroupElement,
    GroupMismatch,
    AmbiguousMatch,
    GROUP_IDS,
    group_spec,
    enumerate_elements,
    faithful_matrix,
    build_cayley,
    multiply,
    inverse,
    conjugate,
    transversal,
)
from .reps import (
    Irrep,
    irreps_of,
    irrep_matrix,
    character,
    dft_matrix,
    regular_rep,
    classify_conjugates,
    irrep_basis_assignment,
)
from .circuits import Wire, Gate, Circuit, RegisterLayout, gate_matrix, compose, invert
from .synthesis import synthesize, step_operators, extend_fft
from .simulate import apply_circuit, extract_group_operator, verify_fft, compare_to_oracle
from .transpile import transpile
from .resources import census, table7, t_count, simcost

__all__ = [
    "GroupElement", "GroupMismatch", "AmbiguousMatch", "GROUP_IDS", "group_spec",
    "enumerate_elements", "faithful_matrix", "build_cayley", "multiply", "inverse",
    "conjugate", "transversal",
    "Irrep", "irreps_of", "irrep_matrix", "character", "dft_matrix", "regular_rep",
    "classify_conjugates", "irrep_basis_assignment",
    "Wire", "Gate", "Circuit", "RegisterLayout", "gate_matrix", "compose", "invert",
    "synthesize", "step_operators", "extend_fft",
    "apply_circuit", "extract_group_operator", "verify_fft", "compare_to_oracle",
    "transpile",
    "census", "table7", "t_count", "simcost",
]
