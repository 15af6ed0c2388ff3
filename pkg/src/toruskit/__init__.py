"""Exact relation lattices and Følner averages for translation actions on tori."""

from .action import (
    FAMILIES,
    LATTICE_ACTION,
    REAL_FLOW,
    ActionSpec,
    CosetSignature,
    KroneckerResult,
    OrbitStructure,
    RelationLattice,
    coset_signature,
    is_uniquely_ergodic,
    kronecker_solvable,
    orbit_structure,
    relation_lattice,
)
from .config import ProjectConfig, load_config, parse_config
from .conjugacy import (
    ConjugacyResult,
    Reason,
    Status,
    apply_automorphism,
    find_conjugacy,
    verify_conjugacy_numerically,
)
from .exceptions import (
    BasisMismatchError,
    ConfigError,
    PreconditionError,
    RankDeficientError,
    ShapeError,
    ToruskitError,
)
from .folner import (
    LATTICE_BOX,
    REAL_BOX,
    AverageTrace,
    BohrPolynomial,
    FolnerFamily,
    GaussianDensity,
    MeasureModel,
    TrigPolynomial,
    UniformArc,
    bohr_mean,
    bohr_orthogonality_trace,
    character_weight,
    haar_target,
    weyl_average,
    weyl_envelope,
    weyl_trace,
    wiener_atom,
    wiener_energy,
)
from .linalg import Lattice, Matrix, hnf, integer_kernel, snf, solve_integer_linear
from .realfield import RealBasis, SymbolicReal, coefficient_matrix, power_basis_coords

__version__ = "0.1.0"
