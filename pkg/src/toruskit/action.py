"""Translation actions on the torus and their relation lattices.

An :class:`ActionSpec` describes the action of a dual group on ``T^n``
by translation along ``n`` generators ``g_j``:

* ``"real-flow"``: ``G = R^d`` and ``x in R^d`` moves ``z`` to
  ``z + (g_j . x)_j mod 1``.
* ``"lattice-action"``: ``G = T^d`` with dual ``Z^d``; same formula for
  ``x in Z^d``, generators matter only modulo ``Z^d``.

The relation lattice ``{u in Z^n : sum u_j g_j = 0 in G}`` decides
everything else here: the orbit closure ``H`` of the origin
(``H = T^r x prod Z/d_i``), Kronecker solvability, unique ergodicity and
the coset of ``H`` a point lies in.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .exceptions import BasisMismatchError, ShapeError
from .linalg import (
    Lattice,
    Matrix,
    preimage_lattice,
    rational_kernel_lattice,
    snf,
    unimodular_inverse,
)
from .realfield import RealBasis, SymbolicReal, coefficient_matrix

__all__ = [
    "REAL_FLOW",
    "LATTICE_ACTION",
    "FAMILIES",
    "ActionSpec",
    "RelationLattice",
    "OrbitStructure",
    "CosetSignature",
    "KroneckerResult",
    "relation_lattice",
    "orbit_structure",
    "kronecker_solvable",
    "is_uniquely_ergodic",
    "coset_signature",
    "circular_distance",
]

REAL_FLOW = "real-flow"
LATTICE_ACTION = "lattice-action"
FAMILIES = (REAL_FLOW, LATTICE_ACTION)

SIGNATURE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ActionSpec:
    """Dual-group action data.

    ``generators[j]`` is the ``d``-vector ``g_j``; all coordinates share
    one :class:`RealBasis`.  For a lattice action the ``"1"`` coordinate of
    every generator is reduced into ``[0, 1)`` on construction.
    """

    family: str
    generators: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        gens = tuple(tuple(g) for g in self.generators)
        if not gens:
            raise ShapeError("an action needs at least one generator")
        d = len(gens[0])
        if d < 1:
            raise ShapeError("time dimension d must be at least 1")
        basis = gens[0][0].basis
        for g in gens:
            if len(g) != d:
                raise ShapeError("all generators must have the same dimension d")
            if any(x.basis != basis for x in g):
                raise BasisMismatchError("generators use different bases")
        if self.family == LATTICE_ACTION:
            gens = tuple(tuple(x.mod_one() for x in g) for g in gens)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_values(cls, family: str, basis: RealBasis, generators) -> "ActionSpec":
        """Convenience constructor from rationals, mappings or SymbolicReals.

        ``generators`` is a sequence of ``n`` entries; each entry is either a
        single value (``d = 1``) or a length-``d`` sequence of values.  A value
        is a SymbolicReal, a ``{symbol: "p/q"}`` mapping or a rational.
        """
        def conv(x):
            if isinstance(x, SymbolicReal):
                return x
            if isinstance(x, dict):
                return basis.element(x)
            return basis.constant(Fraction(x))

        out = []
        for g in generators:
            if isinstance(g, (list, tuple)):
                out.append(tuple(conv(x) for x in g))
            else:
                out.append((conv(g),))
        return cls(family, tuple(out))

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def d(self) -> int:
        return len(self.generators[0])

    @property
    def basis(self) -> RealBasis:
        return self.generators[0][0].basis

    def coefficient_matrix(self) -> Matrix:
        return coefficient_matrix(self.generators)

    def combination(self, u) -> tuple:
        """``sum_j u_j g_j`` as a ``d``-vector of SymbolicReals."""
        if len(u) != self.n:
            raise ShapeError("relation vector length differs from n")
        out = []
        for i in range(self.d):
            acc = self.basis.zero()
            for uj, g in zip(u, self.generators):
                if uj:
                    acc = acc + g[i] * uj
            out.append(acc)
        return tuple(out)

    def satisfies_relation(self, u) -> bool:
        """Exact test of ``sum u_j g_j = 0`` in ``G``."""
        values = self.combination(u)
        if self.family == REAL_FLOW:
            return all(v.is_zero() for v in values)
        return all(v.is_integer() for v in values)

    def numeric_generators(self) -> np.ndarray:
        """``(n, d)`` float array of generator values."""
        return np.array([[x.evaluate() for x in g] for g in self.generators], dtype=float)


@dataclass(frozen=True)
class RelationLattice:
    """The annihilator ``H^perp`` of the orbit closure, in HNF."""

    lattice: Lattice
    family: str = REAL_FLOW

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def basis(self) -> Matrix:
        return self.lattice.basis

    def rows(self) -> list:
        return self.lattice.rows()

    def contains(self, u) -> bool:
        return self.lattice.contains(u)

    def is_trivial(self) -> bool:
        return self.lattice.is_trivial()


def relation_lattice(action: ActionSpec) -> RelationLattice:
    """Integer relations among the generators.

    For a real flow this is the integral kernel of the full symbol
    coefficient matrix.  For a lattice action the non-unit symbol rows must
    vanish and the unit rows must land in ``Z^d``.
    """
    m = action.coefficient_matrix()
    if action.family == REAL_FLOW:
        return RelationLattice(rational_kernel_lattice(m), REAL_FLOW)
    nsym = len(action.basis)
    unit_rows = [i * nsym for i in range(action.d)]
    other_rows = [r for r in range(m.rows) if r % nsym]
    if other_rows:
        kernel = rational_kernel_lattice(m.take_rows(other_rows))
    else:
        kernel = Lattice.full(action.n)
    return RelationLattice(preimage_lattice(m.take_rows(unit_rows), kernel), LATTICE_ACTION)


@dataclass(frozen=True)
class OrbitStructure:
    """``H = closure(Orb(0)) ~= T^free_rank x prod Z/d_i``.

    In the coordinates ``phi = coordinate_change @ theta`` (a torus
    automorphism), ``H`` is ``prod (1/d_i) Z / Z`` on the first
    ``relation_rank`` coordinates times the full torus on the rest.
    ``parametrization`` is the inverse change, ``theta = parametrization @ phi``.
    """

    free_rank: int
    invariant_factors: tuple
    relation_rank: int
    all_factors: tuple
    coordinate_change: Matrix
    parametrization: Matrix

    @property
    def n(self) -> int:
        return self.free_rank + self.relation_rank

    @property
    def torsion_order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def torus_directions(self) -> list:
        """Integer directions spanning the identity component of ``H``."""
        v = self.parametrization
        return [list(v.column(j)) for j in range(self.relation_rank, self.n)]

    def torsion_generators(self) -> list:
        """Points of ``T^n`` (as Fractions) generating ``H`` modulo its identity component."""
        v = self.parametrization
        out = []
        for j, f in enumerate(self.all_factors):
            if f > 1:
                out.append([Fraction(x, f) % 1 for x in v.column(j)])
        return out


def orbit_structure(rl: RelationLattice, n: Optional[int] = None) -> OrbitStructure:
    if n is None:
        n = rl.ambient_dim
    if n != rl.ambient_dim:
        raise ShapeError("n differs from the relation lattice dimension")
    k = rl.rank
    if k == 0:
        eye = Matrix.identity(n)
        return OrbitStructure(n, (), 0, (), eye, eye)
    d, _, v = snf(rl.basis)
    factors = tuple(d[i, i] for i in range(k))
    return OrbitStructure(
        free_rank=n - k,
        invariant_factors=tuple(f for f in factors if f > 1),
        relation_rank=k,
        all_factors=factors,
        coordinate_change=unimodular_inverse(v),
        parametrization=v,
    )


class KroneckerResult(NamedTuple):
    solvable: bool
    certificate: Optional[list]


def kronecker_solvable(action: ActionSpec, theta: Sequence[SymbolicReal],
                       rl: Optional[RelationLattice] = None) -> KroneckerResult:
    """Can ``(e^{2 pi i theta_j})`` be approximated by ``(gamma(g_j))``?

    Solvable iff ``u . theta`` is an integer for every relation ``u``; it
    suffices to check the HNF rows.  The certificate is a violating row.
    """
    if len(theta) != action.n:
        raise ShapeError("theta length differs from n")
    if any(t.basis != action.basis for t in theta):
        raise BasisMismatchError("theta uses a different basis than the action")
    if rl is None:
        rl = relation_lattice(action)
    for u in rl.rows():
        acc = action.basis.zero()
        for uj, t in zip(u, theta):
            if uj:
                acc = acc + t * uj
        if not acc.is_integer():
            return KroneckerResult(False, u)
    return KroneckerResult(True, None)


def is_uniquely_ergodic(action: ActionSpec) -> bool:
    """Unique ergodicity (equivalently minimality) of the action on ``T^n``."""
    return relation_lattice(action).is_trivial()


def circular_distance(a, b):
    """Distance on ``R/Z``: ``min(x, 1 - x)`` for ``x = (a - b) mod 1``."""
    x = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), 1.0)
    return np.minimum(x, 1.0 - x)


def _frac(x):
    r = np.mod(x, 1.0)
    return np.where(r >= 1.0, 0.0, r)


@dataclass(frozen=True)
class CosetSignature:
    """Residues ``u_i . z mod 1`` over the HNF rows of the relation lattice."""

    values: tuple

    def __len__(self):
        return len(self.values)

    def same_coset(self, other: "CosetSignature", tolerance: float = SIGNATURE_TOLERANCE) -> bool:
        if len(self) != len(other):
            raise ShapeError("signatures of different length")
        if not self.values:
            return True
        return bool(np.all(circular_distance(self.values, other.values) <= tolerance))


def coset_signature(rl: RelationLattice, z) -> CosetSignature:
    z = np.asarray(z, dtype=float)
    if z.shape != (rl.ambient_dim,):
        raise ShapeError(f"point must have {rl.ambient_dim} coordinates")
    if rl.rank == 0:
        return CosetSignature(())
    b = np.array(rl.rows(), dtype=float)
    return CosetSignature(tuple(float(v) for v in _frac(b @ z)))
