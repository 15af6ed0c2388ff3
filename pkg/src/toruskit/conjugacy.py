"""Topological conjugacy of minimal torus translation actions.

Two minimal actions with generators ``g`` and ``h`` are conjugate exactly
when ``h = P g`` for some ``P`` in ``GL(n, Z)``; every conjugacy is then
``z -> c + P z`` and ``P`` is unique.  :func:`find_conjugacy` decides this
exactly and returns the witness.
"""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .action import REAL_FLOW, ActionSpec, circular_distance, relation_lattice
from .exceptions import BasisMismatchError, ShapeError
from .linalg import Matrix, is_unimodular, solve_integer_linear

__all__ = [
    "Status",
    "Reason",
    "ConjugacyResult",
    "find_conjugacy",
    "apply_automorphism",
    "verify_conjugacy_numerically",
]


class Status(str, enum.Enum):
    CONJUGATE = "conjugate"
    NOT_CONJUGATE = "not-conjugate"
    NOT_APPLICABLE = "not-applicable"


class Reason(str, enum.Enum):
    NO_RATIONAL_SOLUTION = "no-rational-solution"
    NON_INTEGRAL_SOLUTION = "non-integral-solution"
    NOT_UNIMODULAR = "not-unimodular"
    NOT_MINIMAL = "not-minimal"


@dataclass(frozen=True)
class ConjugacyResult:
    """Outcome of :func:`find_conjugacy`.

    ``matrix`` is set only for ``Status.CONJUGATE``.  For
    ``Status.NOT_APPLICABLE``, ``relation`` is a nonzero relation vector
    witnessing that the action named by ``side`` (``"g"`` or ``"h"``) is
    not minimal.
    """

    status: Status
    matrix: Optional[Matrix] = None
    reason: Optional[Reason] = None
    relation: Optional[list] = None
    side: Optional[str] = None

    @property
    def is_conjugate(self) -> bool:
        return self.status is Status.CONJUGATE

    def to_dict(self) -> dict:
        out = {"status": self.status.value}
        if self.matrix is not None:
            out["P"] = self.matrix.tolist()
        if self.reason is not None:
            out["reason"] = self.reason.value
        if self.relation is not None:
            out["relation"] = list(self.relation)
            out["side"] = self.side
        return out


def _check_compatible(g: ActionSpec, h: ActionSpec):
    if g.family != h.family:
        raise ShapeError(f"families differ: {g.family} vs {h.family}")
    if g.d != h.d or g.n != h.n:
        raise ShapeError(f"shapes differ: (d={g.d}, n={g.n}) vs (d={h.d}, n={h.n})")
    if g.basis != h.basis:
        raise BasisMismatchError("actions are declared over different bases")


def find_conjugacy(g: ActionSpec, h: ActionSpec) -> ConjugacyResult:
    _check_compatible(g, h)
    for side, action in (("g", g), ("h", h)):
        rl = relation_lattice(action)
        if not rl.is_trivial():
            return ConjugacyResult(Status.NOT_APPLICABLE, reason=Reason.NOT_MINIMAL,
                                   relation=rl.rows()[0], side=side)

    # Column j of a holds the symbol coordinates of g_j, so a @ P^T = b.
    a = g.coefficient_matrix()
    b = h.coefficient_matrix()
    if g.family == REAL_FLOW:
        sol = solve_integer_linear(a, b)
        mod_rows = None
    else:
        # Equality only holds modulo Z^d: solve on the irrational symbols
        # (full column rank by minimality) and test the unit rows afterwards.
        nsym = len(g.basis)
        rows = [r for r in range(a.rows) if r % nsym]
        mod_rows = [i * nsym for i in range(g.d)]
        sol = solve_integer_linear(a.take_rows(rows), b.take_rows(rows))

    if sol.status == "inconsistent":
        return ConjugacyResult(Status.NOT_CONJUGATE, reason=Reason.NO_RATIONAL_SOLUTION)
    if sol.status == "non-integral":
        return ConjugacyResult(Status.NOT_CONJUGATE, reason=Reason.NON_INTEGRAL_SOLUTION)
    pt = sol.solution
    if mod_rows is not None:
        residue = a.take_rows(mod_rows) @ pt - b.take_rows(mod_rows)
        if not residue.is_integral():
            return ConjugacyResult(Status.NOT_CONJUGATE, reason=Reason.NO_RATIONAL_SOLUTION)
    p = pt.T
    if not is_unimodular(p):
        return ConjugacyResult(Status.NOT_CONJUGATE, reason=Reason.NOT_UNIMODULAR)
    return ConjugacyResult(Status.CONJUGATE, matrix=p)


def apply_automorphism(p, z) -> np.ndarray:
    """Torus automorphism in additive coordinates: ``frac(P z)``."""
    pm = _as_float_matrix(p)
    z = np.asarray(z, dtype=float)
    out = np.mod(pm @ z, 1.0)
    return np.where(out >= 1.0, 0.0, out)


def _as_float_matrix(p) -> np.ndarray:
    if isinstance(p, Matrix):
        p = p.tolist()
    return np.array(p, dtype=float)


def verify_conjugacy_numerically(g: ActionSpec, h: ActionSpec, p, c=None, samples: int = 256,
                                 seed: int = 0, box: float = 10.0) -> float:
    """Largest circular deviation of ``c + P(Phi^g_x z)`` from ``Phi^h_x(c + P z)``.

    Group elements ``x`` are drawn uniformly from ``[-box, box]^d`` (integer
    points for lattice actions) and ``z`` uniformly from the torus.
    """
    _check_compatible(g, h)
    if samples <= 0:
        return 0.0
    n, d = g.n, g.d
    pm = _as_float_matrix(p)
    if pm.shape != (n, n):
        raise ShapeError(f"P must be {n}x{n}")
    c = np.zeros(n) if c is None else np.asarray(c, dtype=float)
    rng = np.random.default_rng(seed)
    if g.family == REAL_FLOW:
        x = rng.uniform(-box, box, size=(samples, d))
    else:
        x = rng.integers(-int(box), int(box) + 1, size=(samples, d)).astype(float)
    z = rng.random((samples, n))
    gm, hm = g.numeric_generators(), h.numeric_generators()
    moved = np.mod(z + x @ gm.T, 1.0)
    lhs = c + moved @ pm.T
    rhs = c + z @ pm.T + x @ hm.T
    return float(np.max(circular_distance(lhs, rhs)))
