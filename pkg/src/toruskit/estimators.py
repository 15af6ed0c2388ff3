"""scikit-learn style wrappers over the action analysis functions.

The action is a hyperparameter; ``fit`` runs the exact lattice
computations once and the fitted estimator then maps batches of torus
points (rows of ``Z``, shape ``(m, n)``) to coset signatures, orbit-closure
membership or Weyl averages.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .action import (
    LATTICE_ACTION,
    SIGNATURE_TOLERANCE,
    ActionSpec,
    circular_distance,
    orbit_structure,
    relation_lattice,
)
from .exceptions import ShapeError
from .folner import LATTICE_BOX, REAL_BOX, FolnerFamily, haar_target, weyl_average, weyl_envelope

__all__ = ["TorusActionAnalyzer", "WeylAverager"]


def _check_points(est, Z):
    Z = check_array(Z, dtype=float, ensure_2d=True)
    if Z.shape[1] != est.n_features_in_:
        raise ShapeError(f"expected points with {est.n_features_in_} coordinates, got {Z.shape[1]}")
    return Z


class TorusActionAnalyzer(BaseEstimator, TransformerMixin):
    """Relation lattice, orbit closure and coset signatures of an action.

    Parameters
    ----------
    action : ActionSpec
        The translation action to analyse.
    tolerance : float
        Circular tolerance used by :meth:`predict`.

    Attributes
    ----------
    relation_lattice_ : RelationLattice
    orbit_structure_ : OrbitStructure
    uniquely_ergodic_ : bool
    n_features_in_ : int
        Torus dimension ``n``.
    """

    def __init__(self, action: ActionSpec = None, tolerance: float = SIGNATURE_TOLERANCE):
        self.action = action
        self.tolerance = tolerance

    def fit(self, X=None, y=None):
        if not isinstance(self.action, ActionSpec):
            raise TypeError("action must be an ActionSpec")
        self.relation_lattice_ = relation_lattice(self.action)
        self.orbit_structure_ = orbit_structure(self.relation_lattice_, self.action.n)
        self.uniquely_ergodic_ = self.relation_lattice_.is_trivial()
        self.n_features_in_ = self.action.n
        if X is not None:
            _check_points(self, X)
        return self

    def transform(self, Z):
        """Coset signatures ``frac(B z)``, shape ``(m, rank)``."""
        check_is_fitted(self, "relation_lattice_")
        Z = _check_points(self, Z)
        if self.relation_lattice_.rank == 0:
            return np.zeros((Z.shape[0], 0))
        b = np.array(self.relation_lattice_.rows(), dtype=float)
        out = np.mod(Z @ b.T, 1.0)
        return np.where(out >= 1.0, 0.0, out)

    def predict(self, Z):
        """Whether each point lies in the orbit closure ``H`` of the origin."""
        sig = self.transform(Z)
        if sig.shape[1] == 0:
            return np.ones(sig.shape[0], dtype=bool)
        return np.all(circular_distance(sig, 0.0) <= self.tolerance, axis=1)


class WeylAverager(BaseEstimator, TransformerMixin):
    """Closed-form Weyl averages of a trigonometric polynomial along an action.

    Parameters
    ----------
    action : ActionSpec
    polynomial : TrigPolynomial
    t : float or int
        Box size ``T`` (real flows) or ``N`` (lattice actions).
    shift : sequence, optional
        Box shift; defaults to the origin.
    """

    def __init__(self, action: ActionSpec = None, polynomial=None, t=100.0, shift=None):
        self.action = action
        self.polynomial = polynomial
        self.t = t
        self.shift = shift

    def fit(self, X=None, y=None):
        if not isinstance(self.action, ActionSpec):
            raise TypeError("action must be an ActionSpec")
        kind = LATTICE_BOX if self.action.family == LATTICE_ACTION else REAL_BOX
        self.family_ = FolnerFamily(kind, self.action.d, self.shift)
        self.relation_lattice_ = relation_lattice(self.action)
        self.envelope_ = weyl_envelope(self.action, self.polynomial, self.family_, self.t,
                                       self.relation_lattice_)
        self.n_features_in_ = self.action.n
        return self

    def transform(self, Z):
        """Weyl averages at each point, complex array of shape ``(m,)``."""
        check_is_fitted(self, "family_")
        Z = _check_points(self, Z)
        return np.array([weyl_average(self.action, self.polynomial, z, self.family_, self.t)
                         for z in Z], dtype=complex)

    def predict(self, Z):
        """Haar integrals over the cosets ``z + H``, the limits of :meth:`transform`."""
        check_is_fitted(self, "family_")
        Z = _check_points(self, Z)
        return np.array([haar_target(self.relation_lattice_, self.polynomial, z) for z in Z],
                        dtype=complex)
