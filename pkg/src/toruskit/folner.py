"""Følner averages along torus actions and on the line and circle.

The Følner families are boxes, ``[-T, T]^d + s`` in ``R^d`` and
``{-N, ..., N}^d + s`` in ``Z^d``.  Averaging a character over a box has a
closed form (a product of sinc or Dirichlet factors,
:func:`character_weight`), which turns every average below into a finite
sum with an explicit error envelope.

Fourier transforms use ``mu_hat(xi) = integral of exp(-2 pi i xi y) dmu(y)``.
"""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .action import LATTICE_ACTION, REAL_FLOW, ActionSpec, RelationLattice, relation_lattice
from .exceptions import PreconditionError, ShapeError
from .realfield import SymbolicReal

__all__ = [
    "REAL_BOX",
    "LATTICE_BOX",
    "FolnerFamily",
    "TrigPolynomial",
    "BohrPolynomial",
    "Atom",
    "GaussianDensity",
    "UniformArc",
    "MeasureModel",
    "AverageTrace",
    "character_weight",
    "composite_simpson",
    "adaptive_simpson",
    "weyl_average",
    "weyl_trace",
    "weyl_envelope",
    "haar_target",
    "bohr_orthogonality_trace",
    "wiener_atom",
    "wiener_energy",
    "bohr_mean",
    "bohr_mean_envelope",
]

REAL_BOX = "real-box"
LATTICE_BOX = "lattice-box"

SINC_CUTOFF = 1e-12
COINCIDENCE_TOLERANCE = 1e-12
QUAD_TOLERANCE = 1e-10
QUAD_MAX_PANELS = 2 ** 20

TWO_PI = 2.0 * np.pi


def _exact_or_float(x):
    """Fraction for exactly rational input, float otherwise."""
    if isinstance(x, SymbolicReal):
        return x.rational_part if x.is_rational() else x.evaluate()
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    return float(x)


@dataclass(frozen=True)
class FolnerFamily:
    """Shifted boxes indexed by a size parameter ``T`` (real) or ``N`` (lattice)."""

    kind: str
    d: int = 1
    shift: tuple = None

    def __post_init__(self):
        if self.kind not in (REAL_BOX, LATTICE_BOX):
            raise ValueError(f"kind must be {REAL_BOX!r} or {LATTICE_BOX!r}")
        if self.d < 1:
            raise ValueError("box dimension must be at least 1")
        shift = (0,) * self.d if self.shift is None else tuple(self.shift)
        if len(shift) != self.d:
            raise ShapeError("shift length differs from the box dimension")
        if self.kind == LATTICE_BOX:
            if any(int(s) != s for s in shift):
                raise ValueError("lattice box shifts must be integers")
            shift = tuple(int(s) for s in shift)
        else:
            shift = tuple(float(s) for s in shift)
        object.__setattr__(self, "shift", shift)

    @classmethod
    def real_box(cls, d=1, shift=None):
        return cls(REAL_BOX, d, shift)

    @classmethod
    def lattice_box(cls, d=1, shift=None):
        return cls(LATTICE_BOX, d, shift)

    def check_parameter(self, t):
        if self.kind == REAL_BOX and not t > 0:
            raise PreconditionError(f"real box size T must be positive, got {t}")
        if self.kind == LATTICE_BOX and (int(t) != t or t < 0):
            raise PreconditionError(f"lattice box size N must be a non-negative integer, got {t}")

    def measure(self, t) -> float:
        self.check_parameter(t)
        if self.kind == REAL_BOX:
            return (2.0 * t) ** self.d
        return float((2 * int(t) + 1) ** self.d)


def _sinc_factor(v, t):
    if isinstance(v, Fraction) and v == 0:
        return 1.0
    x = TWO_PI * float(v) * t
    if abs(x) < SINC_CUTOFF:
        return 1.0
    return np.sin(x) / x


def _dirichlet_factor(v, n):
    m = 2 * n + 1
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return 1.0
        if (m * v).denominator == 1:
            return 0.0
        r = float(v - round(v))
    else:
        r = v - round(v)
    if abs(r) < SINC_CUTOFF:
        return 1.0
    return np.sin(m * np.pi * r) / (m * np.sin(np.pi * r))


def _phase(v, s):
    if isinstance(v, Fraction) and isinstance(s, int):
        frac = (v * s) % 1
        if frac == 0:
            return 1.0 + 0.0j
        return complex(np.exp(1j * TWO_PI * float(frac)))
    if s == 0:
        return 1.0 + 0.0j
    return complex(np.exp(1j * TWO_PI * float(v) * s))


def character_weight(f: FolnerFamily, v, t) -> complex:
    """Average of ``exp(2 pi i v . x)`` over the box ``F_t``.

    ``v`` may hold floats, Fractions or SymbolicReals; exactly rational
    components are handled exactly (integer frequencies on a lattice box
    give weight 1, frequencies killed by the Dirichlet kernel give 0).
    """
    v = [_exact_or_float(x) for x in np.atleast_1d(np.asarray(v, dtype=object))]
    if len(v) != f.d:
        raise ShapeError(f"frequency has {len(v)} components, box has dimension {f.d}")
    f.check_parameter(t)
    out = 1.0 + 0.0j
    for vi, si in zip(v, f.shift):
        if f.kind == REAL_BOX:
            out *= _phase(vi, si) * _sinc_factor(vi, t)
        else:
            out *= _phase(vi, si) * _dirichlet_factor(vi, int(t))
    return complex(out)


def _weight_bound(f: FolnerFamily, v, t) -> float:
    """Modulus bound for :func:`character_weight` that ignores the shift."""
    best = 1.0
    for vi in v:
        if f.kind == REAL_BOX:
            a = abs(float(vi))
            if a > 0:
                best = min(best, 1.0 / (TWO_PI * a * t))
        else:
            s = abs(np.sin(np.pi * float(vi)))
            if s > 0:
                best = min(best, 1.0 / ((2 * int(t) + 1) * s))
    return best


@dataclass(frozen=True)
class TrigPolynomial:
    """``phi(z) = sum_u a_u exp(2 pi i u . z)`` on ``T^n``."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((tuple(int(x) for x in u), complex(a)) for u, a in self.terms)
        if not terms:
            raise ValueError("a trigonometric polynomial needs at least one term")
        freqs = [u for u, _ in terms]
        if len(set(freqs)) != len(freqs):
            raise ValueError("frequency vectors must be distinct")
        if len({len(u) for u in freqs}) != 1:
            raise ShapeError("frequency vectors have different lengths")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_dict(cls, mapping):
        return cls(tuple(mapping.items()))

    @property
    def n(self) -> int:
        return len(self.terms[0][0])

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=float)
        return complex(sum(a * np.exp(1j * TWO_PI * np.dot(u, z)) for u, a in self.terms))

    def abs_coefficient_sum(self) -> float:
        return float(sum(abs(a) for _, a in self.terms))


def _is_trivial_frequency(v, lattice: bool) -> bool:
    if not lattice:
        return all(x == 0 for x in v)
    return all((x.denominator == 1) if isinstance(x, Fraction)
               else abs(x - round(x)) < COINCIDENCE_TOLERANCE for x in v)


@dataclass(frozen=True)
class BohrPolynomial:
    """``f(x) = sum_v a_v exp(2 pi i v . x)`` on ``R^d`` or ``Z^d`` with real frequencies."""

    terms: tuple

    def __post_init__(self):
        terms = []
        for v, a in self.terms:
            if isinstance(v, (list, tuple)):
                v = tuple(_exact_or_float(x) for x in v)
            else:
                v = (_exact_or_float(v),)
            terms.append((v, complex(a)))
        if not terms:
            raise ValueError("a trigonometric polynomial needs at least one term")
        if len({len(v) for v, _ in terms}) != 1:
            raise ShapeError("frequencies have different dimensions")
        freqs = [v for v, _ in terms]
        if len(set(freqs)) != len(freqs):
            raise ValueError("frequencies must be distinct")
        object.__setattr__(self, "terms", tuple(terms))

    @property
    def d(self) -> int:
        return len(self.terms[0][0])

    def constant_term(self, lattice: bool = False) -> complex:
        """Sum of coefficients of frequencies acting trivially.

        On ``R^d`` only the zero frequency does; on ``Z^d`` (``lattice=True``)
        every integer frequency does.
        """
        return complex(sum(a for v, a in self.terms if _is_trivial_frequency(v, lattice)))

    def __call__(self, x) -> complex:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return complex(sum(a * np.exp(1j * TWO_PI * np.dot([float(c) for c in v], x))
                           for v, a in self.terms))


@dataclass
class AverageTrace:
    """Følner averages on a parameter grid next to their limit."""

    parameters: np.ndarray
    averages: np.ndarray
    target: complex
    envelope: np.ndarray = field(default=None)

    def __post_init__(self):
        self.parameters = np.asarray(self.parameters, dtype=float)
        self.averages = np.asarray(self.averages, dtype=complex)
        self.target = complex(self.target)
        if self.parameters.shape != self.averages.shape:
            raise ShapeError("parameters and averages differ in length")
        if self.envelope is not None:
            self.envelope = np.asarray(self.envelope, dtype=float)

    @property
    def errors(self) -> np.ndarray:
        return np.abs(self.averages - self.target)

    HEADER = "parameter,average_real,average_imag,target_real,target_imag,abs_error"

    def to_csv(self) -> str:
        lines = [self.HEADER]
        for t, a, e in zip(self.parameters, self.averages, self.errors):
            lines.append(",".join("%.17g" % x for x in
                                  (t, a.real, a.imag, self.target.real, self.target.imag, e)))
        return "\n".join(lines) + "\n"


def _action_frequency(action: ActionSpec, u):
    """``sum u_j g_j`` as exact-or-float components (reduced mod 1 for lattice actions)."""
    values = action.combination(u)
    if action.family == LATTICE_ACTION:
        values = [v.mod_one() for v in values]
    return [_exact_or_float(v) for v in values]


def _check_action_box(action: ActionSpec, phi: TrigPolynomial, f: FolnerFamily):
    expected = REAL_BOX if action.family == REAL_FLOW else LATTICE_BOX
    if f.kind != expected:
        raise ShapeError(f"{action.family} actions average over {expected} families")
    if f.d != action.d:
        raise ShapeError("box dimension differs from the action's time dimension")
    if phi.n != action.n:
        raise ShapeError("polynomial dimension differs from the torus dimension")


def weyl_average(action: ActionSpec, phi: TrigPolynomial, z, f: FolnerFamily, t) -> complex:
    """``(1/|F_t|) * integral over F_t of phi(Phi_x z) dx`` in closed form."""
    _check_action_box(action, phi, f)
    z = np.asarray(z, dtype=float)
    total = 0j
    for u, a in phi.terms:
        chi = np.exp(1j * TWO_PI * np.dot(u, z))
        total += a * chi * character_weight(f, _action_frequency(action, u), t)
    return complex(total)


def haar_target(rl: RelationLattice, phi: TrigPolynomial, z) -> complex:
    """Integral of ``phi`` over the coset ``z + H`` against Haar measure."""
    if phi.n != rl.ambient_dim:
        raise ShapeError("polynomial dimension differs from the relation lattice")
    z = np.asarray(z, dtype=float)
    return complex(sum(a * np.exp(1j * TWO_PI * np.dot(u, z))
                       for u, a in phi.terms if rl.contains(u)))


def weyl_envelope(action: ActionSpec, phi: TrigPolynomial, f: FolnerFamily, t,
                  rl: RelationLattice = None) -> float:
    """Bound on ``|weyl_average - haar_target|`` valid for every ``z`` and shift.

    Each term outside the relation lattice contributes ``|a_u|`` times the
    smallest single-coordinate bound on its sinc or Dirichlet factor.
    """
    _check_action_box(action, phi, f)
    if rl is None:
        rl = relation_lattice(action)
    total = 0.0
    for u, a in phi.terms:
        if rl.contains(u):
            continue
        total += abs(a) * _weight_bound(f, _action_frequency(action, u), t)
    return total


def weyl_trace(action: ActionSpec, phi: TrigPolynomial, z, f: FolnerFamily,
               ts: Sequence) -> AverageTrace:
    rl = relation_lattice(action)
    ts = sorted(ts)
    return AverageTrace(
        ts,
        [weyl_average(action, phi, z, f, t) for t in ts],
        haar_target(rl, phi, z),
        [weyl_envelope(action, phi, f, t, rl) for t in ts],
    )


def bohr_orthogonality_trace(g, f: FolnerFamily, ts: Sequence) -> AverageTrace:
    """Averages of the character ``gamma -> gamma(g)`` over ``F_t``; limit 0 for ``g != 0``."""
    g = [_exact_or_float(x) for x in np.atleast_1d(np.asarray(g, dtype=object))]
    if _is_trivial_frequency(g, f.kind == LATTICE_BOX):
        raise PreconditionError("g is the neutral element; its character average is 1, not 0")
    ts = sorted(ts)
    return AverageTrace(ts, [character_weight(f, g, t) for t in ts], 0j,
                        [_weight_bound(f, g, t) for t in ts])


def composite_simpson(func, a: float, b: float, panels: int) -> complex:
    """Composite Simpson rule with ``panels`` panels (``2 * panels + 1`` nodes)."""
    x = np.linspace(a, b, 2 * panels + 1)
    y = func(x)
    h = (b - a) / panels
    return complex(h / 6.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))


def adaptive_simpson(func, a: float, b: float, tol: float = QUAD_TOLERANCE,
                     max_panels: int = QUAD_MAX_PANELS, min_panels: int = 64) -> complex:
    """Composite Simpson with panel doubling.

    Stops once two successive doublings both change the estimate by less
    than ``15 * tol``; warns if ``max_panels`` is reached first.
    """
    panels = min_panels
    prev = composite_simpson(func, a, b, panels)
    agreed = 0
    while panels < max_panels:
        panels *= 2
        cur = composite_simpson(func, a, b, panels)
        agreed = agreed + 1 if abs(cur - prev) < 15.0 * tol else 0
        prev = cur
        if agreed >= 2:
            return cur
    warnings.warn(f"adaptive Simpson hit the panel cap {max_panels}", RuntimeWarning)
    return prev


# --- measures -------------------------------------------------------------

LINE = "line"
CIRCLE = "circle"


@dataclass(frozen=True)
class Atom:
    location: object
    weight: complex

    def __post_init__(self):
        object.__setattr__(self, "location", _exact_or_float(self.location))
        object.__setattr__(self, "weight", complex(self.weight))


@dataclass(frozen=True)
class GaussianDensity:
    """``weight`` times the normal density with mean ``center`` and deviation ``sigma`` on R."""

    center: float
    sigma: float
    weight: complex = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "weight", complex(self.weight))

    def fourier(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.weight * np.exp(-1j * TWO_PI * self.center * xi
                                    - 2.0 * np.pi ** 2 * self.sigma ** 2 * xi ** 2)


@dataclass(frozen=True)
class UniformArc:
    """``weight`` spread uniformly over the arc ``[a, b)`` of ``R/Z``."""

    a: object
    b: object
    weight: complex = 1.0

    def __post_init__(self):
        if not 0 <= self.a < self.b <= 1:
            raise ValueError("arc endpoints need 0 <= a < b <= 1")
        object.__setattr__(self, "weight", complex(self.weight))

    def fourier(self, k):
        k = np.asarray(k, dtype=float)
        a, b = float(self.a), float(self.b)
        out = np.empty(k.shape, dtype=complex)
        zero = k == 0
        kk = k[~zero]
        out[zero] = self.weight
        out[~zero] = self.weight * (np.exp(-1j * TWO_PI * kk * b) - np.exp(-1j * TWO_PI * kk * a)) \
            / (-1j * TWO_PI * kk * (b - a))
        return out


@dataclass(frozen=True)
class MeasureModel:
    """Finite complex measure: atoms plus closed-form continuous components.

    ``group`` is ``"line"`` (R, dual R, Gaussian components) or ``"circle"``
    (R/Z, dual Z, uniform-arc components).
    """

    group: str
    atoms: tuple = ()
    continuous: tuple = ()

    def __post_init__(self):
        if self.group not in (LINE, CIRCLE):
            raise ValueError(f"group must be {LINE!r} or {CIRCLE!r}")
        allowed = GaussianDensity if self.group == LINE else UniformArc
        for part in self.continuous:
            if not isinstance(part, allowed):
                raise ValueError(f"{type(part).__name__} is not a {self.group} component")
        atoms = []
        for atom in self.atoms:
            if not isinstance(atom, Atom):
                atom = Atom(*atom)
            if self.group == CIRCLE:
                loc = atom.location % 1 if isinstance(atom.location, Fraction) \
                    else float(np.mod(atom.location, 1.0))
                atom = Atom(loc, atom.weight)
            atoms.append(atom)
        object.__setattr__(self, "atoms", tuple(atoms))
        object.__setattr__(self, "continuous", tuple(self.continuous))

    def dual_family(self, shift=None) -> FolnerFamily:
        return FolnerFamily(REAL_BOX if self.group == LINE else LATTICE_BOX, 1,
                            None if shift is None else (shift,))

    def coincide(self, x, y) -> bool:
        """Same point of the group, exactly for rationals, else within 1e-12."""
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            diff = x - y
            return diff == 0 if self.group == LINE else diff.denominator == 1
        diff = float(x) - float(y)
        if self.group == CIRCLE:
            diff -= round(diff)
        return abs(diff) < COINCIDENCE_TOLERANCE

    def merged_atoms(self) -> list:
        merged = []
        for atom in self.atoms:
            for i, (loc, w) in enumerate(merged):
                if self.coincide(loc, atom.location):
                    merged[i] = (loc, w + atom.weight)
                    break
            else:
                merged.append((atom.location, atom.weight))
        return merged

    def point_mass(self, x) -> complex:
        x = _exact_or_float(x)
        return complex(sum(a.weight for a in self.atoms if self.coincide(a.location, x)))

    def discrete_energy(self) -> float:
        return float(sum(abs(w) ** 2 for _, w in self.merged_atoms()))

    def atomic_fourier(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = np.zeros(xi.shape, dtype=complex)
        for atom in self.atoms:
            out += atom.weight * np.exp(-1j * TWO_PI * xi * float(atom.location))
        return out

    def continuous_fourier(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = np.zeros(xi.shape, dtype=complex)
        for part in self.continuous:
            out += part.fourier(xi)
        return out

    def fourier(self, xi):
        return self.atomic_fourier(xi) + self.continuous_fourier(xi)


def _check_measure_box(m: MeasureModel, f: FolnerFamily):
    if f.d != 1 or f.kind != m.dual_family().kind:
        raise ShapeError(f"a {m.group} measure is averaged over a one-dimensional "
                         f"{m.dual_family().kind}")


def _exact_difference(x, y):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x - y
    return float(x) - float(y)


def wiener_atom(m: MeasureModel, x, f: FolnerFamily, ts: Sequence) -> AverageTrace:
    """Averages of ``mu_hat(gamma) gamma(x)`` over ``F_t``; limit ``mu({x})``."""
    _check_measure_box(m, f)
    x = _exact_or_float(x)
    ts = sorted(ts)
    averages = []
    for t in ts:
        total = 0j
        for atom in m.atoms:
            total += atom.weight * character_weight(f, [_exact_difference(x, atom.location)], t)
        if m.continuous:
            xf = float(x)
            if m.group == CIRCLE:
                k = np.arange(-int(t), int(t) + 1) + f.shift[0]
                vals = m.continuous_fourier(k) * np.exp(1j * TWO_PI * k * xf)
                total += complex(vals.sum()) / f.measure(t)
            else:
                s = f.shift[0]

                def integrand(xi):
                    return m.continuous_fourier(xi) * np.exp(1j * TWO_PI * xi * xf)

                total += adaptive_simpson(integrand, s - t, s + t) / f.measure(t)
        averages.append(total)
    return AverageTrace(ts, averages, m.point_mass(x))


def wiener_energy(m: MeasureModel, f: FolnerFamily, ts: Sequence) -> AverageTrace:
    """Averages of ``|mu_hat|^2`` over ``F_t``; limit is the discrete energy."""
    _check_measure_box(m, f)
    ts = sorted(ts)
    averages = []
    for t in ts:
        if m.group == CIRCLE:
            k = np.arange(-int(t), int(t) + 1) + f.shift[0]
            averages.append(float(np.sum(np.abs(m.fourier(k)) ** 2)) / f.measure(t))
            continue
        total = 0j
        for a in m.atoms:
            for b in m.atoms:
                diff = _exact_difference(b.location, a.location)
                total += a.weight * np.conj(b.weight) * character_weight(f, [diff], t)
        if m.continuous:
            s = f.shift[0]

            def integrand(xi):
                atomic = m.atomic_fourier(xi)
                cont = m.continuous_fourier(xi)
                return 2.0 * np.real(np.conj(atomic) * cont) + np.abs(cont) ** 2

            total += adaptive_simpson(integrand, s - t, s + t) / f.measure(t)
        averages.append(total.real)
    return AverageTrace(ts, averages, m.discrete_energy())


def bohr_mean(phi: BohrPolynomial, shift, f: FolnerFamily, ts: Sequence) -> AverageTrace:
    """Averages of ``x -> phi(x + shift)`` over ``F_t``; limit is the constant term."""
    if f.d != phi.d:
        raise ShapeError("box dimension differs from the polynomial's dimension")
    shift = np.atleast_1d(np.asarray(shift, dtype=float))
    if shift.shape != (phi.d,):
        raise ShapeError("shift dimension differs from the polynomial's dimension")
    ts = sorted(ts)
    averages = []
    for t in ts:
        total = 0j
        for v, a in phi.terms:
            phase = np.exp(1j * TWO_PI * np.dot([float(c) for c in v], shift))
            total += a * phase * character_weight(f, v, t)
        averages.append(total)
    return AverageTrace(ts, averages, phi.constant_term(f.kind == LATTICE_BOX),
                        [bohr_mean_envelope(phi, f, t) for t in ts])


def bohr_mean_envelope(phi: BohrPolynomial, f: FolnerFamily, t) -> float:
    """Shift-independent bound on ``|average - constant term|``."""
    lattice = f.kind == LATTICE_BOX
    return float(sum(abs(a) * _weight_bound(f, v, t)
                     for v, a in phi.terms if not _is_trivial_frequency(v, lattice)))
