"""Exact real numbers as rational vectors over a declared basis.

A :class:`RealBasis` is an ordered list of named reals whose
Q-linear independence is *declared* by the user, never verified.  The
first symbol is always the constant ``"1"``.  A :class:`SymbolicReal` is a
rational coordinate vector over such a basis; arithmetic on it is exact,
and :meth:`SymbolicReal.evaluate` gives the floating value used by the
simulator.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isfinite
from typing import Mapping, Sequence

from .exceptions import BasisMismatchError, ShapeError
from .linalg import Matrix

__all__ = [
    "UNIT",
    "RealBasis",
    "SymbolicReal",
    "parse_rational",
    "format_rational",
    "evaluate",
    "coefficient_matrix",
    "power_basis_coords",
]

UNIT = "1"


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an int) into a Fraction; floats are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"exact value expected, got floating literal {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational string expected, got {text!r}")
    s = text.strip()
    if not s or "." in s or "e" in s.lower():
        raise ValueError(f"rational string 'p/q' expected, got {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RealBasis:
    names: tuple
    values: tuple

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ValueError("names and values differ in length")
        if not self.names or self.names[0] != UNIT or self.values[0] != 1.0:
            raise ValueError('the first basis symbol must be "1" with value 1.0')
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis symbol names must be unique")
        for name, value in zip(self.names, self.values):
            if not isinstance(name, str) or not name:
                raise ValueError("basis symbol names must be nonempty strings")
            if not isfinite(value) or value == 0:
                raise ValueError(f"symbol {name!r} needs a finite nonzero value")

    @classmethod
    def from_symbols(cls, symbols=()) -> "RealBasis":
        """Build a basis from ``(name, value)`` pairs or a mapping; ``"1"`` is prepended."""
        if isinstance(symbols, Mapping):
            symbols = list(symbols.items())
        names, values = [UNIT], [1.0]
        for name, value in symbols:
            if name == UNIT:
                if float(value) != 1.0:
                    raise ValueError('symbol "1" must have value 1.0')
                continue
            names.append(name)
            values.append(float(value))
        return cls(tuple(names), tuple(values))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def zero(self) -> "SymbolicReal":
        return SymbolicReal(self, (Fraction(0),) * len(self))

    def constant(self, q) -> "SymbolicReal":
        return SymbolicReal(self, (Fraction(q),) + (Fraction(0),) * (len(self) - 1))

    def symbol(self, name: str, coefficient=1) -> "SymbolicReal":
        coords = [Fraction(0)] * len(self)
        coords[self.index(name)] = Fraction(coefficient)
        return SymbolicReal(self, tuple(coords))

    def element(self, mapping: Mapping) -> "SymbolicReal":
        """SymbolicReal from ``{symbol: "p/q"}``; unknown symbols raise KeyError."""
        coords = [Fraction(0)] * len(self)
        for name, value in mapping.items():
            coords[self.index(name)] += parse_rational(value)
        return SymbolicReal(self, tuple(coords))


@dataclass(frozen=True)
class SymbolicReal:
    """``sum(coords[s] * basis.values[s])`` with exact rational coordinates."""

    basis: RealBasis
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != len(self.basis):
            raise ShapeError("coordinate count differs from basis size")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def _check(self, other):
        if not isinstance(other, SymbolicReal):
            return self.basis.constant(other)
        if other.basis != self.basis:
            raise BasisMismatchError("symbolic reals over different bases")
        return other

    def __add__(self, other):
        other = self._check(other)
        return SymbolicReal(self.basis, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return SymbolicReal(self.basis, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, k):
        if isinstance(k, SymbolicReal):
            return NotImplemented
        k = Fraction(k)
        return SymbolicReal(self.basis, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def rational_part(self) -> Fraction:
        return self.coords[0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self.coords[0].denominator == 1

    def mod_one(self) -> "SymbolicReal":
        """Reduce the ``"1"`` coordinate into ``[0, 1)``."""
        c0 = self.coords[0]
        return SymbolicReal(self.basis, (c0 - (c0.numerator // c0.denominator),) + self.coords[1:])

    def evaluate(self) -> float:
        return evaluate(self)

    def to_mapping(self) -> dict:
        return {n: format_rational(c) for n, c in zip(self.basis.names, self.coords) if c}


def evaluate(x: SymbolicReal) -> float:
    """Numeric value, summed left to right over the basis symbols."""
    total = 0.0
    for c, v in zip(x.coords, x.basis.values):
        if c:
            total += float(c) * v
    return total


def coefficient_matrix(elements: Sequence[Sequence[SymbolicReal]]) -> Matrix:
    """Stack symbol coordinates of ``n`` vectors in ``R^d`` into a rational matrix.

    Row ``i * |basis| + s`` holds the coordinate at symbol ``s`` of the
    ``i``-th component; column ``j`` belongs to ``elements[j]``.  Hence the
    integer kernel of the result is ``{u : sum_j u_j g_j = 0}``.
    """
    if not elements:
        raise ShapeError("at least one element is required")
    d = len(elements[0])
    basis = elements[0][0].basis
    for g in elements:
        if len(g) != d:
            raise ShapeError("elements have different lengths")
        for x in g:
            if x.basis != basis:
                raise BasisMismatchError("elements use different bases")
    nsym = len(basis)
    rows = [[g[i].coords[s] for g in elements] for i in range(d) for s in range(nsym)]
    return Matrix.from_rows(rows, cols=len(elements))


def power_basis_coords(min_poly: Sequence[int], k: int) -> list:
    """Coordinates of ``alpha**k`` in ``1, alpha, ..., alpha**(m-1)``.

    ``min_poly`` lists integer coefficients from the leading term down,
    e.g. ``[1, 0, -2]`` for ``x**2 - 2``.  Leading zeros are ignored and
    the polynomial is normalised to be monic.
    """
    coeffs = [Fraction(c) for c in min_poly]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if not coeffs:
        raise ValueError("zero polynomial")
    m = len(coeffs) - 1
    if m < 1:
        raise ValueError("polynomial must have degree at least 1")
    if k < 0:
        raise ValueError("exponent must be non-negative")
    lead = coeffs[0]
    # alpha**m = -sum_{i<m} c_i alpha**i  (c_i low-to-high, monic)
    low = [c / lead for c in reversed(coeffs[1:])]
    vec = [Fraction(0)] * m
    vec[0] = Fraction(1)
    for _ in range(k):
        top = vec[-1]
        vec = [Fraction(0)] + vec[:-1]
        if top:
            vec = [a - top * c for a, c in zip(vec, low)]
    return vec
