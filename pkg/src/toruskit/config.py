"""JSON project configuration: parsing, validation and canonical serialisation.

Exact data (generator coordinates, Kronecker targets, frequencies, atom
locations) must be written as rational strings such as ``"2/3"``; floating
literals are rejected for them.  Purely numeric data (symbol values,
points, shifts, weights, grids) are ordinary JSON numbers.  A complex
number is either a JSON number or a ``[real, imag]`` pair.

Example::

    {
      "basis": [{"name": "sqrt2", "numeric_value": 1.4142135623730951}],
      "action": {"family": "real-flow", "d": 1, "n": 2,
                 "generators": [[{"1": "1/2"}], [{"sqrt2": "1"}]]},
      "theta": [{"1": "1/3"}, {"sqrt2": "1"}],
      "grid": [10, 100, 1000]
    }
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .action import FAMILIES, LATTICE_ACTION, ActionSpec
from .exceptions import ConfigError, ShapeError
from .folner import (
    CIRCLE,
    LATTICE_BOX,
    LINE,
    REAL_BOX,
    Atom,
    BohrPolynomial,
    FolnerFamily,
    GaussianDensity,
    MeasureModel,
    TrigPolynomial,
    UniformArc,
)
from .realfield import UNIT, RealBasis, SymbolicReal, format_rational, parse_rational

__all__ = ["ProjectConfig", "load_config", "parse_config"]


@dataclass
class ProjectConfig:
    basis: RealBasis
    action: Optional[ActionSpec] = None
    theta: Optional[tuple] = None
    polynomial: Optional[TrigPolynomial] = None
    point: Optional[tuple] = None
    folner: Optional[dict] = None
    grid: Optional[tuple] = None
    frequency: Optional[tuple] = None
    bohr_terms: Optional[tuple] = None
    shift: Optional[tuple] = None
    measure: Optional[MeasureModel] = None
    x: Optional[object] = None
    seed: Optional[int] = None
    path: str = field(default="<config>", compare=False)

    @property
    def bohr_polynomial(self) -> Optional[BohrPolynomial]:
        """Polynomial built from ``bohr_terms`` (frequencies kept exact there)."""
        if self.bohr_terms is None:
            return None
        return BohrPolynomial(self.bohr_terms)

    def require(self, name: str):
        value = getattr(self, name)
        if value is None:
            raise ConfigError(self.path, name, f"a '{name}' entry for this subcommand")
        return value

    def folner_family(self, default_kind: str, d: int) -> FolnerFamily:
        spec = self.folner or {}
        kind = spec.get("kind", default_kind)
        try:
            return FolnerFamily(kind, d, spec.get("shift"))
        except (ValueError, TypeError) as exc:
            raise ConfigError(self.path, "folner", f"a valid box family ({exc})") from None

    def to_dict(self) -> dict:
        out = {"basis": [{"name": n, "numeric_value": v}
                         for n, v in zip(self.basis.names[1:], self.basis.values[1:])]}
        if self.action is not None:
            out["action"] = {
                "family": self.action.family,
                "d": self.action.d,
                "n": self.action.n,
                "generators": [[x.to_mapping() for x in g] for g in self.action.generators],
            }
        if self.theta is not None:
            out["theta"] = [t.to_mapping() for t in self.theta]
        if self.polynomial is not None:
            out["polynomial"] = [{"u": list(u), "coefficient": _dump_complex(a)}
                                 for u, a in self.polynomial.terms]
        if self.point is not None:
            out["point"] = list(self.point)
        if self.folner is not None:
            out["folner"] = dict(self.folner)
        if self.grid is not None:
            out["grid"] = list(self.grid)
        if self.frequency is not None:
            out["frequency"] = [x.to_mapping() for x in self.frequency]
        if self.bohr_terms is not None:
            out["bohr_polynomial"] = [
                {"frequency": [x.to_mapping() for x in v], "coefficient": _dump_complex(a)}
                for v, a in self.bohr_terms]
        if self.shift is not None:
            out["shift"] = list(self.shift)
        if self.measure is not None:
            out["measure"] = _dump_measure(self.measure)
        if self.x is not None:
            out["x"] = _dump_exact(self.x)
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _dump_complex(a: complex):
    return a.real if a.imag == 0 else [a.real, a.imag]


def _dump_exact(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    return float(x)


def _dump_measure(m: MeasureModel) -> dict:
    parts = []
    for p in m.continuous:
        if isinstance(p, GaussianDensity):
            parts.append({"type": "gaussian", "center": p.center, "sigma": p.sigma,
                          "weight": _dump_complex(p.weight)})
        else:
            parts.append({"type": "uniform-arc", "a": _dump_exact(p.a), "b": _dump_exact(p.b),
                          "weight": _dump_complex(p.weight)})
    return {
        "group": m.group,
        "atoms": [{"location": _dump_exact(a.location), "weight": _dump_complex(a.weight)}
                  for a in m.atoms],
        "continuous": parts,
    }


class _Parser:
    def __init__(self, path):
        self.path = path

    def fail(self, key, expected):
        raise ConfigError(self.path, key, expected)

    def mapping(self, data, key):
        if not isinstance(data, dict):
            self.fail(key, "an object")
        return data

    def sequence(self, data, key, length=None):
        if not isinstance(data, list):
            self.fail(key, "a list")
        if length is not None and len(data) != length:
            self.fail(key, f"a list of length {length}")
        return data

    def integer(self, data, key, minimum=None):
        if isinstance(data, bool) or not isinstance(data, int):
            self.fail(key, "an integer")
        if minimum is not None and data < minimum:
            self.fail(key, f"an integer >= {minimum}")
        return data

    def number(self, data, key):
        if isinstance(data, bool) or not isinstance(data, (int, float)):
            self.fail(key, "a number")
        return float(data)

    def complex_number(self, data, key):
        if isinstance(data, list):
            if len(data) != 2:
                self.fail(key, "a number or a [real, imag] pair")
            return complex(self.number(data[0], key), self.number(data[1], key))
        return complex(self.number(data, key))

    def rational(self, data, key):
        try:
            return parse_rational(data)
        except (ValueError, ZeroDivisionError):
            self.fail(key, 'an exact rational string like "p/q"')

    def exact_or_number(self, data, key):
        if isinstance(data, str):
            return self.rational(data, key)
        return self.number(data, key)

    def basis(self, data):
        entries = self.sequence(data if data is not None else [], "basis")
        pairs = []
        for i, entry in enumerate(entries):
            key = f"basis[{i}]"
            self.mapping(entry, key)
            name = entry.get("name")
            if not isinstance(name, str) or not name:
                self.fail(f"{key}.name", "a nonempty symbol name")
            if name == UNIT:
                self.fail(f"{key}.name", 'a symbol other than the implicit "1"')
            if "numeric_value" not in entry:
                self.fail(f"{key}.numeric_value", "a finite nonzero number")
            pairs.append((name, self.number(entry["numeric_value"], f"{key}.numeric_value")))
        try:
            return RealBasis.from_symbols(pairs)
        except ValueError as exc:
            self.fail("basis", f"unique names with finite nonzero values ({exc})")

    def symbolic(self, basis, data, key):
        if isinstance(data, str) or (isinstance(data, int) and not isinstance(data, bool)):
            return basis.constant(self.rational(data, key))
        self.mapping(data, key)
        coords = [Fraction(0)] * len(basis)
        for name, value in data.items():
            if name not in basis.names:
                self.fail(f"{key}.{name}", f"a symbol declared in 'basis' (undeclared symbol {name!r})")
            coords[basis.index(name)] += self.rational(value, f"{key}.{name}")
        return SymbolicReal(basis, tuple(coords))

    def symbolic_vector(self, basis, data, key, length=None):
        if isinstance(data, dict) and length in (None, 1):
            data = [data]
        data = self.sequence(data, key, length)
        return tuple(self.symbolic(basis, x, f"{key}[{i}]") for i, x in enumerate(data))

    def action(self, basis, data):
        self.mapping(data, "action")
        family = data.get("family")
        if family not in FAMILIES:
            self.fail("action.family", f"one of {', '.join(FAMILIES)}")
        gens = self.sequence(data.get("generators"), "action.generators")
        if not gens:
            self.fail("action.generators", "at least one generator")
        d = self.integer(data.get("d", None), "action.d", 1) if "d" in data else None
        if d is None:
            first = gens[0]
            d = 1 if isinstance(first, dict) else len(first)
        if "n" in data and self.integer(data["n"], "action.n", 1) != len(gens):
            self.fail("action.n", f"the number of generators ({len(gens)})")
        vectors = tuple(self.symbolic_vector(basis, g, f"action.generators[{j}]", d)
                        for j, g in enumerate(gens))
        return ActionSpec(family, vectors)

    def polynomial(self, data):
        terms = self.sequence(data, "polynomial")
        out = []
        for i, term in enumerate(terms):
            key = f"polynomial[{i}]"
            self.mapping(term, key)
            u = self.sequence(term.get("u"), f"{key}.u")
            u = tuple(self.integer(x, f"{key}.u") for x in u)
            out.append((u, self.complex_number(term.get("coefficient", 1.0), f"{key}.coefficient")))
        try:
            return TrigPolynomial(tuple(out))
        except (ValueError, ShapeError) as exc:
            self.fail("polynomial", f"distinct equal-length frequency vectors ({exc})")

    def bohr_polynomial(self, basis, data):
        terms = self.sequence(data, "bohr_polynomial")
        out = []
        for i, term in enumerate(terms):
            key = f"bohr_polynomial[{i}]"
            self.mapping(term, key)
            freq = self.symbolic_vector(basis, term.get("frequency"), f"{key}.frequency")
            out.append((freq, self.complex_number(term.get("coefficient", 1.0),
                                                  f"{key}.coefficient")))
        try:
            BohrPolynomial(tuple(out))
        except (ValueError, ShapeError) as exc:
            self.fail("bohr_polynomial", f"distinct frequencies of one dimension ({exc})")
        return tuple(out)

    def measure(self, data):
        self.mapping(data, "measure")
        group = data.get("group")
        if group not in (LINE, CIRCLE):
            self.fail("measure.group", f"'{LINE}' or '{CIRCLE}'")
        atoms = []
        for i, a in enumerate(self.sequence(data.get("atoms", []), "measure.atoms")):
            key = f"measure.atoms[{i}]"
            self.mapping(a, key)
            atoms.append(Atom(self.exact_or_number(a.get("location"), f"{key}.location"),
                              self.complex_number(a.get("weight", 1.0), f"{key}.weight")))
        parts = []
        for i, p in enumerate(self.sequence(data.get("continuous", []), "measure.continuous")):
            key = f"measure.continuous[{i}]"
            self.mapping(p, key)
            kind = p.get("type")
            weight = self.complex_number(p.get("weight", 1.0), f"{key}.weight")
            try:
                if kind == "gaussian" and group == LINE:
                    parts.append(GaussianDensity(
                        float(self.exact_or_number(p.get("center", 0), f"{key}.center")),
                        self.number(p.get("sigma"), f"{key}.sigma"), weight))
                elif kind == "uniform-arc" and group == CIRCLE:
                    parts.append(UniformArc(self.exact_or_number(p.get("a"), f"{key}.a"),
                                            self.exact_or_number(p.get("b"), f"{key}.b"), weight))
                else:
                    self.fail(f"{key}.type", "'gaussian' on the line or 'uniform-arc' on the circle")
            except ValueError as exc:
                self.fail(key, f"valid component parameters ({exc})")
        return MeasureModel(group, tuple(atoms), tuple(parts))


def parse_config(data, path: str = "<config>") -> ProjectConfig:
    """Validate a decoded JSON document into a :class:`ProjectConfig`."""
    p = _Parser(path)
    p.mapping(data, "<root>")
    basis = p.basis(data.get("basis"))
    cfg = ProjectConfig(basis=basis, path=path)
    if "action" in data:
        cfg.action = p.action(basis, data["action"])
    if "theta" in data:
        cfg.theta = p.symbolic_vector(basis, data["theta"], "theta",
                                      cfg.action.n if cfg.action else None)
    if "polynomial" in data:
        cfg.polynomial = p.polynomial(data["polynomial"])
    if "point" in data:
        cfg.point = tuple(p.number(x, "point") for x in p.sequence(data["point"], "point"))
    if "folner" in data:
        f = p.mapping(data["folner"], "folner")
        if "kind" in f and f["kind"] not in (REAL_BOX, LATTICE_BOX):
            p.fail("folner.kind", f"'{REAL_BOX}' or '{LATTICE_BOX}'")
        if "shift" in f:
            p.sequence(f["shift"], "folner.shift")
            if f.get("kind") == LATTICE_BOX or (cfg.action and cfg.action.family == LATTICE_ACTION):
                [p.integer(s, "folner.shift") for s in f["shift"]]
            else:
                [p.number(s, "folner.shift") for s in f["shift"]]
        cfg.folner = dict(f)
    if "grid" in data:
        cfg.grid = tuple(p.number(x, "grid") for x in p.sequence(data["grid"], "grid"))
    if "frequency" in data:
        cfg.frequency = p.symbolic_vector(basis, data["frequency"], "frequency")
    if "bohr_polynomial" in data:
        cfg.bohr_terms = p.bohr_polynomial(basis, data["bohr_polynomial"])
    if "shift" in data:
        shift = data["shift"]
        shift = shift if isinstance(shift, list) else [shift]
        cfg.shift = tuple(p.number(x, "shift") for x in shift)
    if "measure" in data:
        cfg.measure = p.measure(data["measure"])
    if "x" in data:
        cfg.x = p.exact_or_number(data["x"], "x")
    if "seed" in data:
        cfg.seed = p.integer(data["seed"], "seed", 0)
    return cfg


def load_config(path: str) -> ProjectConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(path, "<file>", "an existing readable file") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(path, f"line {exc.lineno}", f"valid JSON ({exc.msg})") from None
    return parse_config(data, path)
