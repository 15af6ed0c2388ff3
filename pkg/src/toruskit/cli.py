"""Command line interface.

Structural subcommands print a JSON report; averaging subcommands print a
CSV trace (``parameter,average_real,average_imag,target_real,target_imag,
abs_error``).  Exit status is 0 on success, 2 for configuration errors and
3 for precondition violations.
"""

import argparse
import json
import sys

from .action import LATTICE_ACTION, kronecker_solvable, orbit_structure, relation_lattice
from .config import _Parser, load_config
from .conjugacy import Status, find_conjugacy, verify_conjugacy_numerically
from .exceptions import ConfigError, ToruskitError
from .folner import (
    LATTICE_BOX,
    REAL_BOX,
    bohr_mean,
    bohr_orthogonality_trace,
    weyl_trace,
    wiener_atom,
    wiener_energy,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3


def _parse_grid(text, path="--grid"):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(path, "--grid", "comma-separated numbers like 10,100,1000") from None


def _grid(cfg, args, lattice):
    grid = _parse_grid(args.grid) if args.grid else cfg.grid
    if not grid:
        raise ConfigError(cfg.path, "grid", "a 'grid' entry or the --grid flag")
    if lattice:
        if any(t != int(t) or t < 0 for t in grid):
            raise ConfigError(cfg.path, "grid", "non-negative integers N for a lattice box")
        return tuple(int(t) for t in grid)
    return grid


def _theta(cfg, args):
    if args.theta is None:
        return cfg.require("theta")
    text = args.theta.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            raise ConfigError("--theta", "--theta", "a JSON list of rationals or symbol maps") from None
    else:
        data = [x.strip() for x in text.split(",")]
    return _Parser("--theta").symbolic_vector(cfg.basis, data, "theta", cfg.require("action").n)


def _emit(text, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, args):
    _emit(json.dumps(obj, sort_keys=True) + "\n", args)


def cmd_relations(args):
    cfg = load_config(args.config)
    rl = relation_lattice(cfg.require("action"))
    _emit_json({"hnf_basis": rl.rows(), "rank": rl.rank}, args)


def cmd_orbit(args):
    cfg = load_config(args.config)
    action = cfg.require("action")
    st = orbit_structure(relation_lattice(action), action.n)
    _emit_json({"free_rank": st.free_rank, "invariant_factors": list(st.invariant_factors)}, args)


def cmd_kronecker(args):
    cfg = load_config(args.config)
    action = cfg.require("action")
    res = kronecker_solvable(action, _theta(cfg, args))
    _emit_json({"solvable": res.solvable, "certificate": res.certificate}, args)


def cmd_ue(args):
    cfg = load_config(args.config)
    rl = relation_lattice(cfg.require("action"))
    _emit_json({"uniquely_ergodic": rl.is_trivial()}, args)


def cmd_conjugacy(args):
    cg, ch = load_config(args.config), load_config(args.config_h)
    g, h = cg.require("action"), ch.require("action")
    res = find_conjugacy(g, h)
    report = res.to_dict()
    if res.status is Status.CONJUGATE:
        seed = args.seed if args.seed is not None else (cg.seed or 0)
        dev = verify_conjugacy_numerically(g, h, res.matrix, samples=256, seed=seed)
        report["max_deviation"] = dev
        report["verified"] = dev <= args.tolerance
    _emit_json(report, args)


def cmd_average(args):
    cfg = load_config(args.config)
    action = cfg.require("action")
    phi = cfg.require("polynomial")
    point = cfg.point if cfg.point is not None else (0.0,) * action.n
    lattice = action.family == LATTICE_ACTION
    f = cfg.folner_family(LATTICE_BOX if lattice else REAL_BOX, action.d)
    _emit(weyl_trace(action, phi, point, f, _grid(cfg, args, lattice)).to_csv(), args)


def cmd_bohr(args):
    cfg = load_config(args.config)
    g = cfg.require("frequency")
    f = cfg.folner_family(REAL_BOX, len(g))
    _emit(bohr_orthogonality_trace(g, f, _grid(cfg, args, f.kind == LATTICE_BOX)).to_csv(), args)


def _measure_setup(args):
    cfg = load_config(args.config)
    m = cfg.require("measure")
    f = cfg.folner_family(m.dual_family().kind, 1)
    return cfg, m, f


def cmd_wiener_atom(args):
    cfg, m, f = _measure_setup(args)
    x = cfg.require("x")
    _emit(wiener_atom(m, x, f, _grid(cfg, args, f.kind == LATTICE_BOX)).to_csv(), args)


def cmd_wiener_energy(args):
    cfg, m, f = _measure_setup(args)
    _emit(wiener_energy(m, f, _grid(cfg, args, f.kind == LATTICE_BOX)).to_csv(), args)


def cmd_mean(args):
    cfg = load_config(args.config)
    phi = cfg.require("bohr_polynomial")
    shift = cfg.shift if cfg.shift is not None else (0.0,) * phi.d
    f = cfg.folner_family(REAL_BOX, phi.d)
    _emit(bohr_mean(phi, shift, f, _grid(cfg, args, f.kind == LATTICE_BOX)).to_csv(), args)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="toruskit",
        description="Relation lattices, Kronecker solvability and Følner averages "
                    "for translation actions on tori.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, grid=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="JSON project configuration")
        p.add_argument("--out", help="write output to this path instead of stdout")
        if grid:
            p.add_argument("--grid", help="comma-separated box sizes, e.g. 10,100,1000")
        p.set_defaults(func=func)
        return p

    add("relations", cmd_relations, "HNF basis of the relation lattice")
    add("orbit", cmd_orbit, "structure of the orbit closure of the origin")
    p = add("kronecker", cmd_kronecker, "decide Kronecker solvability for a target")
    p.add_argument("--theta", help='target as "p/q,..." or a JSON list of symbol maps')
    add("ue", cmd_ue, "decide unique ergodicity")
    p = add("conjugacy", cmd_conjugacy, "find the GL(n,Z) conjugacy witness")
    p.add_argument("config_h", help="configuration of the second action")
    p.add_argument("--seed", type=int, help="seed for the numerical verification")
    p.add_argument("--tolerance", type=float, default=1e-9,
                   help="maximum deviation accepted by the numerical verification")
    add("average", cmd_average, "Weyl averages of a trigonometric polynomial", grid=True)
    add("bohr", cmd_bohr, "character averages (Bohr orthogonality)", grid=True)
    add("wiener-atom", cmd_wiener_atom, "recover a point mass from Fourier averages", grid=True)
    add("wiener-energy", cmd_wiener_energy, "discrete energy from averages of |mu_hat|^2",
        grid=True)
    add("mean", cmd_mean, "Bohr mean of an almost periodic polynomial", grid=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"toruskit: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ToruskitError, ValueError) as exc:
        print(f"toruskit: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"toruskit: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


run = main

if __name__ == "__main__":
    sys.exit(main())
