"""Brute-force and quadrature oracles, written independently of the package internals."""

import itertools
import math
from fractions import Fraction
from functools import reduce

import numpy as np
from scipy import integrate


# --- integer lattices -------------------------------------------------------

def simple_hnf(rows):
    """Row-style Hermite normal form by repeated Euclid steps (zero rows dropped)."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    n = len(a[0])
    out = []
    r0 = 0
    for col in range(n):
        live = [r for r in a[r0:] if r[col] != 0]
        rest = [r for r in a[r0:] if r[col] == 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                (nxt if r[col] != 0 else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        a = a[:r0] + [piv] + rest
        r0 += 1
    out = [r for r in a if any(r)]
    for i, r in enumerate(out):
        col = next(j for j, x in enumerate(r) if x)
        for k in range(i):
            q = out[k][col] // r[col]
            out[k] = [x - q * y for x, y in zip(out[k], r)]
    return out


def _pivots(basis):
    return [next(j for j, x in enumerate(r) if x) for r in basis]


def _members(points, basis):
    """Vectorised lattice membership for an echelon basis."""
    rem = points.copy()
    mask = np.ones(len(points), dtype=bool)
    for row, p in zip(basis, _pivots(basis)):
        q, r = np.divmod(rem[:, p], row[p])
        mask &= r == 0
        rem = rem - q[:, None] * np.asarray(row, dtype=np.int64)[None, :]
    return mask & np.all(rem == 0, axis=1)


def brute_relation_lattice(gens, lattice_family, bound=20):
    """HNF of ``{u : |u|_inf <= bound, sum u_j g_j = 0 in G}`` for rational generators.

    ``gens`` is an ``n``-list of ``d``-lists of Fractions.
    """
    n, d = len(gens), len(gens[0])
    den = reduce(math.lcm, (Fraction(x).denominator for g in gens for x in g), 1)
    scaled = np.array([[int(Fraction(x) * den) for x in g] for g in gens], dtype=np.int64)
    grid = np.array(list(itertools.product(range(-bound, bound + 1), repeat=n)), dtype=np.int64)
    vals = grid @ scaled
    if lattice_family:
        ok = np.all(vals % den == 0, axis=1)
    else:
        ok = np.all(vals == 0, axis=1)
    rel = grid[ok]
    rel = rel[np.any(rel != 0, axis=1)]
    basis = []
    while True:
        outside = rel if not basis else rel[~_members(rel, basis)]
        if len(outside) == 0:
            return basis
        norms = np.abs(outside).sum(axis=1)
        basis = simple_hnf(basis + [outside[int(np.argmin(norms))].tolist()])


def orbit_size(generators):
    """Size of the subgroup of ``(Q/Z)^n`` generated by the given rational points (BFS)."""
    gens = [tuple(Fraction(x) % 1 for x in g) for g in generators]
    n = len(gens[0])
    seen = {(Fraction(0),) * n}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple((a + b) % 1 for a, b in zip(p, g))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def determinantal_divisors(m):
    """``gcd`` of all ``k x k`` minors, ``k = 1..min(shape)`` (brute force, small matrices)."""
    a = np.array(m, dtype=object)
    rows, cols = a.shape
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, int_det([[a[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out


def int_det(m):
    """Laplace expansion (exact, small matrices only)."""
    if len(m) == 1:
        return int(m[0][0])
    return sum((-1) ** j * int(m[0][j]) * int_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)) if m[0][j])


def row_lattice_contains(basis_rows, v):
    """Exact membership of ``v`` in the integer row span, via ``simple_hnf``."""
    h = simple_hnf(basis_rows)
    v = list(map(int, v))
    for row, p in zip(h, _pivots(h)):
        if v[p] % row[p]:
            return False
        q = v[p] // row[p]
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


# --- quadrature ---------------------------------------------------------------

def box_average_quad(func, a, b):
    """Mean of a complex function over ``[a, b]`` by adaptive Gauss-Kronrod."""
    re = integrate.quad(lambda x: func(x).real, a, b, limit=5000, epsabs=1e-12, epsrel=1e-12)[0]
    im = integrate.quad(lambda x: func(x).imag, a, b, limit=5000, epsabs=1e-12, epsrel=1e-12)[0]
    return complex(re, im) / (b - a)


def oscillatory_mean(v, a, b):
    """Mean of ``exp(2 pi i v x)`` over ``[a, b]`` via QUADPACK's weighted Fourier rule."""
    w = 2.0 * math.pi * v
    if w == 0:
        return 1.0 + 0.0j
    re = integrate.quad(lambda x: 1.0, a, b, weight="cos", wvar=w, epsabs=1e-14)[0]
    im = integrate.quad(lambda x: 1.0, a, b, weight="sin", wvar=w, epsabs=1e-14)[0]
    return complex(re, im) / (b - a)


def lattice_mean(func, n, shift=0):
    """Mean over ``{-n..n} + shift`` by direct summation."""
    ks = range(-n + shift, n + shift + 1)
    return sum(func(k) for k in ks) / (2 * n + 1)


def arc_coefficient_quad(a, b, k):
    """Fourier coefficient of the normalised uniform arc ``[a, b)`` by quadrature."""
    return box_average_quad(lambda y: np.exp(-2j * math.pi * k * y), a, b)
