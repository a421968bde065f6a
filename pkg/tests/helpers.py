"""Shared seeded generators for the test suite."""

import random

from strata.exactlin import Mat
from strata.quiver import Arrow, Quiver


def random_mat(rng, field, rows, cols, span=3):
    ent = [field.coerce(rng.randrange(-span, span + 1)) for _ in range(rows * cols)]
    return Mat(field, rows, cols, ent)


def random_acyclic_quiver(rng, max_vertices=5, max_extra_arrows=3):
    """Connected-ish acyclic quiver: a random spanning chain plus extras.

    Arrows always point from a lower to a higher vertex number, which keeps
    the quiver acyclic by construction.
    """
    n = rng.randint(1, max_vertices)
    arrows = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        arrows.append(Arrow(f"a{len(arrows)}", u, v))
    for _ in range(rng.randint(0, max_extra_arrows)):
        if n < 2:
            break
        u = rng.randint(1, n - 1)
        w = rng.randint(u + 1, n)
        arrows.append(Arrow(f"a{len(arrows)}", u, w))
    return Quiver(n, arrows)


def random_rep(rng, q, field, max_dim=3, span=2):
    from strata.repcat import Rep

    dims = tuple(rng.randint(0, max_dim) for _ in q.vertices())
    maps = {}
    for a in q.arrows:
        maps[a.name] = random_mat(rng, field, dims[a.target - 1], dims[a.source - 1], span)
    return Rep(q, field, dims, maps)


def random_invertible(rng, field, n, span=2, tries=64):
    for _ in range(tries):
        m = random_mat(rng, field, n, n, span)
        if m.is_invertible():
            return m
    return Mat.identity(field, n)


def conjugate_rep(rng, M, span=2):
    """Isomorphic copy of M under random base change at every vertex."""
    from strata.repcat import Rep

    q, field = M.quiver, M.field
    g = {v: random_invertible(rng, field, M.dims[v - 1], span) for v in q.vertices()}
    maps = {}
    for a in q.arrows:
        maps[a.name] = g[a.target].mul(M.arrow_map(a.name)).mul(g[a.source].inverse())
    return Rep(q, field, M.dims, maps)


def interval_rep(field, n, lo, hi):
    """The interval module over the linear A_n quiver: 1-dimensional on
    vertices lo..hi with identity arrow maps inside the interval."""
    from strata.quiver import linear_quiver
    from strata.repcat import Rep

    q = linear_quiver(n)
    dims = [1 if lo <= v <= hi else 0 for v in q.vertices()]
    maps = {}
    for a in q.arrows:
        rows, cols = dims[a.target - 1], dims[a.source - 1]
        if rows * cols == 1:
            maps[a.name] = Mat(field, 1, 1, [field.one])
        else:
            maps[a.name] = Mat.zeros(field, rows, cols)
    return Rep(q, field, dims, maps)
