"""Representations of an acyclic quiver and their exact homological algebra.

A representation assigns a finite dimensional space to every vertex and a
matrix to every arrow (shapes follow the left-module convention: an arrow
a: u -> w gets a dims[w] x dims[u] matrix). Hom spaces and first extension
groups both come from one linear system: the map

    Phi: (f_v)_v  ->  (f_w M_a - N_a f_u)_{a: u -> w}

has kernel Hom(M, N) and cokernel Ext^1(M, N); the path algebra of an
acyclic quiver is hereditary, so there is nothing past Ext^1.

Decomposition splits along coprime factors of minimal polynomials of
endomorphisms and never guesses: a module is reported indecomposable only
with a certificate (local endomorphism ring exhibited via a nilpotent
ideal, or an exhaustive idempotent search over a small prime field), and
`decompose` raises UndecidedError otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .exactlin import Field, Mat
from .quiver import ParseError, Quiver


class UndecidedError(RuntimeError):
    """Indecomposability could be neither refuted nor certified."""


class Rep:
    """A representation of a fixed quiver over a fixed field."""

    __slots__ = ("quiver", "field", "dims", "maps")

    def __init__(self, quiver: Quiver, field: Field, dims, maps):
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.n:
            raise ValueError(f"expected {quiver.n} dimensions, got {len(dims)}")
        if any(d < 0 for d in dims):
            raise ValueError("negative dimension in dimension vector")
        if isinstance(maps, dict):
            missing = [a.name for a in quiver.arrows if a.name not in maps]
            if missing:
                raise ValueError(f"missing matrices for arrows {missing}")
            maps = tuple(maps[a.name] for a in quiver.arrows)
        else:
            maps = tuple(maps)
            if len(maps) != len(quiver.arrows):
                raise ValueError(
                    f"expected {len(quiver.arrows)} arrow matrices, got {len(maps)}"
                )
        for a, m in zip(quiver.arrows, maps):
            want = (dims[a.target - 1], dims[a.source - 1])
            if m.field != field:
                raise ValueError(f"matrix for arrow {a.name} is over the wrong field")
            if (m.rows, m.cols) != want:
                raise ValueError(
                    f"matrix for arrow {a.name} has shape {m.rows}x{m.cols}, "
                    f"want {want[0]}x{want[1]}"
                )
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

    def __setattr__(self, name, value):
        raise AttributeError("Rep is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Rep)
            and self.quiver == other.quiver
            and self.field == other.field
            and self.dims == other.dims
            and self.maps == other.maps
        )

    def __hash__(self):
        return hash((self.quiver, self.field, self.dims, self.maps))

    def __repr__(self):
        return f"Rep(dims={self.dims} over {self.field!r})"

    def dim(self, v: int) -> int:
        return self.dims[v - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def arrow_map(self, name: str) -> Mat:
        for a, m in zip(self.quiver.arrows, self.maps):
            if a.name == name:
                return m
        raise KeyError(f"no arrow named {name!r}")

    def describe(self) -> dict:
        f = self.field
        return {
            "dims": list(self.dims),
            "maps": {
                a.name: [[f.format(m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)]
                for a, m in zip(self.quiver.arrows, self.maps)
            },
        }


def zero_rep(quiver: Quiver, field: Field) -> Rep:
    maps = [Mat.zeros(field, 0, 0) for _ in quiver.arrows]
    return Rep(quiver, field, [0] * quiver.n, maps)


def simple(quiver: Quiver, field: Field, v: int) -> Rep:
    """The simple representation concentrated at vertex v."""
    if not (1 <= v <= quiver.n):
        raise ValueError(f"vertex {v} outside 1..{quiver.n}")
    dims = [1 if w == v else 0 for w in quiver.vertices()]
    maps = [
        Mat.zeros(field, dims[a.target - 1], dims[a.source - 1]) for a in quiver.arrows
    ]
    return Rep(quiver, field, dims, maps)


def _paths_from(quiver: Quiver, v: int):
    """All paths starting at v, grouped by endpoint, in a stable order."""
    paths = {w: [] for w in quiver.vertices()}
    paths[v].append(())
    for u in quiver.topological_order():
        for a in quiver.arrows:
            if a.source != u:
                continue
            for p in paths[u]:
                paths[a.target].append(p + (a.name,))
    return paths


def projective(quiver: Quiver, field: Field, v: int) -> Rep:
    """The indecomposable projective P_v: paths out of v, arrows append.

    At a sink this is the simple module; in general dim (P_v)_w counts the
    paths v ~> w.
    """
    if not (1 <= v <= quiver.n):
        raise ValueError(f"vertex {v} outside 1..{quiver.n}")
    paths = _paths_from(quiver, v)
    index = {w: {p: i for i, p in enumerate(paths[w])} for w in quiver.vertices()}
    dims = [len(paths[w]) for w in quiver.vertices()]
    maps = []
    for a in quiver.arrows:
        rows, cols = dims[a.target - 1], dims[a.source - 1]
        ent = [field.zero] * (rows * cols)
        for j, p in enumerate(paths[a.source]):
            i = index[a.target][p + (a.name,)]
            ent[i * cols + j] = field.one
        maps.append(Mat(field, rows, cols, ent))
    return Rep(quiver, field, dims, maps)


def direct_sum(reps) -> Rep:
    """Direct sum; vertex spaces are concatenated in the given order."""
    reps = list(reps)
    if not reps:
        raise ValueError("direct sum of an empty list needs an ambient quiver")
    q = reps[0].quiver
    f = reps[0].field
    for r in reps[1:]:
        if r.quiver != q or r.field != f:
            raise ValueError("summands live over different quivers or fields")
    dims = [sum(r.dim(v) for r in reps) for v in q.vertices()]
    maps = []
    for ai, a in enumerate(q.arrows):
        rows, cols = dims[a.target - 1], dims[a.source - 1]
        ent = [f.zero] * (rows * cols)
        roff = 0
        coff = 0
        for r in reps:
            m = r.maps[ai]
            for i in range(m.rows):
                for j in range(m.cols):
                    ent[(roff + i) * cols + (coff + j)] = m.entry(i, j)
            roff += m.rows
            coff += m.cols
        maps.append(Mat(f, rows, cols, ent))
    return Rep(q, f, dims, maps)


class RepMap:
    """A morphism of representations: one matrix per vertex, commuting."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Rep, target: Rep, blocks):
        if source.quiver != target.quiver or source.field != target.field:
            raise ValueError("morphism endpoints disagree on quiver or field")
        blocks = tuple(blocks)
        q = source.quiver
        if len(blocks) != q.n:
            raise ValueError(f"expected {q.n} blocks, got {len(blocks)}")
        for v in q.vertices():
            b = blocks[v - 1]
            if (b.rows, b.cols) != (target.dim(v), source.dim(v)):
                raise ValueError(
                    f"block at vertex {v} has shape {b.rows}x{b.cols}, "
                    f"want {target.dim(v)}x{source.dim(v)}"
                )
        for ai, a in enumerate(q.arrows):
            lhs = blocks[a.target - 1].mul(source.maps[ai])
            rhs = target.maps[ai].mul(blocks[a.source - 1])
            if lhs != rhs:
                raise ValueError(f"blocks do not commute with arrow {a.name}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("RepMap is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, RepMap)
            and self.source == other.source
            and self.target == other.target
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.source, self.target, self.blocks))

    def __repr__(self):
        return f"RepMap({self.source.dims} -> {self.target.dims})"

    def block(self, v: int) -> Mat:
        return self.blocks[v - 1]

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_isomorphism(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(b.is_invertible() for b in self.blocks)

    def after(self, other: "RepMap") -> "RepMap":
        """Composite self o other (apply `other` first)."""
        if other.target != self.source:
            raise ValueError("composition endpoints do not match")
        blocks = [s.mul(o) for s, o in zip(self.blocks, other.blocks)]
        return RepMap(other.source, self.target, blocks)

    def add(self, other: "RepMap") -> "RepMap":
        if self.source != other.source or self.target != other.target:
            raise ValueError("adding morphisms with different endpoints")
        return RepMap(
            self.source, self.target, [a.add(b) for a, b in zip(self.blocks, other.blocks)]
        )

    def sub(self, other: "RepMap") -> "RepMap":
        return self.add(other.scale(self.source.field.neg(self.source.field.one)))

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, [b.scale(c) for b in self.blocks])

    def flatten(self):
        """All block entries in vertex order, row-major; a coordinate vector."""
        out = []
        for b in self.blocks:
            out.extend(b.entries)
        return tuple(out)


def identity_map(M: Rep) -> RepMap:
    return RepMap(M, M, [Mat.identity(M.field, d) for d in M.dims])


def zero_map(M: Rep, N: Rep) -> RepMap:
    return RepMap(M, N, [Mat.zeros(M.field, N.dim(v), M.dim(v)) for v in M.quiver.vertices()])


def _hom_system(M: Rep, N: Rep):
    """The matrix of Phi plus its row indexing (arrow, i, j)."""
    if M.quiver != N.quiver or M.field != N.field:
        raise ValueError("representations live over different quivers or fields")
    q = M.quiver
    f = M.field
    col_off = []
    total_cols = 0
    for v in q.vertices():
        col_off.append(total_cols)
        total_cols += N.dim(v) * M.dim(v)
    row_index = []
    for ai, a in enumerate(q.arrows):
        for i in range(N.dim(a.target)):
            for j in range(M.dim(a.source)):
                row_index.append((ai, i, j))
    ent = [f.zero] * (len(row_index) * total_cols)
    for r, (ai, i, j) in enumerate(row_index):
        a = q.arrows[ai]
        u, w = a.source, a.target
        Ma = M.maps[ai]
        Na = N.maps[ai]
        base = r * total_cols
        # coefficient of f_w[i, t] is M_a[t, j]
        for t in range(M.dim(w)):
            ent[base + col_off[w - 1] + i * M.dim(w) + t] = Ma.entry(t, j)
        # coefficient of f_u[s, j] is -N_a[i, s]
        for s in range(N.dim(u)):
            ent[base + col_off[u - 1] + s * M.dim(u) + j] = f.neg(Na.entry(i, s))
    A = Mat(f, len(row_index), total_cols, ent)
    return A, row_index, col_off


def hom_space(M: Rep, N: Rep):
    """A deterministic basis of Hom(M, N) as a list of RepMaps."""
    A, _, col_off = _hom_system(M, N)
    f = M.field
    out = []
    for x in A.kernel_basis():
        blocks = []
        for v in M.quiver.vertices():
            rows, cols = N.dim(v), M.dim(v)
            off = col_off[v - 1]
            blocks.append(
                Mat(f, rows, cols, [x.entry(off + k, 0) for k in range(rows * cols)])
            )
        out.append(RepMap(M, N, blocks))
    return out


def hom_dim(M: Rep, N: Rep) -> int:
    A, _, _ = _hom_system(M, N)
    return A.cols - A.rank()


def end_dim(M: Rep) -> int:
    return hom_dim(M, M)


def ext1_dim(M: Rep, N: Rep) -> int:
    """dim Ext^1(M, N), the cokernel of the Hom system."""
    A, _, _ = _hom_system(M, N)
    return A.cokernel_dim()


def ext1_space(M: Rep, N: Rep):
    """A basis of Ext^1(M, N) as unit cocycles.

    Each cocycle is a dict sending an arrow name a: u -> w to a matrix of
    shape N_w x M_u; the classes of these cocycles form a basis of the
    cokernel of the Hom system.
    """
    A, row_index, _ = _hom_system(M, N)
    f = M.field
    pivot_rows = set(A.column_space_pivot_rows())
    q = M.quiver
    out = []
    for r, (ai, i, j) in enumerate(row_index):
        if r in pivot_rows:
            continue
        z = {}
        for a in q.arrows:
            z[a.name] = Mat.zeros(f, N.dim(a.target), M.dim(a.source))
        a = q.arrows[ai]
        rows, cols = N.dim(a.target), M.dim(a.source)
        ent = [f.zero] * (rows * cols)
        ent[i * cols + j] = f.one
        z[a.name] = Mat(f, rows, cols, ent)
        out.append(z)
    return out


@dataclass(frozen=True)
class ShortExactSeq:
    sub: Rep
    middle: Rep
    quotient: Rep
    include: RepMap
    project: RepMap

    def verify(self) -> bool:
        """Exactness: include injective, project surjective, composite zero."""
        for v in self.sub.quiver.vertices():
            inc = self.include.block(v)
            prj = self.project.block(v)
            if inc.rank() != inc.cols or prj.rank() != prj.rows:
                return False
            if not prj.mul(inc).is_zero():
                return False
            if inc.cols + prj.rows != self.middle.dim(v):
                return False
        return True


def extension_from_cocycle(M: Rep, N: Rep, cocycle) -> ShortExactSeq:
    """Realize a cocycle in Ext^1(M, N) as 0 -> N -> E -> M -> 0.

    The middle term places N first: E_v = N_v (+) M_v with arrow matrices
    [[N_a, z_a], [0, M_a]].
    """
    q = M.quiver
    f = M.field
    dims = [N.dim(v) + M.dim(v) for v in q.vertices()]
    maps = []
    for ai, a in enumerate(q.arrows):
        u, w = a.source, a.target
        z = cocycle[a.name]
        if (z.rows, z.cols) != (N.dim(w), M.dim(u)):
            raise ValueError(
                f"cocycle at arrow {a.name} has shape {z.rows}x{z.cols}, "
                f"want {N.dim(w)}x{M.dim(u)}"
            )
        top = N.maps[ai].hstack(z)
        bot = Mat.zeros(f, M.dim(w), N.dim(u)).hstack(M.maps[ai])
        maps.append(top.vstack(bot))
    E = Rep(q, f, dims, maps)
    inc_blocks = []
    prj_blocks = []
    for v in q.vertices():
        nv, mv = N.dim(v), M.dim(v)
        inc_blocks.append(Mat.identity(f, nv).vstack(Mat.zeros(f, mv, nv)))
        prj_blocks.append(Mat.zeros(f, mv, nv).hstack(Mat.identity(f, mv)))
    include = RepMap(N, E, inc_blocks)
    project = RepMap(E, M, prj_blocks)
    return ShortExactSeq(sub=N, middle=E, quotient=M, include=include, project=project)


def summand_inclusion(summands, i: int) -> RepMap:
    """Inclusion of the i-th summand into direct_sum(summands)."""
    total = direct_sum(summands)
    f = total.field
    blocks = []
    for v in total.quiver.vertices():
        off = sum(r.dim(v) for r in summands[:i])
        d = summands[i].dim(v)
        ent = [f.zero] * (total.dim(v) * d)
        for k in range(d):
            ent[(off + k) * d + k] = f.one
        blocks.append(Mat(f, total.dim(v), d, ent))
    return RepMap(summands[i], total, blocks)


def summand_projection(summands, i: int) -> RepMap:
    """Projection of direct_sum(summands) onto its i-th summand."""
    total = direct_sum(summands)
    f = total.field
    blocks = []
    for v in total.quiver.vertices():
        off = sum(r.dim(v) for r in summands[:i])
        d = summands[i].dim(v)
        ent = [f.zero] * (d * total.dim(v))
        for k in range(d):
            ent[k * total.dim(v) + off + k] = f.one
        blocks.append(Mat(f, d, total.dim(v), ent))
    return RepMap(total, summands[i], blocks)


def kernel_rep(f: RepMap):
    """The kernel subrepresentation: returns (K, inclusion K -> source)."""
    M = f.source
    fld = M.field
    bases = []
    for v in M.quiver.vertices():
        cols = f.block(v).kernel_basis()
        b = Mat.zeros(fld, M.dim(v), 0)
        for c in cols:
            b = b.hstack(c)
        bases.append(b)
    kdims = [b.cols for b in bases]
    kmaps = []
    for ai, a in enumerate(M.quiver.arrows):
        target_basis = bases[a.target - 1]
        moved = M.maps[ai].mul(bases[a.source - 1])
        x = target_basis.solve_matrix(moved)
        if x is None:
            raise AssertionError("kernel is not an invariant subspace")
        kmaps.append(x)
    K = Rep(M.quiver, fld, kdims, kmaps)
    return K, RepMap(K, M, bases)


def cokernel_rep(f: RepMap):
    """The cokernel representation: returns (C, projection target -> C).

    Coordinates on C_v are the unit vectors of the target at the rows where
    the image has no echelon pivot.
    """
    N = f.target
    fld = N.field
    q = N.quiver
    proj_blocks = []
    sec_blocks = []
    cdims = []
    for v in q.vertices():
        fv = f.block(v)
        pivot = set(fv.column_space_pivot_rows())
        sel = [r for r in range(N.dim(v)) if r not in pivot]
        s = len(sel)
        cdims.append(s)
        unit = Mat(
            fld,
            N.dim(v),
            s,
            [
                fld.one if r == sel[t] else fld.zero
                for r in range(N.dim(v))
                for t in range(s)
            ],
        )
        sec_blocks.append(unit)
        aug = fv.hstack(unit)
        sol = aug.solve_matrix(Mat.identity(fld, N.dim(v)))
        if sol is None:
            raise AssertionError("image plus complement fails to span the target")
        ent = []
        for r in range(fv.cols, fv.cols + s):
            ent.extend(sol.row(r))
        proj_blocks.append(Mat(fld, s, N.dim(v), ent))
    cmaps = []
    for ai, a in enumerate(q.arrows):
        m = proj_blocks[a.target - 1].mul(N.maps[ai]).mul(sec_blocks[a.source - 1])
        cmaps.append(m)
    C = Rep(q, fld, cdims, cmaps)
    return C, RepMap(N, C, proj_blocks)


def coordinates_in_hom_basis(f: RepMap, basis):
    """Coordinates of f in a given Hom basis, or None if f is outside it."""
    if not basis:
        return [] if f.is_zero() else None
    fld = f.source.field
    vecs = [b.flatten() for b in basis]
    length = len(vecs[0])
    ent = []
    for i in range(length):
        for v in vecs:
            ent.append(v[i])
    A = Mat(fld, length, len(vecs), ent)
    x = A.solve(Mat.column(fld, list(f.flatten())))
    if x is None:
        return None
    return [x.entry(i, 0) for i in range(len(vecs))]


# --- decomposition into indecomposables ---


def _combo(maps, coeffs):
    out = maps[0].scale(coeffs[0])
    for m, c in zip(maps[1:], coeffs[1:]):
        out = out.add(m.scale(c))
    return out


def _eval_poly_on_endo(e: RepMap, coeffs) -> RepMap:
    """coeffs[k] t^k evaluated at e, blockwise Horner."""
    M = e.source
    f = M.field
    blocks = []
    for v in M.quiver.vertices():
        n = M.dim(v)
        x = e.block(v)
        acc = Mat.zeros(f, n, n)
        for c in reversed(coeffs):
            acc = acc.mul(x).add(Mat.identity(f, n).scale(c))
        blocks.append(acc)
    return RepMap(M, M, blocks)


def _minpoly_of_endo(e: RepMap):
    """Monic minimal polynomial of an endomorphism, low degree first."""
    M = e.source
    f = M.field
    powers = [identity_map(M)]
    vecs = [powers[0].flatten()]
    length = len(vecs[0])
    while True:
        nxt = powers[-1].after(e)
        k = len(powers)
        ent = []
        for i in range(length):
            for v in vecs:
                ent.append(v[i])
        A = Mat(f, length, k, ent)
        x = A.solve(Mat.column(f, list(nxt.flatten())))
        if x is not None:
            coeffs = [f.neg(x.entry(i, 0)) for i in range(k)]
            coeffs.append(f.one)
            return coeffs
        powers.append(nxt)
        vecs.append(nxt.flatten())
        if k > M.total_dim:
            raise AssertionError("minimal polynomial search ran past the dimension")


_T = sympy.Symbol("t")


def _factor_poly(field: Field, coeffs):
    """Factor a monic polynomial; returns [(factor_coeffs_low_first, exponent)]."""
    if field.is_rational:
        poly = sympy.Poly([sympy.Rational(c) for c in reversed(coeffs)], _T, domain="QQ")
    else:
        poly = sympy.Poly(
            [int(c) for c in reversed(coeffs)], _T, modulus=field.characteristic
        )
    _, factors = poly.factor_list()
    out = []
    for fac, exp in factors:
        cs = list(reversed(fac.all_coeffs()))
        if field.is_rational:
            lifted = [Fraction(c.p, c.q) for c in cs]
            lead = lifted[-1]
            lifted = [c / lead for c in lifted]
        else:
            lifted = [field.coerce(int(c)) for c in cs]
            lead = lifted[-1]
            inv = field.inv(lead)
            lifted = [field.mul(c, inv) for c in lifted]
        out.append((lifted, int(exp)))
    return out


def _split_along_endo(M: Rep, e: RepMap, factors):
    """Generalized kernels of the minpoly factors; a direct decomposition."""
    parts = []
    for coeffs, mult in factors:
        g = _eval_poly_on_endo(e, coeffs)
        h = g
        for _ in range(mult - 1):
            h = h.after(g)
        K, _ = kernel_rep(h)
        parts.append(K)
    if sum(p.total_dim for p in parts) != M.total_dim:
        raise AssertionError("generalized kernels fail to fill the module")
    return parts


def _candidate_endos(basis, rng: random.Random, field: Field, tries: int):
    for b in basis:
        yield b
    d = len(basis)
    pair_cap = 40
    count = 0
    for i in range(d):
        for j in range(d):
            if count >= pair_cap:
                break
            yield basis[i].after(basis[j])
            count += 1
    for _ in range(tries):
        if field.is_rational:
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(d)]
        else:
            coeffs = [rng.randrange(field.characteristic) for _ in range(d)]
        if all(c == 0 for c in coeffs):
            coeffs[0] = field.one
        yield _combo(basis, coeffs)


def _span_dim(maps):
    if not maps:
        return 0
    fld = maps[0].source.field
    rows = [list(m.flatten()) for m in maps]
    return Mat.from_rows(fld, rows).rank()


def _independent_subset(maps):
    """A subset spanning the same space, greedily by rank growth."""
    out = []
    r = 0
    for m in maps:
        trial = out + [m]
        if _span_dim(trial) > r:
            out = trial
            r += 1
    return out


def _nilpotent_ideal_certificate(basis, ideal):
    """Check span(ideal) is a nilpotent two-sided ideal of span(basis)."""
    if not ideal:
        return True
    fld = ideal[0].source.field
    vecs = [list(m.flatten()) for m in ideal]
    length = len(vecs[0])
    ent = []
    for i in range(length):
        for v in vecs:
            ent.append(v[i])
    membership = Mat(fld, length, len(vecs), ent)
    for r in ideal:
        for b in basis:
            for prod in (r.after(b), b.after(r)):
                if membership.solve(Mat.column(fld, list(prod.flatten()))) is None:
                    return False
    current = _independent_subset(ideal)
    while current:
        if all(m.is_zero() for m in current):
            return True
        nxt = _independent_subset([x.after(r) for x in current for r in ideal])
        if _span_dim(nxt) >= _span_dim(current):
            return False
        current = nxt
    return True


def _pair_trace(x: RepMap, y: RepMap):
    f = x.source.field
    total = f.zero
    for bx, by in zip(x.blocks, y.blocks):
        for i in range(bx.rows):
            for j in range(bx.cols):
                total = f.add(total, f.mul(bx.entry(i, j), by.entry(j, i)))
    return total


def _is_irreducible(field: Field, coeffs) -> bool:
    factors = _factor_poly(field, coeffs)
    return len(factors) == 1 and factors[0][1] == 1


def _quotient_field_certificate(M, basis, rad_elems, rng, tries):
    """Certify End/rad is a field: commutative with a primitive element."""
    fld = M.field
    d = len(basis)
    rad_vecs = [list(m.flatten()) for m in rad_elems]
    basis_vecs = [list(m.flatten()) for m in basis]
    length = len(basis_vecs[0])
    if rad_elems:
        rc_rows = [[vec[i] for vec in rad_vecs] for i in range(length)]
        rad_span = Mat.from_rows(fld, rc_rows)
    else:
        rad_span = Mat(fld, length, 0, [])

    def in_radical(m):
        if not rad_elems:
            return m.is_zero()
        return rad_span.solve(Mat.column(fld, list(m.flatten()))) is not None

    # complement basis: those End basis elements whose classes stay independent
    comp = []
    for b in basis:
        trial_vecs = rad_vecs + [list(x.flatten()) for x in comp] + [list(b.flatten())]
        rows = [[vec[i] for vec in trial_vecs] for i in range(length)]
        if Mat.from_rows(fld, rows).rank() == len(trial_vecs):
            comp.append(b)
    qdim = d - len(rad_elems)
    if len(comp) != qdim:
        return False
    for x in comp:
        for y in comp:
            if not in_radical(x.after(y).sub(y.after(x))):
                return False
    # coordinates in End/rad: solve against [rad | comp], keep the comp part
    all_vecs = rad_vecs + [list(x.flatten()) for x in comp]
    rows = [[vec[i] for vec in all_vecs] for i in range(length)]
    full = Mat.from_rows(fld, rows)

    def reduce_coords(m):
        sol = full.solve(Mat.column(fld, list(m.flatten())))
        if sol is None:
            raise AssertionError("endomorphism outside its own algebra")
        return [sol.entry(len(rad_elems) + i, 0) for i in range(qdim)]

    def lift(coords):
        return _combo(comp, coords)

    candidates = list(comp)
    for _ in range(tries):
        if fld.is_rational:
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(qdim)]
        else:
            coeffs = [rng.randrange(fld.characteristic) for _ in range(qdim)]
        if any(c != 0 for c in coeffs):
            candidates.append(_combo(comp, coeffs))
    ident = identity_map(M)
    for theta in candidates:
        coords = [reduce_coords(ident)]
        cur = lift(coords[0])
        minpoly = None
        for k in range(1, qdim + 1):
            cur = lift(reduce_coords(cur.after(theta)))
            ck = reduce_coords(cur)
            ent = []
            for i in range(qdim):
                for prev in coords:
                    ent.append(prev[i])
            A = Mat(fld, qdim, k, ent)
            x = A.solve(Mat.column(fld, ck))
            if x is not None:
                mp = [fld.neg(x.entry(i, 0)) for i in range(k)]
                mp.append(fld.one)
                minpoly = mp
                break
            coords.append(ck)
        if minpoly is not None and len(minpoly) - 1 == qdim:
            if _is_irreducible(fld, minpoly):
                return True
    return False


def _exhaustive_idempotent(M, basis):
    """Search all of End over a small prime field for a splitting idempotent.

    Returns an idempotent RepMap, or True when provably none exists.
    """
    fld = M.field
    p = fld.characteristic
    d = len(basis)
    ident = identity_map(M)
    for coeffs in itertools.product(range(p), repeat=d):
        if all(c == 0 for c in coeffs):
            continue
        e = _combo(basis, list(coeffs))
        if e == ident:
            continue
        if e.after(e) == e:
            return e
    return True


_EXHAUSTIVE_LIMIT = 2 ** 20


def _certify_or_split(M, basis, rng, tries):
    """True (certified indecomposable), a splitting idempotent, or None."""
    fld = M.field
    d = len(basis)
    gram = Mat.from_rows(
        fld, [[_pair_trace(basis[i], basis[j]) for j in range(d)] for i in range(d)]
    )
    rad_coords = gram.kernel_basis()
    rad = [_combo(basis, [c.entry(i, 0) for i in range(d)]) for c in rad_coords]
    if _nilpotent_ideal_certificate(basis, rad):
        if d - len(rad) == 1:
            return True
        if _quotient_field_certificate(M, basis, rad, rng, tries):
            return True
    else:
        # trace form failed (possible over small primes); fall back to the
        # scalar-plus-nilpotent pattern before giving up
        shifted = []
        for b in basis:
            mp = _minpoly_of_endo(b)
            factors = _factor_poly(fld, mp)
            if len(factors) != 1 or len(factors[0][0]) != 2:
                shifted = None
                break
            lam = fld.neg(factors[0][0][0])
            shifted.append(b.sub(identity_map(M).scale(lam)))
        if shifted is not None:
            shifted = [s for s in shifted if not s.is_zero()]
            if _span_dim(shifted) == d - 1 and _nilpotent_ideal_certificate(
                basis, _independent_subset(shifted)
            ):
                return True
    if not fld.is_rational and fld.characteristic ** d <= _EXHAUSTIVE_LIMIT:
        return _exhaustive_idempotent(M, basis)
    return None


def _decompose_into(M: Rep, rng: random.Random, tries: int, out: list):
    if M.total_dim == 0:
        return
    basis = hom_space(M, M)
    if len(basis) == 1:
        out.append(M)
        return
    for e in _candidate_endos(basis, rng, M.field, tries):
        mp = _minpoly_of_endo(e)
        if len(mp) <= 2:
            continue
        factors = _factor_poly(M.field, mp)
        if len(factors) < 2:
            continue
        for part in _split_along_endo(M, e, factors):
            _decompose_into(part, rng, tries, out)
        return
    verdict = _certify_or_split(M, basis, rng, tries)
    if verdict is True:
        out.append(M)
        return
    if isinstance(verdict, RepMap):
        factors = _factor_poly(M.field, _minpoly_of_endo(verdict))
        for part in _split_along_endo(M, verdict, factors):
            _decompose_into(part, rng, tries, out)
        return
    raise UndecidedError(
        f"cannot certify indecomposability at dimension vector {M.dims} "
        f"(endomorphism ring dimension {len(basis)})"
    )


def decompose(M: Rep, seed: int = 0, tries: int = 64):
    """Split M into indecomposable summands (with multiplicity).

    The output order is deterministic: sorted by total dimension, then by
    dimension vector. Raises UndecidedError instead of guessing when no
    splitting and no indecomposability certificate is found.
    """
    out = []
    _decompose_into(M, random.Random(seed), tries, out)
    out.sort(key=lambda r: (r.total_dim, r.dims))
    return out


# --- isomorphism testing ---


def _indec_isomorphic(X: Rep, Y: Rep) -> bool:
    """Exact test for indecomposables: some composite of basis maps is a unit."""
    if X.dims != Y.dims:
        return False
    fwd = hom_space(X, Y)
    bwd = hom_space(Y, X)
    for f in fwd:
        for g in bwd:
            if g.after(f).is_isomorphism():
                return True
    return False


def is_isomorphic(M: Rep, N: Rep, seed: int = 0, tries: int = 64) -> bool:
    """Exact isomorphism test.

    Fast path: a randomized search for an invertible element of Hom(M, N)
    (exhaustive over small prime fields, hence decisive there). Fallback:
    decompose both sides and match indecomposable summands pairwise, which
    is deterministic and exact but may raise UndecidedError.
    """
    if M.quiver != N.quiver or M.field != N.field:
        raise ValueError("representations live over different quivers or fields")
    if M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    basis = hom_space(M, N)
    if not basis:
        return False
    for f in basis:
        if f.is_isomorphism():
            return True
    fld = M.field
    d = len(basis)
    if not fld.is_rational and fld.characteristic ** d <= 4096:
        for coeffs in itertools.product(range(fld.characteristic), repeat=d):
            if all(c == 0 for c in coeffs):
                continue
            if _combo(basis, list(coeffs)).is_isomorphism():
                return True
        return False
    rng = random.Random(seed)
    for _ in range(tries):
        if fld.is_rational:
            coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(d)]
        else:
            coeffs = [rng.randrange(fld.characteristic) for _ in range(d)]
        if all(c == 0 for c in coeffs):
            continue
        if _combo(basis, coeffs).is_isomorphism():
            return True
    ms = decompose(M, seed=seed, tries=tries)
    ns = decompose(N, seed=seed, tries=tries)
    if len(ms) != len(ns):
        return False
    unmatched = list(range(len(ns)))
    for x in ms:
        hit = None
        for k in unmatched:
            if _indec_isomorphic(x, ns[k]):
                hit = k
                break
        if hit is None:
            return False
        unmatched.remove(hit)
    return True


# --- text format for representations ---


def parse_rep_blocks(field: Field, quiver: Quiver, rep_lines):
    """Parse the representation blocks handed back by the quiver parser.

    Each block is

        rep
        dims d1 d2 ... dn
        map <arrow> <row-major entries>

    with one `map` line per arrow whose matrix is nonempty. Entries are
    integers or quotients like 3/2.
    """
    reps = []
    i = 0
    lines = list(rep_lines)
    while i < len(lines):
        lineno, tok = lines[i]
        if tok != ["rep"]:
            raise ParseError(f"expected a 'rep' line, got {' '.join(tok)!r}", lineno)
        rep_line = lineno
        i += 1
        dims = None
        matrices = {}
        while i < len(lines) and lines[i][1] != ["rep"]:
            lno, t = lines[i]
            if t[0] == "dims":
                if dims is not None:
                    raise ParseError("duplicate dims line", lno)
                if len(t) != quiver.n + 1:
                    raise ParseError(
                        f"want {quiver.n} dimensions after 'dims', got {len(t) - 1}", lno
                    )
                try:
                    dims = [int(x) for x in t[1:]]
                except ValueError:
                    raise ParseError("dimensions must be integers", lno) from None
            elif t[0] == "map":
                if dims is None:
                    raise ParseError("map before dims", lno)
                if len(t) < 2:
                    raise ParseError("want 'map <arrow> <entries>'", lno)
                try:
                    a = quiver.arrow(t[1])
                except KeyError:
                    raise ParseError(f"unknown arrow {t[1]!r}", lno) from None
                if a.name in matrices:
                    raise ParseError(f"duplicate map line for arrow {a.name}", lno)
                rows = dims[a.target - 1]
                cols = dims[a.source - 1]
                if len(t) - 2 != rows * cols:
                    raise ParseError(
                        f"arrow {a.name} needs {rows * cols} entries "
                        f"({rows}x{cols}), got {len(t) - 2}",
                        lno,
                    )
                try:
                    ent = [field.parse(x) for x in t[2:]]
                except ValueError as exc:
                    raise ParseError(str(exc), lno) from None
                matrices[a.name] = Mat(field, rows, cols, ent)
            else:
                raise ParseError(f"unknown directive {t[0]!r} in rep block", lno)
            i += 1
        if dims is None:
            raise ParseError("rep block has no dims line", rep_line)
        for a in quiver.arrows:
            rows = dims[a.target - 1]
            cols = dims[a.source - 1]
            if a.name not in matrices:
                if rows * cols == 0:
                    matrices[a.name] = Mat.zeros(field, rows, cols)
                else:
                    raise ParseError(
                        f"rep block is missing a map line for arrow {a.name}", rep_line
                    )
        try:
            reps.append(Rep(quiver, field, dims, matrices))
        except ValueError as exc:
            raise ParseError(str(exc), rep_line) from None
    return reps
