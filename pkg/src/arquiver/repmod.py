"""Finite-dimensional right modules over a bound quiver algebra.

A module is a representation of the quiver itself: an arrow a: i -> j acts by
a matrix of shape dims[j] x dims[i], sending vertex-i column vectors to
vertex-j column vectors.  A path in diagram order (a1, a2) therefore acts by
M(a2) @ M(a1).

Representations and maps are immutable; every function returns new objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import exactlin
from .errors import BudgetExhausted
from .exactlin import Matrix
from .quivalg import BoundQuiverAlgebra, opposite


class Representation:
    __slots__ = ("algebra", "dims", "arrow_maps", "_layout")

    def __init__(self, algebra: BoundQuiverAlgebra, dims, arrow_maps, validate: bool = True):
        dims = tuple(int(d) for d in dims)
        if len(dims) != algebra.quiver.vertices or any(d < 0 for d in dims):
            raise ValueError(f"bad dims {dims} for quiver with {algebra.quiver.vertices} vertices")
        maps = {}
        for a in algebra.quiver.arrows:
            m = arrow_maps[a.id]
            if not isinstance(m, Matrix):
                m = Matrix(algebra.field, m)
            if m.shape != (dims[a.target], dims[a.source]):
                raise ValueError(
                    f"arrow {a.id!r} map has shape {m.shape}, expected "
                    f"{(dims[a.target], dims[a.source])}"
                )
            maps[a.id] = m
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "arrow_maps", maps)
        object.__setattr__(self, "_layout", None)
        if validate:
            self._check_relations()

    def _check_relations(self):
        for rel in self.algebra.relations:
            src = self.algebra.quiver.arrow(rel[0].path[0]).source
            tgt = self.algebra.quiver.arrow(rel[0].path[-1]).target
            acc = Matrix.zeros(self.algebra.field, self.dims[tgt], self.dims[src])
            for term in rel:
                acc = exactlin.add(acc, exactlin.scale(term.coefficient, self.apply_path(src, term.path)))
            if not acc.is_zero():
                raise ValueError(f"relation {rel!r} does not vanish on this representation")

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def apply_path(self, source: int, arrows) -> Matrix:
        acc = Matrix.identity(self.algebra.field, self.dims[source])
        for aid in arrows:
            acc = exactlin.multiply(self.arrow_maps[aid], acc)
        return acc

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and other.algebra == self.algebra
            and other.dims == self.dims
            and other.arrow_maps == self.arrow_maps
        )

    def __hash__(self):
        return hash((self.dims, tuple(sorted((k, hash(v)) for k, v in self.arrow_maps.items()))))

    def __repr__(self):
        return f"Representation(dims={list(self.dims)})"


class ModuleMap:
    __slots__ = ("source", "target", "vertex_maps")

    def __init__(self, source: Representation, target: Representation, vertex_maps, validate: bool = True):
        if source.algebra != target.algebra:
            raise ValueError("module map between different algebras")
        vms = []
        for i in range(source.algebra.quiver.vertices):
            m = vertex_maps[i]
            if not isinstance(m, Matrix):
                m = Matrix(source.algebra.field, m)
            if m.shape != (target.dims[i], source.dims[i]):
                raise ValueError(
                    f"vertex {i} map has shape {m.shape}, expected "
                    f"{(target.dims[i], source.dims[i])}"
                )
            vms.append(m)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "vertex_maps", tuple(vms))
        if validate:
            for a in source.algebra.quiver.arrows:
                lhs = exactlin.multiply(target.arrow_maps[a.id], vms[a.source])
                rhs = exactlin.multiply(vms[a.target], source.arrow_maps[a.id])
                if lhs != rhs:
                    raise ValueError(f"map does not intertwine arrow {a.id!r}")

    def __setattr__(self, name, value):
        raise AttributeError("ModuleMap is immutable")

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.vertex_maps)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleMap)
            and other.source == self.source
            and other.target == self.target
            and other.vertex_maps == self.vertex_maps
        )

    def __hash__(self):
        return hash(self.vertex_maps)

    def __repr__(self):
        return f"ModuleMap({list(self.source.dims)} -> {list(self.target.dims)})"


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g after f."""
    if f.target != g.source:
        raise ValueError("compose: middle objects differ")
    return ModuleMap(
        f.source,
        g.target,
        [exactlin.multiply(g.vertex_maps[i], f.vertex_maps[i]) for i in range(len(f.vertex_maps))],
        validate=False,
    )


def identity_map(m: Representation) -> ModuleMap:
    return ModuleMap(m, m, [Matrix.identity(m.algebra.field, d) for d in m.dims], validate=False)


def zero_map(source: Representation, target: Representation) -> ModuleMap:
    return ModuleMap(
        source,
        target,
        [Matrix.zeros(source.algebra.field, target.dims[i], source.dims[i]) for i in range(len(source.dims))],
        validate=False,
    )


def add_maps(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    return ModuleMap(
        f.source,
        f.target,
        [exactlin.add(a, b) for a, b in zip(f.vertex_maps, g.vertex_maps)],
        validate=False,
    )


def scale_map(c: int, f: ModuleMap) -> ModuleMap:
    return ModuleMap(f.source, f.target, [exactlin.scale(c, m) for m in f.vertex_maps], validate=False)


def zero_module(algebra: BoundQuiverAlgebra) -> Representation:
    n = algebra.quiver.vertices
    return Representation(
        algebra,
        (0,) * n,
        {a.id: Matrix.zeros(algebra.field, 0, 0) for a in algebra.quiver.arrows},
        validate=False,
    )


# ---------------------------------------------------------------------------
# hom spaces


def hom_basis(m: Representation, n: Representation) -> list[ModuleMap]:
    """Basis of Hom(m, n) as module maps.

    One linear system: unknowns are the stacked column-major vec(f_i), one
    block per vertex; each arrow a: i -> j contributes N(a) f_i = f_j M(a).
    """
    if m.algebra != n.algebra:
        raise ValueError("hom_basis between modules over different algebras")
    alg = m.algebra
    p = alg.field.p
    nv = alg.quiver.vertices
    sizes = [n.dims[i] * m.dims[i] for i in range(nv)]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    rows = []
    for a in alg.quiver.arrows:
        i, j = a.source, a.target
        r = n.dims[j] * m.dims[i]
        if r == 0:
            continue
        block = np.zeros((r, total), dtype=np.int64)
        # vec(N(a) f_i) = (I_{m_i} (x) N(a)) vec(f_i)
        if sizes[i]:
            block[:, offsets[i] : offsets[i + 1]] = np.kron(
                np.eye(m.dims[i], dtype=np.int64), n.arrow_maps[a.id].a
            )
        # vec(f_j M(a)) = (M(a)^T (x) I_{n_j}) vec(f_j)
        if sizes[j]:
            block[:, offsets[j] : offsets[j + 1]] = (
                block[:, offsets[j] : offsets[j + 1]]
                - np.kron(m.arrow_maps[a.id].a.T, np.eye(n.dims[j], dtype=np.int64))
            ) % p
        rows.append(block)
    if rows:
        system = Matrix(alg.field, np.vstack(rows))
    else:
        system = Matrix.zeros(alg.field, 0, total)
    null = exactlin.kernel_basis(system)
    out = []
    for c in range(null.cols):
        v = null.a[:, c]
        vms = []
        for i in range(nv):
            chunk = v[offsets[i] : offsets[i + 1]]
            vms.append(Matrix(alg.field, chunk.reshape((n.dims[i], m.dims[i]), order="F")))
        out.append(ModuleMap(m, n, vms, validate=False))
    return out


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_basis(m, n))


def map_from_coefficients(basis: list[ModuleMap], coeffs) -> ModuleMap:
    f = basis[0]
    out = zero_map(f.source, f.target)
    for c, g in zip(coeffs, basis):
        if c % f.source.algebra.field.p:
            out = add_maps(out, scale_map(int(c), g))
    return out


def is_mono(f: ModuleMap) -> bool:
    return all(exactlin.rank(vm) == f.source.dims[i] for i, vm in enumerate(f.vertex_maps))


def is_epi(f: ModuleMap) -> bool:
    return all(exactlin.rank(vm) == f.target.dims[i] for i, vm in enumerate(f.vertex_maps))


def flatten_map(f: ModuleMap) -> np.ndarray:
    """All vertex matrices of f as one vector (column-major per vertex)."""
    parts = [vm.a.reshape(-1, order="F") for vm in f.vertex_maps]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def solve_hom_equation(
    u: Representation,
    v: Representation,
    target: ModuleMap,
    pre: ModuleMap | None = None,
    post: ModuleMap | None = None,
) -> ModuleMap | None:
    """Some h in Hom(u, v) with post ∘ h ∘ pre == target, or None.

    pre defaults to the identity of u and post to the identity of v, so one
    solver covers extension problems (pre given, post absent: extend target
    along pre) and lifting problems (post given, pre absent: lift target
    through post).
    """
    basis = hom_basis(u, v)
    if not basis:
        return zero_map(u, v) if target.is_zero() else None
    cols = []
    for h in basis:
        g = h if pre is None else compose(h, pre)
        g = g if post is None else compose(post, g)
        cols.append(flatten_map(g))
    field = u.algebra.field
    system = Matrix(field, np.stack(cols, axis=1))
    rhs = Matrix(field, flatten_map(target).reshape(-1, 1))
    x = exactlin.solve(system, rhs)
    if x is None:
        return None
    return map_from_coefficients(basis, [int(c) for c in x.a[:, 0]])


# ---------------------------------------------------------------------------
# kernels, cokernels, images


def kernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    """(ker f, inclusion)."""
    m = f.source
    alg = m.algebra
    incls = [exactlin.kernel_basis(vm) for vm in f.vertex_maps]
    dims = [k.cols for k in incls]
    maps = {}
    for a in alg.quiver.arrows:
        i, j = a.source, a.target
        moved = exactlin.multiply(m.arrow_maps[a.id], incls[i])
        sol = exactlin.solve(incls[j], moved)
        assert sol is not None, "kernel is not arrow-invariant"
        maps[a.id] = sol
    ker = Representation(alg, dims, maps, validate=False)
    return ker, ModuleMap(ker, m, incls, validate=False)


def _complement_data(span: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """For a span inside k^n: (basis B of the span, complement basis E, projection onto E).

    The projection is along span(B): proj @ B == 0 and proj @ E == I.
    """
    field = span.field
    nn = span.rows
    b = exactlin.column_space_basis(span)
    aug = exactlin.hstack([b, Matrix.identity(field, nn)])
    _, pivots = exactlin.rref(aug)
    free_idx = [c - b.cols for c in pivots if c >= b.cols]
    e = Matrix(field, np.eye(nn, dtype=np.int64)[:, free_idx])
    s = exactlin.hstack([b, e])
    sinv = exactlin.inverse(s)
    assert sinv is not None
    proj = Matrix(field, sinv.a[b.cols :, :])
    return b, e, proj


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    """(coker f, projection)."""
    n = f.target
    alg = n.algebra
    bs, es, projs = [], [], []
    for vm in f.vertex_maps:
        b, e, proj = _complement_data(vm)
        bs.append(b)
        es.append(e)
        projs.append(proj)
    dims = [e.cols for e in es]
    maps = {}
    for a in alg.quiver.arrows:
        i, j = a.source, a.target
        maps[a.id] = exactlin.multiply(projs[j], exactlin.multiply(n.arrow_maps[a.id], es[i]))
    cok = Representation(alg, dims, maps, validate=False)
    return cok, ModuleMap(n, cok, projs, validate=False)


def image(f: ModuleMap) -> tuple[Representation, ModuleMap, ModuleMap]:
    """(im f, inclusion into target, corestriction of f onto its image)."""
    alg = f.source.algebra
    incls = [exactlin.column_space_basis(vm) for vm in f.vertex_maps]
    dims = [b.cols for b in incls]
    maps = {}
    for a in alg.quiver.arrows:
        i, j = a.source, a.target
        moved = exactlin.multiply(f.target.arrow_maps[a.id], incls[i])
        sol = exactlin.solve(incls[j], moved)
        assert sol is not None
        maps[a.id] = sol
    im = Representation(alg, dims, maps, validate=False)
    epis = []
    for i, vm in enumerate(f.vertex_maps):
        sol = exactlin.solve(incls[i], vm)
        assert sol is not None
        epis.append(sol)
    return im, ModuleMap(im, f.target, incls, validate=False), ModuleMap(f.source, im, epis, validate=False)


def direct_sum(summands: list[Representation]) -> tuple[Representation, list[ModuleMap], list[ModuleMap]]:
    """(sum, inclusions, projections)."""
    if not summands:
        raise ValueError("direct_sum of nothing; use zero_module")
    alg = summands[0].algebra
    field = alg.field
    nv = alg.quiver.vertices
    dims = [sum(s.dims[i] for s in summands) for i in range(nv)]
    maps = {}
    for a in alg.quiver.arrows:
        acc = summands[0].arrow_maps[a.id]
        for s in summands[1:]:
            acc = exactlin.direct_sum(acc, s.arrow_maps[a.id])
        maps[a.id] = acc
    total = Representation(alg, dims, maps, validate=False)
    incls, projs = [], []
    for k, s in enumerate(summands):
        ivms, pvms = [], []
        for i in range(nv):
            before = sum(t.dims[i] for t in summands[:k])
            ia = np.zeros((dims[i], s.dims[i]), dtype=np.int64)
            pa = np.zeros((s.dims[i], dims[i]), dtype=np.int64)
            for r in range(s.dims[i]):
                ia[before + r, r] = 1
                pa[r, before + r] = 1
            ivms.append(Matrix(field, ia))
            pvms.append(Matrix(field, pa))
        incls.append(ModuleMap(s, total, ivms, validate=False))
        projs.append(ModuleMap(total, s, pvms, validate=False))
    return total, incls, projs


# ---------------------------------------------------------------------------
# projectives and injectives


def simple_module(algebra: BoundQuiverAlgebra, vertex: int) -> Representation:
    """S(vertex): one-dimensional at vertex, all arrows acting by zero."""
    nv = algebra.quiver.vertices
    dims = tuple(1 if v == vertex else 0 for v in range(nv))
    maps = {
        a.id: Matrix.zeros(algebra.field, dims[a.target], dims[a.source])
        for a in algebra.quiver.arrows
    }
    return Representation(algebra, dims, maps, validate=False)


def indecomposable_projective(algebra: BoundQuiverAlgebra, vertex: int) -> Representation:
    """P(vertex): basis at vertex j is the normal-form paths vertex -> j."""
    return projective_module(algebra, (vertex,))


def projective_module(algebra: BoundQuiverAlgebra, verts) -> Representation:
    """Direct sum of P(v) for v in verts, with its path-basis layout attached."""
    verts = tuple(int(v) for v in verts)
    nv = algebra.quiver.vertices
    coords = {j: [] for j in range(nv)}
    for k, v in enumerate(verts):
        for j in range(nv):
            for bp in algebra.path_basis(v, j):
                coords[j].append((k, bp))
    index = {j: {pair: pos for pos, pair in enumerate(coords[j])} for j in range(nv)}
    dims = [len(coords[j]) for j in range(nv)]
    maps = {}
    for a in algebra.quiver.arrows:
        i, j = a.source, a.target
        mat = np.zeros((dims[j], dims[i]), dtype=np.int64)
        for pos, (k, bp) in enumerate(coords[i]):
            for nf, c in algebra.reduce_path(bp[0], bp[1] + (a.id,)).items():
                mat[index[j][(k, nf)], pos] = c
        maps[a.id] = Matrix(algebra.field, mat)
    rep = Representation(algebra, dims, maps, validate=False)
    object.__setattr__(rep, "_layout", ("proj", verts, coords))
    return rep


def regular_module(algebra: BoundQuiverAlgebra) -> Representation:
    return projective_module(algebra, tuple(range(algebra.quiver.vertices)))


def k_dual(m: Representation) -> Representation:
    """D(m): the dual module over the opposite algebra (transposed actions)."""
    op = opposite(m.algebra)
    maps = {}
    for a in op.quiver.arrows:
        maps[a.id] = exactlin.transpose(m.arrow_maps[a.id])
    dual = Representation(op, m.dims, maps, validate=False)
    layout = m._layout
    if layout is not None:
        kind, verts, coords = layout
        object.__setattr__(dual, "_layout", ("inj" if kind == "proj" else "proj", verts, coords))
    return dual


def dual_map(f: ModuleMap) -> ModuleMap:
    """D(f): D(target) -> D(source) over the opposite algebra."""
    return ModuleMap(
        k_dual(f.target),
        k_dual(f.source),
        [exactlin.transpose(vm) for vm in f.vertex_maps],
        validate=False,
    )


def indecomposable_injective(algebra: BoundQuiverAlgebra, vertex: int) -> Representation:
    return injective_module(algebra, (vertex,))


def injective_module(algebra: BoundQuiverAlgebra, verts) -> Representation:
    return k_dual(projective_module(opposite(algebra), verts))


def radical_spans(m: Representation) -> list[Matrix]:
    """Vertexwise spanning columns of rad M = (arrow ideal) . M."""
    alg = m.algebra
    spans = []
    for j in range(alg.quiver.vertices):
        cols = [m.arrow_maps[a.id] for a in alg.quiver.arrows if a.target == j]
        if cols:
            spans.append(exactlin.hstack(cols))
        else:
            spans.append(Matrix.zeros(alg.field, m.dims[j], 0))
    return spans


def top_dims(m: Representation) -> tuple[int, ...]:
    spans = radical_spans(m)
    return tuple(m.dims[j] - exactlin.rank(spans[j]) for j in range(len(m.dims)))


def socle_dims(m: Representation) -> tuple[int, ...]:
    alg = m.algebra
    out = []
    for j in range(alg.quiver.vertices):
        rows = [m.arrow_maps[a.id] for a in alg.quiver.arrows if a.source == j]
        if rows:
            out.append(exactlin.kernel_basis(exactlin.vstack(rows)).cols)
        else:
            out.append(m.dims[j])
    return tuple(out)


def projective_cover(m: Representation) -> ModuleMap:
    """The projective cover P(M) -> M; the source carries its summand layout.

    Internal checks: the map is onto and its kernel is superfluous
    (contained in rad P).
    """
    alg = m.algebra
    spans = radical_spans(m)
    verts: list[int] = []
    lifts: list[tuple[int, Matrix]] = []  # (vertex, chosen preimage of a top basis vector)
    for j in range(alg.quiver.vertices):
        _, e, _ = _complement_data(spans[j])
        for c in range(e.cols):
            verts.append(j)
            lifts.append((j, Matrix(alg.field, e.a[:, c : c + 1])))
    if not verts:
        assert m.is_zero(), "nonzero module with zero top"
        z = projective_module(alg, ())
        return ModuleMap(z, m, [Matrix.zeros(alg.field, d, 0) for d in m.dims], validate=False)
    cover_src = projective_module(alg, verts)
    _, _, coords = cover_src._layout
    vms = []
    for l in range(alg.quiver.vertices):
        mat = np.zeros((m.dims[l], cover_src.dims[l]), dtype=np.int64)
        for pos, (k, bp) in enumerate(coords[l]):
            vec = exactlin.multiply(m.apply_path(bp[0], bp[1]), lifts[k][1])
            mat[:, pos] = vec.a[:, 0]
        vms.append(Matrix(alg.field, mat))
    cover = ModuleMap(cover_src, m, vms, validate=True)
    # onto, with superfluous kernel
    rad_p = radical_spans(cover_src)
    for l in range(alg.quiver.vertices):
        assert exactlin.rank(vms[l]) == m.dims[l], "projective cover is not onto"
        kb = exactlin.kernel_basis(vms[l])
        if kb.cols:
            assert exactlin.image_membership(rad_p[l], kb), "cover kernel is not superfluous"
    return cover


def injective_envelope(m: Representation) -> ModuleMap:
    """The injective envelope M -> I(M), built as the dual of a projective cover."""
    cover = projective_cover(k_dual(m))
    env = dual_map(cover)  # D(D(m)) -> D(P); source is data-identical to m
    assert env.source == m
    return ModuleMap(m, env.target, env.vertex_maps, validate=False)


def projective_generators(proj: Representation) -> list[tuple[int, int]]:
    """For a projective built by projective_module: [(vertex, coordinate)] of
    each summand's generator (its trivial path)."""
    kind, verts, coords = proj._layout
    assert kind == "proj", "module was not built with a projective layout"
    out = []
    for k, v in enumerate(verts):
        out.append((v, coords[v].index((k, (v, ())))))
    return out


def projective_map_from_generator_images(
    src: Representation, tgt: Representation, gen_images: list[dict]
) -> ModuleMap:
    """The module map src -> tgt between layout-carrying projectives sending
    generator l to the element gen_images[l] of tgt (keyed (summand, basis path))."""
    alg = src.algebra
    _, verts_s, coords_s = src._layout
    _, verts_t, coords_t = tgt._layout
    nv = alg.quiver.vertices
    index_t = {v: {pair: pos for pos, pair in enumerate(coords_t[v])} for v in range(nv)}
    p = alg.field.p
    vms = [np.zeros((tgt.dims[v], src.dims[v]), dtype=np.int64) for v in range(nv)]
    for v in range(nv):
        for pos, (l, bp) in enumerate(coords_s[v]):
            for (k, q), c in gen_images[l].items():
                for nf, c2 in alg.reduce_path(q[0], q[1] + bp[1]).items():
                    vms[v][index_t[v][(k, nf)], pos] = (
                        vms[v][index_t[v][(k, nf)], pos] + c * c2
                    ) % p
    return ModuleMap(src, tgt, [Matrix(alg.field, m) for m in vms], validate=True)


def is_projective(m: Representation) -> bool:
    cover = projective_cover(m)
    return all(exactlin.kernel_basis(vm).cols == 0 for vm in cover.vertex_maps)


def is_injective(m: Representation) -> bool:
    return is_projective(k_dual(m))


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class DecompositionCertificate:
    module: Representation
    summands: tuple[Representation, ...]
    inclusions: tuple[ModuleMap, ...]
    projections: tuple[ModuleMap, ...]
    indecomposability_evidence: tuple[str, ...]
    certified: bool


_EXACT_ENUM_LIMIT = 200_000


def _total_matrix(f: ModuleMap) -> Matrix:
    acc = f.vertex_maps[0]
    for vm in f.vertex_maps[1:]:
        acc = exactlin.direct_sum(acc, vm)
    return acc


def _sub_from_column_spans(m: Representation, spans: list[Matrix]) -> tuple[Representation, ModuleMap]:
    """Subrepresentation spanned vertexwise by given (already invariant) columns."""
    alg = m.algebra
    incls = [exactlin.column_space_basis(s) for s in spans]
    dims = [b.cols for b in incls]
    maps = {}
    for a in alg.quiver.arrows:
        i, j = a.source, a.target
        sol = exactlin.solve(incls[j], exactlin.multiply(m.arrow_maps[a.id], incls[i]))
        assert sol is not None, "spans are not arrow-invariant"
        maps[a.id] = sol
    sub = Representation(alg, dims, maps, validate=False)
    return sub, ModuleMap(sub, m, incls, validate=False)


def _split_by_idempotent(m: Representation, e: ModuleMap):
    """M = im(e) + ker(e) for an idempotent endomorphism e."""
    parts = []
    for f in (e, add_maps(identity_map(m), scale_map(-1, e))):  # e and 1-e
        sub, incl = _sub_from_column_spans(m, list(f.vertex_maps))
        parts.append((sub, incl))
    (m1, i1), (m2, i2) = parts
    s = [exactlin.hstack([i1.vertex_maps[v], i2.vertex_maps[v]]) for v in range(len(m.dims))]
    sinv = [exactlin.inverse(x) for x in s]
    assert all(x is not None for x in sinv), "idempotent split is not a direct sum"
    p1 = ModuleMap(m, m1, [Matrix(m.algebra.field, sinv[v].a[: m1.dims[v], :]) for v in range(len(m.dims))], validate=False)
    p2 = ModuleMap(m, m2, [Matrix(m.algebra.field, sinv[v].a[m1.dims[v] :, :]) for v in range(len(m.dims))], validate=False)
    return (m1, i1, p1), (m2, i2, p2)


def _fitting_split(m: Representation, phi: ModuleMap, g: list[int], h: list[int]):
    """Split M = ker g(phi) + ker h(phi) for coprime g, h with g h = minimal poly."""
    ge = _eval_poly_map(g, phi)
    he = _eval_poly_map(h, phi)
    k1, i1 = kernel(ge)
    k2, i2 = kernel(he)
    assert not k1.is_zero() and not k2.is_zero(), "primary component vanished"
    s = [exactlin.hstack([i1.vertex_maps[v], i2.vertex_maps[v]]) for v in range(len(m.dims))]
    sinv = [exactlin.inverse(x) for x in s]
    assert all(x is not None for x in sinv), "primary decomposition is not a direct sum"
    p1 = ModuleMap(m, k1, [Matrix(m.algebra.field, sinv[v].a[: k1.dims[v], :]) for v in range(len(m.dims))], validate=False)
    p2 = ModuleMap(m, k2, [Matrix(m.algebra.field, sinv[v].a[k1.dims[v] :, :]) for v in range(len(m.dims))], validate=False)
    return (k1, i1, p1), (k2, i2, p2)


def _eval_poly_map(coeffs: list[int], phi: ModuleMap) -> ModuleMap:
    m = phi.source
    out = zero_map(m, m)
    power = identity_map(m)
    for c in coeffs:
        if c % m.algebra.field.p:
            out = add_maps(out, scale_map(int(c), power))
        power = compose(phi, power)
    return out


def _try_poly_split(m, f, p, rng):
    """Fitting split of m along a random endomorphism f, if its minimal polynomial is not primary."""
    from . import _polyarith

    mu = exactlin.minimal_polynomial(_total_matrix(f))
    factors = _polyarith.factor(mu, p, rng)
    if len(factors) < 2:
        return None
    g = _polyarith.poly_pow(factors[0][0], factors[0][1], p)
    h = [1]
    for q, e in factors[1:]:
        h = _polyarith.poly_mul(h, _polyarith.poly_pow(q, e, p), p)
    return _fitting_split(m, f, g, h)


def _exhaustive_idempotent(m, endos, p):
    """Find a nontrivial idempotent endomorphism by enumerating all of End(m).

    Batched over the coefficient space; only called when p^t is affordable.
    """
    t = len(endos)
    totals = np.stack([_total_matrix(f).a for f in endos])  # (t, D, D)
    dd = totals.shape[1]
    ident = np.eye(dd, dtype=np.int64)
    combos = itertools.product(range(p), repeat=t)
    batch = max(1, 65536 // max(1, dd * dd))
    while True:
        chunk = list(itertools.islice(combos, batch))
        if not chunk:
            return None
        c = np.array(chunk, dtype=np.int64)  # (N, t)
        phi = np.tensordot(c, totals, axes=(1, 0)) % p  # (N, D, D)
        sq = np.einsum("nij,njk->nik", phi, phi) % p
        good = np.all(sq == phi, axis=(1, 2))
        nonzero = np.any(phi != 0, axis=(1, 2))
        notid = np.any(phi != ident[None, :, :], axis=(1, 2))
        hits = np.nonzero(good & nonzero & notid)[0]
        if hits.size:
            return map_from_coefficients(endos, [int(x) for x in chunk[int(hits[0])]])


def _decompose_indec_evidence(m, endos, budget, rng):
    """Decide indecomposability of m (End already computed). Returns (verdict, split)."""
    p = m.algebra.field.p
    t = len(endos)
    if t == 1:
        return ("endomorphism algebra has dimension 1", True), None
    # randomized route first: factoring minimal polynomials of random
    # endomorphisms splits decomposable modules quickly
    for _ in range(budget):
        coeffs = [int(c) for c in rng.integers(0, p, size=t)]
        f = map_from_coefficients(endos, coeffs)
        split = _try_poly_split(m, f, p, rng)
        if split is not None:
            return None, split
    # certainty: enumerate all endomorphisms when affordable
    if p**t <= _EXACT_ENUM_LIMIT:
        e = _exhaustive_idempotent(m, endos, p)
        if e is None:
            return ("no nontrivial idempotent endomorphism (exhaustive search)", True), None
        return None, _split_by_idempotent(m, e)
    return ("randomized search found no splitting (budget exhausted)", False), None


def decompose(m: Representation, budget: int = 64, seed: int = 0) -> DecompositionCertificate:
    """Split m into indecomposable summands with inclusion/projection maps.

    Every summand carries an evidence string.  `certified` is False only when
    the randomized route ran out of budget on some piece (then that piece may
    secretly still decompose); with exact enumeration available it never is.
    """
    rng = np.random.default_rng(seed)
    if m.is_zero():
        return DecompositionCertificate(m, (), (), (), (), True)
    work = [(m, identity_map(m), identity_map(m))]
    final = []
    certified = True
    while work:
        cur, incl, proj = work.pop()
        endos = hom_basis(cur, cur)
        verdict, split = _decompose_indec_evidence(cur, endos, budget, rng)
        if split is not None:
            (m1, i1, p1), (m2, i2, p2) = split
            work.append((m1, compose(incl, i1), compose(p1, proj)))
            work.append((m2, compose(incl, i2), compose(p2, proj)))
            continue
        evidence, ok = verdict
        certified = certified and ok
        final.append((cur, incl, proj, evidence))
    # deterministic order: sort by dims, then by entry data
    final.sort(key=lambda x: (tuple(x[0].dims), [vm.tolist() for vm in x[1].vertex_maps]))
    return DecompositionCertificate(
        m,
        tuple(f[0] for f in final),
        tuple(f[1] for f in final),
        tuple(f[2] for f in final),
        tuple(f[3] for f in final),
        certified,
    )


def require_certified(cert: DecompositionCertificate) -> DecompositionCertificate:
    if not cert.certified:
        raise BudgetExhausted("decomposition could not be certified within budget")
    return cert


# ---------------------------------------------------------------------------
# isomorphism


def _indec_iso(m: Representation, n: Representation) -> ModuleMap | None:
    """Iso test for indecomposables: some product of hom basis elements is invertible."""
    if m.dims != n.dims:
        return None
    h1 = hom_basis(m, n)
    h2 = hom_basis(n, m)
    for f in h1:
        for g in h2:
            gf = compose(g, f)
            if all(exactlin.inverse(vm) is not None for vm in gf.vertex_maps):
                return f
    return None


def is_isomorphic(m: Representation, n: Representation, seed: int = 0) -> bool:
    return isomorphism(m, n, seed=seed) is not None


def isomorphism(m: Representation, n: Representation, seed: int = 0) -> ModuleMap | None:
    """An explicit isomorphism m -> n, or None.

    Decomposes both sides and matches indecomposable summands (for
    indecomposables, m = n iff some g.f with f: m -> n, g: n -> m in the hom
    bases is invertible; this is exact since End is local).
    """
    if m.algebra != n.algebra:
        raise ValueError("isomorphism test between modules over different algebras")
    if m.dims != n.dims:
        return None
    if m.is_zero():
        return identity_map(m) if n.is_zero() else None
    dm = decompose(m, seed=seed)
    dn = decompose(n, seed=seed)
    used = [False] * len(dn.summands)
    pieces = []
    for k, s in enumerate(dm.summands):
        found = None
        for l, t in enumerate(dn.summands):
            if used[l] or t.dims != s.dims:
                continue
            iso = _indec_iso(s, t)
            if iso is not None:
                found = (l, iso)
                break
        if found is None:
            return None
        used[found[0]] = True
        pieces.append((k, found[0], found[1]))
    out = zero_map(m, n)
    for k, l, iso in pieces:
        out = add_maps(out, compose(dn.inclusions[l], compose(iso, dm.projections[k])))
    # sanity: out is invertible by construction (matched a complete summand list)
    assert all(exactlin.inverse(vm) is not None for vm in out.vertex_maps)
    return out


# ---------------------------------------------------------------------------
# random modules (for property tests and verification suites)


def random_module(algebra: BoundQuiverAlgebra, rng, max_mult: int = 2, max_gens: int = 2) -> Representation:
    """A random quotient P/U of a random projective by a random arrow-closed
    subspace of rad P.  Always a valid module; varied; exact."""
    nv = algebra.quiver.vertices
    verts = []
    for i in range(nv):
        verts.extend([i] * int(rng.integers(0, max_mult + 1)))
    if not verts:
        verts = [int(rng.integers(0, nv))]
    proj = projective_module(algebra, tuple(verts))
    rad = radical_spans(proj)
    gens = []
    for j in range(nv):
        k = int(rng.integers(0, max_gens + 1))
        if rad[j].cols == 0 or k == 0:
            gens.append(Matrix.zeros(algebra.field, proj.dims[j], 0))
            continue
        coeffs = Matrix(algebra.field, rng.integers(0, algebra.field.p, size=(rad[j].cols, k)))
        gens.append(exactlin.multiply(rad[j], coeffs))
    spans = _arrow_closure(proj, gens)
    u, incl = _sub_from_column_spans(proj, spans)
    coker, _ = cokernel(incl)
    return coker


def _arrow_closure(m: Representation, gens: list[Matrix]) -> list[Matrix]:
    """Close vertexwise column spans under all arrow actions."""
    spans = [exactlin.column_space_basis(g) for g in gens]
    changed = True
    while changed:
        changed = False
        for a in m.algebra.quiver.arrows:
            i, j = a.source, a.target
            if spans[i].cols == 0:
                continue
            moved = exactlin.multiply(m.arrow_maps[a.id], spans[i])
            combined = exactlin.column_space_basis(exactlin.hstack([spans[j], moved]))
            if combined.cols != spans[j].cols:
                spans[j] = combined
                changed = True
    return spans


# ---------------------------------------------------------------------------
# JSON


def module_to_json_dict(m: Representation, algebra_id: str) -> dict:
    return {
        "algebra": algebra_id,
        "dims": list(m.dims),
        "arrow_maps": {a.id: m.arrow_maps[a.id].tolist() for a in m.algebra.quiver.arrows},
    }


def module_from_json_dict(algebra: BoundQuiverAlgebra, data: dict) -> Representation:
    dims = [int(d) for d in data["dims"]]
    maps = {}
    for a in algebra.quiver.arrows:
        rows = data.get("arrow_maps", {}).get(a.id, [])
        mat = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        for r, row in enumerate(rows):
            for c, x in enumerate(row):
                mat[r, c] = int(x)
        maps[a.id] = Matrix(algebra.field, mat)
    return Representation(algebra, dims, maps, validate=True)
