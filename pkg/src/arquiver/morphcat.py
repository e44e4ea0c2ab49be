"""The morphism category of a bound quiver algebra.

An object is a module map f: A -> B between right modules over one algebra;
a morphism is a commuting square (sigma1, sigma2).  The whole category is
equivalent to right modules over the triangular matrix algebra t2_of(Lambda):
vertex i carries A_i, its primed copy carries B_i, and the connecting arrow
eps<i> acts by f_i.  to_t2_module / from_t2_module realize that equivalence
on the nose, so every module-level operator (hom, ext, decompose, translate)
applies to morphism objects by transport.

On top of the identification this module provides:

- mimo: the minimal enlargement of f: A -> B to a monomorphism
  A -> B (+) I(ker f), a minimal right approximation of f by mono objects;
- imin / pmin: the two-step minimal injective / projective resolution of a
  module, viewed as an object here;
- is_gp_in_h: the Gorenstein-projectivity test for objects (source, target
  and cokernel Gorenstein projective over the base, and f mono);
- tau_s_lambda: the translation of the submodule category over a
  self-injective algebra, computed as mimo of the functorial translate of
  the cokernel projection B ->> coker(f).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotMono, NotSelfInjective
from .exactlin import Matrix
from .homalg import ar_translate_of_map, is_selfinjective
from .quivalg import BoundQuiverAlgebra, t2_of
from .repmod import (
    ModuleMap,
    Representation,
    add_maps,
    compose,
    cokernel,
    direct_sum,
    hom_basis,
    identity_map,
    injective_envelope,
    is_mono,
    kernel,
    map_from_coefficients,
    module_from_json_dict,
    module_to_json_dict,
    scale_map,
    solve_hom_equation,
    zero_map,
    zero_module,
)
from . import exactlin

import numpy as np


# ---------------------------------------------------------------------------
# objects and morphisms


@dataclass(frozen=True)
class MorphObject:
    """An object f: a -> b of the morphism category."""

    a: Representation
    b: Representation
    f: ModuleMap

    def __post_init__(self):
        if self.f.source != self.a or self.f.target != self.b:
            raise ValueError("MorphObject: f must run a -> b")

    @staticmethod
    def of_map(f: ModuleMap) -> "MorphObject":
        return MorphObject(f.source, f.target, f)

    @property
    def algebra(self) -> BoundQuiverAlgebra:
        return self.a.algebra

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    @property
    def total_dim(self) -> int:
        return self.a.total_dim + self.b.total_dim

    def __repr__(self):
        return f"MorphObject({list(self.a.dims)} -> {list(self.b.dims)})"


@dataclass(frozen=True)
class MorphMap:
    """A morphism (sigma1, sigma2): source -> target; the square commutes."""

    source: MorphObject
    target: MorphObject
    sigma1: ModuleMap
    sigma2: ModuleMap

    def __post_init__(self):
        p = self.source.algebra.field.p
        lhs = compose(self.target.f, self.sigma1)
        rhs = compose(self.sigma2, self.source.f)
        if not add_maps(lhs, scale_map(p - 1, rhs)).is_zero():
            raise ValueError("MorphMap: square does not commute")

    def is_zero(self) -> bool:
        return self.sigma1.is_zero() and self.sigma2.is_zero()


def zero_morph_object(alg: BoundQuiverAlgebra) -> MorphObject:
    z = zero_module(alg)
    return MorphObject(z, z, zero_map(z, z))


def identity_morph_map(obj: MorphObject) -> MorphMap:
    return MorphMap(obj, obj, identity_map(obj.a), identity_map(obj.b))


# ---------------------------------------------------------------------------
# the triangular-algebra identification


def to_t2_module(obj: MorphObject) -> Representation:
    """The module over t2_of(algebra) carrying (a at plain, b at primed)."""
    alg = obj.algebra
    t2, _ = t2_of(alg)
    n = alg.quiver.vertices
    dims = tuple(obj.a.dims) + tuple(obj.b.dims)
    maps = {}
    for arr in alg.quiver.arrows:
        maps[f"{arr.id}.a"] = obj.a.arrow_maps[arr.id]
        maps[f"{arr.id}.b"] = obj.b.arrow_maps[arr.id]
    for i in range(n):
        maps[f"eps{i}"] = obj.f.vertex_maps[i]
    return Representation(t2, dims, maps, validate=True)


def from_t2_module(rep: Representation) -> MorphObject:
    """Inverse of to_t2_module; rep.algebra must have come from t2_of."""
    from .quivalg import t2_base_of

    based = t2_base_of(rep.algebra)
    if based is None:
        raise ValueError("from_t2_module: algebra was not produced by t2_of")
    base, _ = based
    n = base.quiver.vertices
    a = Representation(
        base,
        rep.dims[:n],
        {arr.id: rep.arrow_maps[f"{arr.id}.a"] for arr in base.quiver.arrows},
        validate=False,
    )
    b = Representation(
        base,
        rep.dims[n:],
        {arr.id: rep.arrow_maps[f"{arr.id}.b"] for arr in base.quiver.arrows},
        validate=False,
    )
    f = ModuleMap(a, b, [rep.arrow_maps[f"eps{i}"] for i in range(n)], validate=True)
    return MorphObject(a, b, f)


# ---------------------------------------------------------------------------
# hom spaces of the morphism category, computed directly
#
# A morphism x -> y is a pair (s1, s2) with y.f∘s1 = s2∘x.f; the space is cut
# out of Hom(x.a, y.a) x Hom(x.b, y.b) by one linear condition.  Kept separate
# from the t2 route so the two can cross-check each other.


def morph_hom_basis(x: MorphObject, y: MorphObject) -> list[MorphMap]:
    from .repmod import flatten_map

    h1 = hom_basis(x.a, y.a)
    h2 = hom_basis(x.b, y.b)
    if not h1 and not h2:
        return []
    field = x.algebra.field
    cols = []
    for s1 in h1:
        cols.append(flatten_map(compose(y.f, s1)))
    for s2 in h2:
        cols.append((-flatten_map(compose(s2, x.f))) % field.p)
    system = Matrix(field, np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64))
    null = exactlin.kernel_basis(system)
    out = []
    for c in range(null.cols):
        v = [int(t) for t in null.a[:, c]]
        s1 = map_from_coefficients(h1, v[: len(h1)]) if h1 else zero_map(x.a, y.a)
        s2 = map_from_coefficients(h2, v[len(h1) :]) if h2 else zero_map(x.b, y.b)
        out.append(MorphMap(x, y, s1, s2))
    return out


def morph_hom_dim(x: MorphObject, y: MorphObject) -> int:
    return len(morph_hom_basis(x, y))


def compose_morph_maps(g: MorphMap, f: MorphMap) -> MorphMap:
    return MorphMap(f.source, g.target, compose(g.sigma1, f.sigma1), compose(g.sigma2, f.sigma2))


def factor_morph_map_through(m: MorphMap, c: MorphMap) -> MorphMap | None:
    """Some h: m.source -> c.source with c∘h = m, or None.

    Solves for the pair (h1, h2) jointly: the commuting-square condition for
    h and both composition conditions are one linear system.
    """
    from .repmod import flatten_map

    x, y = m.source, c.source
    h1 = hom_basis(x.a, y.a)
    h2 = hom_basis(x.b, y.b)
    field = x.algebra.field
    p = field.p
    k1, k2 = len(h1), len(h2)
    if k1 + k2 == 0:
        return identity_morph_map(x) if m.is_zero() and x.total_dim == 0 else None

    blocks = []  # rows: [square-commute | c.sigma1∘h1 = m.sigma1 | c.sigma2∘h2 = m.sigma2]
    rhs_parts = []
    sq1 = [flatten_map(compose(y.f, s)) for s in h1]
    sq2 = [(-flatten_map(compose(s, x.f))) % p for s in h2]
    size_sq = sq1[0].shape[0] if sq1 else (sq2[0].shape[0] if sq2 else 0)
    if size_sq:
        row = np.zeros((size_sq, k1 + k2), dtype=np.int64)
        for j, col in enumerate(sq1):
            row[:, j] = col
        for j, col in enumerate(sq2):
            row[:, k1 + j] = col
        blocks.append(row)
        rhs_parts.append(np.zeros(size_sq, dtype=np.int64))
    c1 = [flatten_map(compose(c.sigma1, s)) for s in h1]
    t1 = flatten_map(m.sigma1)
    if t1.shape[0]:
        row = np.zeros((t1.shape[0], k1 + k2), dtype=np.int64)
        for j, col in enumerate(c1):
            row[:, j] = col
        blocks.append(row)
        rhs_parts.append(t1)
    elif any(col.shape[0] for col in c1):  # pragma: no cover - shapes always agree
        raise AssertionError
    c2 = [flatten_map(compose(c.sigma2, s)) for s in h2]
    t2 = flatten_map(m.sigma2)
    if t2.shape[0]:
        row = np.zeros((t2.shape[0], k1 + k2), dtype=np.int64)
        for j, col in enumerate(c2):
            row[:, k1 + j] = col
        blocks.append(row)
        rhs_parts.append(t2)
    if not blocks:
        return MorphMap(
            x,
            y,
            map_from_coefficients(h1, [0] * k1) if h1 else zero_map(x.a, y.a),
            map_from_coefficients(h2, [0] * k2) if h2 else zero_map(x.b, y.b),
        )
    system = Matrix(field, np.vstack(blocks))
    rhs = Matrix(field, np.concatenate(rhs_parts).reshape(-1, 1))
    sol = exactlin.solve(system, rhs)
    if sol is None:
        return None
    v = [int(t) for t in sol.a[:, 0]]
    s1 = map_from_coefficients(h1, v[:k1]) if h1 else zero_map(x.a, y.a)
    s2 = map_from_coefficients(h2, v[k1:]) if h2 else zero_map(x.b, y.b)
    return MorphMap(x, y, s1, s2)


# ---------------------------------------------------------------------------
# Mimo: minimal monomorphism approximation


def mimo(obj: MorphObject) -> tuple[MorphObject, MorphMap]:
    """([f, e]: A -> B (+) I(ker f), canonical (1_A, [1_B, 0])).

    e extends the injective envelope of ker(f) along ker(f) -> A; any
    solution of that extension system yields the same object up to
    isomorphism.  The returned structure map is a monomorphism and the
    canonical morphism is a minimal right approximation of obj by objects
    with monomorphic structure map.
    """
    k, kappa = kernel(obj.f)
    if k.is_zero():
        return obj, identity_morph_map(obj)
    env = injective_envelope(k)
    env_target = env.target
    e = solve_hom_equation(obj.a, env_target, env, pre=kappa)
    assert e is not None, "extension along a monomorphism into an injective must exist"
    amalgam, incls, projs = direct_sum([obj.b, env_target])
    fe = add_maps(compose(incls[0], obj.f), compose(incls[1], e))
    assert is_mono(fe), "mimo output must be mono"
    mono = MorphObject(obj.a, amalgam, fe)
    canonical = MorphMap(mono, obj, identity_map(obj.a), projs[0])
    return mono, canonical


# ---------------------------------------------------------------------------
# IMin / PMin


def imin(n: Representation) -> MorphObject:
    """(I0 -> I1): the start of the minimal injective resolution of n."""
    env0 = injective_envelope(n)
    cok, proj = cokernel(env0)
    env1 = injective_envelope(cok)
    return MorphObject(env0.target, env1.target, compose(env1, proj))


def pmin(n: Representation) -> MorphObject:
    """(P1 -> P0): the minimal projective presentation of n."""
    from .homalg import minimal_presentation

    pres = minimal_presentation(n)
    return MorphObject(pres.p1, pres.p0, pres.d)


# ---------------------------------------------------------------------------
# Gorenstein projectivity of an object


def is_gp_in_h(obj: MorphObject, gp_test) -> bool:
    """Whether obj is Gorenstein projective over the triangular algebra.

    Criterion: f mono, and a, b, coker(f) all pass the base-algebra test.
    """
    if not is_mono(obj.f):
        return False
    cok, _ = cokernel(obj.f)
    return bool(gp_test(obj.a) and gp_test(obj.b) and gp_test(cok))


# ---------------------------------------------------------------------------
# the translation of the submodule category over a self-injective algebra


def tau_s_lambda(obj: MorphObject) -> MorphObject:
    """Translate of a mono object, while the algebra is self-injective.

    Computed as mimo applied to the functorial stable translate of the
    cokernel projection q: B ->> coker(f) — the translate is taken over the
    base algebra and applied to the morphism q itself (lifting q through
    minimal presentations), not to (B -> coker f) as an object.  Taking the
    object-level translate over the triangular algebra instead produces a
    projective object already for (S = S) over k[x]/(x^2), so it cannot be
    the almost-split end; see the decisions ledger.
    """
    alg = obj.algebra
    if not is_selfinjective(alg):
        raise NotSelfInjective("tau_s_lambda needs a self-injective base algebra")
    if not is_mono(obj.f):
        raise NotMono("tau_s_lambda is defined on objects with monomorphic structure map")
    _, proj = cokernel(obj.f)
    tq = ar_translate_of_map(proj)
    mono, _ = mimo(MorphObject.of_map(tq))
    return mono


# ---------------------------------------------------------------------------
# JSON


def morph_to_json_dict(obj: MorphObject, algebra_id: str) -> dict:
    return {
        "A": module_to_json_dict(obj.a, algebra_id),
        "B": module_to_json_dict(obj.b, algebra_id),
        "f": {
            "vertex_maps": {
                str(i): obj.f.vertex_maps[i].tolist() for i in range(len(obj.f.vertex_maps))
            }
        },
    }


def morph_from_json_dict(alg: BoundQuiverAlgebra, data: dict) -> MorphObject:
    a = module_from_json_dict(alg, data["A"])
    b = module_from_json_dict(alg, data["B"])
    vms = []
    raw = data.get("f", {}).get("vertex_maps", {})
    for i in range(alg.quiver.vertices):
        rows = raw.get(str(i), raw.get(i, []))
        mat = np.zeros((b.dims[i], a.dims[i]), dtype=np.int64)
        for r, row in enumerate(rows):
            for c, x in enumerate(row):
                mat[r, c] = int(x)
        vms.append(Matrix(alg.field, mat))
    f = ModuleMap(a, b, vms, validate=True)
    return MorphObject(a, b, f)
