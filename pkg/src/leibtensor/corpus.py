"""Fixture algebras, representations and scenarios, and the bundled corpus.

Everything here is built from closed-form structure constants; the corpus
files are regenerated from these builders by ``scripts/build_corpus.py``.
"""
from __future__ import annotations

import json
from importlib import resources
from itertools import permutations, product
from pathlib import Path

import numpy as np

from .dialgebra import Action, induced_dialgebra
from .deformation import coboundary
from .exact import frozen, identity, pull, unit, zeros
from .fileformat import DeformationScenario, EmbeddingScenario, RepresentationData, dumps, load, to_document
from .leibniz3 import (
    BinaryAlgebra,
    Representation,
    ThreeLeibnizAlgebra,
    adjoint_rep,
    binary_on_tensor_square,
    semidirect_sum,
    three_from_binary,
)
from .trileibniz import direct_sum_tri, from_3leibniz, from_differential, hemisemidirect
from .embedding import induced_tri_leibniz


def corpus_dir() -> Path:
    return Path(str(resources.files("leibtensor") / "data" / "corpus"))


def labels(n, prefix="e"):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def perm_sign(p) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


# 3-Leibniz algebras ----------------------------------------------------------

def abelian(n: int) -> ThreeLeibnizAlgebra:
    return ThreeLeibnizAlgebra(zeros((n,) * 4), labels(n))


def vp4() -> ThreeLeibnizAlgebra:
    """Vector-product algebra on K^4: [e_i,e_j,e_k] = sum_l sign(ijkl) e_l."""
    c = zeros((4,) * 4)
    for p in permutations(range(4)):
        c[p] = perm_sign(p)
    return ThreeLeibnizAlgebra(c, labels(4))


def n2() -> ThreeLeibnizAlgebra:
    """[e1,e1,e1] = e2, all other brackets zero."""
    return ThreeLeibnizAlgebra.from_entries(2, {(0, 0, 0, 1): 1}, labels(2))


def n3() -> ThreeLeibnizAlgebra:
    """[e1,e2,e1] = e3, [e2,e1,e2] = e3; e3 is central so nested brackets vanish."""
    return ThreeLeibnizAlgebra.from_entries(3, {(0, 1, 0, 2): 1, (1, 0, 1, 2): 1}, labels(3))


def h4() -> ThreeLeibnizAlgebra:
    """Nilpotent 3-Lie algebra with [e1,e2,e3] = e4, extended antisymmetrically."""
    c = zeros((4,) * 4)
    for p in permutations(range(3)):
        c[p + (3,)] = perm_sign(p)
    return ThreeLeibnizAlgebra(c, labels(4))


def h4_differential() -> np.ndarray:
    """e3 -> e1, everything else to 0; a square-zero derivation of h4."""
    d = zeros((4, 4))
    d[0, 2] = 1
    return frozen(d)


# binary Leibniz algebras ---------------------------------------------------

def sl2() -> BinaryAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    p = zeros((3, 3, 3))
    h, e, f = 0, 1, 2
    p[h, e, e], p[e, h, e] = 2, -2
    p[h, f, f], p[f, h, f] = -2, 2
    p[e, f, h], p[f, e, h] = 1, -1
    return BinaryAlgebra(p, ("h", "e", "f"))


def nil_leibniz2() -> BinaryAlgebra:
    """[e1,e1] = e2."""
    p = zeros((2, 2, 2))
    p[0, 0, 1] = 1
    return BinaryAlgebra(p, labels(2))


def solvable_leibniz2() -> BinaryAlgebra:
    """[e1,e2] = e2 and nothing else; not antisymmetric, not nilpotent."""
    p = zeros((2, 2, 2))
    p[0, 1, 1] = 1
    return BinaryAlgebra(p, labels(2))


# representations and maps -------------------------------------------------

def copies_rep(alg: ThreeLeibnizAlgebra, k: int) -> Representation:
    """Adjoint action on k copies of g, acting copywise (basis p*n + i)."""
    n = alg.dim
    eye = identity(k)
    c = alg.bracket
    # rho_l(x, y, (p,u)) = (p, [x,y,u]) and similarly for the other slots
    left = np.einsum("xyuo,pq->xypuqo", c, eye).reshape(n, n, k * n, k * n)
    middle = np.einsum("xuyo,pq->xpuyqo", c, eye).reshape(n, k * n, n, k * n)
    right = np.einsum("uxyo,pq->puxyqo", c, eye).reshape(k * n, n, n, k * n)
    return Representation(left, middle, right)


def sum_map(n: int, k: int) -> np.ndarray:
    """(z_1, ..., z_k) -> z_1 + ... + z_k."""
    return frozen(np.hstack([identity(n)] * k))


def projection_map(n: int, k: int, i: int) -> np.ndarray:
    m = zeros((n, k * n))
    m[:, i * n:(i + 1) * n] = identity(n)
    return frozen(m)


def nil_rep() -> Representation:
    """Representation of N2 on K^2 with rho_l(e1,e1,v1) = v2, everything else 0."""
    left = zeros((2, 2, 2, 2))
    left[0, 0, 0, 1] = 1
    return Representation(left, zeros((2, 2, 2, 2)), zeros((2, 2, 2, 2)))


def nil_rep_map() -> np.ndarray:
    """v2 -> e2, v1 -> 0; an embedding tensor for nil_rep."""
    t = zeros((2, 2))
    t[1, 1] = 1
    return frozen(t)


def n2_differential() -> np.ndarray:
    """e1 -> e2, e2 -> 0."""
    d = zeros((2, 2))
    d[1, 0] = 1
    return frozen(d)


def self_action(alg: ThreeLeibnizAlgebra) -> Action:
    c = alg.bracket
    return Action(alg, alg, c, c, c)


def abelian_target_action(alg: ThreeLeibnizAlgebra) -> Action:
    """Adjoint tensors acting on a copy of g with the zero bracket."""
    c = alg.bracket
    return Action(alg, abelian(alg.dim), c, c, c)


def ideal_action(alg: ThreeLeibnizAlgebra):
    """Semidirect sum g + g (adjoint) acting on its abelian ideal 0 + g.

    Returns (big algebra, action on the ideal, inclusion map).
    """
    n = alg.dim
    big = semidirect_sum(alg, adjoint_rep(alg))
    big = ThreeLeibnizAlgebra(big.bracket, labels(n, "x") + labels(n, "v"))
    incl = zeros((2 * n, n))
    incl[n:, :] = identity(n)
    b = big.bracket
    act = Action(big, abelian(n),
                 pull(b, None, None, incl)[..., n:],
                 pull(b, None, incl, None)[..., n:],
                 pull(b, incl, None, None)[..., n:])
    return big, act, frozen(incl)


def signed_permutation_automorphisms(alg: ThreeLeibnizAlgebra) -> list:
    """Signed permutation matrices that are automorphisms of alg."""
    from .leibniz3 import check_homomorphism

    n = alg.dim
    found = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            m = zeros((n, n))
            for j, (i, s) in enumerate(zip(perm, signs)):
                m[i, j] = s
            if check_homomorphism(m, alg, alg, cap=1).passed:
                found.append(frozen(m))
    return found


def n2_automorphism(alpha, beta) -> np.ndarray:
    """e1 -> alpha e1 + beta e2, e2 -> alpha^3 e2."""
    return frozen(np.array([[alpha, 0], [beta, alpha ** 3]], dtype=object))


# corpus --------------------------------------------------------------------

class Entry:
    def __init__(self, path, obj, description, refs=None):
        self.path, self.obj, self.description = path, obj, description
        self.refs = refs or {}


def corpus_entries() -> list:
    """Every bundled file, in write order."""
    e = []

    def add(path, obj, description, **refs):
        e.append(Entry(path, obj, description, refs))

    for n in range(1, 5):
        add(f"a0_{n}.alg", abelian(n), f"Abelian {n}-dim 3-Leibniz algebra (all brackets zero).")
    add("vp4.alg", vp4(), "4-dim vector-product algebra; structure constants are Levi-Civita signs.")
    add("n2.alg", n2(), "2-dim nilpotent algebra with [e1,e1,e1] = e2.")
    add("n3.alg", n3(), "3-dim 2-step nilpotent algebra, [e1,e2,e1] = [e2,e1,e2] = e3.")

    add("h4.alg", h4(), "4-dim nilpotent 3-Lie algebra, [e1,e2,e3] = e4 and its antisymmetric images.")
    add("sl2.lb2", sl2(), "sl(2) in basis (h, e, f); a Lie algebra, hence Leibniz.")
    add("nil2.lb2", nil_leibniz2(), "2-dim Leibniz algebra [e1,e1] = e2.")
    add("solv2.lb2", solvable_leibniz2(), "2-dim non-Lie Leibniz algebra [e1,e2] = e2.")
    add("sl2_ternary.alg", ThreeLeibnizAlgebra(three_from_binary(sl2()).bracket, ("h", "e", "f")),
        "Ternary bracket [[x,y],z] built from sl(2).")
    add("nil2_ternary.alg", three_from_binary(nil_leibniz2()), "Ternary bracket from [e1,e1] = e2; identically zero.")
    add("n2_square.lb2", binary_on_tensor_square(n2()), "Leibniz product on N2 (x) N2, basis index i*2 + j.")
    add("n3_square.lb2", binary_on_tensor_square(n3()), "Leibniz product on N3 (x) N3, basis index i*3 + j.")
    add("vp4_square.lb2", binary_on_tensor_square(vp4()), "Leibniz product on VP4 (x) VP4, basis index i*4 + j.")

    add("vp4_tri.alg", from_3leibniz(vp4()), "VP4 with all three brackets equal to its bracket.")
    add("n2_tri.alg", from_3leibniz(n2()), "N2 with all three brackets equal to its bracket.")
    add("n3_tri.alg", from_3leibniz(n3()), "N3 with all three brackets equal to its bracket.")
    add("sl2_ternary_tri.alg", from_3leibniz(three_from_binary(sl2())), "Ternary sl(2) bracket used for all three brackets.")
    for k in (2, 3):
        add(f"n2_sum{k}.alg", direct_sum_tri(n2(), k), f"{k} copies of N2 with the copy-summing brackets.")
        if 3 * k <= 8:  # keep every instance at desk scale
            add(f"n3_sum{k}.alg", direct_sum_tri(n3(), k), f"{k} copies of N3 with the copy-summing brackets.")
        add(f"a0_1_sum{k}.alg", direct_sum_tri(abelian(1), k), f"{k} copies of the 1-dim abelian algebra.")
    add("n2_differential.alg", from_differential(n2(), n2_differential()),
        "Brackets from N2 with the square-zero derivation e1 -> e2 (all vanish).")
    add("h4_differential.alg", from_differential(h4(), h4_differential()),
        "Brackets from h4 with the square-zero derivation e3 -> e1.")
    add("hemi_vp4_adj.alg", hemisemidirect(vp4(), adjoint_rep(vp4())), "Hemisemidirect product of VP4 with its adjoint representation.")
    add("hemi_n2_adj.alg", hemisemidirect(n2(), adjoint_rep(n2())), "Hemisemidirect product of N2 with its adjoint representation.")
    add("hemi_n2_nilrep.alg", hemisemidirect(n2(), nil_rep()), "Hemisemidirect product of N2 with the nilpotent representation on K^2.")
    add("vp4_copies2_induced.alg", induced_tri_leibniz(sum_map(4, 2), vp4(), copies_rep(vp4(), 2)),
        "Brackets induced on two copies of VP4 by the sum map.")

    reps = {
        "vp4_adj.rep": (vp4(), adjoint_rep(vp4()), "vp4.alg", "Adjoint representation of VP4."),
        "n2_adj.rep": (n2(), adjoint_rep(n2()), "n2.alg", "Adjoint representation of N2."),
        "n3_adj.rep": (n3(), adjoint_rep(n3()), "n3.alg", "Adjoint representation of N3."),
        "vp4_copies2.rep": (vp4(), copies_rep(vp4(), 2), "vp4.alg", "Copywise adjoint action of VP4 on two copies of itself."),
        "vp4_copies3.rep": (vp4(), copies_rep(vp4(), 3), "vp4.alg", "Copywise adjoint action of VP4 on three copies of itself."),
        "n2_copies2.rep": (n2(), copies_rep(n2(), 2), "n2.alg", "Copywise adjoint action of N2 on two copies of itself."),
        "n2_nilrep.rep": (n2(), nil_rep(), "n2.alg", "N2 acting on K^2 by rho_l(e1,e1,v1) = v2."),
        "a0_2_zero3.rep": (abelian(2), Representation.zero(2, 3), "a0_2.alg", "Zero representation of A0(2) on K^3."),
        "a0_3_zero2.rep": (abelian(3), Representation.zero(3, 2), "a0_3.alg", "Zero representation of A0(3) on K^2."),
    }
    for path, (alg, rep, ref, desc) in reps.items():
        add(path, RepresentationData(alg, rep), desc, algebra=ref)

    big, ideal_act, incl = ideal_action(vp4())
    add("vp4_semidirect.alg", big, "Semidirect sum of VP4 with its adjoint representation (8-dim).")
    actions = {
        "n2_self.act": (self_action(n2()), "n2.alg", "n2.alg", "N2 acting on itself by its bracket."),
        "n3_self.act": (self_action(n3()), "n3.alg", "n3.alg", "N3 acting on itself by its bracket."),
        "vp4_on_abelian.act": (abelian_target_action(vp4()), "vp4.alg", "a0_4.alg", "VP4 adjoint tensors acting on an abelian copy of K^4."),
        "vp4_ideal.act": (ideal_act, "vp4_semidirect.alg", "a0_4.alg", "VP4 + VP4 acting on its abelian ideal 0 + VP4."),
    }
    for path, (act, b, t, desc) in actions.items():
        add(path, act, desc, base=b, target=t)

    maps = {
        "id2.map": (identity(2), "Identity on K^2."),
        "id3.map": (identity(3), "Identity on K^3."),
        "id4.map": (identity(4), "Identity on K^4."),
        "zero_2x3.map": (zeros((2, 3)), "Zero map K^3 -> K^2."),
        "zero_3x2.map": (zeros((3, 2)), "Zero map K^2 -> K^3."),
        "zero_4x4.map": (zeros((4, 4)), "Zero map on K^4."),
        "vp4_sum2.map": (sum_map(4, 2), "Sum of two copies of K^4."),
        "vp4_sum3.map": (sum_map(4, 3), "Sum of three copies of K^4."),
        "vp4_proj1of2.map": (projection_map(4, 2, 0), "Projection of two copies of K^4 onto the first."),
        "n2_sum2.map": (sum_map(2, 2), "Sum of two copies of K^2."),
        "n2_d.map": (n2_differential(), "e1 -> e2, e2 -> 0."),
        "h4_d.map": (h4_differential(), "e3 -> e1, other basis vectors -> 0."),
        "n2_nilrep_t.map": (nil_rep_map(), "v2 -> e2, v1 -> 0."),
        "vp4_incl.map": (incl, "Inclusion of 0 + VP4 into VP4 + VP4."),
        "n2_nilrep_delta.map": (coboundary(unit(2, 0), unit(2, 0), nil_rep_map(), n2(), nil_rep()),
                                "Coboundary of (e1, e1) for the nilpotent scenario."),
        "n2_nilrep_delta2.map": (frozen(2 * coboundary(unit(2, 0), unit(2, 0), nil_rep_map(), n2(), nil_rep())),
                                 "Twice the coboundary of (e1, e1) for the nilpotent scenario."),
    }
    for path, (m, desc) in maps.items():
        add(path, m, desc)

    scenarios = [
        ("vp4_identity.scn", vp4(), adjoint_rep(vp4()), identity(4), "vp4_adj.rep", "id4.map", "Identity averaging operator on VP4."),
        ("n2_identity.scn", n2(), adjoint_rep(n2()), identity(2), "n2_adj.rep", "id2.map", "Identity averaging operator on N2."),
        ("n3_identity.scn", n3(), adjoint_rep(n3()), identity(3), "n3_adj.rep", "id3.map", "Identity averaging operator on N3."),
        ("vp4_copies2_sum.scn", vp4(), copies_rep(vp4(), 2), sum_map(4, 2), "vp4_copies2.rep", "vp4_sum2.map", "Sum map on two copies of VP4."),
        ("vp4_copies3_sum.scn", vp4(), copies_rep(vp4(), 3), sum_map(4, 3), "vp4_copies3.rep", "vp4_sum3.map", "Sum map on three copies of VP4."),
        ("vp4_copies2_proj.scn", vp4(), copies_rep(vp4(), 2), projection_map(4, 2, 0), "vp4_copies2.rep", "vp4_proj1of2.map", "Projection onto the first of two copies of VP4."),
        ("n2_copies2_sum.scn", n2(), copies_rep(n2(), 2), sum_map(2, 2), "n2_copies2.rep", "n2_sum2.map", "Sum map on two copies of N2."),
        ("n2_averaging_d.scn", n2(), adjoint_rep(n2()), n2_differential(), "n2_adj.rep", "n2_d.map", "The differential of N2 as an averaging operator."),
        ("n2_nilrep.scn", n2(), nil_rep(), nil_rep_map(), "n2_nilrep.rep", "n2_nilrep_t.map", "Embedding tensor v2 -> e2 for the nilpotent representation."),
        ("abelian_zero_rep.scn", abelian(2), Representation.zero(2, 3), zeros((2, 3)), "a0_2_zero3.rep", "zero_2x3.map", "Zero map for the zero representation of A0(2) on K^3."),
        ("abelian_zero_rep_3x2.scn", abelian(3), Representation.zero(3, 2), zeros((3, 2)), "a0_3_zero2.rep", "zero_3x2.map", "Zero map for the zero representation of A0(3) on K^2."),
    ]
    for path, alg, rep, op, rref_, mref, desc in scenarios:
        add(path, EmbeddingScenario(alg, rep, op), desc, representation=rref_, map=mref)

    hom = [
        ("n2_crossed.scn", self_action(n2()), identity(2), "n2_self.act", "id2.map", "Crossed module (N2, N2, id) with the self action."),
        ("n3_crossed.scn", self_action(n3()), identity(3), "n3_self.act", "id3.map", "Crossed module (N3, N3, id) with the self action."),
        ("vp4_ideal_crossed.scn", ideal_act, incl, "vp4_ideal.act", "vp4_incl.map", "Crossed module: inclusion of the abelian ideal of VP4 + VP4."),
        ("vp4_abelian_zero.scn", abelian_target_action(vp4()), zeros((4, 4)), "vp4_on_abelian.act", "zero_4x4.map", "Zero homomorphic embedding tensor for VP4 acting on abelian K^4."),
    ]
    for path, act, op, aref, mref, desc in hom:
        add(path, EmbeddingScenario(act.base, act.representation, op, act), desc, action=aref, map=mref)
        name = path.replace(".scn", ".dia")
        add(name, induced_dialgebra(op, act), f"Dialgebra induced by {path}.")

    delta = coboundary(unit(2, 0), unit(2, 0), nil_rep_map(), n2(), nil_rep())
    defs = [
        ("n2_nilrep_trivial.dscn", DeformationScenario(n2(), nil_rep(), nil_rep_map(), delta, frozen(2 * delta), (unit(2, 0), unit(2, 0))),
         {"representation": "n2_nilrep.rep", "map": "n2_nilrep_t.map", "direction": "n2_nilrep_delta.map", "direction_tilde": "n2_nilrep_delta2.map"},
         "Deformation along the coboundary of (e1, e1), with an equivalent deformation along twice it."),
        ("vp4_identity_scaled.dscn", DeformationScenario(vp4(), adjoint_rep(vp4()), identity(4), identity(4)),
         {"representation": "vp4_adj.rep", "map": "id4.map", "direction": "id4.map"},
         "Identity on VP4 deformed along itself (T + tT = (1 + t)T)."),
        ("abelian_zero_rep.dscn", DeformationScenario(abelian(2), Representation.zero(2, 3), zeros((2, 3)), zeros((2, 3))),
         {"representation": "a0_2_zero3.rep", "map": "zero_2x3.map", "direction": "zero_2x3.map"},
         "Zero map on the zero representation with the zero direction."),
    ]
    for path, obj, refs, desc in defs:
        e.append(Entry(path, obj, desc, refs))
    return e


def write_corpus(directory=None) -> list:
    """Write every corpus file and the manifest; returns the manifest entries."""
    directory = Path(directory or corpus_dir())
    directory.mkdir(parents=True, exist_ok=True)
    manifest = []
    for entry in corpus_entries():
        doc = to_document(entry.obj, entry.refs, name=entry.path.rsplit(".", 1)[0], description=entry.description)
        (directory / entry.path).write_text(dumps(doc), encoding="utf-8")
        manifest.append({"path": entry.path, "kind": doc["kind"], "expect": "pass"})
    (directory / "manifest.json").write_text(json.dumps({"files": manifest}, indent=1) + "\n", encoding="utf-8")
    return manifest


def read_manifest(directory=None) -> list:
    directory = Path(directory or corpus_dir())
    return json.loads((directory / "manifest.json").read_text(encoding="utf-8"))["files"]


def load_corpus(directory=None) -> dict:
    directory = Path(directory or corpus_dir())
    return {m["path"]: load(directory / m["path"]) for m in read_manifest(directory)}
