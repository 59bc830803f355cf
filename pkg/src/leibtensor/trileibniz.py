"""3-tri-Leibniz algebras and the constructions that produce them.

The three brackets are named after the action flavour they come from in the
hemisemidirect product: ``left`` carries rho_l, ``middle`` carries rho_m and
``right`` carries rho_r. The left bracket is always a 3-Leibniz bracket.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, IdealClosureFailure, NotADerivation, NotAMorphism, NotSquareZero, RepresentativeDependence
from .exact import (ArrayEq, Subspace, canon, clear_denominators, combine, divide, frozen, identity, matmul, pull,
                    push, zeros)
from .leibniz3 import (
    Representation,
    ThreeLeibnizAlgebra,
    check_ideal,
    nested,
    quotient,
    quotient_coordinates,
    semidirect_sum,
)
from .report import DEFAULT_CAP, CheckReport, from_residuals

BRACKETS = ("left", "middle", "right")


@dataclass(frozen=True, eq=False)
class TriLeibnizAlgebra(ArrayEq):
    left: np.ndarray
    middle: np.ndarray
    right: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        shapes = set()
        for name in BRACKETS:
            b = frozen(getattr(self, name))
            object.__setattr__(self, name, b)
            shapes.add(b.shape)
        n = self.left.shape[0] if self.left.ndim else -1
        if shapes != {(n,) * 4}:
            raise DimMismatch(f"brackets must share a shape (n,n,n,n), got {sorted(shapes)}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @property
    def dim(self) -> int:
        return self.left.shape[0]

    def bracket(self, name: str) -> np.ndarray:
        return getattr(self, name)

    @property
    def left_algebra(self) -> ThreeLeibnizAlgebra:
        return ThreeLeibnizAlgebra(self.left)

    @classmethod
    def zero(cls, n: int) -> "TriLeibnizAlgebra":
        z = zeros((n,) * 4)
        return cls(z, z, z)


# Each identity: [a,b,[x,y,z]_inner]_outer = sum over slots k of the outer_k
# bracket with [a,b,slot_k]_inner_k substituted. "*" is the quantified bracket.
TRI_IDENTITIES = (
    ("right-outer", ("*", "right"), (("right", "right"), ("right", "middle"), ("right", "left"))),
    ("left-over-right", ("right", "left"), (("left", "right"), ("*", "right"), ("*", "right"))),
    ("left-over-left", ("left", "left"), (("*", "left"), ("*", "left"), ("left", "left"))),
    ("left-over-middle", ("middle", "left"), (("*", "middle"), ("left", "middle"), ("*", "middle"))),
    ("middle-outer", ("*", "middle"), (("middle", "right"), ("middle", "middle"), ("middle", "left"))),
)


def tri_residuals(alg: TriLeibnizAlgebra):
    """Yields (tag, residual) per family, one residual alive at a time."""
    # nested terms repeat across families, so each (inner, outer, slot) is contracted once
    scaled, d = clear_denominators([alg.bracket(b) for b in BRACKETS])
    br = dict(zip(BRACKETS, scaled))
    plan = []
    for name, lhs, rhs in TRI_IDENTITIES:
        for star in BRACKETS:
            def pick(pair):
                return tuple(star if b == "*" else b for b in pair)
            plan.append((f"{name}[*={star}]", [(pick(lhs), "lhs")] + [(pick(p), slot) for slot, p in enumerate(rhs)]))
    # entries are dropped after their last use to bound memory at large dimension
    uses = Counter(key for _, keys in plan for key in keys)
    memo = {}

    def term(key):
        if key not in memo:
            memo[key] = nested(br[key[0][0]], br[key[0][1]], key[1])
        out = memo[key]
        uses[key] -= 1
        if not uses[key]:
            del memo[key]
        return out

    for tag, keys in plan:
        terms = [term(keys[0])] + [(-1, term(k)) for k in keys[1:]]
        yield tag, divide(combine(*terms), d * d)


def check_tri_leibniz(alg: TriLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    """All five identity families, each for every choice of the quantified bracket."""
    return from_residuals(tri_residuals(alg), cap)


def from_3leibniz(alg: ThreeLeibnizAlgebra) -> TriLeibnizAlgebra:
    c = alg.bracket
    return TriLeibnizAlgebra(c, c, c, alg.labels)


def _square(m, n, what):
    m = canon(np.asarray(m))
    if m.shape != (n, n):
        raise DimMismatch(f"{what} has shape {m.shape}, want {(n, n)}")
    return m


def check_derivation(d, alg: ThreeLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    """d[x,y,z] = [dx,y,z] + [x,dy,z] + [x,y,dz] on basis triples."""
    c = alg.bracket
    d = _square(d, alg.dim, "derivation")
    res = combine(push(d, c), (-1, pull(c, d, None, None)), (-1, pull(c, None, d, None)), (-1, pull(c, None, None, d)))
    return from_residuals([("derivation", res)], cap)


def from_differential(alg: ThreeLeibnizAlgebra, d, cap: int = DEFAULT_CAP) -> TriLeibnizAlgebra:
    """[x,y,z]_left = [dx,y,z], _middle = [x,dy,z], _right = [x,y,dz].

    d must square to zero and be a derivation; both are verified. The
    tri-Leibniz identities themselves are not checked here; run
    check_tri_leibniz on the result when that matters.
    """
    d = _square(d, alg.dim, "differential")
    sq = from_residuals([("square-zero", matmul(d, d).T)], cap)
    if not sq.passed:
        raise NotSquareZero("d o d is not zero", sq)
    der = check_derivation(d, alg, cap)
    if not der.passed:
        raise NotADerivation("d is not a derivation", der)
    c = alg.bracket
    return TriLeibnizAlgebra(pull(c, d, None, None), pull(c, None, d, None), pull(c, None, None, d))


def intertwining_residuals(f, alg: ThreeLeibnizAlgebra, rep: Representation) -> list:
    """f rho(...) = [...] with f substituted in the space slot, per flavour."""
    c = alg.bracket
    return [
        ("intertwine-left", combine(push(f, rep.left), (-1, pull(c, None, None, f)))),
        ("intertwine-middle", combine(push(f, rep.middle), (-1, pull(c, None, f, None)))),
        ("intertwine-right", combine(push(f, rep.right), (-1, pull(c, f, None, None)))),
    ]


def _map_shape(f, alg, rep):
    f = canon(np.asarray(f))
    if alg.dim != rep.algebra_dim or f.shape != (alg.dim, rep.space_dim):
        raise DimMismatch(f"map has shape {f.shape}, want {(alg.dim, rep.space_dim)}")
    return f


def from_rep_morphism(alg: ThreeLeibnizAlgebra, rep: Representation, f, cap: int = DEFAULT_CAP) -> TriLeibnizAlgebra:
    f = _map_shape(f, alg, rep)
    report = from_residuals(intertwining_residuals(f, alg, rep), cap)
    if not report.passed:
        raise NotAMorphism("map does not intertwine the representation with the adjoint one", report)
    return TriLeibnizAlgebra(pull(rep.left, f, f, None), pull(rep.middle, f, None, f), pull(rep.right, None, f, f))


def direct_sum_tri(alg: ThreeLeibnizAlgebra, copies: int) -> TriLeibnizAlgebra:
    """Brackets on k copies of g; basis index p*n + i is e_i in copy p.

    The left bracket sums the first argument over copies, the middle one the
    second and the right one the third; the other two arguments are taken
    componentwise.
    """
    if copies < 1:
        raise ValueError("copies must be at least 1")
    n, k = alg.dim, copies
    c = alg.bracket
    out = {name: zeros((k, n, k, n, k, n, k, n)) for name in BRACKETS}
    for q in range(k):
        for p in range(k):
            out["left"][p, :, q, :, q, :, q, :] = c
            out["middle"][q, :, p, :, q, :, q, :] = c
            out["right"][q, :, q, :, p, :, q, :] = c
    shape = (k * n,) * 4
    return TriLeibnizAlgebra(*(out[b].reshape(shape) for b in BRACKETS))


def hemisemidirect(alg: ThreeLeibnizAlgebra, rep: Representation) -> TriLeibnizAlgebra:
    """Tri-Leibniz structure on g + V, one action flavour per bracket."""
    if alg.dim != rep.algebra_dim:
        raise DimMismatch(f"representation is of a {rep.algebra_dim}-dim algebra, got {alg.dim}")
    n, m = alg.dim, rep.space_dim
    g, v = slice(0, n), slice(n, n + m)
    out = []
    for name in BRACKETS:
        b = zeros((n + m,) * 4)
        b[g, g, g, g] = alg.bracket
        if name == "left":
            b[g, g, v, v] = rep.left
        elif name == "middle":
            b[g, v, g, v] = rep.middle
        else:
            b[v, g, g, v] = rep.right
        out.append(b)
    return TriLeibnizAlgebra(*out)


def associated_ideal(alg: TriLeibnizAlgebra, cap: int = DEFAULT_CAP) -> Subspace:
    """Span of pairwise bracket differences on basis triples.

    Verified to be an ideal of the left 3-Leibniz algebra.
    """
    n = alg.dim
    diffs = [combine(alg.left, (-1, alg.right)), combine(alg.right, (-1, alg.middle)), combine(alg.left, (-1, alg.middle))]
    ideal = Subspace(n, np.vstack([canon(d).reshape(-1, n) for d in diffs]))
    report = check_ideal(ideal, alg.left_algebra, cap)
    if not report.passed:
        raise IdealClosureFailure("bracket differences do not span an ideal", report)
    return ideal


def representative_residuals(ideal: Subspace, alg: TriLeibnizAlgebra) -> list:
    """Terms that must vanish for the quotient actions to be well defined."""
    b = ideal.basis.T
    return [
        ("left-first", pull(alg.left, b, None, None)),
        ("left-second", pull(alg.left, None, b, None)),
        ("middle-first", pull(alg.middle, b, None, None)),
        ("middle-third", pull(alg.middle, None, None, b)),
        ("right-second", pull(alg.right, None, b, None)),
        ("right-third", pull(alg.right, None, None, b)),
    ]


def universal_quotient(alg: TriLeibnizAlgebra, cap: int = DEFAULT_CAP):
    """(quotient algebra, its representation on the original space, projection).

    The quotient is the left algebra modulo the associated ideal; the three
    actions are the original brackets evaluated on lifted classes. Whether
    they are independent of the lift is verified and a
    RepresentativeDependence error is raised if not.
    """
    ideal = associated_ideal(alg, cap)
    quo, proj = quotient(alg.left_algebra, ideal, cap)
    report = from_residuals(representative_residuals(ideal, alg), cap)
    if not report.passed:
        raise RepresentativeDependence("induced actions depend on the chosen representative", report)
    _, lift = quotient_coordinates(ideal)
    rep = Representation(
        pull(alg.left, lift, lift, None),
        pull(alg.middle, lift, None, lift),
        pull(alg.right, None, lift, lift),
    )
    return quo, rep, proj


def averaging_embedding(alg: TriLeibnizAlgebra, cap: int = DEFAULT_CAP):
    """(big algebra on quotient + g, averaging operator, inclusion of g).

    The operator sends (class, y) to (class of y, 0).
    """
    quo, rep, proj = universal_quotient(alg, cap)
    q, n = quo.dim, alg.dim
    big = semidirect_sum(quo, rep)
    op = zeros((q + n, q + n))
    op[:q, q:] = proj
    incl = zeros((q + n, n))
    incl[q:, :] = identity(n)
    return big, frozen(op), frozen(incl)

