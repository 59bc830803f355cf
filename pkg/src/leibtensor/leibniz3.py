"""3-Leibniz algebras, their representations and the binary Leibniz bridge.

A bracket is stored as structure constants c[i, j, k, l], the coefficient of
e_l in [e_i, e_j, e_k]. Residual tensors used by the checks are indexed by
the quantified basis tuple first and the output coordinate last.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, DimMismatch, NotAnIdeal
from .exact import (ArrayEq, Subspace, canon, clear_denominators, combine, contract, divide, ein, frozen, identity,
                    pull, push, zeros)
from .report import DEFAULT_CAP, CheckReport, from_residuals


def _labels(labels, n):
    if labels is None:
        return None
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise DimMismatch(f"{len(labels)} labels for dimension {n}")
    return labels


@dataclass(frozen=True, eq=False)
class ThreeLeibnizAlgebra(ArrayEq):
    bracket: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        c = frozen(self.bracket)
        n = c.shape[0] if c.ndim else -1
        if c.shape != (n, n, n, n):
            raise DimMismatch(f"bracket must have shape (n,n,n,n), got {c.shape}")
        object.__setattr__(self, "bracket", c)
        object.__setattr__(self, "labels", _labels(self.labels, n))

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]

    def __call__(self, x, y, z):
        return contract(self.bracket, x, y, z)

    @classmethod
    def abelian(cls, n: int) -> "ThreeLeibnizAlgebra":
        return cls(zeros((n,) * 4))

    @classmethod
    def from_entries(cls, n: int, entries: dict, labels=None) -> "ThreeLeibnizAlgebra":
        c = zeros((n,) * 4)
        for idx, v in entries.items():
            c[idx] = v
        return cls(c, labels)


@dataclass(frozen=True, eq=False)
class BinaryAlgebra(ArrayEq):
    """Bilinear product p[i, j, l] = coefficient of e_l in [e_i, e_j]."""

    product: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        p = frozen(self.product)
        n = p.shape[0] if p.ndim else -1
        if p.shape != (n, n, n):
            raise DimMismatch(f"product must have shape (n,n,n), got {p.shape}")
        object.__setattr__(self, "product", p)
        object.__setattr__(self, "labels", _labels(self.labels, n))

    @property
    def dim(self) -> int:
        return self.product.shape[0]

    def __call__(self, x, y):
        return contract(self.product, x, y)


@dataclass(frozen=True, eq=False)
class Representation(ArrayEq):
    """Three action tensors of an n-dim algebra on an m-dim space.

    left[x, y, u, o]   : rho_l(x, y, u), shape (n, n, m, m)
    middle[x, u, y, o] : rho_m(x, u, y), shape (n, m, n, m)
    right[u, x, y, o]  : rho_r(u, x, y), shape (m, n, n, m)
    """

    left: np.ndarray
    middle: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        for name in ("left", "middle", "right"):
            object.__setattr__(self, name, frozen(getattr(self, name)))
        n, _, m, _ = self.left.shape if self.left.ndim == 4 else (None,) * 4
        if self.left.ndim != 4 or self.left.shape != (n, n, m, m):
            raise DimMismatch(f"left action has shape {self.left.shape}, want (n,n,m,m)")
        if self.middle.shape != (n, m, n, m):
            raise DimMismatch(f"middle action has shape {self.middle.shape}, want {(n, m, n, m)}")
        if self.right.shape != (m, n, n, m):
            raise DimMismatch(f"right action has shape {self.right.shape}, want {(m, n, n, m)}")

    @property
    def algebra_dim(self) -> int:
        return self.left.shape[0]

    @property
    def space_dim(self) -> int:
        return self.left.shape[2]

    @classmethod
    def zero(cls, n: int, m: int) -> "Representation":
        return cls(zeros((n, n, m, m)), zeros((n, m, n, m)), zeros((m, n, n, m)))


# nested brackets -----------------------------------------------------------

_NEST = {
    "lhs": "xyzm,abmo->abxyzo",  # [a, b, [x, y, z]_inner]_outer
    0: "abxm,myzo->abxyzo",  # [[a, b, x]_inner, y, z]_outer
    1: "abym,xmzo->abxyzo",  # [x, [a, b, y]_inner, z]_outer
    2: "abzm,xymo->abxyzo",  # [x, y, [a, b, z]_inner]_outer
}


def nested(inner, outer, where) -> np.ndarray:
    """Residual-shaped tensor of a nested bracket; see ``_NEST`` for shapes."""
    return ein(_NEST[where], inner, outer)


def nested_residual(lhs, rhs) -> np.ndarray:
    """lhs - sum(rhs) for derivation-type identities over (a, b, x, y, z).

    ``lhs`` is an (inner, outer) pair or None for a zero left side; ``rhs``
    lists one (inner, outer) pair per slot, None where the term is absent.
    """
    pairs = ([] if lhs is None else [lhs]) + [p for p in rhs if p[0] is not None]
    if not pairs:
        n = rhs[0][0].shape[0]
        return zeros((n,) * 6)
    # every term is bilinear, so clear denominators once and divide by d**2 at the end
    flat, d = clear_denominators([t for p in pairs for t in p])
    scaled = iter(zip(flat[::2], flat[1::2]))
    terms = [] if lhs is None else [nested(*next(scaled), "lhs")]
    terms += [(-1, nested(*next(scaled), slot)) for slot, (inner, _) in enumerate(rhs) if inner is not None]
    return divide(combine(*terms), d * d)


def fundamental_residual(c) -> np.ndarray:
    return nested_residual((c, c), [(c, c)] * 3)


def check_fundamental_identity(alg: ThreeLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    """Left multiplications must be derivations, on every basis 5-tuple."""
    return from_residuals([("fundamental", fundamental_residual(alg.bracket))], cap)


def check_homomorphism(phi, src: ThreeLeibnizAlgebra, dst: ThreeLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    phi = canon(np.asarray(phi))
    if phi.shape != (dst.dim, src.dim):
        raise DimMismatch(f"map has shape {phi.shape}, want {(dst.dim, src.dim)}")
    res = combine(push(phi, src.bracket), (-1, pull(dst.bracket, phi, phi, phi)))
    return from_residuals([("homomorphism", res)], cap)


def _ambient(s: Subspace, alg):
    if s.ambient_dim != alg.dim:
        raise AmbientMismatch(f"subspace of K^{s.ambient_dim} in a {alg.dim}-dim algebra")


def check_subalgebra(s: Subspace, alg: ThreeLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    _ambient(s, alg)
    b = s.basis.T
    return from_residuals([("closure", s.residual(pull(alg.bracket, b, b, b)))], cap)


def ideal_residuals(s: Subspace, bracket) -> list:
    b = s.basis.T
    return [
        ("first-slot", s.residual(pull(bracket, b, None, None))),
        ("second-slot", s.residual(pull(bracket, None, b, None))),
        ("third-slot", s.residual(pull(bracket, None, None, b))),
    ]


def check_ideal(s: Subspace, alg: ThreeLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    _ambient(s, alg)
    return from_residuals(ideal_residuals(s, alg.bracket), cap)


def quotient_coordinates(s: Subspace):
    """Projection (q x n) and lift (n x q) for the complement coordinates.

    Pivot columns of the echelon basis are eliminated; the remaining standard
    coordinates index the quotient.
    """
    n = s.ambient_dim
    pivots = s.pivots
    keep = [j for j in range(n) if j not in pivots]
    proj = zeros((len(keep), n))
    lift = zeros((n, len(keep)))
    for k, j in enumerate(keep):
        proj[k, j] = 1
        lift[j, k] = 1
    for row, p in zip(s.basis, pivots):
        # e_p is congruent to e_p - row, which has no pivot components
        proj[:, p] = [-row[j] for j in keep]
    return frozen(proj), frozen(lift)


def quotient(alg: ThreeLeibnizAlgebra, s: Subspace, cap: int = DEFAULT_CAP):
    rep = check_ideal(s, alg, cap)
    if not rep.passed:
        raise NotAnIdeal("subspace is not an ideal", rep)
    proj, lift = quotient_coordinates(s)
    c = push(proj, pull(alg.bracket, lift, lift, lift))
    return ThreeLeibnizAlgebra(c), proj


def _rep_dims(alg, rep):
    if alg.dim != rep.algebra_dim:
        raise DimMismatch(f"representation is of a {rep.algebra_dim}-dim algebra, got {alg.dim}")


def representation_residuals(c, rep: Representation) -> list:
    """The five compatibility families of a representation."""
    L, M, R = rep.left, rep.middle, rep.right
    return [
        # rho_l(a,b,rho_l(x,y,u)) over (a,b,x,y,u)
        ("left-on-left", combine(
            ein("xyum,abmo->abxyuo", L, L),
            (-1, ein("abxm,myuo->abxyuo", c, L)),
            (-1, ein("abym,xmuo->abxyuo", c, L)),
            (-1, ein("abum,xymo->abxyuo", L, L)))),
        # rho_l(a,b,rho_m(x,u,z)) over (a,b,x,u,z)
        ("left-on-middle", combine(
            ein("xuzm,abmo->abxuzo", M, L),
            (-1, ein("abxm,muzo->abxuzo", c, M)),
            (-1, ein("abum,xmzo->abxuzo", L, M)),
            (-1, ein("abzm,xumo->abxuzo", c, M)))),
        # rho_l(a,b,rho_r(u,y,z)) over (a,b,u,y,z)
        ("left-on-right", combine(
            ein("uyzm,abmo->abuyzo", R, L),
            (-1, ein("abum,myzo->abuyzo", L, R)),
            (-1, ein("abym,umzo->abuyzo", c, R)),
            (-1, ein("abzm,uymo->abuyzo", c, R)))),
        # rho_m(a,u,[x,y,z]) over (a,u,x,y,z)
        ("middle-on-bracket", combine(
            ein("xyzm,aumo->auxyzo", c, M),
            (-1, ein("auxm,myzo->auxyzo", M, R)),
            (-1, ein("auym,xmzo->auxyzo", M, M)),
            (-1, ein("auzm,xymo->auxyzo", M, L)))),
        # rho_r(u,b,[x,y,z]) over (u,b,x,y,z)
        ("right-on-bracket", combine(
            ein("xyzm,ubmo->ubxyzo", c, R),
            (-1, ein("ubxm,myzo->ubxyzo", R, R)),
            (-1, ein("ubym,xmzo->ubxyzo", R, M)),
            (-1, ein("ubzm,xymo->ubxyzo", R, L)))),
    ]


def check_representation(alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> CheckReport:
    _rep_dims(alg, rep)
    return from_residuals(representation_residuals(alg.bracket, rep), cap)


def adjoint_rep(alg: ThreeLeibnizAlgebra) -> Representation:
    c = alg.bracket
    return Representation(c, c, c)


def semidirect_sum(alg: ThreeLeibnizAlgebra, rep: Representation) -> ThreeLeibnizAlgebra:
    """Bracket on g + V; coordinates 0..n-1 are g, n..n+m-1 are V."""
    _rep_dims(alg, rep)
    n, m = alg.dim, rep.space_dim
    s = zeros((n + m,) * 4)
    g, v = slice(0, n), slice(n, n + m)
    s[g, g, g, g] = alg.bracket
    s[g, g, v, v] = rep.left
    s[g, v, g, v] = rep.middle
    s[v, g, g, v] = rep.right
    return ThreeLeibnizAlgebra(s)


# binary Leibniz bridge ------------------------------------------------------

def check_leibniz(alg: BinaryAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    """[x,[y,z]] = [[x,y],z] + [y,[x,z]] on basis triples."""
    p = alg.product
    res = combine(
        ein("yzm,xmo->xyzo", p, p),
        (-1, ein("xym,mzo->xyzo", p, p)),
        (-1, ein("xzm,ymo->xyzo", p, p)))
    return from_residuals([("leibniz", res)], cap)


def three_from_binary(alg: BinaryAlgebra) -> ThreeLeibnizAlgebra:
    """[x, y, z] = [[x, y], z]."""
    p = alg.product
    return ThreeLeibnizAlgebra(ein("xym,mzo->xyzo", p, p))


def binary_on_tensor_square(alg: ThreeLeibnizAlgebra) -> BinaryAlgebra:
    """Product on g (x) g, basis index i*n + j for e_i (x) e_j.

    [x1 (x) x2, y1 (x) y2] = [x1,x2,y1] (x) y2 + y1 (x) [x1,x2,y2]
    """
    n = alg.dim
    c, eye = alg.bracket, identity(n)
    first = ein("abcl,de->abcdle", c, eye)
    second = ein("abdl,ce->abcdel", c, eye)
    return BinaryAlgebra(combine(first, second).reshape(n * n, n * n, n * n))
