"""Actions between 3-Leibniz algebras, homomorphic embedding tensors and dialgebras."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

import numpy as np

from .embedding import as_map, check_embedding_tensor, induced_brackets
from .errors import DimMismatch, NotAnAction, NotHomomorphicET
from .exact import ArrayEq, combine, ein, pull, push, zeros
from .leibniz3 import (
    Representation,
    ThreeLeibnizAlgebra,
    check_homomorphism,
    fundamental_residual,
    nested_residual,
    representation_residuals,
)
from .report import DEFAULT_CAP, CheckReport, from_residuals, merge
from .trileibniz import BRACKETS, TriLeibnizAlgebra, tri_residuals


@dataclass(frozen=True, eq=False)
class Action(ArrayEq):
    """Action of ``base`` on ``target`` (a representation plus compatibilities)."""

    base: ThreeLeibnizAlgebra
    target: ThreeLeibnizAlgebra
    left: np.ndarray
    middle: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        rep = Representation(self.left, self.middle, self.right)
        if rep.algebra_dim != self.base.dim or rep.space_dim != self.target.dim:
            raise DimMismatch(
                f"action tensors are for dims ({rep.algebra_dim}, {rep.space_dim}), "
                f"algebras have ({self.base.dim}, {self.target.dim})")
        for name in ("left", "middle", "right"):
            object.__setattr__(self, name, getattr(rep, name))

    @property
    def representation(self) -> Representation:
        return Representation(self.left, self.middle, self.right)


def action_residuals(act: Action) -> list:
    """Compatibility of the action tensors with the target bracket.

    The two vanishing conditions quantify each summand over its own free
    variables, so every summand is its own family.
    """
    h, L, M, R = act.target.bracket, act.left, act.middle, act.right
    return [
        # rho_l(a,b,[u,v,w]) over (a,b,u,v,w)
        ("target-derivation", combine(
            ein("uvwm,abmo->abuvwo", h, L),
            (-1, ein("abum,mvwo->abuvwo", L, h)),
            (-1, ein("abvm,umwo->abuvwo", L, h)),
            (-1, ein("abwm,uvmo->abuvwo", L, h)))),
        # [rho_m(a,s,x),v,w] over (a,s,x,v,w) and its two siblings
        ("middle-kills-target/first", ein("asxm,mvwo->asxvwo", M, h)),
        ("middle-kills-target/second", ein("asym,umwo->asuywo", M, h)),
        ("middle-kills-target/third", ein("aszm,uvmo->asuvzo", M, h)),
        # [rho_r(s,a,x),v,w] over (s,a,x,v,w) and siblings
        ("right-kills-target/first", ein("saxm,mvwo->saxvwo", R, h)),
        ("right-kills-target/second", ein("saym,umwo->sauywo", R, h)),
        ("right-kills-target/third", ein("sazm,uvmo->sauvzo", R, h)),
        # rho_l(a,b,[u,v,w]) = [u,v,rho_l(a,b,w)] over (a,b,u,v,w)
        ("left-commutes", combine(ein("uvwm,abmo->abuvwo", h, L), (-1, ein("abwm,uvmo->abuvwo", L, h)))),
        # rho_m(a,[u,v,w],b) = [u,v,rho_m(a,w,b)] over (a,b,u,v,w)
        ("middle-commutes", combine(ein("uvwm,ambo->abuvwo", h, M), (-1, ein("awbm,uvmo->abuvwo", M, h)))),
        # rho_r([u,v,w],a,b) = [u,v,rho_r(w,a,b)] over (a,b,u,v,w)
        ("right-commutes", combine(ein("uvwm,mabo->abuvwo", h, R), (-1, ein("wabm,uvmo->abuvwo", R, h)))),
    ]


def check_action(act: Action, cap: int = DEFAULT_CAP) -> CheckReport:
    fams = [("base-fundamental", fundamental_residual(act.base.bracket)),
            ("target-fundamental", fundamental_residual(act.target.bracket))]
    fams += [(f"rep:{t}", r) for t, r in representation_residuals(act.base.bracket, act.representation)]
    fams += action_residuals(act)
    return from_residuals(fams, cap)


def semidirect_bowtie(act: Action) -> ThreeLeibnizAlgebra:
    """Bracket on g + h: the semidirect sum plus the target bracket on h."""
    n, m = act.base.dim, act.target.dim
    s = zeros((n + m,) * 4)
    g, v = slice(0, n), slice(n, n + m)
    s[g, g, g, g] = act.base.bracket
    s[g, g, v, v] = act.left
    s[g, v, g, v] = act.middle
    s[v, g, g, v] = act.right
    s[v, v, v, v] = act.target.bracket
    return ThreeLeibnizAlgebra(s)


def check_homomorphic_et(op, act: Action, cap: int = DEFAULT_CAP) -> CheckReport:
    pre = check_action(act, cap)
    if not pre.passed:
        raise NotAnAction("action compatibilities fail", pre)
    op = as_map(op, act.base.dim, act.target.dim, "embedding tensor")
    return merge([
        ("embedding", check_embedding_tensor(op, act.base, act.representation, cap)),
        ("homomorphism", check_homomorphism(op, act.target, act.base, cap)),
    ], cap)


def crossed_module_residuals(op, act: Action) -> list:
    c, h = act.base.bracket, act.target.bracket
    L, M, R, t = act.left, act.middle, act.right, op
    return [
        ("intertwine-left", combine(push(t, L), (-1, pull(c, None, None, t)))),
        ("intertwine-middle", combine(push(t, M), (-1, pull(c, None, t, None)))),
        ("intertwine-right", combine(push(t, R), (-1, pull(c, t, None, None)))),
        ("target-left", combine(pull(L, t, t, None), (-1, h))),
        ("target-middle", combine(pull(M, t, None, t), (-1, h))),
        ("target-right", combine(pull(R, None, t, t), (-1, h))),
    ]


def check_crossed_module(base: ThreeLeibnizAlgebra, target: ThreeLeibnizAlgebra, op, act: Action,
                         cap: int = DEFAULT_CAP) -> CheckReport:
    """Action axioms, T a homomorphism, and the six crossed-module equations."""
    if not (act.base == base and act.target == target):
        raise DimMismatch("action is not between the given algebras")
    op = as_map(op, base.dim, target.dim, "map")
    return merge([
        ("action", check_action(act, cap)),
        ("homomorphism", check_homomorphism(op, target, base, cap)),
        ("", from_residuals(crossed_module_residuals(op, act), cap)),
    ], cap)


@dataclass(frozen=True, eq=False)
class TriLeibnizDialgebra(ArrayEq):
    base: ThreeLeibnizAlgebra
    tri: TriLeibnizAlgebra

    def __post_init__(self):
        if self.base.dim != self.tri.dim:
            raise DimMismatch(f"base has dim {self.base.dim}, tri-algebra {self.tri.dim}")

    @property
    def dim(self) -> int:
        return self.base.dim


# outer bracket with [x,y,z] placed in one slot, residuals over (a,b,x,y,z)
_INSERT = {0: "xyzm,mabo->abxyzo", 1: "xyzm,ambo->abxyzo", 2: "xyzm,abmo->abxyzo"}

# (family, outer bracket, slot of [x,y,z]) for the slot-substitution laws
_SUBSTITUTION = (
    ("left-first-slot", "left", 0),
    ("left-second-slot", "left", 1),
    ("middle-first-slot", "middle", 0),
    ("middle-third-slot", "middle", 2),
    ("right-third-slot", "right", 2),
    ("right-second-slot", "right", 1),
)


def dialgebra_residuals(d: TriLeibnizDialgebra) -> list:
    g = d.base.bracket
    L, M, R = d.tri.left, d.tri.middle, d.tri.right
    fams = [
        ("left-derives-base", nested_residual((g, L), [(L, g)] * 3)),
        ("middle-annihilates-base", nested_residual(None, [(M, g)] * 3)),
        ("right-annihilates-base", nested_residual(None, [(R, g)] * 3)),
        ("left-commutes-base", nested_residual((g, L), [(None, None), (None, None), (L, g)])),
        # [a,[x,y,z],b]_middle = [x,y,[a,z,b]_middle]
        ("middle-commutes-base", combine(ein(_INSERT[1], g, M), (-1, ein("azbm,xymo->abxyzo", M, g)))),
        # [[x,y,z],a,b]_right = [x,y,[z,a,b]_right]
        ("right-commutes-base", combine(ein(_INSERT[0], g, R), (-1, ein("zabm,xymo->abxyzo", R, g)))),
    ]
    for name, outer, slot in _SUBSTITUTION:
        for star in BRACKETS:
            diff = combine(g, (-1, d.tri.bracket(star)))
            fams.append((f"{name}[*={star}]", ein(_INSERT[slot], diff, d.tri.bracket(outer))))
    return fams


def check_dialgebra(d: TriLeibnizDialgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    fams = chain([("base-fundamental", fundamental_residual(d.base.bracket))],
                 ((f"tri:{t}", r) for t, r in tri_residuals(d.tri)),
                 dialgebra_residuals(d))
    return from_residuals(fams, cap)


def induced_dialgebra(op, act: Action, cap: int = DEFAULT_CAP) -> TriLeibnizDialgebra:
    """Target bracket plus the tri-brackets induced on the target by T."""
    report = check_homomorphic_et(op, act, cap)
    if not report.passed:
        raise NotHomomorphicET("map is not a homomorphic embedding tensor", report)
    op = as_map(op, act.base.dim, act.target.dim)
    tri = induced_brackets(op, act.representation)
    return TriLeibnizDialgebra(act.target, TriLeibnizAlgebra(tri.left, tri.middle, tri.right, act.target.labels))
