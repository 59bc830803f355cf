"""Embedding tensors, averaging operators and their characterizations."""
from __future__ import annotations

import numpy as np

from .errors import DimMismatch, NotAnEmbeddingTensor
from .exact import Subspace, canon, clear_denominators, combine, divide, frozen, identity, matmul, pull, push, zeros
from .leibniz3 import Representation, ThreeLeibnizAlgebra, adjoint_rep
from .report import DEFAULT_CAP, CheckReport, from_residuals
from .trileibniz import BRACKETS, TriLeibnizAlgebra, hemisemidirect


def as_map(op, rows: int, cols: int, what: str = "map") -> np.ndarray:
    op = canon(np.asarray(op))
    if op.shape != (rows, cols):
        raise DimMismatch(f"{what} has shape {op.shape}, want {(rows, cols)}")
    return op


def _context(op, alg: ThreeLeibnizAlgebra, rep: Representation):
    if alg.dim != rep.algebra_dim:
        raise DimMismatch(f"representation is of a {rep.algebra_dim}-dim algebra, got {alg.dim}")
    return as_map(op, alg.dim, rep.space_dim, "embedding tensor")


def embedding_residuals(op, alg: ThreeLeibnizAlgebra, rep: Representation) -> list:
    """[Tu,Tv,Tw] against each of the three action expressions, over (u,v,w)."""
    t = op
    top = pull(alg.bracket, t, t, t)
    return [
        ("left", combine(top, (-1, push(t, pull(rep.left, t, t, None))))),
        ("middle", combine(top, (-1, push(t, pull(rep.middle, t, None, t))))),
        ("right", combine(top, (-1, push(t, pull(rep.right, None, t, t))))),
    ]


def check_embedding_tensor(op, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> CheckReport:
    op = _context(op, alg, rep)
    return from_residuals(embedding_residuals(op, alg, rep), cap)


def check_averaging(op, alg: ThreeLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    return check_embedding_tensor(op, alg, adjoint_rep(alg), cap)


def nijenhuis_residual(n_op, bracket) -> np.ndarray:
    # each term has degree 3 in n and 1 in the bracket, so work with integers and divide by d**4
    (n, bracket), d = clear_denominators([n_op, bracket])
    n2 = matmul(n, n)
    n3 = matmul(n2, n)
    once = combine(pull(bracket, None, n, n), pull(bracket, n, None, n), pull(bracket, n, n, None))
    twice = combine(pull(bracket, n, None, None), pull(bracket, None, n, None), pull(bracket, None, None, n))
    return divide(combine(
        pull(bracket, n, n, n),
        (-1, push(n, once)),
        push(n2, twice),
        (-1, push(n3, bracket))), d ** 4)


def check_nijenhuis_operator(n_op, alg: TriLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    n_op = as_map(n_op, alg.dim, alg.dim, "operator")
    return from_residuals([(b, nijenhuis_residual(n_op, alg.bracket(b))) for b in BRACKETS], cap)


def lift_NT(op, alg: ThreeLeibnizAlgebra, rep: Representation):
    """Block operator (x, u) -> (Tu, 0) and the hemisemidirect product."""
    op = _context(op, alg, rep)
    n, m = alg.dim, rep.space_dim
    big = zeros((n + m, n + m))
    big[:n, n:] = op
    return frozen(big), hemisemidirect(alg, rep)


def graph(op) -> Subspace:
    """Graph {(Tu, u)} inside g + V."""
    return Subspace(op.shape[0] + op.shape[1], np.hstack([op.T, identity(op.shape[1])]))


def graph_check(op, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> CheckReport:
    """Closure of the graph under the three hemisemidirect brackets."""
    op = _context(op, alg, rep)
    n = alg.dim
    tri = hemisemidirect(alg, rep)
    # (x, u) lies in the graph iff x = Tu; scaling emb by d scales each bracket by d**3
    (emb,), d = clear_denominators([np.vstack([op, identity(rep.space_dim)])])  # u -> d (Tu, u)
    fams = []
    for b in BRACKETS:
        v = pull(tri.bracket(b), emb, emb, emb)
        fams.append((b, divide(combine((d, v[..., :n]), (-1, push(emb[:n, :], v[..., n:]))), d ** 4)))
    return from_residuals(fams, cap)


def induced_brackets(op, rep: Representation) -> TriLeibnizAlgebra:
    t = op
    return TriLeibnizAlgebra(pull(rep.left, t, t, None), pull(rep.middle, t, None, t), pull(rep.right, None, t, t))


def induced_tri_leibniz(op, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> TriLeibnizAlgebra:
    """[u,v,w]_left = rho_l(Tu,Tv,w), _middle = rho_m(Tu,v,Tw), _right = rho_r(u,Tv,Tw)."""
    op = _context(op, alg, rep)
    report = check_embedding_tensor(op, alg, rep, cap)
    if not report.passed:
        raise NotAnEmbeddingTensor("map is not an embedding tensor", report)
    return induced_brackets(op, rep)


def check_tri_homomorphism(op, src: TriLeibnizAlgebra, alg: ThreeLeibnizAlgebra, cap: int = DEFAULT_CAP) -> CheckReport:
    """T[u,v,w]_b = [Tu,Tv,Tw] for each of the three brackets b of src."""
    op = as_map(op, alg.dim, src.dim)
    top = pull(alg.bracket, op, op, op)
    return from_residuals([(b, combine(push(op, src.bracket(b)), (-1, top))) for b in BRACKETS], cap)
