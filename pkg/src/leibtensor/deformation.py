"""Linear deformations T + t*T1 of embedding tensors.

A deformation direction T1 is an n x m map like T. Maps are flattened
row-major (entry (i, j) -> i*m + j) when treated as vectors of the nm-dim
space of candidate directions.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .embedding import _context, as_map, check_embedding_tensor
from .errors import DimMismatch, NotAnEmbeddingTensor, NotANijenhuisElement, IntertwiningFailure
from .exact import Subspace, canon, combine, partial, frozen, intersect, inverse, kernel_basis, matmul, pull, push, unit, zeros
from .leibniz3 import Representation, ThreeLeibnizAlgebra, check_homomorphism
from .report import DEFAULT_CAP, CheckReport, from_residuals, merge


def _expand(order: int, slots: tuple, build):
    """Sum of build(chosen) over all ways of marking ``order`` of the slots."""
    return combine(*(build(set(chosen)) for chosen in combinations(slots, order)))


def embedding_coefficients(op, direction, alg: ThreeLeibnizAlgebra, rep: Representation, order: int) -> list:
    """Coefficient of t**order in the embedding-tensor identities of T + t*T1.

    Each slot carrying a map gets T1 when marked and T otherwise.
    """
    c = alg.bracket

    def m(chosen, slot):
        return direction if slot in chosen else op

    top = _expand(order, (0, 1, 2), lambda s: pull(c, m(s, 0), m(s, 1), m(s, 2)))
    fams = []
    for name, tensor, inner in (
        ("left", rep.left, (0, 1)),
        ("middle", rep.middle, (0, 2)),
        ("right", rep.right, (1, 2)),
    ):
        def side(s, tensor=tensor, inner=inner):
            maps = [m(s, k) if k in inner else None for k in range(3)]
            return push(m(s, "out"), pull(tensor, *maps))
        rhs = _expand(order, inner + ("out",), side)
        fams.append((f"order-{order}/{name}", combine(top, (-1, rhs))))
    return fams


def _pair(op, direction, alg, rep):
    op = _context(op, alg, rep)
    return op, as_map(direction, alg.dim, rep.space_dim, "deformation direction")


def deformation_check(op, direction, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> CheckReport:
    """Orders 0..3 of the embedding identities for T + t*T1.

    Order 0 is T itself; together the four orders are equivalent to T + t*T1
    being an embedding tensor for every t.
    """
    op, direction = _pair(op, direction, alg, rep)
    fams = []
    for k in range(4):
        fams += embedding_coefficients(op, direction, alg, rep, k)
    return from_residuals(fams, cap)


def cocycle_check(direction, op, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> CheckReport:
    op, direction = _pair(op, direction, alg, rep)
    fams = [(t.split("/")[1], r) for t, r in embedding_coefficients(op, direction, alg, rep, 1)]
    return from_residuals(fams, cap)


def left_operators(a, b, alg: ThreeLeibnizAlgebra, rep: Representation):
    """Matrices of x -> [a,b,x] on g and u -> rho_l(a,b,u) on V."""
    return partial(alg.bracket, a, b).T, partial(rep.left, a, b).T


def _vectors(a, b, n):
    a, b = canon(np.asarray(a)), canon(np.asarray(b))
    if a.shape != (n,) or b.shape != (n,):
        raise DimMismatch(f"pair vectors must have length {n}")
    return a, b


def coboundary(a, b, op, alg: ThreeLeibnizAlgebra, rep: Representation) -> np.ndarray:
    """u -> T rho_l(a,b,u) - [a,b,Tu]."""
    op = _context(op, alg, rep)
    a, b = _vectors(a, b, alg.dim)
    adj, act = left_operators(a, b, alg, rep)
    return frozen(combine(matmul(op, act), (-1, matmul(adj, op))))


@dataclass(frozen=True, eq=False)
class CocycleSpace:
    cocycles: Subspace  # Z1
    coboundaries: Subspace  # B1
    coboundary_cocycles: Subspace  # B1 cap Z1

    @property
    def h1_dim(self) -> int:
        return self.cocycles.rank - self.coboundary_cocycles.rank


def cocycle_constraints(op, alg: ThreeLeibnizAlgebra, rep: Representation) -> np.ndarray:
    """Matrix whose kernel is Z1; column i*m + j is the order-1 residual of E_ij."""
    n, m = alg.dim, rep.space_dim
    cols = []
    for i in range(n):
        for j in range(m):
            e = zeros((n, m))
            e[i, j] = 1
            fams = embedding_coefficients(op, e, alg, rep, 1)
            cols.append(np.concatenate([canon(r).ravel() for _, r in fams]))
    if not cols:
        return zeros((0, 0))
    return np.stack(cols, axis=1)


def cocycle_space(op, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> CocycleSpace:
    op = _context(op, alg, rep)
    report = check_embedding_tensor(op, alg, rep, cap)
    if not report.passed:
        raise NotAnEmbeddingTensor("map is not an embedding tensor", report)
    n, m = alg.dim, rep.space_dim
    nm = n * m
    z1 = kernel_basis(cocycle_constraints(op, alg, rep)) if nm else Subspace.zero(0)
    bounds = [coboundary(unit(n, i), unit(n, j), op, alg, rep).ravel() for i in range(n) for j in range(n)]
    b1 = Subspace(nm, np.array(bounds, dtype=object).reshape(len(bounds), nm))
    return CocycleSpace(z1, b1, intersect(b1, z1))


def equivalence_witness_check(direction, direction_tilde, a, b, op, alg: ThreeLeibnizAlgebra, rep: Representation,
                              cap: int = DEFAULT_CAP) -> CheckReport:
    """T1~ u - T1 u = delta(a,b) u on basis vectors u."""
    direction, direction_tilde = (as_map(x, alg.dim, rep.space_dim, "deformation direction") for x in (direction, direction_tilde))
    delta = coboundary(a, b, op, alg, rep)
    res = combine(direction_tilde, (-1, direction), (-1, delta))
    return from_residuals([("witness", res.T)], cap)


def intertwining_families(alg_map, space_map, rep: Representation) -> list:
    """psi rho(...) = rho(...) with phi on algebra slots and psi on the space slot."""
    f, s = alg_map, space_map
    return [
        ("intertwine-left", combine(push(s, rep.left), (-1, pull(rep.left, f, f, s)))),
        ("intertwine-middle", combine(push(s, rep.middle), (-1, pull(rep.middle, f, s, f)))),
        ("intertwine-right", combine(push(s, rep.right), (-1, pull(rep.right, s, f, f)))),
    ]


def check_et_homomorphism(alg_map, space_map, src, dst, alg: ThreeLeibnizAlgebra, rep: Representation,
                          cap: int = DEFAULT_CAP) -> CheckReport:
    """(phi, psi) is a homomorphism from the embedding tensor src to dst."""
    n, m = alg.dim, rep.space_dim
    f = as_map(alg_map, n, n, "algebra map")
    s = as_map(space_map, m, m, "space map")
    src, dst = (_context(x, alg, rep) for x in (src, dst))
    tensor = combine(matmul(dst, s), (-1, matmul(f, src))).T
    return merge([
        ("", check_homomorphism(f, alg, alg, cap)),
        ("", from_residuals(intertwining_families(f, s, rep) + [("tensor", tensor)], cap)),
    ], cap)


def flow_families(adj, act, alg: ThreeLeibnizAlgebra, rep: Representation) -> list:
    """Order-k coefficients of phi_t = id + t*A being a homomorphism and of
    (phi_t, psi_t = id + t*L) satisfying the three intertwining laws."""
    fams = []
    c = alg.bracket
    for name, tensor, maps, outer in (
        ("alg-hom", c, (adj, adj, adj), adj),
        ("left-intertwine", rep.left, (adj, adj, act), act),
        ("middle-intertwine", rep.middle, (adj, act, adj), act),
        ("right-intertwine", rep.right, (act, adj, adj), act),
    ):
        for k in (1, 2, 3):
            rhs = _expand(k, (0, 1, 2), lambda s, t=tensor, mp=maps: pull(t, *[mp[j] if j in s else None for j in range(3)]))
            res = combine(push(outer, tensor), (-1, rhs)) if k == 1 else combine((-1, rhs))
            fams.append((f"{name}/order-{k}", res))
    return fams


def deformation_equivalence_check(op, direction, direction_tilde, a, b, alg: ThreeLeibnizAlgebra,
                                  rep: Representation, cap: int = DEFAULT_CAP) -> CheckReport:
    """(id + t[a,b,.], id + t rho_l(a,b,.)) as a homomorphism from T + t*T1~ to T + t*T1.

    Checks every polynomial coefficient: the flow families plus the two
    orders of (T + t*T1)(id + t*L) = (id + t*A)(T + t*T1~).
    """
    op = _context(op, alg, rep)
    direction, direction_tilde = (as_map(x, alg.dim, rep.space_dim, "deformation direction") for x in (direction, direction_tilde))
    a, b = _vectors(a, b, alg.dim)
    adj, act = left_operators(a, b, alg, rep)
    first = combine(direction, matmul(op, act), (-1, direction_tilde), (-1, matmul(adj, op)))
    second = combine(matmul(direction, act), (-1, matmul(adj, direction_tilde)))
    fams = flow_families(adj, act, alg, rep) + [("tensor/order-1", first.T), ("tensor/order-2", second.T)]
    return from_residuals(fams, cap)


def check_nijenhuis_element(a, b, op, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP) -> CheckReport:
    op = _context(op, alg, rep)
    a, b = _vectors(a, b, alg.dim)
    adj, act = left_operators(a, b, alg, rep)
    delta = combine(matmul(op, act), (-1, matmul(adj, op)))
    fams = flow_families(adj, act, alg, rep) + [("nijenhuis", matmul(adj, delta).T)]
    return from_residuals(fams, cap)


def basis_pairs(n: int) -> list:
    return [(unit(n, i), unit(n, j)) for i in range(n) for j in range(n)]


def nijenhuis_element_scan(op, alg: ThreeLeibnizAlgebra, rep: Representation, candidates=None) -> list:
    """Candidate pairs (default: all ordered basis pairs) that are Nijenhuis elements."""
    if candidates is None:
        candidates = basis_pairs(alg.dim)
    return [(a, b) for a, b in candidates if check_nijenhuis_element(a, b, op, alg, rep, cap=1).passed]


def trivial_deformation(a, b, op, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP):
    """T1 = delta(a,b) for a Nijenhuis element, with its certificate.

    The report combines deformation_check of T + t*T1 with the equivalence
    families showing (id + tA, id + tL) maps T + t*T1 to T.
    """
    pre = check_nijenhuis_element(a, b, op, alg, rep, cap)
    if not pre.passed:
        raise NotANijenhuisElement("pair is not a Nijenhuis element", pre)
    direction = coboundary(a, b, op, alg, rep)
    report = merge([
        ("deformation", deformation_check(op, direction, alg, rep, cap)),
        ("equivalence", deformation_equivalence_check(op, zeros(direction.shape), direction, a, b, alg, rep, cap)),
    ], cap)
    return direction, report


def conjugate_et(op, alg_map, space_map, alg: ThreeLeibnizAlgebra, rep: Representation, cap: int = DEFAULT_CAP):
    """phi^-1 T psi for an automorphism phi and invertible psi intertwining the actions."""
    op = _context(op, alg, rep)
    n, m = alg.dim, rep.space_dim
    f = as_map(alg_map, n, n, "algebra map")
    s = as_map(space_map, m, m, "space map")
    f_inv = inverse(f)
    inverse(s)
    pre = merge([
        ("", check_homomorphism(f, alg, alg, cap)),
        ("", from_residuals(intertwining_families(f, s, rep), cap)),
    ], cap)
    if not pre.passed:
        raise IntertwiningFailure("maps are not compatible with the algebra and representation", pre)
    conj = frozen(matmul(matmul(f_inv, op), s))
    return conj, check_embedding_tensor(conj, alg, rep, cap)
