"""Structural theorems as executable checks on a single instance.

Each theorem compares the verdicts of two checks. An "iff" theorem holds when
both verdicts agree, an "implies" theorem when the hypothesis fails or the
conclusion passes. A theorem that cannot be evaluated (a construction raised a
CheckFailure that is itself the evidence) records the failure as its verdict.
"""
from __future__ import annotations

from dataclasses import dataclass

from .deformation import check_nijenhuis_element, deformation_check, nijenhuis_element_scan, trivial_deformation
from .dialgebra import Action, check_action, check_dialgebra, check_homomorphic_et, induced_dialgebra, semidirect_bowtie
from .embedding import (
    check_averaging,
    check_embedding_tensor,
    check_nijenhuis_operator,
    check_tri_homomorphism,
    graph_check,
    induced_tri_leibniz,
    lift_NT,
)
from .errors import CheckFailure
from .exact import combine, identity
from .fileformat import DeformationScenario, EmbeddingScenario, RepresentationData
from .leibniz3 import (
    BinaryAlgebra,
    ThreeLeibnizAlgebra,
    adjoint_rep,
    check_fundamental_identity,
    check_leibniz,
    check_representation,
    semidirect_sum,
    three_from_binary,
)
from .report import DEFAULT_CAP
from .trileibniz import TriLeibnizAlgebra, averaging_embedding, check_tri_leibniz, hemisemidirect, universal_quotient


@dataclass(frozen=True)
class TheoremResult:
    name: str
    mode: str  # "iff" or "implies"
    hypothesis: bool
    conclusion: bool
    detail: str = ""

    @property
    def holds(self) -> bool:
        if self.mode == "iff":
            return self.hypothesis == self.conclusion
        return (not self.hypothesis) or self.conclusion

    def to_dict(self) -> dict:
        return {"name": self.name, "mode": self.mode, "hypothesis": self.hypothesis,
                "conclusion": self.conclusion, "holds": self.holds, "detail": self.detail}


def semidirect_theorem(alg, rep, cap=DEFAULT_CAP) -> TheoremResult:
    """rep is a representation iff the semidirect sum satisfies the fundamental identity."""
    hyp = check_representation(alg, rep, cap).passed
    con = check_fundamental_identity(semidirect_sum(alg, rep), cap).passed
    return TheoremResult("semidirect-sum", "iff", hyp, con)


def hemisemidirect_theorem(alg, rep, cap=DEFAULT_CAP) -> TheoremResult:
    """rep is a representation iff the hemisemidirect product is tri-Leibniz."""
    hyp = check_representation(alg, rep, cap).passed
    con = check_tri_leibniz(hemisemidirect(alg, rep), cap).passed
    return TheoremResult("hemisemidirect", "iff", hyp, con)


def bowtie_theorem(act: Action, cap=DEFAULT_CAP) -> TheoremResult:
    """The action axioms hold iff the bowtie bracket satisfies the fundamental identity.

    Both algebras are required to be 3-Leibniz on either side.
    """
    base_ok = check_fundamental_identity(act.base, cap).passed and check_fundamental_identity(act.target, cap).passed
    hyp = check_action(act, cap).passed
    con = base_ok and check_fundamental_identity(semidirect_bowtie(act), cap).passed
    return TheoremResult("bowtie", "iff", hyp, con)


def embedding_triple(op, alg, rep, cap=DEFAULT_CAP) -> list:
    """Embedding tensor iff N_T is Nijenhuis iff the graph is closed."""
    et = check_embedding_tensor(op, alg, rep, cap).passed
    n_op, hemi = lift_NT(op, alg, rep)
    nij = check_nijenhuis_operator(n_op, hemi, cap).passed
    gr = graph_check(op, alg, rep, cap).passed
    return [TheoremResult("embedding-iff-nijenhuis", "iff", et, nij),
            TheoremResult("embedding-iff-graph", "iff", et, gr)]


def induced_theorems(op, alg, rep, cap=DEFAULT_CAP) -> list:
    """An embedding tensor induces a tri-Leibniz algebra and is a homomorphism onto g."""
    et = check_embedding_tensor(op, alg, rep, cap).passed
    if not et:
        return [TheoremResult("induced-tri-leibniz", "implies", False, False, "not an embedding tensor")]
    tri = induced_tri_leibniz(op, alg, rep, cap)
    return [TheoremResult("induced-tri-leibniz", "implies", True, check_tri_leibniz(tri, cap).passed),
            TheoremResult("induced-homomorphism", "implies", True, check_tri_homomorphism(op, tri, alg, cap).passed)]


def dialgebra_theorem(op, act: Action, cap=DEFAULT_CAP) -> TheoremResult:
    """A homomorphic embedding tensor induces a tri-Leibniz dialgebra."""
    if not check_action(act, cap).passed:
        return TheoremResult("induced-dialgebra", "implies", False, False, "action axioms fail")
    hyp = check_homomorphic_et(op, act, cap).passed
    con = hyp and check_dialgebra(induced_dialgebra(op, act, cap), cap).passed
    return TheoremResult("induced-dialgebra", "implies", hyp, con)


def quotient_theorems(tri: TriLeibnizAlgebra, cap=DEFAULT_CAP) -> list:
    """The universal quotient reproduces the brackets; the averaging embedding is averaging."""
    hyp = check_tri_leibniz(tri, cap).passed
    try:
        quo, rep, proj = universal_quotient(tri, cap)
    except CheckFailure as err:
        return [TheoremResult("universal-quotient", "implies", hyp, False, str(err))]
    et = check_embedding_tensor(proj, quo, rep, cap).passed
    same = et and induced_tri_leibniz(proj, quo, rep, cap) == TriLeibnizAlgebra(tri.left, tri.middle, tri.right)
    big, op, _ = averaging_embedding(tri, cap)
    return [TheoremResult("universal-quotient-embedding", "implies", hyp, et),
            TheoremResult("universal-quotient-round-trip", "implies", hyp, same),
            TheoremResult("averaging-embedding", "implies", hyp, check_averaging(op, big, cap).passed)]


def deformation_theorems(sc: DeformationScenario, cap=DEFAULT_CAP) -> list:
    """Coefficient checks agree with T + t*T1 at t = 1, 2, 3; Nijenhuis elements give trivial deformations."""
    out = []
    for key in ("direction", "direction_tilde"):
        d = getattr(sc, key)
        if d is None:
            continue
        coeff = deformation_check(sc.op, d, sc.algebra, sc.rep, cap).passed
        direct = all(check_embedding_tensor(combine(sc.op, (t, d)), sc.algebra, sc.rep, cap).passed for t in (1, 2, 3))
        out.append(TheoremResult(f"deformation-coefficients[{key}]", "iff", coeff, direct))
    out += nijenhuis_theorems(sc.op, sc.algebra, sc.rep, cap)
    return out


def nijenhuis_theorems(op, alg, rep, cap=DEFAULT_CAP) -> list:
    if not check_embedding_tensor(op, alg, rep, cap).passed:
        return []
    out = []
    for a, b in nijenhuis_element_scan(op, alg, rep):
        _, report = trivial_deformation(a, b, op, alg, rep, cap)
        tag = f"trivial-deformation[{_pair_name(a, b)}]"
        out.append(TheoremResult(tag, "implies", check_nijenhuis_element(a, b, op, alg, rep, cap).passed, report.passed))
    return out


def _pair_name(a, b) -> str:
    return ",".join(str(x) for x in a) + ";" + ",".join(str(x) for x in b)


def theorems_for(obj, cap=DEFAULT_CAP) -> list:
    """Every theorem that applies to a loaded object."""
    if isinstance(obj, ThreeLeibnizAlgebra):
        rep = adjoint_rep(obj)
        out = [semidirect_theorem(obj, rep, cap), hemisemidirect_theorem(obj, rep, cap)]
        out += embedding_triple(identity(obj.dim), obj, rep, cap)
        return out
    if isinstance(obj, BinaryAlgebra):
        hyp = check_leibniz(obj, cap).passed
        con = check_fundamental_identity(three_from_binary(obj), cap).passed
        return [TheoremResult("binary-to-ternary", "implies", hyp, con)]
    if isinstance(obj, TriLeibnizAlgebra):
        return quotient_theorems(obj, cap)
    if isinstance(obj, RepresentationData):
        return [semidirect_theorem(obj.algebra, obj.rep, cap), hemisemidirect_theorem(obj.algebra, obj.rep, cap)]
    if isinstance(obj, Action):
        return [bowtie_theorem(obj, cap)]
    if isinstance(obj, EmbeddingScenario):
        out = embedding_triple(obj.op, obj.algebra, obj.rep, cap) + induced_theorems(obj.op, obj.algebra, obj.rep, cap)
        out += nijenhuis_theorems(obj.op, obj.algebra, obj.rep, cap)
        if obj.action is not None:
            out.append(dialgebra_theorem(obj.op, obj.action, cap))
        return out
    if isinstance(obj, DeformationScenario):
        return embedding_triple(obj.op, obj.algebra, obj.rep, cap) + deformation_theorems(obj, cap)
    return []
