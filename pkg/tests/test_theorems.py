import pytest

from leibtensor import corpus
from leibtensor.dialgebra import Action
from leibtensor.exact import identity
from leibtensor.leibniz3 import Representation, adjoint_rep
from leibtensor.theorems import (
    TheoremResult,
    bowtie_theorem,
    embedding_triple,
    hemisemidirect_theorem,
    quotient_theorems,
    semidirect_theorem,
    theorems_for,
)
from leibtensor.trileibniz import TriLeibnizAlgebra, direct_sum_tri

MANIFEST = corpus.read_manifest()


def test_result_logic():
    assert TheoremResult("x", "iff", False, False).holds
    assert not TheoremResult("x", "iff", True, False).holds
    assert TheoremResult("x", "implies", False, True).holds
    assert not TheoremResult("x", "implies", True, False).holds
    assert TheoremResult("x", "implies", True, True).to_dict()["holds"] is True


@pytest.mark.parametrize("entry", MANIFEST, ids=[m["path"] for m in MANIFEST])
def test_every_corpus_instance(entry, corpus_objects):
    for result in theorems_for(corpus_objects[entry["path"]]):
        assert result.holds, result


def test_broken_representation_fails_both_sides(n2):
    rep = adjoint_rep(n2)
    left = rep.left.copy()
    left[0, 0, 1, 0] = 1
    bad = Representation(left, rep.middle, rep.right)
    for res in (semidirect_theorem(n2, bad), hemisemidirect_theorem(n2, bad)):
        assert res.holds and not res.hypothesis and not res.conclusion


def test_vp4_self_action_fails_both_sides(vp4):
    res = bowtie_theorem(corpus.self_action(vp4))
    assert res.holds and not res.hypothesis


def test_bowtie_needs_base_identity(n2):
    # zero action of a non-3-Leibniz base: the action check already sees the base
    c = n2.bracket.copy()
    c[1, 0, 0, 0] = 1
    from leibtensor.leibniz3 import ThreeLeibnizAlgebra
    base = ThreeLeibnizAlgebra(c)
    z = Representation.zero(2, 1)
    res = bowtie_theorem(Action(base, corpus.abelian(1), z.left, z.middle, z.right))
    assert res.holds and not res.hypothesis and not res.conclusion


def test_non_embedding_tensor_fails_every_characterization(vp4, vp4_adj):
    op = identity(4).copy()
    op[1, 1] = 5
    for res in embedding_triple(op, vp4, vp4_adj):
        assert res.holds and not res.hypothesis and not res.conclusion


def test_quotient_theorems_on_failing_input(vp4):
    results = quotient_theorems(direct_sum_tri(vp4, 2))
    assert all(r.holds for r in results) and not results[0].hypothesis


def test_zero_tri_quotient(n2):
    results = quotient_theorems(TriLeibnizAlgebra.zero(3))
    assert [r.name for r in results] == ["universal-quotient-embedding", "universal-quotient-round-trip",
                                         "averaging-embedding"]
    assert all(r.hypothesis and r.conclusion for r in results)


def test_dispatch_kinds(corpus_objects):
    names = {r.name for r in theorems_for(corpus_objects["n2_nilrep_trivial.dscn"])}
    assert "deformation-coefficients[direction]" in names
    assert any(n.startswith("trivial-deformation[") for n in names)
    assert theorems_for(corpus_objects["n2_crossed.dia"]) == []
    assert theorems_for(corpus_objects["id2.map"]) == []
    assert [r.name for r in theorems_for(corpus_objects["sl2.lb2"])] == ["binary-to-ternary"]
    assert "induced-dialgebra" in {r.name for r in theorems_for(corpus_objects["n2_crossed.scn"])}
