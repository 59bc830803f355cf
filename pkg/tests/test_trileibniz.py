import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from leibtensor import corpus
from leibtensor.errors import DimMismatch, NotADerivation, NotAMorphism, NotSquareZero, RepresentativeDependence
from leibtensor.exact import Subspace, identity, matmul, unit, zeros
from leibtensor.leibniz3 import (
    Representation,
    ThreeLeibnizAlgebra,
    adjoint_rep,
    check_fundamental_identity,
    check_homomorphism,
    check_ideal,
    check_representation,
)
from leibtensor.embedding import check_averaging, check_tri_homomorphism
from leibtensor.trileibniz import (
    TriLeibnizAlgebra,
    associated_ideal,
    averaging_embedding,
    check_derivation,
    check_tri_leibniz,
    direct_sum_tri,
    from_3leibniz,
    from_differential,
    from_rep_morphism,
    hemisemidirect,
    universal_quotient,
)

from strategies import nonzero


def oracle_counts(tri: TriLeibnizAlgebra) -> dict:
    t = {"L": oracles.sparse(tri.left), "M": oracles.sparse(tri.middle), "R": oracles.sparse(tri.right)}
    return {k: v for k, v in oracles.count(oracles.tri_identities(), t).items() if v}


def checker_counts(tri: TriLeibnizAlgebra) -> dict:
    report = check_tri_leibniz(tri, cap=1)
    star = {"left": "L", "middle": "M", "right": "R"}
    out = {}
    for tag, c in report.counts.items():
        name, s = tag[:-1].split("[*=")
        out[f"{name}[{star[s]}]"] = c
    return out


def with_bracket(tri, name, arr):
    fields = {b: tri.bracket(b) for b in ("left", "middle", "right")}
    fields[name] = arr
    return TriLeibnizAlgebra(**fields)


# basic examples -------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 3])
def test_zero_brackets_pass(n):
    assert check_tri_leibniz(TriLeibnizAlgebra.zero(n)).passed


@pytest.mark.parametrize("name", ["vp4", "n2", "n3", "h4"])
def test_from_3leibniz_passes(name):
    tri = from_3leibniz(getattr(corpus, name)())
    assert check_tri_leibniz(tri).passed and not oracle_counts(tri)


def test_vp4_with_middle_zeroed_fails(vp4):
    tri = with_bracket(from_3leibniz(vp4), "middle", zeros((4,) * 4))
    report = check_tri_leibniz(tri)
    assert not report.passed
    assert checker_counts(tri) == oracle_counts(tri)


def test_n2_with_middle_zeroed_passes(n2):
    # every nested bracket of N2 vanishes, so dropping one bracket changes nothing
    tri = with_bracket(from_3leibniz(n2), "middle", zeros((2,) * 4))
    assert check_tri_leibniz(tri).passed and not oracle_counts(tri)


def test_shape_mismatch():
    with pytest.raises(DimMismatch):
        TriLeibnizAlgebra(zeros((2,) * 4), zeros((2,) * 4), zeros((3,) * 4))


@given(st.sampled_from(["vp4", "n2", "n3", "h4_differential"]), st.data())
def test_checker_matches_oracle_on_perturbations(name, data):
    if name == "h4_differential":
        tri = from_differential(corpus.h4(), corpus.h4_differential())
    else:
        tri = from_3leibniz(getattr(corpus, name)())
    n = tri.dim
    which = data.draw(st.sampled_from(["left", "middle", "right"]))
    idx = tuple(data.draw(st.integers(0, n - 1)) for _ in range(4))
    arr = tri.bracket(which).copy()
    arr[idx] += data.draw(nonzero())
    bad = with_bracket(tri, which, arr)
    assert checker_counts(bad) == oracle_counts(bad)


# differentials ----------------------------------------------------------------

def test_h4_differential_gives_distinct_brackets():
    h4, d = corpus.h4(), corpus.h4_differential()
    assert check_fundamental_identity(h4).passed
    assert check_derivation(d, h4).passed
    assert not np.any(matmul(d, d) != 0)
    tri = from_differential(h4, d)
    assert check_tri_leibniz(tri).passed and not oracle_counts(tri)
    assert len({tuple(tri.bracket(b).flatten()) for b in ("left", "middle", "right")}) == 3


def test_from_differential_identity_is_not_square_zero(n2):
    with pytest.raises(NotSquareZero) as err:
        from_differential(n2, identity(2))
    assert not err.value.report.passed


def test_from_differential_rejects_non_derivation(n2):
    # e2 -> e1 squares to zero; d[e2,e1,e1] = 0 but [de2,e1,e1] = e2
    d = zeros((2, 2))
    d[0, 1] = 1
    with pytest.raises(NotADerivation):
        from_differential(n2, d)


def test_n2_nilpotent_map_is_a_derivation(n2):
    assert check_derivation(corpus.n2_differential(), n2).passed
    tri = from_differential(n2, corpus.n2_differential())
    assert check_tri_leibniz(tri).passed


def test_zero_differential_gives_zero_brackets(vp4):
    assert from_differential(vp4, zeros((4, 4))) == TriLeibnizAlgebra.zero(4)


# morphisms of representations ---------------------------------------------------

def test_identity_morphism_matches_from_3leibniz(vp4, vp4_adj):
    tri, ref = from_rep_morphism(vp4, vp4_adj, identity(4)), from_3leibniz(vp4)
    assert all(np.array_equal(tri.bracket(b), ref.bracket(b)) for b in ("left", "middle", "right"))


def test_sum_map_on_copies(vp4):
    rep = corpus.copies_rep(vp4, 2)
    tri = from_rep_morphism(vp4, rep, corpus.sum_map(4, 2))
    assert check_tri_leibniz(tri).passed


def test_non_intertwining_map_rejected(vp4, vp4_adj):
    f = identity(4).copy()
    f[0, 1] = 1
    with pytest.raises(NotAMorphism) as err:
        from_rep_morphism(vp4, vp4_adj, f)
    assert err.value.report.total > 0


# direct sums ----------------------------------------------------------------------

@pytest.mark.parametrize("name", ["vp4", "n2", "n3"])
def test_one_copy_is_from_3leibniz(name):
    alg = getattr(corpus, name)()
    tri = direct_sum_tri(alg, 1)
    assert tri.left.tolist() == from_3leibniz(alg).left.tolist() == tri.right.tolist()


def test_direct_sum_of_nilpotent_passes():
    for k in (2, 3):
        assert check_tri_leibniz(direct_sum_tri(corpus.n2(), k)).passed


def test_direct_sum_of_vp4_fails(vp4):
    tri = direct_sum_tri(vp4, 2)
    report = check_tri_leibniz(tri, cap=1)
    assert report.total == 28224
    assert checker_counts(tri) == oracle_counts(tri)


def test_direct_sum_rejects_zero_copies(vp4):
    with pytest.raises(ValueError):
        direct_sum_tri(vp4, 0)


# hemisemidirect products ------------------------------------------------------------

@pytest.mark.parametrize("name", ["vp4", "n2", "n3"])
def test_hemisemidirect_of_adjoint(name):
    alg = getattr(corpus, name)()
    assert check_tri_leibniz(hemisemidirect(alg, adjoint_rep(alg))).passed


@given(st.sampled_from(["vp4", "n2", "n3"]), st.data())
def test_hemisemidirect_iff_representation(name, data):
    alg = getattr(corpus, name)()
    rep = adjoint_rep(alg)
    fields = {k: getattr(rep, k).copy() for k in ("left", "middle", "right")}
    which = data.draw(st.sampled_from(sorted(fields)))
    n = alg.dim
    idx = tuple(data.draw(st.integers(0, n - 1)) for _ in range(4))
    fields[which][idx] += data.draw(nonzero())
    bad = Representation(**fields)
    assert check_representation(alg, bad, cap=1).passed == check_tri_leibniz(hemisemidirect(alg, bad), cap=1).passed


def test_hemisemidirect_dim_mismatch(vp4):
    with pytest.raises(DimMismatch):
        hemisemidirect(vp4, Representation.zero(2, 1))


# associated ideal and universal quotient -----------------------------------------------

def test_ideal_of_from_3leibniz_is_zero(vp4):
    assert associated_ideal(from_3leibniz(vp4)).rank == 0


def test_h4_differential_ideal():
    tri = from_differential(corpus.h4(), corpus.h4_differential())
    ideal = associated_ideal(tri)
    assert ideal == Subspace.span([unit(4, 3)], 4)
    assert check_ideal(ideal, tri.left_algebra).passed


@pytest.mark.parametrize("build", [
    lambda: from_differential(corpus.h4(), corpus.h4_differential()),
    lambda: hemisemidirect(corpus.n2(), corpus.nil_rep()),
    lambda: from_3leibniz(corpus.vp4()),
], ids=["h4_d", "hemi_n2_nil", "vp4"])
def test_universal_quotient_round_trip(build):
    tri = build()
    quo, rep, proj = universal_quotient(tri)
    assert check_fundamental_identity(quo).passed
    assert check_representation(quo, rep).passed
    assert check_homomorphism(proj, tri.left_algebra, quo).passed
    # the projection is an embedding tensor whose induced brackets are the originals
    from leibtensor.embedding import check_embedding_tensor, induced_tri_leibniz
    assert check_embedding_tensor(proj, quo, rep).passed
    assert induced_tri_leibniz(proj, quo, rep) == TriLeibnizAlgebra(tri.left, tri.middle, tri.right)
    assert check_tri_homomorphism(proj, tri, quo).passed


def test_representative_dependence_detected():
    # left bracket [e1,e1,e1] = e2 with the other two zero: the ideal is span(e2),
    # and the left bracket kills it, but the middle bracket [e1,e2,e1] = e1 does not
    c = zeros((2,) * 4)
    c[0, 0, 0, 1] = 1
    m = zeros((2,) * 4)
    m[0, 1, 0, 0] = 1
    tri = TriLeibnizAlgebra(c, m, zeros((2,) * 4))
    with pytest.raises(RepresentativeDependence):
        universal_quotient(tri)


def test_averaging_embedding():
    tri = from_differential(corpus.h4(), corpus.h4_differential())
    big, op, incl = averaging_embedding(tri)
    assert big.dim == 3 + 4
    assert check_fundamental_identity(big).passed
    assert check_averaging(op, big).passed
    assert not np.any(matmul(op, op) != 0)


def test_left_algebra_is_3leibniz():
    tri = from_differential(corpus.h4(), corpus.h4_differential())
    assert isinstance(tri.left_algebra, ThreeLeibnizAlgebra)
    assert check_fundamental_identity(tri.left_algebra).passed
