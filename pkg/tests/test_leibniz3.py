import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from leibtensor import corpus
from leibtensor.errors import AmbientMismatch, DimMismatch, NotAnIdeal
from leibtensor.exact import Subspace, array, identity, unit, zeros
from leibtensor.leibniz3 import (
    BinaryAlgebra,
    Representation,
    ThreeLeibnizAlgebra,
    adjoint_rep,
    binary_on_tensor_square,
    check_fundamental_identity,
    check_homomorphism,
    check_ideal,
    check_leibniz,
    check_representation,
    check_subalgebra,
    quotient,
    semidirect_sum,
    three_from_binary,
)

from strategies import nonzero, tensors

FIXTURES = {
    "a0_1": corpus.abelian(1), "a0_3": corpus.abelian(3), "vp4": corpus.vp4(),
    "n2": corpus.n2(), "n3": corpus.n3(), "sl2_ternary": three_from_binary(corpus.sl2()),
}


def oracle_fi(c) -> int:
    return sum(oracles.count(oracles.FUNDAMENTAL, {"G": oracles.sparse(c)}).values())


def oracle_rep(c, rep) -> int:
    t = {"G": oracles.sparse(c), "L": oracles.sparse(rep.left), "M": oracles.sparse(rep.middle),
         "R": oracles.sparse(rep.right)}
    return sum(oracles.count(oracles.REPRESENTATION, t).values())


def perturbed(t, idx, delta):
    out = t.copy()
    out[idx] = out[idx] + delta
    return out


# fundamental identity --------------------------------------------------------

@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_satisfy_fundamental_identity(name):
    alg = FIXTURES[name]
    assert check_fundamental_identity(alg).passed
    assert oracle_fi(alg.bracket) == 0


def test_vp4_structure_constants_are_determinants():
    import sympy

    alg = corpus.vp4()
    for i, j, k, l in np.ndindex(4, 4, 4, 4):
        rows = [[int(a == b) for b in range(4)] for a in (i, j, k, l)]
        assert alg.bracket[i, j, k, l] == sympy.Matrix(rows).det()


def test_n2_extra_entry_still_satisfies_identity():
    # c[0,0,1,1] = 1 adds [e1,e1,e2] = e2; every nested bracket still lands in
    # the kernel of the outer bracket, so the identity keeps holding.
    c = corpus.n2().bracket.copy()
    c[0, 0, 1, 1] = 1
    assert check_fundamental_identity(ThreeLeibnizAlgebra(c)).passed
    assert oracle_fi(c) == 0


def test_located_violation():
    c = corpus.n2().bracket.copy()
    c[1, 0, 0, 0] = 1
    report = check_fundamental_identity(ThreeLeibnizAlgebra(c))
    assert not report.passed
    v = report.violations[0]
    assert v.tag == "fundamental" and len(v.index) == 5 and any(v.residual)


@given(st.sampled_from(sorted(FIXTURES)), st.data())
def test_fundamental_identity_matches_oracle_on_perturbations(name, data):
    alg = FIXTURES[name]
    n = alg.dim
    idx = tuple(data.draw(st.integers(0, n - 1)) for _ in range(4))
    c = perturbed(alg.bracket, idx, data.draw(nonzero()))
    report = check_fundamental_identity(ThreeLeibnizAlgebra(c), cap=1)
    assert report.total == oracle_fi(c)


def test_violation_cap():
    c = corpus.vp4().bracket.copy()
    c[0, 1, 2, 0] = 5
    full = check_fundamental_identity(ThreeLeibnizAlgebra(c), cap=10**6)
    capped = check_fundamental_identity(ThreeLeibnizAlgebra(c), cap=3)
    assert len(capped.violations) == 3 and capped.total == full.total
    assert capped.violations == full.violations[:3]


def test_zero_dimensional_algebra_passes():
    assert check_fundamental_identity(ThreeLeibnizAlgebra.abelian(0)).passed


def test_bad_shapes():
    with pytest.raises(DimMismatch):
        ThreeLeibnizAlgebra(zeros((2, 2, 2, 3)))
    with pytest.raises(DimMismatch):
        ThreeLeibnizAlgebra(zeros((2,) * 4), labels=("a",))


# homomorphisms, ideals, quotients --------------------------------------------

def test_homomorphism_examples(vp4, n2):
    assert check_homomorphism(identity(4), vp4, vp4).passed
    assert check_homomorphism(zeros((2, 4)), vp4, n2).passed
    report = check_homomorphism(2 * identity(2), n2, n2)
    assert not report.passed and report.violations[0].index == (0, 0, 0)
    with pytest.raises(DimMismatch):
        check_homomorphism(identity(3), vp4, vp4)


def test_n2_automorphisms(n2):
    for alpha, beta in [(1, 0), (2, 5), (-1, 3)]:
        assert check_homomorphism(corpus.n2_automorphism(alpha, beta), n2, n2).passed


def test_vp4_signed_permutation_automorphisms(vp4):
    found = corpus.signed_permutation_automorphisms(vp4)
    assert len(found) == 192  # signed permutations of determinant one
    from sympy import Matrix
    assert all(Matrix(m.tolist()).det() == 1 for m in found)


def test_ideal_examples(n2):
    e2 = Subspace.span([unit(2, 1)], 2)
    e1 = Subspace.span([unit(2, 0)], 2)
    assert check_ideal(e2, n2).passed
    assert check_ideal(Subspace.full(2), n2).passed
    assert not check_subalgebra(e1, n2).passed
    with pytest.raises(AmbientMismatch):
        check_ideal(Subspace.full(3), n2)


def test_quotient_examples(n2, vp4):
    q, proj = quotient(n2, Subspace.span([unit(2, 1)], 2))
    assert q == ThreeLeibnizAlgebra.abelian(1)
    assert check_homomorphism(proj, n2, q).passed
    q0, p0 = quotient(vp4, Subspace.zero(4))
    assert q0.bracket.tolist() == vp4.bracket.tolist() and np.array_equal(p0, identity(4))
    qf, _ = quotient(vp4, Subspace.full(4))
    assert qf.dim == 0
    with pytest.raises(NotAnIdeal):
        quotient(n2, Subspace.span([unit(2, 0)], 2))


def test_quotient_of_semidirect_sum_by_module():
    alg = corpus.vp4()
    big = semidirect_sum(alg, adjoint_rep(alg))
    module = Subspace.span([unit(8, i) for i in range(4, 8)], 8)
    q, proj = quotient(big, module)
    assert q.bracket.tolist() == alg.bracket.tolist()
    assert check_fundamental_identity(q).passed and check_homomorphism(proj, big, q).passed


# representations -------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_adjoint_representation(name):
    alg = FIXTURES[name]
    rep = adjoint_rep(alg)
    assert check_representation(alg, rep).passed
    assert check_fundamental_identity(semidirect_sum(alg, rep)).passed


def test_zero_representation(vp4):
    assert check_representation(vp4, Representation.zero(4, 3)).passed


def test_copies_representation(vp4):
    assert check_representation(vp4, corpus.copies_rep(vp4, 3)).passed


def test_perturbed_adjoint_fails_with_location(n2):
    rep = adjoint_rep(n2)
    bad = Representation(perturbed(rep.left, (0, 0, 1, 0), 1), rep.middle, rep.right)
    report = check_representation(n2, bad)
    assert not report.passed
    assert report.total == oracle_rep(n2.bracket, bad)


@given(st.sampled_from(["vp4", "n2", "n3"]), st.data())
def test_semidirect_iff_representation(name, data):
    alg = FIXTURES[name]
    rep = adjoint_rep(alg)
    which = data.draw(st.sampled_from(["left", "middle", "right"]))
    n = alg.dim
    idx = tuple(data.draw(st.integers(0, n - 1)) for _ in range(4))
    fields = {k: getattr(rep, k) for k in ("left", "middle", "right")}
    fields[which] = perturbed(fields[which], idx, data.draw(nonzero()))
    bad = Representation(**fields)
    ok = check_representation(alg, bad, cap=1)
    assert ok.total == oracle_rep(alg.bracket, bad)
    assert ok.passed == check_fundamental_identity(semidirect_sum(alg, bad), cap=1).passed


def test_semidirect_examples(n2):
    one = ThreeLeibnizAlgebra.abelian(1)
    assert semidirect_sum(one, Representation.zero(1, 1)) == ThreeLeibnizAlgebra.abelian(2)
    with pytest.raises(DimMismatch):
        semidirect_sum(n2, Representation.zero(3, 1))


# binary bridge -----------------------------------------------------------------

@pytest.mark.parametrize("alg", [corpus.sl2(), corpus.nil_leibniz2(), corpus.solvable_leibniz2()],
                         ids=["sl2", "nil2", "solv2"])
def test_binary_to_ternary(alg):
    assert check_leibniz(alg).passed and oracles.leibniz_violations(alg.product) == 0
    assert check_fundamental_identity(three_from_binary(alg)).passed


def test_nil2_ternary_vanishes():
    assert not np.any(three_from_binary(corpus.nil_leibniz2()).bracket != 0)
    assert three_from_binary(BinaryAlgebra(zeros((2, 2, 2)))) == ThreeLeibnizAlgebra.abelian(2)


@pytest.mark.parametrize("name", ["n2", "n3", "vp4", "a0_3"])
def test_tensor_square_is_leibniz(name):
    sq = binary_on_tensor_square(FIXTURES[name])
    assert sq.dim == FIXTURES[name].dim ** 2
    assert check_leibniz(sq).passed


def test_tensor_square_formula(vp4):
    sq = binary_on_tensor_square(vp4)
    x1, x2, y1, y2 = 0, 1, 2, 0
    got = sq.product[x1 * 4 + x2, y1 * 4 + y2]
    want = zeros(16)
    for l in range(4):
        want[l * 4 + y2] += vp4.bracket[x1, x2, y1, l]
        want[y1 * 4 + l] += vp4.bracket[x1, x2, y2, l]
    assert list(got) == list(want)


@given(tensors((2, 2, 2)))
def test_leibniz_check_matches_oracle(p):
    alg = BinaryAlgebra(p)
    assert check_leibniz(alg).total == oracles.leibniz_violations(p)


def test_rep_signature_checked():
    with pytest.raises(DimMismatch):
        Representation(zeros((2, 2, 3, 3)), zeros((2, 3, 2, 3)), zeros((3, 2, 2, 2)))


def test_array_roundtrip():
    assert array([[1, "1/2"]]).tolist()[0][1].denominator == 2
