from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from leibtensor.corpus import abelian, vp4
from leibtensor.errors import AmbientMismatch, DimMismatch, NotContained, NotInvertible
from leibtensor.exact import (
    Subspace,
    array,
    canon,
    clear_denominators,
    combine,
    contains,
    contract,
    divide,
    ein,
    identity,
    intersect,
    inverse,
    is_subspace,
    kernel_basis,
    matmul,
    matvec,
    partial,
    quotient_dim,
    rank,
    rref,
    scalar,
    subspace_sum,
    unit,
    zeros,
)

from strategies import matrices, rationals, tensors


def sym(m):
    return sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in np.asarray(m)])


# scalars -------------------------------------------------------------------

def test_scalar_canonical_forms():
    assert scalar(Fraction(4, 2)) == 2 and type(scalar(Fraction(4, 2))) is int
    assert scalar("6/4") == Fraction(3, 2)
    assert scalar(np.int64(5)) == 5
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(TypeError):
        scalar(True)


def test_canon_rejects_float_arrays():
    with pytest.raises(TypeError):
        canon(np.array([0.5, 1.0]))


# rref ----------------------------------------------------------------------

def test_rref_examples():
    m, r = rref(identity(3))
    assert r == 3 and np.array_equal(m, identity(3))
    m, r = rref(zeros((2, 4)))
    assert r == 0 and not np.any(m != 0)
    m, r = rref(array([[1, 2], [2, 4]]))
    assert r == 1 and np.array_equal(m, array([[1, 2], [0, 0]]))


@given(matrices(4, 5))
def test_rref_matches_sympy(m):
    ours, r = rref(m)
    ref, pivots = sym(m).rref()
    assert r == len(pivots)
    assert sym(ours) == ref


@given(matrices(3, 4))
def test_rref_idempotent(m):
    once, r = rref(m)
    twice, r2 = rref(once)
    assert r == r2 and np.array_equal(once, twice)


@given(matrices(4, 4))
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.rank == 4
    for row in k.basis:
        assert not np.any(matvec(m, row) != 0)


def test_kernel_examples():
    assert kernel_basis(identity(3)).rank == 0
    assert kernel_basis(zeros((3, 3))) == Subspace.full(3)
    k = kernel_basis(array([[1, 1, 0]]))
    assert k.rank == 2
    assert contains(k, array([1, -1, 0])) and contains(k, array([0, 0, 1]))


# subspaces -----------------------------------------------------------------

def test_subspace_examples():
    x, y = Subspace.span([unit(3, 0)], 3), Subspace.span([unit(3, 1)], 3)
    assert subspace_sum(x, y).rank == 2
    plane = subspace_sum(x, y)
    assert intersect(plane, plane) == plane
    assert quotient_dim(Subspace.full(4), Subspace.span([unit(4, 2)], 4)) == 3
    with pytest.raises(NotContained):
        quotient_dim(x, y)
    with pytest.raises(AmbientMismatch):
        subspace_sum(x, Subspace.full(2))


@given(matrices(2, 4), matrices(2, 4))
def test_intersection_dimension_formula(a, b):
    s1, s2 = Subspace(4, a), Subspace(4, b)
    meet, join = intersect(s1, s2), subspace_sum(s1, s2)
    assert meet.rank + join.rank == s1.rank + s2.rank
    assert is_subspace(meet, s1) and is_subspace(meet, s2)
    assert is_subspace(s1, join) and is_subspace(s2, join)


@given(matrices(3, 3))
def test_inverse(m):
    if rank(m) < 3:
        with pytest.raises(NotInvertible):
            inverse(m)
    else:
        assert np.array_equal(matmul(m, inverse(m)), identity(3))


def test_subspace_equality_is_basis_equality():
    a = Subspace(3, array([[1, 1, 0], [0, 1, 0]]))
    b = Subspace(3, array([[2, 0, 0], [0, 3, 0]]))
    assert a == b


# contraction ---------------------------------------------------------------

def test_contract_examples():
    v = vp4().bracket
    assert np.array_equal(contract(v, unit(4, 0), unit(4, 1), unit(4, 2)), unit(4, 3))
    assert not np.any(contract(abelian(3).bracket, unit(3, 0), unit(3, 1), unit(3, 2)) != 0)
    with pytest.raises(DimMismatch):
        contract(v, unit(3, 0), unit(4, 1), unit(4, 2))
    assert partial(v, unit(4, 0), unit(4, 1)).shape == (4, 4)


@given(tensors((3, 3, 3, 3)), st.lists(rationals, min_size=12, max_size=12), rationals)
def test_contract_multilinear(t, vals, lam):
    x, x2, y, z = (array(vals[i:i + 3]) for i in range(0, 12, 3))
    lhs = contract(t, combine(x, (lam, x2)), y, z)
    rhs = combine(contract(t, x, y, z), (lam, contract(t, x2, y, z)))
    assert np.array_equal(lhs, rhs)


def test_ein_large_values_stay_exact():
    big = array([[2**62, 3], [1, 2**61]])
    out = ein("ij,jk->ik", big, big)
    assert out[0, 0] == 2**124 + 3
    assert out.dtype == object


@given(tensors((2, 3)), tensors((3, 2)))
def test_ein_matches_python(a, b):
    out = ein("ij,jk->ik", a, b)
    for i in range(2):
        for k in range(2):
            assert out[i, k] == sum(a[i, j] * b[j, k] for j in range(3))


@given(tensors((3, 3), rationals), tensors((3, 3), rationals))
def test_clear_denominators_then_divide(a, b):
    (ia, ib), d = clear_denominators([a, b])
    assert all(type(x) is int for x in np.asarray(ia, dtype=object).flat)
    assert np.array_equal(divide(ia, d), a) and np.array_equal(divide(ib, d), b)
    assert np.array_equal(divide(ein("ij,jk->ik", ia, ib), d * d), ein("ij,jk->ik", a, b))


def test_clear_denominators_shares_repeated_arrays():
    a = array([["1/2", 0], [0, "1/3"]])
    (x, y), d = clear_denominators([a, a])
    assert d == 6 and x is y
