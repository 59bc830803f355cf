"""Exact rational linear algebra on numpy object arrays.

Entries are Python ints when integral and ``Fraction`` otherwise, so every
operation is exact. Linear maps act on column vectors; subspace bases are
stored as rows in reduced row-echelon form.

Contractions go through :func:`ein`, which runs natively on int64 whenever
a bound on the result proves there can be no overflow and falls back to
object arithmetic otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod
from numbers import Rational

import numpy as np

from .errors import AmbientMismatch, DimMismatch, NotContained, NotInvertible

# int64 results are trusted only below this bound; sums of up to 16 such
# terms still fit in a signed 64-bit integer.
_SAFE = 2**58
# integers below this are exact in float64, and so are their sums below it
_EXACT_FLOAT = 2**53


def scalar(value):
    """Canonical exact scalar: int when integral, else a reduced Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Rational):
        q = Fraction(value)
        return q.numerator if q.denominator == 1 else q
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


_canon = np.frompyfunc(scalar, 1, 1)


def canon(arr) -> np.ndarray:
    """Object array with canonical scalar entries."""
    arr = np.asarray(arr)
    if arr.dtype != object:
        if arr.dtype.kind not in "iub":
            raise TypeError(f"refusing inexact dtype {arr.dtype}")
        return arr.astype(object)
    if arr.size == 0:
        return arr.astype(object)
    return np.asarray(_canon(arr), dtype=object).reshape(arr.shape)


def array(data) -> np.ndarray:
    return canon(np.array(data, dtype=object))


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def identity(n: int) -> np.ndarray:
    m = zeros((n, n))
    for i in range(n):
        m[i, i] = 1
    return m


def unit(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = 1
    return v


def frozen(arr) -> np.ndarray:
    arr = canon(arr).copy()
    arr.flags.writeable = False
    return arr


def div(a, b):
    return scalar(Fraction(a) / b)


def is_zero(arr) -> bool:
    return not np.any(np.asarray(arr) != 0)


def equal(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and not np.any(a != b)


def compact(arr) -> np.ndarray:
    """int64 copy of an integral array if it fits, else the object array.

    Converting once up front saves the per-entry scan when the same tensor
    feeds many contractions.
    """
    arr = np.asarray(arr)
    if arr.dtype == np.int64:
        return arr
    if arr.dtype != object:
        return arr.astype(np.int64)
    flat = arr.ravel()
    if all(type(x) is int and -_SAFE < x < _SAFE for x in flat):
        return arr.astype(np.int64)
    return arr


def _absmax(arr: np.ndarray) -> int:
    return int(np.abs(arr).max(initial=0))


def clear_denominators(arrays) -> tuple:
    """Integral copies of ``arrays`` scaled by one common denominator d, and d."""
    seen = {}
    arrays = [seen[id(a)] if id(a) in seen else seen.setdefault(id(a), compact(np.asarray(a))) for a in arrays]
    unique = {id(a): a for a in arrays}.values()
    dens = {x.denominator for a in unique if a.dtype == object for x in a.flat if type(x) is Fraction}
    if not dens:
        return arrays, 1
    d = lcm(*dens)
    scaled = {id(a): compact(canon(a.astype(object) * d)) for a in unique}
    return [scaled[id(a)] for a in arrays], d


def divide(arr, d) -> np.ndarray:
    """arr / d, touching only the nonzero entries."""
    if d == 1:
        return arr
    out = np.array(arr, dtype=object, order="C")
    for idx in np.argwhere(out != 0):
        idx = tuple(idx)
        out[idx] = scalar(Fraction(out[idx], d))
    return out


@lru_cache(maxsize=1024)
def _path(subscripts: str, sa: tuple, sb: tuple) -> list:
    return np.einsum_path(subscripts, np.empty(sa), np.empty(sb), optimize="optimal")[0]


def ein(subscripts: str, a, b) -> np.ndarray:
    """Exact two-operand einsum; returns int64 or canonical object array."""
    a, b = compact(np.asarray(a)), compact(np.asarray(b))
    if a.dtype == np.int64 and b.dtype == np.int64:
        ins, out = subscripts.split("->")
        sa, sb = ins.split(",")
        sizes = dict(zip(sa, a.shape)) | dict(zip(sb, b.shape))
        summed = prod(sizes[c] for c in set(sa + sb) - set(out) if c != ".")
        bound = _absmax(a) * _absmax(b) * max(summed, 1)
        if bound < _EXACT_FLOAT:
            # every partial sum is an integer below 2**53, so float64 is exact
            path = _path(subscripts, a.shape, b.shape)
            out = np.einsum(subscripts, a.astype(np.float64), b.astype(np.float64), optimize=path)
            return out.astype(np.int64)
        if bound < _SAFE:
            return np.einsum(subscripts, a, b, optimize=_path(subscripts, a.shape, b.shape))
    return canon(np.einsum(subscripts, a.astype(object), b.astype(object)))


def combine(*terms) -> np.ndarray:
    """Exact signed sum; each term is an array or a (coefficient, array) pair."""
    pairs = [t if isinstance(t, tuple) else (1, t) for t in terms]
    arrs = [(c, compact(np.asarray(a))) for c, a in pairs]
    if all(type(c) is int and a.dtype == np.int64 for c, a in arrs):
        if sum(abs(c) * _absmax(a) for c, a in arrs) < _SAFE:
            out = np.zeros(arrs[0][1].shape, dtype=np.int64)
            for c, a in arrs:
                if c == 1:
                    out += a
                elif c == -1:
                    out -= a
                else:
                    out += c * a
            return out
    out = zeros(arrs[0][1].shape)
    for c, a in arrs:
        out = out + c * a.astype(object)
    return canon(out)


def matmul(a, b) -> np.ndarray:
    return canon(ein("ij,jk->ik", a, b))


def matvec(a, v) -> np.ndarray:
    return canon(ein("ij,j->i", a, v))


def pull(tensor, *maps) -> np.ndarray:
    """Precompose the input slots of a multilinear tensor with linear maps.

    ``tensor`` has its output index last; ``maps[k]`` acts on slot k and
    ``None`` leaves the slot alone.
    """
    out = tensor
    letters = "abcdefgh"
    k = np.ndim(tensor) - 1
    for slot, m in enumerate(maps):
        if m is None:
            continue
        src = letters[:k] + "z"
        dst = src[:slot] + "y" + src[slot + 1:]
        out = ein(f"{src},{letters[slot]}y->{dst}", out, m)
    return out


def push(m, tensor) -> np.ndarray:
    """Apply a linear map to the output index of a tensor."""
    return ein("...o,po->...p", tensor, m)


def contract(tensor, *vectors) -> np.ndarray:
    """Multilinear evaluation of a tensor on vectors, one per input slot."""
    tensor = np.asarray(tensor)
    if len(vectors) != tensor.ndim - 1:
        raise DimMismatch(f"expected {tensor.ndim - 1} arguments, got {len(vectors)}")
    return partial(tensor, *vectors)


def partial(tensor, *vectors) -> np.ndarray:
    """Fix the leading input slots of a tensor to the given vectors."""
    tensor = np.asarray(tensor)
    if len(vectors) > tensor.ndim - 1:
        raise DimMismatch(f"at most {tensor.ndim - 1} arguments, got {len(vectors)}")
    out = tensor
    for slot, v in enumerate(vectors):
        v = np.asarray(v)
        if v.shape != (tensor.shape[slot],):
            raise DimMismatch(f"argument {slot} has shape {v.shape}, slot wants {tensor.shape[slot]}")
        out = ein("i...,i->...", out, v)
    return canon(out)


def _echelon(rows, ncols: int) -> list[list]:
    """Incremental Gauss-Jordan; returns RREF rows sorted by pivot."""
    basis: dict[int, list] = {}
    for row in rows:
        row = list(row)
        for c, b in basis.items():
            f = row[c]
            if f:
                row = [x - f * y for x, y in zip(row, b)]
        lead = next((c for c, x in enumerate(row) if x), None)
        if lead is None:
            continue
        inv = row[lead]
        row = [div(x, inv) for x in row]
        for c, b in basis.items():
            f = b[lead]
            if f:
                basis[c] = [scalar(x - f * y) for x, y in zip(b, row)]
        basis[lead] = row
    return [basis[c] for c in sorted(basis)]


def _distinct_rows(m: np.ndarray):
    """Nonzero rows up to scaling, in first-seen order."""
    seen = set()
    for row in m:
        lead = next((x for x in row if x), None)
        if lead is None:
            continue
        key = tuple(div(x, lead) for x in row)
        if key not in seen:
            seen.add(key)
            yield key


def rref(m) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form (same shape, zero rows last) and rank."""
    m = canon(np.asarray(m))
    if m.ndim != 2:
        raise DimMismatch("rref needs a matrix")
    rows = _echelon(_distinct_rows(m), m.shape[1])
    out = zeros(m.shape)
    if rows:
        out[: len(rows)] = array(rows)
    return out, len(rows)


def rank(m) -> int:
    return rref(m)[1]


class ArrayEq:
    """Value equality for frozen dataclasses holding arrays."""

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
                if not (isinstance(a, np.ndarray) and isinstance(b, np.ndarray) and equal(a, b)):
                    return False
            elif a != b:
                return False
        return True

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Subspace(ArrayEq):
    """Subspace of K^n stored by its canonical RREF basis (rows)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = canon(np.asarray(self.basis))
        b = b.reshape(-1, self.ambient_dim) if self.ambient_dim else b.reshape(0, 0)
        r, k = rref(b) if len(b) else (b, 0)
        object.__setattr__(self, "basis", frozen(r[:k]))

    @classmethod
    def span(cls, vectors, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.asarray(vectors, dtype=object).reshape(-1, ambient_dim))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, zeros((0, n)))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def residual(self, vectors) -> np.ndarray:
        """Remainder of vectors (last axis) after reduction by the basis.

        Zero exactly for members of the subspace.
        """
        v = np.asarray(vectors)
        if v.shape[-1] != self.ambient_dim:
            raise DimMismatch(f"vectors live in K^{v.shape[-1]}, subspace in K^{self.ambient_dim}")
        if self.rank == 0:
            return v
        return combine(v, (-1, ein("...p,pn->...n", v[..., self.pivots], self.basis)))

    def __contains__(self, v) -> bool:
        return is_zero(self.residual(np.asarray(v)))


def kernel_basis(m) -> Subspace:
    """Subspace of column vectors x with m @ x = 0."""
    m = canon(np.asarray(m))
    ncols = m.shape[1]
    r, k = rref(m)
    pivots = [next(j for j, x in enumerate(row) if x) for row in r[:k]]
    free = [j for j in range(ncols) if j not in pivots]
    vecs = []
    for f in free:
        v = zeros(ncols)
        v[f] = 1
        for row, p in zip(r[:k], pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace(ncols, np.array(vecs, dtype=object).reshape(-1, ncols))


def _same_ambient(s1: Subspace, s2: Subspace):
    if s1.ambient_dim != s2.ambient_dim:
        raise AmbientMismatch(f"ambient dims {s1.ambient_dim} and {s2.ambient_dim} differ")


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    _same_ambient(s1, s2)
    return Subspace(s1.ambient_dim, np.vstack([s1.basis, s2.basis]))


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    _same_ambient(s1, s2)
    n = s1.ambient_dim
    if s1.rank == 0 or s2.rank == 0:
        return Subspace.zero(n)
    # alpha B1 = beta B2 <=> (alpha, beta) in ker [B1^T | -B2^T]
    stacked = np.hstack([s1.basis.T, -s2.basis.T])
    coeffs = kernel_basis(stacked).basis[:, : s1.rank]
    return Subspace(n, matmul(coeffs, s1.basis) if len(coeffs) else zeros((0, n)))


def contains(s: Subspace, v) -> bool:
    return v in s


def is_subspace(small: Subspace, big: Subspace) -> bool:
    _same_ambient(small, big)
    return is_zero(big.residual(small.basis)) if small.rank else True


def quotient_dim(big: Subspace, small: Subspace) -> int:
    _same_ambient(big, small)
    if not is_subspace(small, big):
        raise NotContained("the smaller subspace is not contained in the larger one")
    return big.rank - small.rank


def inverse(m) -> np.ndarray:
    m = canon(np.asarray(m))
    n = m.shape[0]
    if m.shape != (n, n):
        raise NotInvertible(f"non-square matrix of shape {m.shape}")
    r, k = rref(np.hstack([m, identity(n)]))
    if k < n or not equal(r[:n, :n], identity(n)):
        raise NotInvertible("matrix is singular")
    return frozen(r[:n, n:])
