"""Tensor-product pair-subspace certificates over Z^3, fully exact.

Each ordered pair of codewords (x before y in the code's word order)
carries a subspace of (R^3)^(tensor n): per coordinate, the line
orthogonal to both directions when they are orthogonal, otherwise the
plane orthogonal to the first direction.  Its dimension is
2^(number of non-orthogonal coordinates).

For a vector trifferent code these pair subspaces are mutually
orthogonal, so they form a direct sum inside the 3^n-dimensional ambient
space and their dimensions sum to at most 3^n.  The certificate checks
exactly that, with two structural economies: local bases are built
orthogonal (cross products), so independence inside one pair subspace
never needs testing, and inner products of basis tensors factor through
coordinates (product of 3-dimensional integer dot products), so nothing
of size 3^n is ever materialized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .codes import VectorCode, exact_dot

IntVec = tuple[int, int, int]
BasisTensor = tuple[IntVec, ...]  # one factor per coordinate

_E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _cross(u: IntVec, v: IntVec) -> IntVec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclass(frozen=True)
class LocalSubspace:
    """1- or 2-dimensional subspace of R^3 with an orthogonal integer basis."""

    basis: tuple[IntVec, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def local_subspace(u: IntVec, v: IntVec) -> LocalSubspace:
    """The per-coordinate subspace of a direction pair.

    Orthogonal directions: the line spanned by u x v.  Otherwise: the
    plane orthogonal to u, with basis w1 = u x h, w2 = u x w1 (h the
    first standard basis vector not parallel to u), orthogonal by
    construction.  Exact integer arithmetic only.
    """
    for w in (u, v):
        if len(w) != 3:
            raise ValueError("directions must live in Z^3")
        if any(not isinstance(c, int) for c in w):
            raise ValueError("float mode rejected; directions must be integer vectors")
        if not any(w):
            raise ValueError("zero direction")
    if exact_dot(u, v) == 0:
        return LocalSubspace((_cross(u, v),))
    h = _E[0] if any(_cross(u, _E[0])) else _E[1]
    w1 = _cross(u, h)
    w2 = _cross(u, w1)
    return LocalSubspace((w1, w2))


@dataclass(frozen=True)
class PairSubspace:
    """Tensor product of the n local subspaces of one codeword pair.

    Basis tensors are never stored: they are enumerated lazily as
    mixed-radix index tuples into the local bases, coordinate 1 most
    significant, so reports are deterministic.
    """

    x_index: int
    y_index: int
    locals: tuple[LocalSubspace, ...]

    def __post_init__(self):
        if not self.x_index < self.y_index:
            raise ValueError("pair must be ordered by the code's word order")

    @property
    def dim(self) -> int:
        return prod(loc.dim for loc in self.locals)

    def basis_index_tuples(self):
        return itertools.product(*(range(loc.dim) for loc in self.locals))

    def basis_tensor(self, index_tuple: tuple[int, ...]) -> BasisTensor:
        return tuple(loc.basis[i] for loc, i in zip(self.locals, index_tuple))


def pair_subspace(code: VectorCode, x_index: int, y_index: int) -> PairSubspace:
    x, y = code.words[x_index], code.words[y_index]
    locs = tuple(local_subspace(u, v) for u, v in zip(x, y))
    return PairSubspace(x_index, y_index, locs)


def tensor_inner(a: BasisTensor, b: BasisTensor) -> int:
    """Exact inner product of two basis tensors: the product of the
    coordinate-wise dot products.  Zero as soon as any factor is zero."""
    if len(a) != len(b):
        raise ValueError("tensors must have the same number of factors")
    result = 1
    for u, v in zip(a, b):
        factor = exact_dot(u, v)
        if factor == 0:
            return 0
        result *= factor
    return result


@dataclass(frozen=True)
class TensorViolation:
    first_pair: tuple[int, int]
    second_pair: tuple[int, int]
    first_tensor_index: tuple[int, ...]
    second_tensor_index: tuple[int, ...]
    first_tensor: BasisTensor
    second_tensor: BasisTensor
    inner_product: int


@dataclass(frozen=True)
class DirectSumCertificate:
    code: VectorCode
    pairs: tuple[PairSubspace, ...]
    all_orthogonal: bool
    first_violation: TensorViolation | None
    total_dim: int
    ambient: int
    inequality_holds: bool

    def as_json_dict(self) -> dict:
        out = {
            "code_size": len(self.code),
            "n": self.code.n,
            "pair_count": len(self.pairs),
            "all_orthogonal": self.all_orthogonal,
            "total_dim": self.total_dim,
            "ambient": self.ambient,
            "inequality_holds": self.inequality_holds,
        }
        if self.first_violation is not None:
            v = self.first_violation
            out["first_violation"] = {
                "first_pair": list(v.first_pair),
                "second_pair": list(v.second_pair),
                "first_tensor_index": list(v.first_tensor_index),
                "second_tensor_index": list(v.second_tensor_index),
                "first_tensor_factors": [list(f) for f in v.first_tensor],
                "second_tensor_factors": [list(f) for f in v.second_tensor],
                "inner_product": v.inner_product,
            }
        return out


def check_mutual_orthogonality(code: VectorCode) -> DirectSumCertificate:
    """Certify that all pair subspaces are mutually orthogonal.

    Every basis tensor of every pair subspace is tested against every
    basis tensor of every other pair subspace with exact integer inner
    products; within one pair subspace orthogonality is structural.  The
    first violation in (pair, pair, tensor, tensor) lexicographic order
    is reported.  total_dim and the comparison against 3^n use exact big
    integers.
    """
    if code.mode != "exact":
        raise ValueError("certificates require exact mode")
    if code.d != 3:
        raise ValueError("pair subspaces are defined over Z^3")
    ambient = 3 ** code.n
    size = len(code)
    pairs = tuple(
        pair_subspace(code, i, j)
        for i, j in itertools.combinations(range(size), 2)
    )
    total_dim = sum(p.dim for p in pairs)
    violation = None
    for a_pos in range(len(pairs)):
        if violation is not None:
            break
        for b_pos in range(a_pos + 1, len(pairs)):
            p, q = pairs[a_pos], pairs[b_pos]
            found = _first_cross_violation(p, q)
            if found is not None:
                violation = found
                break
    return DirectSumCertificate(
        code=code,
        pairs=pairs,
        all_orthogonal=violation is None,
        first_violation=violation,
        total_dim=total_dim,
        ambient=ambient,
        inequality_holds=total_dim <= ambient,
    )


def _first_cross_violation(p: PairSubspace, q: PairSubspace) -> TensorViolation | None:
    for ia in p.basis_index_tuples():
        ta = p.basis_tensor(ia)
        for ib in q.basis_index_tuples():
            tb = q.basis_tensor(ib)
            value = tensor_inner(ta, tb)
            if value != 0:
                return TensorViolation(
                    first_pair=(p.x_index, p.y_index),
                    second_pair=(q.x_index, q.y_index),
                    first_tensor_index=ia,
                    second_tensor_index=ib,
                    first_tensor=ta,
                    second_tensor=tb,
                    inner_product=value,
                )
    return None


def dimension_inequality(code: VectorCode) -> tuple[int, int, bool]:
    """Exact comparison of the pair-dimension sum against the ambient 3^n.

    Needs only the non-orthogonality counts, so it works in both exact
    and float mode.
    """
    if code.d != 3:
        raise ValueError("the dimension count is defined over R^3")
    from .codes import pair_stats

    mode = code.mode
    lhs = 0
    for x, y in itertools.combinations(code.words, 2):
        lhs += 2 ** pair_stats(x, y, mode=mode).a_count
    rhs = 3 ** code.n
    return lhs, rhs, lhs <= rhs
