"""Exact verification of k-separation for discrete and vector codes.

A discrete code is k-separating when every k distinct codewords have a
coordinate in which their k symbols are pairwise distinct; the vector
analogue asks for pairwise orthogonal directions instead.  k = 3 on a
ternary code is the trifference check.

The checker enumerates index k-subsets in lexicographic order with an
early exit on the first violation, so reports are deterministic.  It is
deliberately the plain O(|C|^k * n * k^2) reference procedure; fast
paths used by constructions are validated against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .codes import FLOAT_ORTHO_TOL, TernaryCode, VectorCode, exact_dot, float_orthogonal


@dataclass(frozen=True)
class Violation:
    """The first tuple of codewords with no separating coordinate."""

    indices: tuple[int, ...]
    words: tuple


@dataclass(frozen=True)
class VerificationReport:
    holds: bool
    kind: str
    k: int
    tuples_checked: int
    # index tuple -> first separating coordinate (1-based); populated iff holds
    witness_map: dict | None
    violation: Violation | None

    def __post_init__(self):
        if self.holds == (self.violation is not None):
            raise ValueError("exactly one of witness_map / violation must be populated")

    def witness_sample(self, limit: int = 5) -> list:
        if not self.witness_map:
            return []
        items = sorted(self.witness_map.items())[:limit]
        return [{"indices": list(idx), "coordinate": coord} for idx, coord in items]

    def as_json_dict(self, witness_limit: int = 5) -> dict:
        out = {
            "holds": self.holds,
            "kind": self.kind,
            "k": self.k,
            "tuples_checked": self.tuples_checked,
        }
        if self.holds:
            out["witness_sample"] = self.witness_sample(witness_limit)
        else:
            out["violation"] = {
                "indices": list(self.violation.indices),
                "words": _words_as_json(self.violation.words, self.kind),
            }
        return out


def _words_as_json(words: tuple, kind: str) -> list:
    if kind == "ternary":
        return ["".join(str(s) for s in w) for w in words]
    return [[list(v) for v in w] for w in words]


def _discrete_separating_coordinate(words: tuple, n: int) -> int | None:
    """First 1-based coordinate whose symbols are pairwise distinct."""
    for i in range(n):
        seen = 0
        for w in words:
            bit = 1 << w[i]
            if seen & bit:
                break
            seen |= bit
        else:
            return i + 1
    return None


def _vector_separating_coordinate(words: tuple, n: int, orthogonal: Callable) -> int | None:
    """First 1-based coordinate whose directions are pairwise orthogonal."""
    k = len(words)
    for i in range(n):
        ok = True
        for a in range(k):
            for b in range(a + 1, k):
                if not orthogonal(words[a][i], words[b][i]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return i + 1
    return None


def _check(code, k: int, kind: str, separating: Callable) -> VerificationReport:
    words = code.words
    witness_map: dict = {}
    tuples_checked = 0
    for idx in combinations(range(len(words)), k):
        tuples_checked += 1
        coord = separating(tuple(words[i] for i in idx), code.n)
        if coord is None:
            return VerificationReport(
                holds=False,
                kind=kind,
                k=k,
                tuples_checked=tuples_checked,
                witness_map=None,
                violation=Violation(idx, tuple(words[i] for i in idx)),
            )
        witness_map[idx] = coord
    return VerificationReport(
        holds=True,
        kind=kind,
        k=k,
        tuples_checked=tuples_checked,
        witness_map=witness_map,
        violation=None,
    )


def check_k_separating(code: TernaryCode, k: int) -> VerificationReport:
    """Verify that every k-subset of codewords is separated in some coordinate.

    k = 3 is the trifference check.  Vacuously true when |code| < k.
    """
    if k < 2:
        raise ValueError("separation order k must be at least 2")
    alphabet = getattr(code, "alphabet_size", 3)
    if k > alphabet:
        raise ValueError(f"k={k} exceeds alphabet size {alphabet}")
    return _check(code, k, "ternary", _discrete_separating_coordinate)


def check_vector_k_separating(code: VectorCode, k: int, tau: float = FLOAT_ORTHO_TOL) -> VerificationReport:
    """Vector analogue: some coordinate holds k pairwise orthogonal directions.

    Requires k <= d: more than d mutually orthogonal directions cannot
    exist in R^d, so larger k would make every k-tuple unseparable as
    soon as |code| >= k; that is rejected as a parameter error rather
    than reported as a vacuous verdict.
    """
    if k < 2:
        raise ValueError("separation order k must be at least 2")
    if k > code.d:
        raise ValueError(f"k={k} exceeds ambient dimension d={code.d}")
    if code.mode == "exact":
        orthogonal = lambda u, v: exact_dot(u, v) == 0
    else:
        orthogonal = lambda u, v: float_orthogonal(u, v, tau)
    return _check(code, k, "vector", lambda ws, n: _vector_separating_coordinate(ws, n, orthogonal))
