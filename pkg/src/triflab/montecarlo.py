"""Monte Carlo checks of the mutual-orthogonality probability bound.

For any distribution on the unit sphere in R^d and any 2 <= ell <= d,
the probability that ell independent draws are pairwise orthogonal is at
most d!/((d-ell)! * d^ell); uniform weights on an orthonormal basis
attain it.  This module estimates the probability for declarative
distribution specs (discrete support with weights, uniform on the
sphere, finite mixtures), compares against the bound with a 3-sigma
slack, and exposes the orthogonality graph of a sampled point set
together with exact clique counting.

Sampling is vectorized (numpy Generator, PCG64) and deterministic per
seed.  Discrete supports given as integer direction vectors keep their
exact coordinates, so trial orthogonality is decided by exact integer
dot products instead of the float tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import zykov_clique_max
from .codes import FLOAT_ORTHO_TOL

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class DistributionSpec:
    """A sampleable distribution on the unit sphere in R^d."""

    kind: str  # "discrete" | "uniform" | "mixture"
    d: int
    support: tuple[tuple[float, ...], ...] | None = None
    weights: tuple[float, ...] | None = None
    # integer originals of the support directions, when exactly known
    exact_support: tuple[tuple[int, ...], ...] | None = None
    components: tuple["DistributionSpec", ...] | None = None

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension must be at least 2")
        if self.kind == "uniform":
            if self.support is not None or self.components is not None:
                raise ValueError("uniform spec takes no support/components")
        elif self.kind == "discrete":
            if not self.support:
                raise ValueError("discrete spec needs a nonempty support")
            for v in self.support:
                if len(v) != self.d:
                    raise ValueError(f"support vector {v} has wrong dimension")
                norm = math.sqrt(sum(c * c for c in v))
                if abs(norm - 1.0) > _WEIGHT_TOL:
                    raise ValueError(f"support vector {v} is not unit norm")
            self._check_weights(len(self.support))
            if self.exact_support is not None and len(self.exact_support) != len(self.support):
                raise ValueError("exact_support must match the support")
        elif self.kind == "mixture":
            if not self.components:
                raise ValueError("mixture needs components")
            for comp in self.components:
                if comp.d != self.d:
                    raise ValueError("mixture components must share the dimension")
            self._check_weights(len(self.components))
        else:
            raise ValueError(f"unknown distribution kind {self.kind!r}")

    def _check_weights(self, count: int) -> None:
        if self.weights is None:
            return
        if len(self.weights) != count:
            raise ValueError("weight count mismatch")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > _WEIGHT_TOL:
            raise ValueError("weights must sum to 1")

    def effective_weights(self) -> np.ndarray:
        count = len(self.support) if self.kind == "discrete" else len(self.components)
        if self.weights is None:
            return np.full(count, 1.0 / count)
        w = np.asarray(self.weights, dtype=float)
        return w / w.sum()  # renormalize away the <=1e-12 slack

    # -- constructors --------------------------------------------------------

    @classmethod
    def uniform(cls, d: int) -> "DistributionSpec":
        return cls(kind="uniform", d=d)

    @classmethod
    def discrete(cls, support, weights=None) -> "DistributionSpec":
        """Discrete support; integer direction vectors are normalized and
        additionally kept exactly for integer-exact orthogonality tests."""
        support = [tuple(v) for v in support]
        if not support:
            raise ValueError("empty support")
        d = len(support[0])
        exact = None
        if all(all(isinstance(c, int) for c in v) for v in support):
            exact = tuple(support)
            normalized = []
            for v in support:
                norm = math.sqrt(sum(c * c for c in v))
                if norm == 0:
                    raise ValueError("zero direction in support")
                normalized.append(tuple(c / norm for c in v))
            support = normalized
        return cls(
            kind="discrete",
            d=d,
            support=tuple(support),
            weights=None if weights is None else tuple(weights),
            exact_support=exact,
        )

    @classmethod
    def mixture(cls, components, weights=None) -> "DistributionSpec":
        components = tuple(components)
        return cls(
            kind="mixture",
            d=components[0].d if components else 0,
            weights=None if weights is None else tuple(weights),
            components=components,
        )

    # -- JSON ------------------------------------------------------------------

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DistributionSpec":
        kind = doc.get("kind")
        if kind == "uniform":
            return cls.uniform(int(doc["d"]))
        if kind == "discrete":
            support = [tuple(v) for v in doc["support"]]
            if all(all(isinstance(c, int) for c in v) for v in support):
                return cls.discrete(support, doc.get("weights"))
            return cls(
                kind="discrete",
                d=int(doc["d"]),
                support=tuple(tuple(float(c) for c in v) for v in support),
                weights=None if doc.get("weights") is None else tuple(doc["weights"]),
            )
        if kind == "mixture":
            comps = tuple(cls.from_json_dict(c) for c in doc["components"])
            return cls.mixture(comps, doc.get("weights"))
        raise ValueError(f"unknown distribution kind {kind!r}")

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind, "d": self.d}
        if self.kind == "discrete":
            if self.exact_support is not None:
                out["support"] = [list(v) for v in self.exact_support]
            else:
                out["support"] = [list(v) for v in self.support]
            if self.weights is not None:
                out["weights"] = list(self.weights)
        elif self.kind == "mixture":
            out["components"] = [c.to_json_dict() for c in self.components]
            if self.weights is not None:
                out["weights"] = list(self.weights)
        return out


def _sample_with_rng(dist: DistributionSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    if count == 0:
        return np.zeros((0, dist.d))
    if dist.kind == "uniform":
        g = rng.standard_normal((count, dist.d))
        return g / np.linalg.norm(g, axis=1, keepdims=True)
    if dist.kind == "discrete":
        idx = rng.choice(len(dist.support), size=count, p=dist.effective_weights())
        return np.asarray(dist.support, dtype=float)[idx]
    out = np.empty((count, dist.d))
    comp_idx = rng.choice(len(dist.components), size=count, p=dist.effective_weights())
    for c, comp in enumerate(dist.components):
        mask = comp_idx == c
        hits = int(mask.sum())
        if hits:
            out[mask] = _sample_with_rng(comp, hits, rng)
    return out


def sample(dist: DistributionSpec, count: int, seed: int) -> np.ndarray:
    """Draw count unit vectors, deterministic per (dist, count, seed)."""
    return _sample_with_rng(dist, count, np.random.default_rng(seed))


@dataclass(frozen=True)
class MCEstimate:
    p_hat: float
    samples: int
    std_error: float
    bound: Fraction
    within_bound: bool
    exact_gram: bool  # trial orthogonality decided by integer arithmetic

    def as_json_dict(self) -> dict:
        return {
            "p_hat": self.p_hat,
            "samples": self.samples,
            "std_error": self.std_error,
            "bound": str(self.bound),
            "bound_float": float(self.bound),
            "within_bound": self.within_bound,
            "exact_gram": self.exact_gram,
        }


def orthogonality_bound(d: int, ell: int) -> Fraction:
    """d!/((d-ell)! * d^ell), the maximum pairwise-orthogonality probability."""
    if not 2 <= ell <= d:
        raise ValueError("need 2 <= ell <= d")
    return Fraction(math.factorial(d), math.factorial(d - ell) * d ** ell)


def _discrete_ortho_matrix(dist: DistributionSpec, tau: float) -> tuple[np.ndarray, bool]:
    if dist.exact_support is not None:
        pts = dist.exact_support
        size = len(pts)
        ok = np.zeros((size, size), dtype=bool)
        for i in range(size):
            for j in range(size):
                ok[i, j] = i != j and sum(a * b for a, b in zip(pts[i], pts[j])) == 0
        return ok, True
    arr = np.asarray(dist.support, dtype=float)
    gram = arr @ arr.T
    ok = np.abs(gram) <= tau
    np.fill_diagonal(ok, False)  # no unit vector is orthogonal to itself
    return ok, False


def estimate_mutual_orthogonality(
    dist: DistributionSpec,
    ell: int,
    samples: int,
    seed: int,
    tau: float = FLOAT_ORTHO_TOL,
) -> MCEstimate:
    """Estimate P(ell i.i.d. draws are pairwise orthogonal) and compare
    against the distribution-free bound with a 3-sigma slack."""
    if not 2 <= ell <= dist.d:
        raise ValueError("need 2 <= ell <= d")
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    bound = orthogonality_bound(dist.d, ell)
    rng = np.random.default_rng(seed)
    pair_index = [(a, b) for a in range(ell) for b in range(a + 1, ell)]

    hits = 0
    exact_gram = False
    if dist.kind == "discrete":
        ok, exact_gram = _discrete_ortho_matrix(dist, tau)
        idx = rng.choice(len(dist.support), size=(samples, ell), p=dist.effective_weights())
        good = np.ones(samples, dtype=bool)
        for a, b in pair_index:
            good &= ok[idx[:, a], idx[:, b]]
        hits = int(good.sum())
    else:
        chunk = max(1, 200_000 // ell)
        done = 0
        while done < samples:
            batch = min(chunk, samples - done)
            vecs = _sample_with_rng(dist, batch * ell, rng).reshape(batch, ell, dist.d)
            gram = np.einsum("sid,sjd->sij", vecs, vecs)
            good = np.ones(batch, dtype=bool)
            for a, b in pair_index:
                good &= np.abs(gram[:, a, b]) <= tau
            hits += int(good.sum())
            done += batch

    p_hat = hits / samples
    std_error = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    within = p_hat <= float(bound) + 3.0 * std_error
    return MCEstimate(p_hat, samples, std_error, bound, within, exact_gram)


# ---------------------------------------------------------------------------
# orthogonality graphs


@dataclass(frozen=True)
class OrthoGraph:
    """Graph on sampled points: an edge joins tau-orthogonal pairs."""

    points: tuple[tuple[float, ...], ...]
    d: int
    tau: float
    neighbors: tuple[frozenset[int], ...]
    kd1_free: bool  # no d+1 pairwise orthogonal points (expected; tolerance artifacts possible)

    @property
    def n_vertices(self) -> int:
        return len(self.points)

    def edges(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.n_vertices)
            for j in self.neighbors[i]
            if i < j
        ]


def build_ortho_graph(points, tau: float = FLOAT_ORTHO_TOL) -> OrthoGraph:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2:
        raise ValueError("points must be a 2-d array-like")
    size, d = arr.shape
    gram = arr @ arr.T
    adj = np.abs(gram) <= tau
    np.fill_diagonal(adj, False)
    adj &= adj.T  # symmetry guard for degenerate float input
    neighbors = tuple(frozenset(np.flatnonzero(adj[i]).tolist()) for i in range(size))
    graph = OrthoGraph(
        points=tuple(tuple(row) for row in arr),
        d=d,
        tau=tau,
        neighbors=neighbors,
        kd1_free=True,  # provisional; fixed below
    )
    kd1_free = count_cliques(graph, d + 1, _skip_crosscheck=True) == 0
    return OrthoGraph(graph.points, d, tau, neighbors, kd1_free)


def count_cliques(graph: OrthoGraph, ell: int, _skip_crosscheck: bool = False) -> int:
    """Exact ell-clique count by recursive neighborhood intersection.

    When the graph is known K_{d+1}-free the count is cross-checked
    against the balanced complete d-partite maximum; exceeding it would
    mean a counting bug, not a combinatorial discovery.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    size = len(graph.neighbors)

    def recurse(candidates, need):
        total = 0
        for v in sorted(candidates):
            if need == 1:
                total += 1
                continue
            deeper = {u for u in candidates & graph.neighbors[v] if u > v}
            if len(deeper) >= need - 1:
                total += recurse(deeper, need - 1)
        return total

    if ell == 1:
        count = size
    else:
        count = recurse(set(range(size)), ell)
    if not _skip_crosscheck and graph.kd1_free and 1 <= ell <= graph.d and size >= 1:
        cap = zykov_clique_max(size, graph.d, ell).exact
        if count > cap:
            raise RuntimeError(
                f"clique count {count} exceeds the d-partite maximum {cap}; counting bug"
            )
    return count
