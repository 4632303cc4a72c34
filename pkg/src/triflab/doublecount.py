"""Bipartite double-counting experiments for ternary codes, translate
intersections, the relaxed center-incidence scan, and Hansel covers.

The full-distance double count pairs codewords against center words:
{x, y} is adjacent to v exactly when both x and y differ from v in every
coordinate, so the pair side contributes 2^(agreements) per pair and the
center side C(h_v, 2) per center, where h_v counts codewords at full
distance from v.  The two sums agree identically; for trifferent codes
every h_v is at most 2, which is the checkable fingerprint.

The relaxed incidence keeps a center a and joins it to pairs {x, y} with
exactly two agreement coordinates matching a and no disagreement
coordinate touching a's symbol.  Those two coordinates define an edge of
a graph on [n] which is expected to be 4-cycle free and to receive each
pair injectively, capping the neighborhood size at the classical
4-cycle-free edge bound.  All three claims are tested, not assumed, and
come back as booleans.

Hansel covers: bipartite graphs whose union covers the complete graph on
N vertices force sum(fraction of non-isolated vertices) >= log2(N); the
comparison is done exactly on rationals (N^q <= 2^p).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import TernaryCode, TernaryWord, VectorCode, exact_dot, pair_stats
from .verify import check_vector_k_separating

_EXHAUSTIVE_LIMIT = 12  # 3^n centers enumerated exhaustively up to here


# ---------------------------------------------------------------------------
# full-distance double count


@dataclass(frozen=True)
class DoubleCountReport:
    left_sum: int
    right_sum: int
    equal: bool | None  # compared only under the exhaustive range
    max_h: int
    h_histogram: dict[int, int]
    v_range: str  # "exhaustive" | "sampled"
    sample_count: int | None = None
    seed: int | None = None

    def as_json_dict(self) -> dict:
        return {
            "left_sum": self.left_sum,
            "right_sum": self.right_sum,
            "equal": self.equal,
            "max_h": self.max_h,
            "h_histogram": {str(k): v for k, v in sorted(self.h_histogram.items())},
            "v_range": self.v_range,
            "sample_count": self.sample_count,
            "seed": self.seed,
        }


def _full_distance_counts(code: TernaryCode) -> np.ndarray:
    """h_v for every v in base-3 encoding: codewords differing from v everywhere."""
    n = code.n
    powers = np.array([3 ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    counts = np.zeros(3 ** n, dtype=np.int64)
    for w in code.words:
        indices = np.zeros(1, dtype=np.int64)
        for i, s in enumerate(w):
            others = [t for t in (0, 1, 2) if t != s]
            offsets = np.array([t * powers[i] for t in others], dtype=np.int64)
            indices = (indices[:, None] + offsets[None, :]).ravel()
        counts += np.bincount(indices, minlength=3 ** n)
    return counts


def double_count(code: TernaryCode, sample_count: int | None = None, seed: int | None = None) -> DoubleCountReport:
    """Both sides of the pair/center double count.

    Exhaustive over all 3^n centers when sample_count is None (n <= 12
    enforced); otherwise h statistics over seeded random centers, with
    no left/right comparison.
    """
    left_sum = 0
    for x, y in itertools.combinations(code.words, 2):
        left_sum += 2 ** pair_stats(x, y).a_count

    if sample_count is None:
        if code.n > _EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive range needs n <= {_EXHAUSTIVE_LIMIT}")
        counts = _full_distance_counts(code)
        histogram: dict[int, int] = {}
        for h, times in enumerate(np.bincount(counts)):
            if times:
                histogram[int(h)] = int(times)
        right_sum = sum(times * math.comb(h, 2) for h, times in histogram.items())
        max_h = max(histogram) if histogram else 0
        return DoubleCountReport(left_sum, right_sum, left_sum == right_sum, max_h, histogram, "exhaustive")

    rng = random.Random(seed)
    histogram = {}
    right_sum = 0
    max_h = 0
    for _ in range(sample_count):
        v = tuple(rng.randrange(3) for _ in range(code.n))
        h = sum(1 for x in code.words if all(a != b for a, b in zip(x, v)))
        histogram[h] = histogram.get(h, 0) + 1
        right_sum += math.comb(h, 2)
        max_h = max(max_h, h)
    return DoubleCountReport(left_sum, right_sum, None, max_h, histogram, "sampled", sample_count, seed)


# ---------------------------------------------------------------------------
# translate intersections


def translate_intersection(code: TernaryCode, u: TernaryWord) -> int:
    """|{x in C : x + u (mod 3) lands in {0,1}^n}|; at most 2 for trifferent C."""
    if len(u) != code.n:
        raise ValueError(f"translate has length {len(u)}, expected {code.n}")
    count = 0
    for x in code.words:
        if all((a + b) % 3 <= 1 for a, b in zip(x, u)):
            count += 1
    return count


def translate_intersection_max(code: TernaryCode) -> int:
    """Maximum intersection over all 3^n translates (vectorized; n <= 12)."""
    if code.n > _EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive translate scan needs n <= {_EXHAUSTIVE_LIMIT}")
    if not code.words:
        return 0
    words = np.array(code.words, dtype=np.int8)
    best = 0
    translates = np.array(list(itertools.product((0, 1, 2), repeat=code.n)), dtype=np.int8)
    chunk = max(1, 2 ** 22 // max(1, len(code) * code.n))
    for start in range(0, len(translates), chunk):
        block = translates[start:start + chunk]
        hits = (((block[:, None, :] + words[None, :, :]) % 3) <= 1).all(axis=2).sum(axis=1)
        best = max(best, int(hits.max()))
    return best


# ---------------------------------------------------------------------------
# relaxed center incidence


@dataclass(frozen=True)
class IncidencePair:
    x_index: int
    y_index: int
    coordinates: tuple[int, int]  # the two qualifying agreement coordinates, 1-based


@dataclass(frozen=True)
class ModifiedIncidence:
    center: TernaryWord
    pairs: tuple[IncidencePair, ...]
    edges: tuple[tuple[int, int], ...]  # multiset of H-graph edges, pair order
    injective: bool
    c4_free: bool

    @property
    def neighborhood_size(self) -> int:
        return len(self.pairs)

    def as_json_dict(self) -> dict:
        return {
            "center": "".join(str(s) for s in self.center),
            "neighborhood_size": self.neighborhood_size,
            "pairs": [
                {"x": p.x_index, "y": p.y_index, "coordinates": list(p.coordinates)}
                for p in self.pairs
            ],
            "injective": self.injective,
            "c4_free": self.c4_free,
        }


def _has_four_cycle(edge_set: set[tuple[int, int]], vertices: list[int]) -> bool:
    # exhaustive scan over vertex quadruples; the three pairings of each
    # quadruple are the possible 4-cycles through it
    def adj(a, b):
        return (min(a, b), max(a, b)) in edge_set

    for a, b, c, d in itertools.combinations(vertices, 4):
        if adj(a, b) and adj(b, c) and adj(c, d) and adj(d, a):
            return True
        if adj(a, b) and adj(b, d) and adj(d, c) and adj(c, a):
            return True
        if adj(a, c) and adj(c, b) and adj(b, d) and adj(d, a):
            return True
    return False


def modified_incidence(code: TernaryCode, center: TernaryWord) -> ModifiedIncidence:
    """Pairs adjacent to a center under the relaxed incidence, plus the
    graph they trace on the coordinate set.

    A pair {x, y} qualifies when exactly two agreement coordinates carry
    the center's symbol and no disagreement coordinate does.  Findings
    (injectivity, 4-cycle freeness) are reported, never raised.
    """
    if len(center) != code.n:
        raise ValueError(f"center has length {len(center)}, expected {code.n}")
    members = []
    edges = []
    for xi, yi in itertools.combinations(range(len(code)), 2):
        x, y = code.words[xi], code.words[yi]
        qualifying = []
        disqualified = False
        for i in range(code.n):
            if x[i] == y[i]:
                if center[i] == x[i]:
                    qualifying.append(i + 1)
            elif center[i] == x[i] or center[i] == y[i]:
                disqualified = True
                break
        if disqualified or len(qualifying) != 2:
            continue
        members.append(IncidencePair(xi, yi, (qualifying[0], qualifying[1])))
        edges.append((qualifying[0], qualifying[1]))
    edge_set = set(edges)
    injective = len(edge_set) == len(edges)
    c4_free = not _has_four_cycle(edge_set, list(range(1, code.n + 1)))
    return ModifiedIncidence(tuple(center), tuple(members), tuple(edges), injective, c4_free)


# ---------------------------------------------------------------------------
# Hansel covers


@dataclass(frozen=True)
class BipartiteCover:
    n_vertices: int
    parts: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        if self.n_vertices < 2:
            raise ValueError("need at least 2 vertices")
        for part in self.parts:
            for u, v in part:
                if u == v or not (0 <= u < self.n_vertices) or not (0 <= v < self.n_vertices):
                    raise ValueError(f"bad edge ({u}, {v})")


@dataclass(frozen=True)
class HanselReport:
    n_vertices: int
    covers: bool
    bipartite_ok: bool
    parts_bipartite: tuple[bool, ...]
    taus: tuple[Fraction, ...]
    tau_sum: Fraction
    inequality_holds: bool
    tight: bool
    comparison: str  # "exact-integer" | "float-fallback"

    def as_json_dict(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "covers": self.covers,
            "bipartite_ok": self.bipartite_ok,
            "parts_bipartite": list(self.parts_bipartite),
            "taus": [str(t) for t in self.taus],
            "tau_sum": str(self.tau_sum),
            "tau_sum_float": float(self.tau_sum),
            "log2_n": math.log2(self.n_vertices),
            "inequality_holds": self.inequality_holds,
            "tight": self.tight,
            "comparison": self.comparison,
        }


def _part_is_bipartite(n_vertices: int, edges) -> bool:
    neighbors: list[list[int]] = [[] for _ in range(n_vertices)]
    for u, v in edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    color = [-1] * n_vertices
    for start in range(n_vertices):
        if color[start] != -1 or not neighbors[start]:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for v in neighbors[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def hansel_verify(cover: BipartiteCover) -> HanselReport:
    """Check a covering family: union covers K_N, parts 2-colorable, and
    the non-isolated-vertex fractions sum to at least log2(N).

    The log2 comparison is exact: tau_sum = p/q >= log2(N) iff 2^p >= N^q.
    A float comparison is used only for absurdly large exponents and is
    flagged in the report.
    """
    n = cover.n_vertices
    union = set()
    taus = []
    parts_bipartite = []
    for part in cover.parts:
        non_isolated = set()
        for u, v in part:
            union.add((min(u, v), max(u, v)))
            non_isolated.add(u)
            non_isolated.add(v)
        taus.append(Fraction(len(non_isolated), n))
        parts_bipartite.append(_part_is_bipartite(n, part))
    covers = len(union) == math.comb(n, 2)
    bipartite_ok = all(parts_bipartite)
    tau_sum = sum(taus, Fraction(0))
    p, q = tau_sum.numerator, tau_sum.denominator
    if p * max(q, 1) < 10 ** 7:
        inequality_holds = 2 ** p >= n ** q
        tight = 2 ** p == n ** q
        comparison = "exact-integer"
    else:
        inequality_holds = float(tau_sum) >= math.log2(n) - 1e-12
        tight = abs(float(tau_sum) - math.log2(n)) <= 1e-12
        comparison = "float-fallback"
    return HanselReport(
        n_vertices=n,
        covers=covers,
        bipartite_ok=bipartite_ok,
        parts_bipartite=tuple(parts_bipartite),
        taus=tuple(taus),
        tau_sum=tau_sum,
        inequality_holds=inequality_holds,
        tight=tight,
        comparison=comparison,
    )


@dataclass(frozen=True)
class HanselExperimentReport:
    k: int
    ell: int
    removed_indices: tuple[int, ...]
    vertex_indices: tuple[int, ...]
    color_of_pair: dict  # (vertex pos, vertex pos) -> coordinate (1-based)
    verification: HanselReport

    def as_json_dict(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "removed_indices": list(self.removed_indices),
            "n_vertices": len(self.vertex_indices),
            "colors_used": sorted({c for c in self.color_of_pair.values()}),
            "verification": self.verification.as_json_dict(),
        }


def hansel_experiment(code: VectorCode, k: int, seed: int) -> HanselExperimentReport:
    """Color the complete graph on the code minus ell = k-2 random words:
    a pair gets the smallest coordinate where its two directions and the
    removed words' directions are pairwise orthogonal.  Each color class
    is checked for bipartiteness and the whole family forms a cover whose
    tau-sum must dominate log2 of the vertex count.
    """
    if code.mode != "exact":
        raise ValueError("the experiment needs exact mode")
    ell = k - 2
    if ell < 0:
        raise ValueError("k must be at least 2")
    if len(code) < k + 2:
        raise ValueError(f"need at least k + 2 = {k + 2} codewords, have {len(code)}")
    if not check_vector_k_separating(code, k).holds:
        raise ValueError("code fails the separation precondition")

    rng = random.Random(seed)
    removed = tuple(sorted(rng.sample(range(len(code)), ell)))
    vertices = tuple(i for i in range(len(code)) if i not in removed)
    fixed_words = [code.words[i] for i in removed]

    part_edges: list[list[tuple[int, int]]] = [[] for _ in range(code.n)]
    color_of_pair = {}
    for a_pos, b_pos in itertools.combinations(range(len(vertices)), 2):
        wa = code.words[vertices[a_pos]]
        wb = code.words[vertices[b_pos]]
        color = None
        for j in range(code.n):
            dirs = [wa[j], wb[j]] + [w[j] for w in fixed_words]
            if all(
                exact_dot(dirs[s], dirs[t]) == 0
                for s in range(len(dirs))
                for t in range(s + 1, len(dirs))
            ):
                color = j + 1
                break
        if color is None:
            raise RuntimeError("separation promised a coloring coordinate; none found")
        part_edges[color - 1].append((a_pos, b_pos))
        color_of_pair[(a_pos, b_pos)] = color

    cover = BipartiteCover(len(vertices), tuple(tuple(p) for p in part_edges))
    return HanselExperimentReport(
        k=k,
        ell=ell,
        removed_indices=removed,
        vertex_indices=vertices,
        color_of_pair=color_of_pair,
        verification=hansel_verify(cover),
    )
