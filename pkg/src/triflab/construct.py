"""Code constructions: lifts, random fixtures, the tetracode concatenation,
and exact maximum-size search for small block lengths.

The concatenation construction draws words as independent strings of
random inner-code blocks and then repairs the draw by the deletion
method: while any duplicate pair or non-trifferent triple remains, the
highest-index member of each offending tuple is removed.  The survivors
always pass the trifference verifier.

The search is a depth-first branch and bound over lexicographically
increasing codewords with two symmetry reductions (first word pinned to
the all-zero word; second word canonical under coordinate and symbol
permutations, i.e. of the form 0^(n-b) 1^b) and pruning against the
finite-n discrete bound.  Internally triples are tested with per-symbol
coordinate bitmasks; the plain verifier module stays the judge.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Sequence

from .bounds import finite_discrete_bound
from .codes import TernaryCode, TernaryWord, VectorCode

_BASIS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
_TETRA_ROWS = ((1, 0, 1, 1), (0, 1, 1, 2))


def lift_to_vector(code: TernaryCode) -> VectorCode:
    """Replace each symbol s by the standard basis direction e_{s+1} in Z^3."""
    words = tuple(tuple(_BASIS[s] for s in w) for w in code.words)
    return VectorCode(n=code.n, d=3, mode="exact", words=words)


def tetracode() -> TernaryCode:
    """The 9-word [4,2,3] ternary linear code, in lexicographic order.

    Row span of (1,0,1,1) and (0,1,1,2) over the field with 3 elements.
    """
    words = []
    for a in range(3):
        for b in range(3):
            words.append(tuple((a * g + b * h) % 3 for g, h in zip(*_TETRA_ROWS)))
    return TernaryCode(n=4, words=tuple(sorted(words)))


@dataclass(frozen=True)
class ConcatenationParams:
    m: int
    target_size: int | str = "auto"  # "auto" = floor((9/5)^m)
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.target_size != "auto" and (not isinstance(self.target_size, int) or self.target_size < 1):
            raise ValueError("target_size must be 'auto' or a positive integer")

    def resolved_size(self) -> int:
        if self.target_size == "auto":
            return 9 ** self.m // 5 ** self.m
        return self.target_size


# --- bitmask triple test -----------------------------------------------------
# word -> (mask0, mask1, mask2), bit i of mask_s set iff the word has symbol s
# in coordinate i.  A triple (x, y, z) is trifferent iff some coordinate sees
# all three symbols, i.e. z carries symbol s where {x_i, y_i} = {0,1,2}-{s}.


def _symbol_masks(word: TernaryWord) -> tuple[int, int, int]:
    m0 = m1 = m2 = 0
    for i, s in enumerate(word):
        bit = 1 << i
        if s == 0:
            m0 |= bit
        elif s == 1:
            m1 |= bit
        else:
            m2 |= bit
    return m0, m1, m2


def _pair_needs(x: tuple[int, int, int], y: tuple[int, int, int]) -> tuple[int, int, int]:
    """Per-symbol masks of coordinates where the pair covers the other two symbols."""
    return (
        (x[1] & y[2]) | (x[2] & y[1]),
        (x[0] & y[2]) | (x[2] & y[0]),
        (x[0] & y[1]) | (x[1] & y[0]),
    )


def _completes_triple(z: tuple[int, int, int], needs: tuple[int, int, int]) -> bool:
    return bool((z[0] & needs[0]) | (z[1] & needs[1]) | (z[2] & needs[2]))


def korner_marton(m, target_size: int | str = "auto", seed: int = 0) -> TernaryCode:
    """Random concatenation of tetracode blocks, repaired by deletion.

    Draws the target number of words i.i.d. (each of the m blocks uniform
    over the 9 tetracode words), removes later duplicates, then sweeps:
    every remaining non-trifferent triple loses its highest-index member,
    until the verifier condition holds.  Deterministic per seed.  Accepts
    a ConcatenationParams in place of the individual arguments.
    """
    if isinstance(m, ConcatenationParams):
        params = m
    else:
        params = ConcatenationParams(m=m, target_size=target_size, seed=seed)
    inner = tetracode().words
    rng = random.Random(params.seed)
    size = params.resolved_size()
    words: list[TernaryWord] = []
    for _ in range(size):
        blocks = [inner[rng.randrange(9)] for _ in range(params.m)]
        words.append(tuple(itertools.chain.from_iterable(blocks)))

    # duplicate pairs: the later copy is the highest-index member
    seen = set()
    deduped = []
    for w in words:
        if w not in seen:
            seen.add(w)
            deduped.append(w)
    words = deduped

    while True:
        masks = [_symbol_masks(w) for w in words]
        doomed: set[int] = set()
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                needs = _pair_needs(masks[i], masks[j])
                for k in range(j + 1, len(words)):
                    if not _completes_triple(masks[k], needs):
                        doomed.add(k)
        if not doomed:
            break
        words = [w for idx, w in enumerate(words) if idx not in doomed]

    return TernaryCode(n=4 * params.m, words=tuple(words))


def random_code(n: int, size: int, mode: str = "ternary", seed: int = 0, d: int = 3):
    """Uniform random code fixture, deterministic per seed.

    Ternary mode draws distinct uniform words by rejection (requires
    size <= 3^n); vector mode draws float directions as normalized
    i.i.d. Gaussian coordinates.
    """
    rng = random.Random(seed)
    if mode == "ternary":
        if size > 3 ** n:
            raise ValueError(f"cannot draw {size} distinct words of length {n}")
        chosen: list[TernaryWord] = []
        used = set()
        while len(chosen) < size:
            w = tuple(rng.randrange(3) for _ in range(n))
            if w not in used:
                used.add(w)
                chosen.append(w)
        return TernaryCode(n=n, words=tuple(chosen))
    if mode == "vector":
        vwords = []
        vused = set()
        while len(vwords) < size:
            word = []
            for _ in range(n):
                v = [rng.gauss(0.0, 1.0) for _ in range(d)]
                norm = sum(c * c for c in v) ** 0.5
                word.append(tuple(c / norm for c in v))
            word = tuple(word)
            if word not in vused:
                vused.add(word)
                vwords.append(word)
        return VectorCode(n=n, d=d, mode="float", words=tuple(vwords))
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class SearchResult:
    n: int
    best_size: int
    best_code: TernaryCode
    nodes_explored: int
    wall_time: float
    optimal: bool

    def as_json_dict(self) -> dict:
        return {
            "n": self.n,
            "best_size": self.best_size,
            "optimal": self.optimal,
            "nodes": self.nodes_explored,
            "seconds": self.wall_time,
            "best_code": ["".join(str(s) for s in w) for w in self.best_code.words],
        }


class _BudgetExhausted(Exception):
    pass


class _OptimumCertified(Exception):
    pass


def max_trifferent_search(n: int, node_budget: int = 2_000_000) -> SearchResult:
    """Exact maximum trifferent code size for 1 <= n <= 5.

    Depth-first over lexicographically increasing codewords.  Every
    explored node is a partial code; candidates carry down already
    filtered, so appending a word only needs the triples it closes with
    the newest pair.  The incumbent is returned non-optimal if the node
    budget runs out first; reaching the finite-n discrete bound certifies
    optimality early.
    """
    if not 1 <= n <= 5:
        raise ValueError("search supports 1 <= n <= 5")
    start = time.perf_counter()
    upper = finite_discrete_bound(n).value_floor
    all_words = list(itertools.product((0, 1, 2), repeat=n))
    masks = {w: _symbol_masks(w) for w in all_words}

    root = all_words[0]
    state = {
        "best": [root],
        "nodes": 1,  # the root-only code
        "truncated": False,
    }

    def extend(code: list[TernaryWord], cands: Sequence[TernaryWord]) -> None:
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            raise _BudgetExhausted
        if len(code) > len(state["best"]):
            state["best"] = list(code)
            if len(code) >= upper:
                raise _OptimumCertified
        for pos, w in enumerate(cands):
            if len(code) + (len(cands) - pos) <= len(state["best"]):
                break
            new_needs = [_pair_needs(masks[x], masks[w]) for x in code]
            survivors = [
                u
                for u in cands[pos + 1:]
                if all(_completes_triple(masks[u], needs) for needs in new_needs)
            ]
            extend(code + [w], survivors)

    optimal = True
    try:
        for b in range(1, n + 1):
            second = tuple([0] * (n - b) + [1] * b)
            needs_rs = _pair_needs(masks[root], masks[second])
            cands = [u for u in all_words if u > second and _completes_triple(masks[u], needs_rs)]
            extend([root, second], cands)
    except _BudgetExhausted:
        optimal = False
    except _OptimumCertified:
        pass

    best_code = TernaryCode(n=n, words=tuple(state["best"]))
    return SearchResult(
        n=n,
        best_size=len(state["best"]),
        best_code=best_code,
        nodes_explored=state["nodes"],
        wall_time=time.perf_counter() - start,
        optimal=optimal,
    )
