"""Closed-form and finite-n size bounds in exact rational arithmetic.

Every reported bound is a true bound: irrational ingredients (square
roots, exponentials) enter only through certified rational enclosures,
so a floating-point rounding error can never flip a verdict.  The two
finite-n bound evaluators scan a cutoff parameter m and combine the two
partial sums

    S1(m) = sum_{k<=m} C(n,k) * 3^-k      S2(m) = sum_{k<=m} C(n,k)

into a size cap for trifferent codes: the vector-certificate route gives
B <= (S2 + sqrt(S2^2 + 8*3^n*S1)) / (2*S1), the discrete double-count
route gives B <= (2^n + S2) / S1, each minimized over m in [0, n].

Also here: the coordinate-pruning procedure that eats one least-frequent
symbol per coordinate (shrink factor >= 2/3 per step, landing on at most
2 words for trifferent inputs), the Chernoff-style partial binomial sum
check, exact ell-clique counts of balanced complete multipartite graphs,
and the classical 4-cycle-free edge cap floor((n/4)(1 + sqrt(4n-3))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .codes import TernaryCode


# ---------------------------------------------------------------------------
# certified enclosures


def sqrt_enclosure(x: Fraction, bits: int = 96) -> tuple[Fraction, Fraction]:
    """Certified lo <= sqrt(x) <= hi; exact when x is a perfect square."""
    if x < 0:
        raise ValueError("negative input")
    num, den = x.numerator, x.denominator
    t = (num * den) << (2 * bits)
    r = math.isqrt(t)
    scale = den << bits
    lo = Fraction(r, scale)
    if r * r == t:
        return lo, lo
    return lo, Fraction(r + 1, scale)


def exp_neg_enclosure(x: Fraction, rel_bits: int = 80) -> tuple[Fraction, Fraction]:
    """Certified lo <= exp(-x) <= hi for rational x >= 0.

    Taylor series for exp(x) with a geometric tail bound, then inverted.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return Fraction(1), Fraction(1)
    total = Fraction(1)
    term = Fraction(1)
    j = 0
    while True:
        j += 1
        term *= Fraction(x, j)
        total += term
        # tail <= term * r/(1-r) <= term once the term ratio r = x/(j+1) <= 1/2
        if 2 * x <= j + 1 and term * (1 << rel_bits) <= total:
            break
    exp_lo, exp_hi = total, total + term
    return 1 / exp_hi, 1 / exp_lo


# ---------------------------------------------------------------------------
# Elias pruning


@dataclass(frozen=True)
class PruneStep:
    coordinate: int  # 1-based
    symbol: int
    size_before: int
    size_after: int


@dataclass(frozen=True)
class PruneTrace:
    steps: tuple[PruneStep, ...]
    final_code: TernaryCode

    def as_json_dict(self) -> dict:
        return {
            "steps": [
                {
                    "coordinate": s.coordinate,
                    "symbol": s.symbol,
                    "size_before": s.size_before,
                    "size_after": s.size_after,
                }
                for s in self.steps
            ],
            "final_size": len(self.final_code),
            "final_words": ["".join(str(c) for c in w) for w in self.final_code.words],
        }


def elias_prune(code: TernaryCode) -> PruneTrace:
    """Delete a least-frequent symbol per coordinate, left to right.

    Ties break toward the smallest symbol.  Each step keeps at least 2/3
    of the words; a trifferent input ends with at most 2 words because
    the survivors use at most two symbols in every coordinate.
    """
    words = list(code.words)
    steps = []
    for i in range(code.n):
        freq = [0, 0, 0]
        for w in words:
            freq[w[i]] += 1
        symbol = freq.index(min(freq))
        before = len(words)
        words = [w for w in words if w[i] != symbol]
        steps.append(PruneStep(i + 1, symbol, before, len(words)))
    return PruneTrace(tuple(steps), TernaryCode(code.n, tuple(words)))


# ---------------------------------------------------------------------------
# closed forms


def elias_bound(n: int) -> Fraction:
    """The pruning-argument cap 2 * (3/2)^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Fraction(2 * 3 ** n, 2 ** n)


def fk_rate(k: int) -> Fraction:
    """Asymptotic rate cap k!/k^(k-1) for k-separating codes."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return Fraction(math.factorial(k), k ** (k - 1))


def kst_bound(n: int) -> int:
    """4-cycle-free edge cap: floor((n/4) * (1 + sqrt(4n - 3)))."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n + math.isqrt(n * n * (4 * n - 3))) // 4


# ---------------------------------------------------------------------------
# partial binomial sums


@dataclass(frozen=True)
class ChernoffReport:
    q: int
    alpha: Fraction
    n: int
    m: int
    lhs: Fraction
    rhs_bound: Fraction
    holds: bool
    c_alpha: Fraction

    def as_json_dict(self) -> dict:
        return {
            "q": self.q,
            "alpha": str(self.alpha),
            "n": self.n,
            "m": self.m,
            "lhs": str(self.lhs),
            "rhs_bound": str(self.rhs_bound),
            "holds": self.holds,
            "c_alpha": str(self.c_alpha),
        }


def chernoff_binomial_check(q: int, alpha, n: int) -> ChernoffReport:
    """Check sum_{k<=floor(alpha*n)} C(n,k) q^-k >= ((q+1)/q)^n (1 - exp(-c*n)).

    c = 2*(alpha - 1/(q+1))^2.  The left side is an exact rational; the
    right side is evaluated as a certified upper bound (a lower enclosure
    of exp(-c*n)), so holds=True certifies the true inequality.

    alpha must be given exactly (Fraction, int, or a numeric string);
    floats are rejected to keep the cutoff unambiguous.
    """
    if isinstance(alpha, float):
        raise TypeError("alpha must be exact: pass a Fraction or string")
    alpha = Fraction(alpha)
    if not isinstance(q, int) or q < 2:
        raise ValueError("q must be an integer >= 2")
    if n < 1:
        raise ValueError("n must be positive")
    p = Fraction(1, q + 1)
    if alpha <= p:
        raise ValueError(f"alpha must exceed 1/(q+1) = {p}")
    if alpha > 1:
        raise ValueError("alpha must be at most 1")
    m = math.floor(alpha * n)
    lhs = sum(Fraction(math.comb(n, k), q ** k) for k in range(m + 1))
    c_alpha = 2 * (alpha - p) ** 2
    exp_lo, _ = exp_neg_enclosure(c_alpha * n)
    rhs = Fraction(q + 1, q) ** n * (1 - exp_lo)
    return ChernoffReport(q, alpha, n, m, lhs, rhs, lhs >= rhs, c_alpha)


# ---------------------------------------------------------------------------
# finite-n bound reports


@dataclass(frozen=True)
class BoundReport:
    kind: str
    n: int
    value: Fraction  # certified upper bound on the code size
    value_floor: int
    best_m: int
    s1: Fraction
    s2: int

    def as_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "value_rational": str(self.value),
            "value_floor": self.value_floor,
            "best_m": self.best_m,
            "S1": str(self.s1),
            "S2": str(self.s2),
        }


def _cutoff_scan(n: int):
    """Yield (m, S1(m), S2(m)) for m = 0..n with running sums."""
    s1 = Fraction(0)
    s2 = 0
    binom = 1  # C(n, m)
    for m in range(n + 1):
        if m > 0:
            binom = binom * (n - m + 1) // m
        s1 += Fraction(binom, 3 ** m)
        s2 += binom
        yield m, s1, s2


def finite_vector_bound(n: int) -> BoundReport:
    """Size cap from the pair-subspace dimension count, exact at finite n.

    For each cutoff m the direct-sum inequality rearranges to
    S1*B^2 - S2*B - 2*3^n <= 0, i.e. B <= (S2 + sqrt(S2^2 + 8*3^n*S1))/(2*S1);
    the square root is taken as a certified upper bound so the reported
    cap stays valid, and the scan keeps the smallest cap.
    """
    if n < 1:
        raise ValueError("n must be positive")
    ambient = 3 ** n
    best = None
    for m, s1, s2 in _cutoff_scan(n):
        disc = Fraction(s2 * s2) + 8 * ambient * s1
        _, root_hi = sqrt_enclosure(disc)
        value = (s2 + root_hi) / (2 * s1)
        if best is None or value < best[0]:
            best = (value, m, s1, s2)
    value, m, s1, s2 = best
    return BoundReport("vector", n, value, math.floor(value), m, s1, s2)


def finite_discrete_bound(n: int) -> BoundReport:
    """Size cap from the full-distance double count, exact at finite n.

    B <= (2^n + S2(m)) / S1(m), minimized over the cutoff m.
    """
    if n < 1:
        raise ValueError("n must be positive")
    best = None
    for m, s1, s2 in _cutoff_scan(n):
        value = Fraction(2 ** n + s2) / s1
        if best is None or value < best[0]:
            best = (value, m, s1, s2)
    value, m, s1, s2 = best
    return BoundReport("discrete", n, value, math.floor(value), m, s1, s2)


# ---------------------------------------------------------------------------
# clique counts of balanced complete multipartite graphs


@dataclass(frozen=True)
class ZykovReport:
    n: int
    d: int
    ell: int
    exact: int
    paper_formula: Fraction

    def as_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "ell": self.ell,
            "exact": self.exact,
            "closed_form": str(self.paper_formula),
        }


def zykov_clique_max(n: int, d: int, ell: int) -> ZykovReport:
    """Maximum ell-clique count over K_{d+1}-free graphs on n vertices.

    The maximum is attained by the balanced complete d-partite graph;
    ``exact`` is its ell-clique count (the elementary symmetric
    polynomial of the part sizes).  The closed form
    C(n,ell) * d!/((d-ell)! * d^ell) is reported alongside: it is only
    an asymptotic density, NOT a valid finite-n upper bound (at
    n=6, d=3, ell=3 the exact count 8 exceeds it), so all certificates
    use ``exact``.
    """
    if d < 1 or n < 1:
        raise ValueError("n and d must be positive")
    if not 1 <= ell <= d:
        raise ValueError("ell must satisfy 1 <= ell <= d")
    quot, rem = divmod(n, d)
    sizes = [quot + 1] * rem + [quot] * (d - rem)
    # coefficient of x^ell in prod_i (1 + size_i * x): one vertex per chosen part
    coeffs = [1]
    for s in sizes:
        new = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c
            new[i + 1] += c * s
        coeffs = new
    exact = coeffs[ell] if ell < len(coeffs) else 0
    formula = Fraction(
        math.comb(n, ell) * math.factorial(d),
        math.factorial(d - ell) * d ** ell,
    )
    return ZykovReport(n, d, ell, exact, formula)
