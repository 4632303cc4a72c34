"""Core data types and file I/O for ternary and direction-vector codes.

A ternary code is an ordered collection of distinct words over {0,1,2}.
A vector code replaces each symbol with a nonzero direction in R^d: exact
mode stores integer coordinate vectors (orthogonality is invariant under
scaling, so unit norms are unnecessary and every zero test is exact),
float mode stores unit-norm real vectors for sampled fixtures.

Pair statistics record the coordinates where two words agree (discrete)
or fail to be orthogonal (vector).  Both notions share one type because
every downstream count needs only the agreement set and its size.
Coordinates in reports are 1-based.

File format, one code per file, LF line endings, no trailing whitespace::

    TRIF v1 ternary n=<int>
    TRIF v1 vector d=<int> n=<int> mode=<exact|float>

followed by one word per line.  Ternary words are strings over "012".
Vector words are n groups separated by ";", each group d comma-separated
integers (exact) or decimal reals (float).  parse/serialize round-trip
bit-exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

# |normalized dot| above this counts as non-orthogonal in float mode.
FLOAT_ORTHO_TOL = 1e-9
# float-mode directions must be unit norm within this.
UNIT_NORM_TOL = 1e-12

TernaryWord = tuple[int, ...]
Direction = tuple  # d integers (exact) or d floats (float mode)
VectorWord = tuple  # n directions


class CodeFormatError(ValueError):
    """Malformed code file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class TernaryCode:
    """Distinct words over {0,1,2}, in a fixed list order.

    The list order is the total order used by the pair-subspace
    certificate; ``canonicalized`` returns the same word set sorted
    lexicographically.
    """

    n: int
    words: tuple[TernaryWord, ...]

    alphabet_size = 3

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be positive")
        seen = set()
        for w in self.words:
            if len(w) != self.n:
                raise ValueError(f"word {w} has length {len(w)}, expected {self.n}")
            if any(s not in (0, 1, 2) for s in w):
                raise ValueError(f"word {w} has a symbol outside {{0,1,2}}")
            if w in seen:
                raise ValueError(f"duplicate word {w}")
            seen.add(w)

    @classmethod
    def from_strings(cls, strings: Sequence[str]) -> "TernaryCode":
        words = tuple(word_from_string(s) for s in strings)
        if not words:
            raise ValueError("cannot infer block length from an empty word list")
        return cls(n=len(words[0]), words=words)

    def canonicalized(self) -> "TernaryCode":
        return TernaryCode(self.n, tuple(sorted(self.words)))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[TernaryWord]:
        return iter(self.words)


@dataclass(frozen=True)
class VectorCode:
    """Words of nonzero directions in R^d, in a fixed list order.

    Exact mode: integer coordinates, exact orthogonality tests.  Float
    mode: unit-norm floats, orthogonality within FLOAT_ORTHO_TOL.  Words
    compare as stored; parallel directions are not collapsed.
    """

    n: int
    d: int
    mode: str
    words: tuple[VectorWord, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be positive")
        if self.d < 2:
            raise ValueError("ambient dimension must be at least 2")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        seen = set()
        for w in self.words:
            if len(w) != self.n:
                raise ValueError(f"word has {len(w)} coordinates, expected {self.n}")
            for v in w:
                self._check_direction(v)
            if w in seen:
                raise ValueError(f"duplicate word {w}")
            seen.add(w)

    def _check_direction(self, v: Direction) -> None:
        if len(v) != self.d:
            raise ValueError(f"direction {v} has dimension {len(v)}, expected {self.d}")
        if self.mode == "exact":
            if any(not isinstance(c, int) for c in v):
                raise ValueError(f"exact-mode direction {v} must have integer coordinates")
            if all(c == 0 for c in v):
                raise ValueError("zero direction")
        else:
            if all(c == 0.0 for c in v):
                raise ValueError("zero direction")
            norm = math.sqrt(sum(float(c) * float(c) for c in v))
            if abs(norm - 1.0) > UNIT_NORM_TOL:
                raise ValueError(f"float-mode direction {v} has norm {norm!r}, not unit")

    def canonicalized(self) -> "VectorCode":
        return VectorCode(self.n, self.d, self.mode, tuple(sorted(self.words)))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[VectorWord]:
        return iter(self.words)


Code = Union[TernaryCode, VectorCode]


@dataclass(frozen=True)
class PairStatistics:
    """Agreement set of a pair of words (1-based coordinates).

    For discrete words a coordinate agrees when the symbols are equal;
    for vector words when the directions are not orthogonal.  a_count is
    the size of the agreement set; full_distance means the pair is
    separated in every coordinate.
    """

    agreements: frozenset[int]
    a_count: int
    full_distance: bool

    def __post_init__(self):
        if self.a_count != len(self.agreements):
            raise ValueError("a_count must equal |agreements|")
        if self.full_distance != (self.a_count == 0):
            raise ValueError("full_distance must hold exactly when a_count = 0")


def exact_dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def float_orthogonal(u: Sequence[float], v: Sequence[float], tau: float = FLOAT_ORTHO_TOL) -> bool:
    """Orthogonality of float directions: |dot| / (|u||v|) <= tau."""
    dot = sum(float(a) * float(b) for a, b in zip(u, v))
    nu = math.sqrt(sum(float(a) * float(a) for a in u))
    nv = math.sqrt(sum(float(b) * float(b) for b in v))
    return abs(dot) <= tau * nu * nv


def pair_stats(x, y, mode: str = "ternary") -> PairStatistics:
    """Agreement statistics of two same-length words.

    mode selects the comparison: "ternary" (symbol equality), "exact"
    (integer dot product nonzero), or "float" (|normalized dot| above
    FLOAT_ORTHO_TOL).
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if mode == "ternary":
        agree = [i + 1 for i in range(len(x)) if x[i] == y[i]]
    elif mode == "exact":
        agree = [i + 1 for i in range(len(x)) if exact_dot(x[i], y[i]) != 0]
    elif mode == "float":
        agree = [i + 1 for i in range(len(x)) if not float_orthogonal(x[i], y[i])]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    agreements = frozenset(agree)
    return PairStatistics(agreements, len(agreements), not agreements)


def word_from_string(s: str) -> TernaryWord:
    word = []
    for ch in s:
        if ch not in "012":
            raise ValueError(f"symbol {ch!r} outside {{0,1,2}}")
        word.append(int(ch))
    return tuple(word)


def word_to_string(w: TernaryWord) -> str:
    return "".join(str(s) for s in w)


def _format_direction(v: Direction, mode: str) -> str:
    if mode == "exact":
        return ",".join(str(c) for c in v)
    return ",".join(repr(float(c)) for c in v)


def serialize_code(code: Code) -> str:
    """Emit the code file text; round-trips bit-exactly with parse_code."""
    if isinstance(code, TernaryCode):
        lines = [f"TRIF v1 ternary n={code.n}"]
        lines += [word_to_string(w) for w in code.words]
    elif isinstance(code, VectorCode):
        lines = [f"TRIF v1 vector d={code.d} n={code.n} mode={code.mode}"]
        lines += [";".join(_format_direction(v, code.mode) for v in w) for w in code.words]
    else:
        raise TypeError(f"not a code: {code!r}")
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> dict:
    tokens = line.split(" ")
    if len(tokens) < 3 or tokens[0] != "TRIF" or tokens[1] != "v1":
        raise CodeFormatError(f"malformed header {line!r}", line=1)
    kind = tokens[2]
    if kind not in ("ternary", "vector"):
        raise CodeFormatError(f"unknown code kind {kind!r}", line=1)
    fields = {"kind": kind}
    for tok in tokens[3:]:
        key, sep, value = tok.partition("=")
        if not sep or key not in ("d", "n", "mode") or not value:
            raise CodeFormatError(f"malformed header field {tok!r}", line=1)
        if key in fields:
            raise CodeFormatError(f"repeated header field {key!r}", line=1)
        if key == "mode":
            if value not in ("exact", "float"):
                raise CodeFormatError(f"unknown mode {value!r}", line=1)
            fields[key] = value
        else:
            try:
                fields[key] = int(value)
            except ValueError:
                raise CodeFormatError(f"non-integer header field {tok!r}", line=1) from None
    if "n" not in fields:
        raise CodeFormatError("header is missing n=<int>", line=1)
    if kind == "ternary" and ("d" in fields or "mode" in fields):
        raise CodeFormatError("ternary header takes no d= or mode=", line=1)
    if kind == "vector":
        fields.setdefault("d", 3)
        fields.setdefault("mode", "exact")
    return fields


def _parse_exact_direction(group: str, d: int, lineno: int) -> Direction:
    parts = group.split(",")
    if len(parts) != d:
        raise CodeFormatError(f"direction {group!r} has {len(parts)} coordinates, expected {d}", lineno)
    try:
        vec = tuple(int(p) for p in parts)
    except ValueError:
        raise CodeFormatError(f"non-integer coordinate in {group!r}", lineno) from None
    if all(c == 0 for c in vec):
        raise CodeFormatError("zero direction", lineno)
    return vec


def _parse_float_direction(group: str, d: int, lineno: int) -> Direction:
    parts = group.split(",")
    if len(parts) != d:
        raise CodeFormatError(f"direction {group!r} has {len(parts)} coordinates, expected {d}", lineno)
    try:
        vec = tuple(float(p) for p in parts)
    except ValueError:
        raise CodeFormatError(f"non-numeric coordinate in {group!r}", lineno) from None
    norm = math.sqrt(sum(c * c for c in vec))
    if norm == 0.0:
        raise CodeFormatError("zero direction", lineno)
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise CodeFormatError(f"direction {group!r} has norm {norm!r}, not unit", lineno)
    return vec


def parse_code(text: str) -> Code:
    """Parse a code file; errors carry 1-based line numbers."""
    if "\r" in text:
        raise CodeFormatError("CR found; LF line endings required")
    if text and not text.endswith("\n"):
        raise CodeFormatError("missing trailing newline on the last line")
    lines = text.split("\n")[:-1]
    if not lines:
        raise CodeFormatError("empty input", line=1)
    for i, line in enumerate(lines, start=1):
        if line != line.rstrip():
            raise CodeFormatError("trailing whitespace", line=i)
    header = _parse_header(lines[0])
    n = header["n"]
    if n < 1:
        raise CodeFormatError("block length must be positive", line=1)

    if header["kind"] == "ternary":
        words: list = []
        seen: set = set()
        for i, line in enumerate(lines[1:], start=2):
            if len(line) != n:
                raise CodeFormatError(f"word {line!r} has length {len(line)}, expected {n}", i)
            try:
                w = word_from_string(line)
            except ValueError as exc:
                raise CodeFormatError(str(exc), i) from None
            if w in seen:
                raise CodeFormatError(f"duplicate word {line!r}", i)
            seen.add(w)
            words.append(w)
        return TernaryCode(n=n, words=tuple(words))

    d, mode = header["d"], header["mode"]
    if d < 2:
        raise CodeFormatError("ambient dimension must be at least 2", line=1)
    parse_direction = _parse_exact_direction if mode == "exact" else _parse_float_direction
    words = []
    seen = set()
    for i, line in enumerate(lines[1:], start=2):
        groups = line.split(";")
        if len(groups) != n:
            raise CodeFormatError(f"word has {len(groups)} coordinates, expected {n}", i)
        w = tuple(parse_direction(g, d, i) for g in groups)
        if w in seen:
            raise CodeFormatError(f"duplicate word {line!r}", i)
        seen.add(w)
        words.append(w)
    return VectorCode(n=n, d=d, mode=mode, words=tuple(words))
