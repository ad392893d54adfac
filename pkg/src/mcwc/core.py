"""Partitioned binary codes: parameters, words, verification and file I/O.

A partitioned code lives on a coordinate set split into ``m`` blocks.  Block
``i`` occupies the global index range ``[sum(n_j, j<i), sum(n_j, j<=i))`` and
every codeword is required to carry exactly ``w_i`` ones inside it.  Words are
stored sparsely as sorted support tuples together with a packed-bit integer
used by the distance kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional


class McwcError(Exception):
    """Base class for every error raised by this package."""


class ParameterMismatchError(McwcError):
    """Two words or codes do not share the same parameter set."""


class FormatError(McwcError):
    """A data file does not conform to its grammar."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ShapeError(McwcError):
    """An operation requiring a particular block shape received another."""


class DomainError(McwcError):
    """An argument lies outside the operation's domain."""


class SizeError(McwcError):
    """An instance exceeds a configured size cap."""


class IngredientError(McwcError):
    """A recursive construction is missing a required ingredient."""


class ConstructionError(McwcError):
    """A construction produced an object that fails verification."""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a structural verification; ``violation`` names the first failure."""

    valid: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        return "valid" if self.valid else f"invalid: {self.violation}"


def _as_int_tuple(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        iv = int(v)
        if iv != v:
            raise DomainError(f"{what} must be integers, got {v!r}")
        out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class CodeParameters:
    """Shape of a partitioned code: block lengths, block weights and a distance.

    Infeasible shapes (``w_i > n_i``) are representable on purpose: the bound
    recursions and verifiers give them their natural meaning (no word exists).
    """

    block_lengths: tuple[int, ...]
    block_weights: tuple[int, ...]
    distance: int

    def __post_init__(self):
        object.__setattr__(self, "block_lengths", _as_int_tuple(self.block_lengths, "block lengths"))
        object.__setattr__(self, "block_weights", _as_int_tuple(self.block_weights, "block weights"))
        object.__setattr__(self, "distance", int(self.distance))
        if len(self.block_lengths) == 0:
            raise DomainError("at least one block is required")
        if len(self.block_lengths) != len(self.block_weights):
            raise DomainError("block_lengths and block_weights must have equal length")
        if any(n <= 0 for n in self.block_lengths):
            raise DomainError("block lengths must be positive")
        if any(w < 0 for w in self.block_weights):
            raise DomainError("block weights must be non-negative")
        if self.distance < 0:
            raise DomainError("distance must be non-negative")

    @classmethod
    def uniform(cls, m: int, n: int, w: int, d: int) -> "CodeParameters":
        if m < 1:
            raise DomainError("m must be positive")
        return cls((n,) * m, (w,) * m, d)

    @property
    def m(self) -> int:
        return len(self.block_lengths)

    @property
    def total_length(self) -> int:
        return sum(self.block_lengths)

    @property
    def total_weight(self) -> int:
        return sum(self.block_weights)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.block_lengths)) == 1 and len(set(self.block_weights)) == 1

    def block_spans(self) -> tuple[tuple[int, int], ...]:
        """Half-open global index range of each block, as (start, end) pairs."""
        spans = []
        start = 0
        for n in self.block_lengths:
            spans.append((start, start + n))
            start += n
        return tuple(spans)

    def block_of(self, index: int) -> int:
        if not 0 <= index < self.total_length:
            raise DomainError(f"coordinate {index} out of range")
        for i, (a, b) in enumerate(self.block_spans()):
            if a <= index < b:
                return i
        raise AssertionError("unreachable")

    def same_shape(self, other: "CodeParameters") -> bool:
        return (
            self.block_lengths == other.block_lengths
            and self.block_weights == other.block_weights
        )


@lru_cache(maxsize=None)
def _block_masks(block_lengths: tuple[int, ...]) -> tuple[int, ...]:
    masks = []
    start = 0
    for n in block_lengths:
        masks.append(((1 << n) - 1) << start)
        start += n
    return tuple(masks)


@dataclass(frozen=True)
class PartitionedWord:
    """A binary word over a partitioned coordinate set, stored by support."""

    params: CodeParameters
    support: tuple[int, ...]
    bits: int = field(compare=False)

    @classmethod
    def from_support(cls, params: CodeParameters, indices: Iterable[int]) -> "PartitionedWord":
        idx = sorted(int(i) for i in indices)
        n = params.total_length
        bits = 0
        for i in idx:
            if not 0 <= i < n:
                raise DomainError(f"support index {i} out of range [0, {n})")
            bits |= 1 << i
        if bits.bit_count() != len(idx):
            raise DomainError(f"duplicate support index in {idx}")
        return cls(params, tuple(idx), bits)

    def block_weight(self, i: int) -> int:
        return (self.bits & _block_masks(self.params.block_lengths)[i]).bit_count()

    def has_exact_block_weights(self) -> bool:
        masks = _block_masks(self.params.block_lengths)
        return all(
            (self.bits & masks[i]).bit_count() == w
            for i, w in enumerate(self.params.block_weights)
        )

    @property
    def weight(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        return "<" + ", ".join(map(str, self.support)) + ">"


def hamming_distance(u: PartitionedWord, v: PartitionedWord) -> int:
    """Size of the symmetric difference of the two supports."""
    if u.params != v.params:
        raise ParameterMismatchError("words belong to different parameter sets")
    return (u.bits ^ v.bits).bit_count()


@dataclass(frozen=True)
class PartitionedCode:
    """A list of partitioned words sharing one parameter set.

    The container itself performs no validation; :func:`verify_mcwc` is the
    checker, so invalid candidates are representable.
    """

    params: CodeParameters
    words: tuple[PartitionedWord, ...]

    @classmethod
    def from_supports(
        cls, params: CodeParameters, supports: Iterable[Iterable[int]]
    ) -> "PartitionedCode":
        return cls(params, tuple(PartitionedWord.from_support(params, s) for s in supports))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[PartitionedWord]:
        return iter(self.words)

    def support_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(w.support for w in self.words)

    def sorted_words(self) -> tuple[PartitionedWord, ...]:
        return tuple(sorted(self.words, key=lambda w: w.support))


def min_distance(code: PartitionedCode) -> Optional[int]:
    """Minimum pairwise Hamming distance; ``None`` when fewer than two words."""
    words = code.words
    if len(words) <= 1:
        return None
    best = None
    for i in range(len(words)):
        bi = words[i].bits
        for j in range(i + 1, len(words)):
            d = (bi ^ words[j].bits).bit_count()
            if best is None or d < best:
                best = d
                if best == 0:
                    return 0
    return best


def verify_mcwc(code: PartitionedCode) -> VerificationReport:
    """Check block weights, distinctness and the distance floor of a candidate.

    Violations are reported, never raised; the report pinpoints the first
    failing word or pair.  Codes with at most one word satisfy any distance.
    """
    params = code.params
    for k, word in enumerate(code.words):
        if word.params != params:
            return VerificationReport(False, f"word {k} has mismatched parameters")
        for i, w in enumerate(params.block_weights):
            got = word.block_weight(i)
            if got != w:
                return VerificationReport(
                    False, f"word {k} {word} has weight {got} in block {i}, expected {w}"
                )
    seen: dict[int, int] = {}
    for k, word in enumerate(code.words):
        if word.bits in seen:
            return VerificationReport(False, f"words {seen[word.bits]} and {k} are identical")
        seen[word.bits] = k
    d = params.distance
    words = code.words
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            dist = (words[i].bits ^ words[j].bits).bit_count()
            if dist < d:
                return VerificationReport(
                    False,
                    f"words {i} {words[i]} and {j} {words[j]} are at distance {dist} < {d}",
                )
    return VerificationReport(True)


# ---------------------------------------------------------------------------
# Code file format
#
#   line 1:            mcwc <m> <d>
#   lines 2 .. m+1:    part <i> <n_i> <w_i>        (i is 1-based, in order)
#   remaining lines:   one codeword per line, ascending global support indices
#   '#' starts a comment; blank lines are ignored.
# ---------------------------------------------------------------------------


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_code(text: str) -> PartitionedCode:
    """Parse the canonical code file format; errors cite line numbers."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty code file")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != "mcwc":
        raise FormatError("expected header 'mcwc <m> <d>'", lineno)
    try:
        m, d = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise FormatError("header fields must be integers", lineno) from None
    if m < 1:
        raise FormatError("m must be positive", lineno)
    lengths: list[int] = []
    weights: list[int] = []
    pos = 1
    for i in range(1, m + 1):
        if pos >= len(lines):
            raise FormatError(f"missing 'part {i}' line")
        lineno, line = lines[pos]
        tokens = line.split()
        if len(tokens) != 4 or tokens[0] != "part":
            raise FormatError(f"expected 'part {i} <n> <w>'", lineno)
        try:
            idx, n, w = int(tokens[1]), int(tokens[2]), int(tokens[3])
        except ValueError:
            raise FormatError("part fields must be integers", lineno) from None
        if idx != i:
            raise FormatError(f"expected part index {i}, got {idx}", lineno)
        lengths.append(n)
        weights.append(w)
        pos += 1
    try:
        params = CodeParameters(tuple(lengths), tuple(weights), d)
    except DomainError as exc:
        raise FormatError(str(exc)) from None
    words = []
    for lineno, line in lines[pos:]:
        try:
            indices = [int(t) for t in line.split()]
        except ValueError:
            raise FormatError("support indices must be integers", lineno) from None
        if indices != sorted(indices):
            raise FormatError("support indices must be ascending", lineno)
        try:
            words.append(PartitionedWord.from_support(params, indices))
        except DomainError as exc:
            raise FormatError(str(exc), lineno) from None
    return PartitionedCode(params, tuple(words))


def format_code(code: PartitionedCode) -> str:
    """Serialize canonically: parts in order, words sorted by support."""
    params = code.params
    out = [f"mcwc {params.m} {params.distance}"]
    for i, (n, w) in enumerate(zip(params.block_lengths, params.block_weights), start=1):
        out.append(f"part {i} {n} {w}")
    for word in code.sorted_words():
        if not word.support:
            raise FormatError("the code file format cannot express an empty-support word")
        out.append(" ".join(map(str, word.support)))
    return "\n".join(out) + "\n"


def load_code(path) -> PartitionedCode:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def save_code(code: PartitionedCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(code))
