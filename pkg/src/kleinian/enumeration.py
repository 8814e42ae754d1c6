"""Word production: lexicographic tree walks and index generation.

The tree enumerator builds words symbol by symbol, rejecting a cancellation as
soon as it would appear (pre-processing). The index enumerator instead walks a
plain integer range, converts each integer to a digit string over the
generator alphabet, and filters whole strings against the rules
(post-processing). Two conversions are supported:

* cardinal: standard base-n digits plus every leading-zero padded variant up
  to the maximal depth, so zero-prefixed words are covered;
* ordinal: bijective base-n numeration (digits 1..n, then decremented to
  0-based indices), which enumerates every digit string exactly once and needs
  no padding.

Neither enumerator retains more than one in-flight word, so arbitrarily deep
runs never materialize a dictionary, and any integer subrange can be run
independently and resumed later.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .groups import CancellationRules, GeneratorSet, PresentationRules, Word, is_reduced


class RangeError(ValueError):
    """Index range outside the words representable at the configured depth."""


class DomainError(ValueError):
    """Argument outside the conversion's domain."""


class EnumerationMode(Enum):
    LEXICOGRAPHIC = "lex"
    CARDINAL = "cardinal"
    ORDINAL = "ordinal"


@dataclass(frozen=True)
class EnumeratorConfig:
    """Base (= generator count), maximal word length, mode, optional subrange.

    ``index_range`` is a half-open integer interval [start, end); None selects
    the full default range for the mode.
    """

    base: int
    max_depth: int
    mode: EnumerationMode
    index_range: tuple[int, int] | None = None

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.index_range is not None:
            start, end = self.index_range
            if start >= end:
                raise RangeError(f"empty or reversed range [{start}, {end})")


@dataclass(frozen=True)
class CountReport:
    """Exact word counts at a given base and depth.

    ``tree_words``/``leaf_words`` count all strings of length 1..d and exactly
    d; the reduced counts apply to pair rules, where every symbol forbids
    exactly one successor, giving n*(n-1)^(i-1) reduced words of length i.
    """

    base: int
    depth: int
    tree_words: int
    leaf_words: int
    reduced_tree_words: int
    reduced_leaf_words: int


class StorageMeter:
    """Instrumentation hook recording enumerator-retained word storage.

    ``peak_retained_words``/``peak_retained_symbols`` track the high-water mark
    of words (and their total symbols) the enumerator holds at once; examined
    and emitted count candidate strings and rule survivors.
    """

    __slots__ = ("examined", "emitted", "peak_retained_words", "peak_retained_symbols")

    def __init__(self):
        self.examined = 0
        self.emitted = 0
        self.peak_retained_words = 0
        self.peak_retained_symbols = 0

    @property
    def skipped(self) -> int:
        return self.examined - self.emitted

    def note_storage(self, words: int, symbols: int) -> None:
        if words > self.peak_retained_words:
            self.peak_retained_words = words
        if symbols > self.peak_retained_symbols:
            self.peak_retained_symbols = symbols


def to_base(value: int, base: int) -> Word:
    """Standard positional digits, most significant first; 0 -> (0,)."""
    if value < 0:
        raise DomainError("value must be non-negative")
    if base < 2:
        raise DomainError("base must be at least 2")
    if value == 0:
        return (0,)
    digits: list[int] = []
    while value:
        value, r = divmod(value, base)
        digits.append(r)
    digits.reverse()
    return tuple(digits)


def base_value(word: Word, base: int) -> int:
    """Positional value of a digit string (inverse of to_base up to padding)."""
    v = 0
    for d in word:
        v = v * base + d
    return v


def to_bijective_base(value: int, base: int) -> Word:
    """Bijective base-n digits decremented to the 0-based generator alphabet.

    Counting 1, 2, 3, ... walks every digit string over n symbols exactly once
    in (length, lexicographic) order: 0, 1, ..., n-1, 00, 01, ...
    """
    if value < 1:
        raise DomainError("bijective numeration starts at 1")
    if base < 2:
        raise DomainError("base must be at least 2")
    digits: list[int] = []
    while value > 0:
        value, r = divmod(value, base)
        if r == 0:
            r = base
            value -= 1
        digits.append(r - 1)
    digits.reverse()
    return tuple(digits)


def bijective_value(word: Word, base: int) -> int:
    """Integer enumerating the given digit string (inverse of to_bijective_base)."""
    v = 0
    for d in word:
        v = v * base + d + 1
    return v


def digits_required(value: int, base: int) -> int:
    """True digit count of value in the given base: floor(log_base(value)) + 1."""
    if value < 1:
        raise DomainError("value must be positive")
    count = 0
    while value:
        value //= base
        count += 1
    return count


def pad_variants(word: Word, max_len: int) -> list[Word]:
    """The word plus each zero-prefixed variant up to max_len, shortest first."""
    if len(word) > max_len:
        raise ValueError(f"word of length {len(word)} exceeds max_len {max_len}")
    return [(0,) * k + tuple(word) for k in range(max_len - len(word) + 1)]


def tree_word_count(base: int, depth: int) -> int:
    """All strings of length 1..depth over base symbols."""
    return sum(base**i for i in range(1, depth + 1))


def counts(base: int, depth: int) -> CountReport:
    if base < 2 or depth < 1:
        raise ValueError("need base >= 2 and depth >= 1")
    return CountReport(
        base=base,
        depth=depth,
        tree_words=tree_word_count(base, depth),
        leaf_words=base**depth,
        reduced_tree_words=sum(base * (base - 1) ** (i - 1) for i in range(1, depth + 1)),
        reduced_leaf_words=base * (base - 1) ** (depth - 1),
    )


def index_span_for_length(base: int, length: int, mode: EnumerationMode) -> tuple[int, int]:
    """Half-open integer range whose conversions have exactly this many digits.

    This is the digit-count jump: instead of walking the sequence from the
    start, the enumerator may begin directly at the first integer of a given
    word length.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    if mode is EnumerationMode.CARDINAL:
        if length == 1:
            return (0, base)
        return (base ** (length - 1), base**length)
    if mode is EnumerationMode.ORDINAL:
        return (tree_word_count(base, length - 1) + 1, tree_word_count(base, length) + 1)
    raise ValueError("lexicographic mode has no integer spans")


def default_index_range(cfg: EnumeratorConfig) -> tuple[int, int]:
    """Full range for the mode: every word of length <= max_depth once."""
    if cfg.mode is EnumerationMode.CARDINAL:
        return (0, cfg.base**cfg.max_depth)
    if cfg.mode is EnumerationMode.ORDINAL:
        return (1, tree_word_count(cfg.base, cfg.max_depth) + 1)
    raise ValueError("lexicographic mode has no integer range")


def _validated_range(cfg: EnumeratorConfig) -> tuple[int, int]:
    lo, hi = default_index_range(cfg)
    if cfg.index_range is None:
        return (lo, hi)
    start, end = cfg.index_range
    if start < lo or end > hi:
        raise RangeError(
            f"range [{start}, {end}) outside [{lo}, {hi}) for base {cfg.base} at depth {cfg.max_depth}"
        )
    return (start, end)


def enumerate_lexicographic(
    gs: GeneratorSet,
    rules: CancellationRules,
    depth: int,
    sink: Callable[[Word], None],
    *,
    leaves_only: bool = False,
    meter: StorageMeter | None = None,
) -> int:
    """Depth-first walk of the reduced-word tree, one root-to-node path retained.

    Every reduced word of length <= depth (or exactly depth with leaves_only)
    is passed to the sink exactly once, parents before children. Returns the
    number of words emitted.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    n = len(gs)
    pairs = rules.forbidden if isinstance(rules, PresentationRules) else None
    path: list[int] = []
    stack = [iter(range(n))]
    emitted = 0
    while stack:
        descended = False
        for symbol in stack[-1]:
            if meter is not None:
                meter.examined += 1
            if pairs is not None:
                if path and (path[-1], symbol) in pairs:
                    continue
            elif not is_reduced(tuple(path) + (symbol,), rules):
                continue
            path.append(symbol)
            if meter is not None:
                meter.note_storage(1, len(path))
            if not leaves_only or len(path) == depth:
                sink(tuple(path))
                emitted += 1
                if meter is not None:
                    meter.emitted += 1
            if len(path) == depth:
                path.pop()
                continue
            stack.append(iter(range(n)))
            descended = True
            break
        if not descended:
            stack.pop()
            if path:
                path.pop()
    return emitted


def enumerate_index(
    gs: GeneratorSet,
    rules: CancellationRules,
    cfg: EnumeratorConfig,
    sink: Callable[[Word], None],
    *,
    meter: StorageMeter | None = None,
) -> int:
    """Convert each integer in the configured range and emit the reduced survivors.

    Cardinal mode emits each conversion plus its leading-zero variants up to
    max_depth; ordinal mode emits the bijective conversion as is. Only the
    current digit buffer is retained, never a dictionary. Returns the number of
    words emitted.
    """
    if cfg.base != len(gs):
        raise ValueError(f"config base {cfg.base} does not match generator count {len(gs)}")
    if cfg.mode is EnumerationMode.LEXICOGRAPHIC:
        raise ValueError("enumerate_index handles cardinal and ordinal modes only")
    start, end = _validated_range(cfg)
    n, d = cfg.base, cfg.max_depth
    pairs = rules.forbidden if isinstance(rules, PresentationRules) else None
    emitted = 0

    def reduced(digits: list[int]) -> bool:
        if pairs is None:
            return is_reduced(tuple(digits), rules)
        prev = digits[0]
        for s in digits[1:]:
            if (prev, s) in pairs:
                return False
            prev = s
        return True

    if cfg.mode is EnumerationMode.CARDINAL:
        for i in range(start, end):
            digits = list(to_base(i, n))
            while True:
                if meter is not None:
                    meter.examined += 1
                    meter.note_storage(1, len(digits))
                if reduced(digits):
                    sink(tuple(digits))
                    emitted += 1
                    if meter is not None:
                        meter.emitted += 1
                if len(digits) == d:
                    break
                digits.insert(0, 0)
    else:
        for i in range(start, end):
            digits = list(to_bijective_base(i, n))
            if meter is not None:
                meter.examined += 1
                meter.note_storage(1, len(digits))
            if reduced(digits):
                sink(tuple(digits))
                emitted += 1
                if meter is not None:
                    meter.emitted += 1
    return emitted
