"""Generator sets, words over generator indices, and cancellation rules.

A word is a tuple of generator indices written in display order and applied
right to left, so ``(0, 1)`` means "apply generator 1 first, then generator 0".
Cancellation rules come in two flavors: presentation pairs (a set of forbidden
adjacent index pairs) and Cayley tables (a row/column automaton scanned right
to left).
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field

from .moebius import (
    Circle,
    ExtendedComplex,
    MoebiusMap,
    isometric_circle,
    moebius_from_three_points,
)

Word = tuple[int, ...]

_TANGENCY_TOL = 1e-9


class InvalidConfigurationError(ValueError):
    """Generator geometry violates the construction's preconditions."""


class TableIncompleteError(KeyError):
    """A Cayley scan reached a state with no matching row."""


@dataclass(frozen=True)
class Generator:
    """One indexed transformation: a Moebius map or a circle inversion."""

    label: str
    transform: MoebiusMap | Circle

    @property
    def is_inversion(self) -> bool:
        return isinstance(self.transform, Circle)

    def apply(self, z: ExtendedComplex) -> ExtendedComplex:
        if self.is_inversion:
            return self.transform.invert(z)
        return self.transform(z)

    def base_circle(self) -> Circle:
        """The generator's own invariant circle: inversion or isometric."""
        if self.is_inversion:
            return self.transform
        return isometric_circle(self.transform)


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generators plus the involution pairing each index with its inverse."""

    generators: tuple[Generator, ...]
    inverse_index: tuple[int, ...]

    def __post_init__(self):
        n = len(self.generators)
        if len(self.inverse_index) != n:
            raise ValueError("inverse_index length must match generator count")
        for i, j in enumerate(self.inverse_index):
            if not 0 <= j < n or self.inverse_index[j] != i:
                raise ValueError(f"inverse_index {self.inverse_index} is not an involution")
            if self.generators[i].is_inversion and j != i:
                raise ValueError(f"inversion generator {self.generators[i].label!r} must be its own inverse")

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, index: int) -> Generator:
        return self.generators[index]

    def __iter__(self):
        return iter(self.generators)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(g.label for g in self.generators)

    def apply(self, index: int, z: ExtendedComplex) -> ExtendedComplex:
        return self.generators[index].apply(z)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no generator labelled {label!r}") from None


@dataclass(frozen=True)
class PresentationRules:
    """Forbidden adjacent index pairs, read on the word's display order."""

    forbidden: frozenset[tuple[int, int]]


@dataclass
class CayleyTable:
    """Rows keyed by state words; each row has one entry per generator column.

    An entry is the replacement state word, or ``None`` for a cancellation.
    State words keep the most recently scanned symbol leftmost, matching the
    right-to-left reading of words.
    """

    n: int
    rows: dict[Word, tuple[Word | None, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for label, entries in self.rows.items():
            if len(entries) != self.n:
                raise ValueError(f"row {label} must have {self.n} entries, got {len(entries)}")


CancellationRules = PresentationRules | CayleyTable


def pair_rules(gs: GeneratorSet) -> PresentationRules:
    """Presentation rules cancelling each generator against its inverse."""
    return PresentationRules(frozenset((i, j) for i, j in enumerate(gs.inverse_index)))


def simple_cayley_table(inverse_index: tuple[int, ...] | list[int]) -> CayleyTable:
    """Single-letter-row table equivalent to the pair presentation.

    Row s, column t cancels exactly when t is the inverse of s (scanning right
    to left, that adjacency spells the identity); otherwise the state becomes t.
    """
    n = len(inverse_index)
    rows: dict[Word, tuple[Word | None, ...]] = {}
    for s in range(n):
        rows[(s,)] = tuple(None if inverse_index[s] == t else (t,) for t in range(n))
    return CayleyTable(n, rows)


def cayley_step(state: Word, next_index: int, table: CayleyTable) -> Word | None:
    """Resolve one scan step; None means the word cancels."""
    row = table.rows.get(tuple(state))
    if row is None:
        raise TableIncompleteError(f"no Cayley row for state {tuple(state)}")
    return row[next_index]


def _resolve_state(state: Word, table: CayleyTable) -> Word:
    # Fall back to the longest recently-scanned portion that names a row
    # (drop the oldest symbol, i.e. the display-rightmost, first).
    w = tuple(state)
    while w:
        if w in table.rows:
            return w
        w = w[:-1]
    raise TableIncompleteError(f"no Cayley row matches any suffix of state {tuple(state)}")


def _cayley_reduced(word: Word, table: CayleyTable) -> bool:
    if not word:
        return True
    state = _resolve_state((word[-1],), table)
    for s in word[-2::-1]:
        entry = cayley_step(state, s, table)
        if entry is None:
            return False
        state = _resolve_state(entry, table)
    return True


def is_reduced(word: Word, rules: CancellationRules) -> bool:
    """True when no cancellation fires anywhere in the word."""
    if isinstance(rules, PresentationRules):
        forbidden = rules.forbidden
        for k in range(len(word) - 1):
            if (word[k], word[k + 1]) in forbidden:
                return False
        return True
    return _cayley_reduced(word, rules)


def reduce_word(word: Word, rules: PresentationRules) -> Word:
    """Cascading cancellation of forbidden pairs until none remain.

    The stack scan is equivalent to deleting forbidden pairs to a fixpoint for
    involution-pair rule sets, which is the only variant these rules allow.
    """
    if not isinstance(rules, PresentationRules):
        raise TypeError("reduce_word requires presentation rules; Cayley rewriting is unsupported")
    forbidden = rules.forbidden
    out: list[int] = []
    for s in word:
        if out and (out[-1], s) in forbidden:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def inverse_word(word: Word, gs: GeneratorSet) -> Word:
    """The word denoting the inverse transformation."""
    inv = gs.inverse_index
    return tuple(inv[s] for s in reversed(word))


def word_to_labels(word: Word, gs: GeneratorSet) -> str:
    return "".join(gs.labels[s] for s in word)


def labels_to_word(text: str, gs: GeneratorSet) -> Word:
    """Parse a string of single-character generator labels."""
    return tuple(gs.index_of(ch) for ch in text)


def word_map(word: Word, gs: GeneratorSet) -> MoebiusMap:
    """Compose the word's conformal generators (right to left)."""
    m = MoebiusMap.identity()
    for s in word:
        g = gs.generators[s]
        if g.is_inversion:
            raise ValueError("word_map is defined for conformal generators only")
        m = m.compose(g.transform)
    return m


def _closed_discs_overlap(c1: Circle, c2: Circle, slack: float) -> bool:
    return abs(c1.center - c2.center) < c1.radius + c2.radius - slack


def make_schottky_group(c1: Circle, c1_prime: Circle, c2: Circle, c2_prime: Circle) -> GeneratorSet:
    """Two-generator Schottky set from two pairs of disjoint circles.

    Each pairing map sends three boundary points of the source circle to three
    boundary points of the target traversed in the opposite sense, so the
    exterior of the source lands in the interior of the target. Generators are
    indexed g1, g2, g1^-1, g2^-1 with labels a, b, A, B.
    """
    circles = [c1, c1_prime, c2, c2_prime]
    for i in range(4):
        for j in range(i + 1, 4):
            if _closed_discs_overlap(circles[i], circles[j], -1e-12):
                raise InvalidConfigurationError(
                    f"circles {circles[i]} and {circles[j]} do not bound disjoint closed discs"
                )

    def pairing(src: Circle, dst: Circle) -> MoebiusMap:
        third = 2.0 * 3.141592653589793 / 3.0
        ps = [src.point_at(k * third) for k in range(3)]
        qs = [dst.point_at(-k * third) for k in range(3)]
        return moebius_from_three_points(*ps, *qs)

    g1 = pairing(c1, c1_prime)
    g2 = pairing(c2, c2_prime)
    gens = (
        Generator("a", g1),
        Generator("b", g2),
        Generator("A", g1.inverse()),
        Generator("B", g2.inverse()),
    )
    return GeneratorSet(gens, (2, 3, 0, 1))


def make_tangent_inversion_group(circles: list[Circle] | tuple[Circle, ...]) -> GeneratorSet:
    """Self-inverse set of circle inversions; circles may touch but not overlap."""
    circles = tuple(circles)
    if len(circles) < 2:
        raise InvalidConfigurationError("need at least two inversion circles")
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            if _closed_discs_overlap(circles[i], circles[j], _TANGENCY_TOL):
                raise InvalidConfigurationError(f"circles {circles[i]} and {circles[j]} overlap")
    labels = string.ascii_lowercase
    gens = tuple(Generator(labels[i], c) for i, c in enumerate(circles))
    return GeneratorSet(gens, tuple(range(len(circles))))


def abstract_group(n: int, self_inverse: bool = True) -> GeneratorSet:
    """Placeholder generator set for counting and enumeration work.

    The transforms are distinct translations and never applied by the
    enumerators; only the index structure and inverse pairing matter. For the
    non-self-inverse variant, indices 0..k-1 pair with k..2k-1 (and an odd
    trailing generator pairs with itself).
    """
    if n < 2:
        raise ValueError("need at least two generators")
    lowers = string.ascii_lowercase
    if self_inverse:
        labels = [lowers[i] for i in range(n)]
        inverse = list(range(n))
    else:
        k = n // 2
        labels = [lowers[i] for i in range(k)] + [lowers[i].upper() for i in range(k)]
        inverse = [i + k for i in range(k)] + [i for i in range(k)]
        if n % 2 == 1:
            labels.append(lowers[k])
            inverse.append(n - 1)
    gens = tuple(Generator(labels[i], MoebiusMap(1, i + 1, 0, 1)) for i in range(n))
    return GeneratorSet(gens, tuple(inverse))
