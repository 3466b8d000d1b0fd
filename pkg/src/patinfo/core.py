"""Shared primitives: symbols, alphabets, patterns, frequency tables.

A pattern is a finite sequence of opaque symbols drawn from a finite
alphabet. Symbols only need equality and hashing; ordering is used solely
for deterministic iteration and falls back to a type-aware key when the
symbols of an alphabet are not mutually comparable. Everything here is
immutable and safe to share across threads.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping

Symbol = Hashable


class PatinfoError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateAlphabetError(PatinfoError):
    """An operation needed symbols but the alphabet is empty."""


class EmptyPatternError(PatinfoError):
    """An estimator that is undefined for the empty pattern received one."""


def sorted_symbols(symbols: Iterable[Symbol]) -> tuple[Symbol, ...]:
    """Sort symbols deterministically, tolerating mixed types."""
    items = list(symbols)
    try:
        return tuple(sorted(items))
    except TypeError:
        return tuple(sorted(items, key=lambda s: (type(s).__name__, repr(s))))


@dataclass(frozen=True)
class Alphabet:
    """A finite set of distinct symbols with a deterministic iteration order."""

    members: tuple[Symbol, ...]

    @classmethod
    def of(cls, symbols: Iterable[Symbol]) -> "Alphabet":
        return cls(sorted_symbols(set(symbols)))

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def k(self) -> int:
        return len(self.members)

    def __contains__(self, symbol: Symbol) -> bool:
        return symbol in self._member_set

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.members)

    def __or__(self, other: "Alphabet") -> "Alphabet":
        return Alphabet.of(self.members + other.members)


@dataclass(frozen=True)
class Pattern:
    """An immutable symbol sequence over a declared alphabet.

    The alphabet may be larger than the set of symbols that actually occur;
    size bounds and calibration use the declared size. Every occurring
    symbol must belong to the alphabet.
    """

    symbols: tuple[Symbol, ...]
    alphabet: Alphabet

    def __post_init__(self) -> None:
        if self.symbols and self.alphabet.k == 0:
            raise DegenerateAlphabetError("non-empty pattern over an empty alphabet")
        stray = [s for s in set(self.symbols) if s not in self.alphabet]
        if stray:
            shown = list(sorted_symbols(stray)[:5])
            raise ValueError(f"symbols outside the declared alphabet: {shown!r}")

    @classmethod
    def of(cls, symbols: Iterable[Symbol], alphabet: Iterable[Symbol] | Alphabet | None = None) -> "Pattern":
        """Build a pattern from any iterable; str yields characters, bytes yields ints."""
        syms = tuple(symbols)
        if alphabet is None:
            declared = Alphabet.of(syms)
        elif isinstance(alphabet, Alphabet):
            declared = alphabet
        else:
            declared = Alphabet.of(alphabet)
        return cls(syms, declared)

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __add__(self, other: "Pattern") -> "Pattern":
        """Concatenate, declaring the union alphabet."""
        return Pattern(self.symbols + other.symbols, self.alphabet | other.alphabet)

    def reversed_(self) -> "Pattern":
        return Pattern(self.symbols[::-1], self.alphabet)

    def repeated(self, times: int) -> "Pattern":
        if times < 1:
            raise ValueError("repeat count must be >= 1")
        return Pattern(self.symbols * times, self.alphabet)

    def slice(self, start: int, stop: int) -> "Pattern":
        """Contiguous subpattern keeping the declared alphabet."""
        return Pattern(self.symbols[start:stop], self.alphabet)


@dataclass(frozen=True)
class FrequencyTable:
    """Absolute and relative symbol frequencies of one pattern."""

    counts: Mapping[Symbol, int]
    n: int

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.n:
            raise ValueError("counts must sum to the pattern length")
        if any(c <= 0 for c in self.counts.values()):
            raise ValueError("only occurring symbols belong in a frequency table")

    @cached_property
    def relative(self) -> dict[Symbol, float]:
        if self.n == 0:
            return {}
        return {s: c / self.n for s, c in self.counts.items()}

    @property
    def distinct(self) -> int:
        return len(self.counts)

    def is_constant(self) -> bool:
        return self.distinct <= 1

    def is_uniform(self) -> bool:
        """True when every occurring symbol has the same count (and n > 0)."""
        if self.n == 0:
            return False
        values = set(self.counts.values())
        return len(values) == 1


def frequency_table(p: Pattern) -> FrequencyTable:
    """Count occurrences per symbol, keyed in deterministic symbol order."""
    raw = Counter(p.symbols)
    counts = {s: raw[s] for s in sorted_symbols(raw.keys())}
    return FrequencyTable(counts, len(p))


def infer_alphabet(p: Pattern) -> Alphabet:
    """The alphabet of symbols that actually occur in p."""
    return Alphabet.of(set(p.symbols))
