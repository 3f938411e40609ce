"""Words over a finite set of generator symbols, and free reduction.

A letter is stored as a signed nonzero integer: ``i + 1`` for generator ``i``
and ``-(i + 1)`` for its inverse.  This keeps words as flat integer tuples,
which hash and concatenate cheaply.
"""
from __future__ import annotations

import re
from itertools import product
from typing import Iterable, Iterator, Sequence

NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class GeneratorSet(tuple):
    """Ordered tuple of distinct generator names."""

    def __new__(cls, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("generator list is empty")
        for name in names:
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        return super().__new__(cls, names)

    def index(self, name: str) -> int:  # type: ignore[override]
        try:
            return super().index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __repr__(self) -> str:
        return f"GeneratorSet({list(self)})"


class Word(tuple):
    """A word in generators and their inverses, as signed letters."""

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(letters)
        if any(x == 0 for x in letters):
            raise ValueError("0 is not a letter")
        return super().__new__(cls, letters)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Word":
        out = []
        for gen, sign in pairs:
            if gen < 0 or sign not in (1, -1):
                raise ValueError(f"bad letter {(gen, sign)}")
            out.append(sign * (gen + 1))
        return cls(out)

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        x = i + 1 if power >= 0 else -(i + 1)
        return cls([x] * abs(power))

    @property
    def letters(self) -> list[tuple[int, int]]:
        """The word as (generator index, sign) pairs."""
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in self]

    def max_index(self) -> int:
        return max((abs(x) - 1 for x in self), default=-1)

    def inverse(self) -> "Word":
        return Word(-x for x in reversed(self))

    def __add__(self, other: Sequence[int]) -> "Word":  # type: ignore[override]
        return Word(tuple.__add__(self, tuple(other)))

    def __mul__(self, other):  # type: ignore[override]
        """Product in the free group (concatenation followed by reduction)."""
        if isinstance(other, int):
            if other < 0:
                return free_reduce(self.inverse() * (-other))
            return free_reduce(Word(tuple(self) * other))
        return free_reduce(self + other)

    def __getitem__(self, key):
        item = tuple.__getitem__(self, key)
        return Word(item) if isinstance(key, slice) else item

    def __repr__(self) -> str:
        return f"Word({list(self)})"


EMPTY = Word()


def free_reduce(w: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(out)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return Word(w[i:j])


def commutator(x: Word, y: Word) -> Word:
    """x y x^-1 y^-1, freely reduced."""
    return free_reduce(x + y + x.inverse() + y.inverse())


def conjugate(c: Word, w: Word) -> Word:
    """c w c^-1, freely reduced."""
    return free_reduce(c + w + c.inverse())


def letters_of(n_gens: int) -> list[int]:
    """All letters in shortlex order: a, a^-1, b, b^-1, ..."""
    out = []
    for i in range(n_gens):
        out += [i + 1, -(i + 1)]
    return out


def reduced_words(n_gens: int, max_len: int, min_len: int = 0) -> Iterator[Word]:
    """Every reduced word of length in [min_len, max_len], in shortlex order."""
    alphabet = letters_of(n_gens)
    for length in range(min_len, max_len + 1):
        if length == 0:
            yield EMPTY
            continue
        for letters in product(alphabet, repeat=length):
            if is_reduced(letters):
                yield Word(letters)


def format_word(w: Sequence[int], gens: Sequence[str]) -> str:
    """Render with run-length exponents, e.g. ``a^2 b^-1``; empty word is ``1``."""
    if not w:
        return "1"
    tokens = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = gens[abs(w[i]) - 1]
        power = (j - i) * (1 if w[i] > 0 else -1)
        tokens.append(name if power == 1 else f"{name}^{power}")
        i = j
    return " ".join(tokens)
