"""Finite presentations <S | R> and their text syntax.

Grammar (whitespace insensitive)::

    presentation := '<' name (',' name)* '|' [word (',' word)*] '>'
    word         := token+
    token        := name ['^' signed-int] | '[' name ',' name ']'

A run of letters that is not itself a generator name, such as ``abab`` over
``a, b``, is split into the longest matching generator names.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import GeneratorSet, Word, commutator, format_word, free_reduce


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Presentation:
    generators: GeneratorSet
    relators: tuple[Word, ...]

    def __init__(self, generators: Iterable[str], relators: Iterable[Sequence[int]] = ()):
        gens = generators if isinstance(generators, GeneratorSet) else GeneratorSet(generators)
        rels = []
        for r in relators:
            r = free_reduce(r)
            if r.max_index() >= len(gens):
                raise ValueError(f"relator {list(r)} uses a generator outside {list(gens)}")
            if r:
                rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def n_gens(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self) -> str:
        return format_presentation(self)

    def __str__(self) -> str:
        return self.format()


def free_presentation(names: Sequence[str] | int) -> Presentation:
    if isinstance(names, int):
        names = [chr(ord("a") + i) for i in range(names)]
    return Presentation(names, ())


def add_relators(p: Presentation, extra: Iterable[Sequence[int]]) -> Presentation:
    """<S | R> with the words of ``extra`` appended (reduced, empties dropped)."""
    return Presentation(p.generators, list(p.relators) + [Word(w) for w in extra])


_TOKEN = re.compile(r"\s*(?:(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<punct>[<>|,\[\]^])|(?P<int>[+-]?\d+))")


def _lex(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def _split_name(name: str, gens: GeneratorSet, pos: int) -> list[int]:
    if name in gens:
        return [gens.index(name)]
    # greedy longest-match split of juxtaposed generator names
    out = []
    i = 0
    by_len = sorted(gens, key=len, reverse=True)
    while i < len(name):
        for g in by_len:
            if name.startswith(g, i):
                out.append(gens.index(g))
                i += len(g)
                break
        else:
            raise PresentationSyntaxError(f"unknown generator {name!r}", pos)
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.i = 0
        self.end = len(text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", self.end)

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise PresentationSyntaxError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def word(self, gens: GeneratorSet, stop: set[str]) -> Word:
        letters: list[int] = []
        start = self.i
        while True:
            kind, value, pos = self.peek()
            if kind == "eof" or value in stop:
                break
            if value == "[":
                self.take("[")
                x = self._single(gens)
                self.take(",")
                y = self._single(gens)
                self.take("]")
                letters += commutator(Word([x + 1]), Word([y + 1]))
            elif kind == "name":
                self.take()
                idx = _split_name(value, gens, pos)
                power = 1
                if self.peek()[1] == "^":
                    self.take("^")
                    power = int(self.take(kind="int")[1])
                head, last = idx[:-1], idx[-1]
                letters += [i + 1 for i in head]
                letters += [(last + 1) if power > 0 else -(last + 1)] * abs(power)
            elif kind == "int" and value == "1":
                self.take()  # explicit identity
            else:
                raise PresentationSyntaxError(f"unexpected token {value!r}", pos)
        if self.i == start:
            raise PresentationSyntaxError("empty word", self.peek()[2])
        return Word(letters)

    def _single(self, gens: GeneratorSet) -> int:
        kind, value, pos = self.take(kind="name")
        idx = _split_name(value, gens, pos)
        if len(idx) != 1:
            raise PresentationSyntaxError(f"commutator entries must be single generators, got {value!r}", pos)
        return idx[0]


def parse_presentation(text: str) -> Presentation:
    p = _Parser(text)
    p.take("<")
    names = [p.take(kind="name")[1]]
    while p.peek()[1] == ",":
        p.take(",")
        names.append(p.take(kind="name")[1])
    try:
        gens = GeneratorSet(names)
    except ValueError as exc:
        raise PresentationSyntaxError(str(exc), 0) from None
    p.take("|")
    rels = []
    if p.peek()[1] != ">":
        rels.append(p.word(gens, {",", ">"}))
        while p.peek()[1] == ",":
            p.take(",")
            rels.append(p.word(gens, {",", ">"}))
    p.take(">")
    if p.peek()[0] != "eof":
        raise PresentationSyntaxError("trailing input", p.peek()[2])
    return Presentation(gens, rels)


def parse_word(text: str, gens: Sequence[str]) -> Word:
    """Parse a word in the presentation token syntax; ``1`` or ``""`` is the empty word."""
    gens = gens if isinstance(gens, GeneratorSet) else GeneratorSet(gens)
    if text.strip() in ("", "1"):
        return Word()
    p = _Parser(text)
    w = p.word(gens, set())
    return w


def format_presentation(p: Presentation) -> str:
    rels = ", ".join(format_word(r, p.generators) for r in p.relators)
    return f"< {', '.join(p.generators)} | {rels} >"
