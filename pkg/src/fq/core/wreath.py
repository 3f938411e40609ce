"""Finite presentation of the wreath product G wr H for a finite group H.

With G = <S_G | R_G> and H given by a table, the presentation is

    < S_G, S_H | R_G, R_H, [h g1 h^-1, g2] for g1, g2 in S_G, h in H - {1} >

where S_H marks H and R_H is the table presentation of that marking.
"""
from __future__ import annotations

from typing import Mapping, Optional, Sequence, Union

from ..finite.cayley import CayleyGroup, MarkedGroup, evaluate_word, word_for_elements
from ..finite.census import generating_tuple
from ..finite.marked import table_presentation
from .presentation import Presentation, parse_word
from .words import Word, commutator, free_reduce


class WreathInputError(ValueError):
    pass


def _fresh_names(k: int, taken: Sequence[str]) -> list[str]:
    out = []
    i = 0
    while len(out) < k:
        name = f"h{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def _shift(w: Sequence[int], k: int) -> Word:
    return Word(x + k if x > 0 else x - k for x in w)


def wreath_presentation(
    base: Presentation,
    acting: Union[CayleyGroup, MarkedGroup],
    acting_words: Optional[Mapping[int, Union[str, Sequence[int]]]] = None,
    acting_names: Optional[Sequence[str]] = None,
) -> Presentation:
    """Presentation of base wr acting (lamps from ``base``, indexed by ``acting``).

    ``acting`` may be a bare table, in which case a short generating tuple is
    chosen.  ``acting_words`` maps each nonidentity element to a word in the
    acting generators (text or signed letters over those generators alone);
    by default the shortlex-least words are used.
    """
    if isinstance(acting, CayleyGroup):
        acting = MarkedGroup(acting, generating_tuple(acting))
    h_order = acting.order
    if h_order == 1:
        return base
    k = base.n_gens
    names = list(acting_names) if acting_names else _fresh_names(acting.n, base.generators)
    if len(names) != acting.n:
        raise WreathInputError(f"need {acting.n} acting generator names, got {len(names)}")
    if set(names) & set(base.generators):
        raise WreathInputError("acting generator names must be disjoint from the base generators")

    if acting_words is None:
        words = word_for_elements(acting)
    else:
        words = {0: Word()}
        for h, w in acting_words.items():
            w = parse_word(w, names) if isinstance(w, str) else free_reduce(w)
            if evaluate_word(acting, w) != h:
                raise WreathInputError(f"word for element {h} evaluates to {evaluate_word(acting, w)}")
            words[int(h)] = w
        missing = [h for h in range(1, h_order) if h not in words]
        if missing:
            raise WreathInputError(f"acting_words has no word for elements {missing}")

    rels: list[Word] = list(base.relators)
    rels += [_shift(r, k) for r in table_presentation(acting, names).relators]
    for h in range(1, h_order):
        wh = _shift(words[h], k)
        for g1 in range(k):
            conj = free_reduce(wh + Word([g1 + 1]) + wh.inverse())
            for g2 in range(k):
                rels.append(commutator(conj, Word([g2 + 1])))
    return Presentation(list(base.generators) + names, rels)
