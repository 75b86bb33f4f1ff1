"""The sorting construction of a Whitney dual from an EW-labeling.

Elements of the dual are pairs (top, word): an element of the source poset
together with the label word of an ascent-free chain from the minimum up to
it.  Covers append one label and re-sort by repeatedly swapping the leftmost
ascent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InternalGuardError, PreconditionError
from .labeling import EdgeLabeling, LabelPoset, check_EW, is_ascent_free
from .poset import GradedPoset


@dataclass(frozen=True)
class DualElement:
    """A source element plus the ascent-free label word that reaches it."""

    top: int
    word: tuple[int, ...]


def sort_word(lp: LabelPoset, word: Sequence[int]) -> tuple[int, ...]:
    """Swap the leftmost ascent until the word is ascent-free.

    Each swap strictly decreases the number of strictly-increasing pairs,
    so the loop terminates; a |w|^2 step guard protects against a corrupted
    label order all the same.
    """
    w = list(word)
    guard = len(w) * len(w) + 1
    for _ in range(guard):
        for i in range(len(w) - 1):
            if lp.less(w[i], w[i + 1]):
                w[i], w[i + 1] = w[i + 1], w[i]
                break
        else:
            return tuple(w)
    raise InternalGuardError("sorting exceeded its step guard; label order is broken")


def _payload(p: GradedPoset, labeling: EdgeLabeling, el: DualElement) -> str:
    word = "".join(labeling.label_poset.names[i] for i in el.word) or "∅"
    return f"({p.payload(el.top)}, {word})"


def construct_R(
    p: GradedPoset,
    labeling: EdgeLabeling,
    bypass_ew_check: bool = False,
) -> GradedPoset:
    """The Whitney dual poset on ascent-free chain words of an EW-labeling.

    (x,w) is covered by (y, sort(w + label(x,y))) for every cover x < y of
    the source.  Unless ``bypass_ew_check`` is set, the labeling must pass
    check_EW; with the bypass the output carries no validity guarantee and
    its payload strings are marked "unvalidated".
    """
    if labeling.poset is not p:
        raise PreconditionError("labeling must belong to the given poset")
    validated = True
    if not check_EW(labeling).passed:
        if not bypass_ew_check:
            raise PreconditionError(
                "labeling is not an EW-labeling; pass bypass_ew_check=True to force"
            )
        validated = False
    lp = labeling.label_poset

    bottom = DualElement(p.zero(), ())
    index: dict[DualElement, int] = {bottom: 0}
    payloads = [_payload(p, labeling, bottom)]
    objects: list[DualElement] = [bottom]
    covers: list[tuple[int, int]] = []
    level = [bottom]
    while level:
        produced: dict[DualElement, None] = {}
        edges: list[tuple[int, DualElement]] = []
        for el in level:
            src = index[el]
            for y in p.upper_covers(el.top):
                lab = labeling.label_of[(el.top, y)]
                succ = DualElement(y, sort_word(lp, el.word + (lab,)))
                produced.setdefault(succ, None)
                edges.append((src, succ))
        ordered = sorted(produced, key=lambda e: _payload(p, labeling, e))
        for el in ordered:
            index[el] = len(payloads)
            payloads.append(_payload(p, labeling, el))
            objects.append(el)
        covers.extend((src, index[el]) for src, el in edges)
        level = ordered
    if not validated:
        payloads = [s + " [unvalidated]" for s in payloads]
    return GradedPoset(payloads, covers, objects)


def ascent_free_zero_chains(
    p: GradedPoset, labeling: EdgeLabeling
) -> Iterator[DualElement]:
    """All ascent-free saturated chains from the minimum, by direct search.

    Enumerated depth-first and independent of construct_R; for an
    EW-labeling the number of results at rank k equals |w_k| of the source.
    """
    lp = labeling.label_poset

    def walk(top: int, word: tuple[int, ...]) -> Iterator[DualElement]:
        yield DualElement(top, word)
        for y in p.upper_covers(top):
            lab = labeling.label_of[(top, y)]
            if word and lp.less(word[-1], lab):
                continue  # appending would create an ascent
            yield from walk(y, word + (lab,))

    if labeling.poset is not p:
        raise PreconditionError("labeling must belong to the given poset")
    yield from walk(p.zero(), ())


def ascent_free_words_check(p: GradedPoset, labeling: EdgeLabeling) -> bool:
    """construct_R's element set must equal the directly enumerated chains."""
    direct = set(ascent_free_zero_chains(p, labeling))
    built = set(construct_R(p, labeling).objects)
    assert all(is_ascent_free(labeling.label_poset, el.word) for el in direct)
    return direct == built


def dual_element_json(p: GradedPoset, labeling: EdgeLabeling, el: DualElement) -> dict:
    """Wire format of a dual element: its top payload and label-name word."""
    return {
        "top": p.payload(el.top),
        "word": [labeling.label_poset.names[i] for i in el.word],
    }
