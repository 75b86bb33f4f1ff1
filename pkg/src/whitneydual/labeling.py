"""Edge labelings of graded posets and the ER / EL / EW decision procedures.

Words of labels are tuples of indices into a LabelPoset.  All checks iterate
intervals bottom-up in deterministic order and report at most one witness per
failure class, so outputs are reproducible.  Interval chain enumerations are
cached per labeling, up to a configurable budget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS
from .errors import NotGradedError, PreconditionError
from .poset import GradedPoset, SaturatedChain


class Ordering(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


class LabelPoset:
    """A finite set of labels with a strict partial order.

    The strictly-less relation is materialized as one bitmask per label and
    validated (irreflexive, transitive) exhaustively at construction.
    """

    __slots__ = ("names", "less_masks", "_index")

    def __init__(self, names: Sequence[str], less_masks: Sequence[int]) -> None:
        self.names = tuple(names)
        self.less_masks = tuple(less_masks)
        if len(self.names) != len(set(self.names)):
            raise NotGradedError("label names must be distinct")
        if len(self.less_masks) != len(self.names):
            raise NotGradedError("one relation mask per label required")
        self._index = {s: i for i, s in enumerate(self.names)}
        self._validate()

    def _validate(self) -> None:
        n = len(self.names)
        for i in range(n):
            if (self.less_masks[i] >> i) & 1:
                raise NotGradedError(f"label order not irreflexive at {self.names[i]}")
            m = self.less_masks[i]
            while m:
                low = m & -m
                j = low.bit_length() - 1
                m ^= low
                if self.less_masks[j] & ~self.less_masks[i]:
                    raise NotGradedError(
                        f"label order not transitive at {self.names[i]} < {self.names[j]}"
                    )
                if (self.less_masks[j] >> i) & 1:
                    raise NotGradedError(
                        f"label order has a 2-cycle {self.names[i]} / {self.names[j]}"
                    )

    @classmethod
    def from_pairs(
        cls,
        names: Sequence[str],
        less_pairs: Iterable[tuple[int, int]],
        transitive_close: bool = True,
    ) -> "LabelPoset":
        """Build from strict-less pairs of label indices, optionally closing."""
        n = len(names)
        masks = [0] * n
        for i, j in less_pairs:
            masks[i] |= 1 << j
        if transitive_close:
            changed = True
            while changed:
                changed = False
                for i in range(n):
                    m = masks[i]
                    acc = m
                    while m:
                        low = m & -m
                        acc |= masks[low.bit_length() - 1]
                        m ^= low
                    if acc != masks[i]:
                        masks[i] = acc
                        changed = True
        return cls(names, masks)

    @classmethod
    def total_order(cls, names: Sequence[str]) -> "LabelPoset":
        """Chain on the given names, in the given order."""
        n = len(names)
        masks = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                masks[i] |= 1 << j
        return cls(names, masks)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def less(self, i: int, j: int) -> bool:
        return bool((self.less_masks[i] >> j) & 1)

    def dual(self) -> "LabelPoset":
        """Same labels with the order reversed."""
        n = len(self.names)
        masks = [0] * n
        for i in range(n):
            m = self.less_masks[i]
            while m:
                low = m & -m
                masks[low.bit_length() - 1] |= 1 << i
                m ^= low
        return LabelPoset(self.names, masks)


def lex_compare(lp: LabelPoset, w1: Sequence[int], w2: Sequence[int]) -> Ordering:
    """Lexicographic comparison of words over a partially ordered alphabet.

    Compared at the first differing position; incomparable labels there make
    the words incomparable.  A proper prefix is less than its extension.
    """
    for a, b in zip(w1, w2):
        if a == b:
            continue
        if lp.less(a, b):
            return Ordering.LESS
        if lp.less(b, a):
            return Ordering.GREATER
        return Ordering.INCOMPARABLE
    if len(w1) == len(w2):
        return Ordering.EQUAL
    return Ordering.LESS if len(w1) < len(w2) else Ordering.GREATER


def is_increasing(lp: LabelPoset, word: Sequence[int]) -> bool:
    return all(lp.less(a, b) for a, b in zip(word, word[1:]))


def is_ascent_free(lp: LabelPoset, word: Sequence[int]) -> bool:
    return not any(lp.less(a, b) for a, b in zip(word, word[1:]))


@dataclass(frozen=True)
class ChainWord:
    """A saturated chain together with its word of labels."""

    chain: SaturatedChain
    word: tuple[int, ...]


class EdgeLabeling:
    """A map from the cover relations of a poset to a poset of labels."""

    __slots__ = ("poset", "label_poset", "label_of", "_chain_cache", "_cache_fill", "_ew")

    def __init__(
        self,
        poset: GradedPoset,
        label_poset: LabelPoset,
        label_of: dict[tuple[int, int], int],
    ) -> None:
        self.poset = poset
        self.label_poset = label_poset
        if set(label_of) != set(poset.covers):
            raise NotGradedError("every cover pair needs exactly one label")
        for lab in label_of.values():
            if not 0 <= lab < len(label_poset):
                raise NotGradedError(f"label index {lab} out of range")
        self.label_of = dict(label_of)
        self._chain_cache: dict[int, dict[int, list[tuple[int, ...]]]] = {}
        self._cache_fill = 0
        self._ew: Optional[Report] = None

    def word(self, elements: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            self.label_of[(a, b)] for a, b in zip(elements, elements[1:])
        )

    def chain_word(self, elements: Sequence[int]) -> ChainWord:
        chain = SaturatedChain(self.poset, tuple(elements))
        return ChainWord(chain, self.word(elements))

    def word_names(self, word: Sequence[int]) -> str:
        return "".join(self.label_poset.names[i] for i in word)

    def restrict_to(self, sub: GradedPoset) -> "EdgeLabeling":
        """The induced labeling on a subposet (matched by payload strings)."""
        label_of = {}
        for a, b in sub.covers:
            pa = self.poset.index(sub.payload(a))
            pb = self.poset.index(sub.payload(b))
            label_of[(a, b)] = self.label_of[(pa, pb)]
        return EdgeLabeling(sub, self.label_poset, label_of)

    # -- chain enumeration with caching ---------------------------------------

    def chains_by_top(self, bottom: int) -> dict[int, list[tuple[int, ...]]]:
        """Words of all saturated chains from ``bottom``, grouped by endpoint.

        Every saturated x-y chain of the ambient poset is a maximal chain of
        the interval [x, y], so the group at key y is exactly the maximal
        chain set of that interval.
        """
        cached = self._chain_cache.get(bottom)
        if cached is not None:
            return cached
        buckets: dict[int, list[tuple[int, ...]]] = {}
        count = 0
        for elems in self.poset.chains_from(bottom):
            buckets.setdefault(elems[-1], []).append(self.word(elems))
            count += 1
        if self._cache_fill + count <= DEFAULT_LIMITS.chain_cache_entries:
            self._chain_cache[bottom] = buckets
            self._cache_fill += count
        return buckets


def classify_chain(
    labeling: EdgeLabeling, chain: SaturatedChain | Sequence[int]
) -> dict[str, bool]:
    """Flags {'increasing', 'ascent_free'} for a saturated chain."""
    elements = chain.elements if isinstance(chain, SaturatedChain) else chain
    word = labeling.word(elements)
    lp = labeling.label_poset
    return {
        "increasing": is_increasing(lp, word),
        "ascent_free": is_ascent_free(lp, word),
    }


# -- reports -------------------------------------------------------------------


@dataclass
class Report:
    """Outcome of a labeling check, with at most one witness per failure class."""

    check: str
    passed: bool
    witnesses: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {"check": self.check, "verdict": "pass" if self.passed else "fail",
                   "witnesses": self.witnesses}
        payload.update(self.details)
        return json.dumps(payload, sort_keys=True)

    def __str__(self) -> str:
        head = f"[{'pass' if self.passed else 'FAIL'}] {self.check}"
        lines = [head]
        for w in self.witnesses:
            lines.append(f"    witness: {w}")
        for k, v in sorted(self.details.items()):
            lines.append(f"    {k}: {v}")
        return "\n".join(lines)


def _interval_payloads(labeling: EdgeLabeling, x: int, y: int) -> list[str]:
    p = labeling.poset
    return [p.payload(x), p.payload(y)]


def check_ER(labeling: EdgeLabeling) -> Report:
    """Every interval must have exactly one increasing maximal chain."""
    p = labeling.poset
    lp = labeling.label_poset
    for x in p.topo_order():
        buckets = labeling.chains_by_top(x)
        for y in sorted(buckets, key=lambda e: (p.rank(e), e)):
            if p.rank(y) - p.rank(x) < 2:
                continue  # rank <= 1 intervals trivially have one increasing chain
            inc = [w for w in buckets[y] if is_increasing(lp, w)]
            if len(inc) != 1:
                return Report(
                    "ER",
                    False,
                    [{
                        "kind": "increasing-chain-count",
                        "interval": _interval_payloads(labeling, x, y),
                        "count": len(inc),
                        "words": [labeling.word_names(w) for w in inc],
                    }],
                )
    return Report("ER", True)


def check_EL(labeling: EdgeLabeling) -> Report:
    """ER plus: the increasing chain lexicographically precedes all others."""
    er = check_ER(labeling)
    if not er.passed:
        return Report("EL", False, er.witnesses, {"failed_at": "ER"})
    p = labeling.poset
    lp = labeling.label_poset
    for x in p.topo_order():
        buckets = labeling.chains_by_top(x)
        for y in sorted(buckets, key=lambda e: (p.rank(e), e)):
            if p.rank(y) - p.rank(x) < 2:
                continue
            words = buckets[y]
            inc = next(w for w in words if is_increasing(lp, w))
            for w in words:
                if w == inc:
                    continue
                if lex_compare(lp, inc, w) is not Ordering.LESS:
                    return Report(
                        "EL",
                        False,
                        [{
                            "kind": "not-lex-first",
                            "interval": _interval_payloads(labeling, x, y),
                            "increasing": labeling.word_names(inc),
                            "competitor": labeling.word_names(w),
                            "relation": lex_compare(lp, inc, w).value,
                        }],
                    )
    return Report("EL", True)


def check_rank_two_switching(labeling: EdgeLabeling) -> Report:
    """In every rank-2 interval with increasing chain ab, demand a unique ba."""
    p = labeling.poset
    lp = labeling.label_poset
    for x in p.topo_order():
        buckets: dict[int, list[tuple[int, int]]] = {}
        for z in p.upper_covers(x):
            first = labeling.label_of[(x, z)]
            for y in p.upper_covers(z):
                buckets.setdefault(y, []).append((first, labeling.label_of[(z, y)]))
        for y in sorted(buckets):
            words = buckets[y]
            inc = [w for w in words if lp.less(w[0], w[1])]
            if len(inc) != 1:
                return Report(
                    "rank-two-switching",
                    False,
                    [{
                        "kind": "increasing-chain-count",
                        "interval": _interval_payloads(labeling, x, y),
                        "count": len(inc),
                    }],
                )
            a, b = inc[0]
            swapped = [w for w in words if w == (b, a)]
            if len(swapped) != 1:
                return Report(
                    "rank-two-switching",
                    False,
                    [{
                        "kind": "switched-chain-count",
                        "interval": _interval_payloads(labeling, x, y),
                        "increasing": labeling.word_names((a, b)),
                        "switched_count": len(swapped),
                    }],
                )
    return Report("rank-two-switching", True)


def check_ascent_free_injectivity(labeling: EdgeLabeling) -> Report:
    """No two distinct ascent-free maximal chains of an interval share a word."""
    p = labeling.poset
    lp = labeling.label_poset
    for x in p.topo_order():
        buckets = labeling.chains_by_top(x)
        for y in sorted(buckets, key=lambda e: (p.rank(e), e)):
            seen: set[tuple[int, ...]] = set()
            for w in buckets[y]:
                if not is_ascent_free(lp, w):
                    continue
                if w in seen:
                    return Report(
                        "ascent-free-injectivity",
                        False,
                        [{
                            "kind": "duplicate-word",
                            "interval": _interval_payloads(labeling, x, y),
                            "word": labeling.word_names(w),
                        }],
                    )
                seen.add(w)
    return Report("ascent-free-injectivity", True)


def check_EW(labeling: EdgeLabeling) -> Report:
    """ER + rank-two switching + ascent-free injectivity, aggregated."""
    if labeling._ew is not None:
        return labeling._ew
    parts = [
        check_ER(labeling),
        check_rank_two_switching(labeling),
        check_ascent_free_injectivity(labeling),
    ]
    passed = all(r.passed for r in parts)
    witnesses = [w for r in parts for w in r.witnesses]
    report = Report(
        "EW",
        passed,
        witnesses,
        {"parts": {r.check: ("pass" if r.passed else "fail") for r in parts}},
    )
    labeling._ew = report
    return report


def stanley_mobius_check(labeling: EdgeLabeling, all_intervals: bool = False) -> Report:
    """For an ER-labeling, mu(x) must equal +/- the ascent-free chain count.

    Checks every interval [0, x]; with ``all_intervals`` also every [x, y]
    (via induced subposets).  Requires that check_ER passes.
    """
    er = check_ER(labeling)
    if not er.passed:
        raise PreconditionError("stanley_mobius_check requires an ER-labeling")
    p = labeling.poset
    lp = labeling.label_poset
    mu = p.mobius_all()
    buckets = labeling.chains_by_top(p.zero())
    for x in sorted(p.elements(), key=lambda e: (p.rank(e), e)):
        count = sum(1 for w in buckets.get(x, []) if is_ascent_free(lp, w))
        expected = (-1) ** p.rank(x) * count
        if mu[x] != expected:
            return Report(
                "stanley-mobius",
                False,
                [{
                    "kind": "mobius-mismatch",
                    "interval": _interval_payloads(labeling, p.zero(), x),
                    "mobius": mu[x],
                    "ascent_free_chains": count,
                }],
            )
    if all_intervals:
        for x in p.topo_order():
            if x == p.zero():
                continue
            chains = labeling.chains_by_top(x)
            for y in sorted(chains, key=lambda e: (p.rank(e), e)):
                if y == x:
                    continue
                sub = p.interval(x, y)
                sub_mu = sub.mobius(sub.index(p.payload(y)))
                count = sum(1 for w in chains[y] if is_ascent_free(lp, w))
                if sub_mu != (-1) ** (p.rank(y) - p.rank(x)) * count:
                    return Report(
                        "stanley-mobius",
                        False,
                        [{
                            "kind": "mobius-mismatch",
                            "interval": _interval_payloads(labeling, x, y),
                            "mobius": sub_mu,
                            "ascent_free_chains": count,
                        }],
                    )
    return Report("stanley-mobius", True)


def dual_labeling(labeling: EdgeLabeling) -> EdgeLabeling:
    """The same labels on the order dual, over the dual label order.

    Defined only when the underlying poset has a unique maximum.
    """
    dual_poset = labeling.poset.order_dual()
    label_of = {(b, a): lab for (a, b), lab in labeling.label_of.items()}
    return EdgeLabeling(dual_poset, labeling.label_poset.dual(), label_of)


def check_EL_dual(labeling: EdgeLabeling) -> Report:
    """EL verdict for the dual labeling on the order dual.

    When the poset has several maximal elements its order dual has no minimum,
    so the check runs on the dual of every maximal interval [0, t]; every
    interval of the order dual sits inside one of those, which makes the
    aggregation equivalent to the direct check.
    """
    p = labeling.poset
    tops = p.maximal_elements()
    if len(tops) == 1:
        return check_EL(dual_labeling(labeling))
    zero = p.zero()
    for t in sorted(tops):
        sub = p.interval(zero, t)
        rep = check_EL(dual_labeling(labeling.restrict_to(sub)))
        if not rep.passed:
            rep.details["maximal_interval_top"] = p.payload(t)
            return Report("EL-dual", False, rep.witnesses, rep.details)
    return Report("EL-dual", True, details={"maximal_intervals_checked": len(tops)})
