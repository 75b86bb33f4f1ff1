"""Finite graded posets with a minimum, stored as Hasse diagrams.

Elements are dense integer indices; each index carries an opaque payload
string (and optionally a payload object) kept in a side table so that the
poset algorithms never inspect payloads.  All instances are immutable after
construction; derived data (reachability bitsets, Möbius values) is cached
lazily.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Optional, Sequence

from .errors import ElementNotFoundError, NotGradedError


@dataclass(frozen=True)
class SaturatedChain:
    """A chain x_0 < x_1 < ... < x_k where consecutive entries are covers."""

    poset: "GradedPoset"
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        for lo, hi in zip(self.elements, self.elements[1:]):
            if hi not in self.poset.upper_covers(lo):
                raise NotGradedError(f"{lo} -> {hi} is not a cover relation")

    def __len__(self) -> int:
        return len(self.elements) - 1

    def payloads(self) -> tuple[str, ...]:
        return tuple(self.poset.payload(i) for i in self.elements)


class GradedPoset:
    """Finite graded poset with a unique minimum, given by its cover relations.

    Validates on construction: the cover digraph is acyclic and transitively
    reduced, ranks (longest paths from the unique source) increase by exactly
    one along covers, and every element is reachable from the minimum.
    Non-reduced or non-graded input is rejected, never repaired.
    """

    __slots__ = (
        "payloads_",
        "objects",
        "covers",
        "_up",
        "_down",
        "_rank",
        "_index",
        "_zero",
        "_down_bits",
        "_mu",
    )

    def __init__(
        self,
        payloads: Sequence[str],
        covers: Iterable[tuple[int, int]],
        objects: Optional[Sequence[Any]] = None,
    ) -> None:
        self.payloads_ = tuple(payloads)
        n = len(self.payloads_)
        if n == 0:
            raise NotGradedError("poset must be nonempty")
        if len(set(self.payloads_)) != n:
            raise NotGradedError("payload strings must be distinct")
        self.objects = tuple(objects) if objects is not None else None
        if self.objects is not None and len(self.objects) != n:
            raise NotGradedError("payload side table has wrong length")

        cov = sorted(set((int(a), int(b)) for a, b in covers))
        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        for a, b in cov:
            if not (0 <= a < n and 0 <= b < n):
                raise ElementNotFoundError(f"cover ({a},{b}) out of range")
            if a == b:
                raise NotGradedError(f"self-cover at {a}")
            up[a].append(b)
            down[b].append(a)
        self.covers = tuple(cov)
        self._up = tuple(tuple(v) for v in up)
        self._down = tuple(tuple(v) for v in down)
        self._index = {p: i for i, p in enumerate(self.payloads_)}
        self._rank = self._compute_ranks()
        self._zero = self._rank.index(0)
        self._down_bits: Optional[list[int]] = None
        self._mu: Optional[tuple[int, ...]] = None
        self._validate()

    # -- construction helpers -------------------------------------------------

    def _compute_ranks(self) -> tuple[int, ...]:
        n = len(self.payloads_)
        indeg = [len(self._down[i]) for i in range(n)]
        sources = [i for i in range(n) if indeg[i] == 0]
        if len(sources) != 1:
            raise NotGradedError(f"expected a unique minimal element, found {len(sources)}")
        rank = [0] * n
        queue = list(sources)
        seen = 0
        while queue:
            x = queue.pop()
            seen += 1
            for y in self._up[x]:
                rank[y] = max(rank[y], rank[x] + 1)
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if seen != n:
            raise NotGradedError("cover digraph is cyclic or disconnected from the minimum")
        return tuple(rank)

    def _validate(self) -> None:
        for a, b in self.covers:
            if self._rank[b] != self._rank[a] + 1:
                raise NotGradedError(
                    f"cover {self.payloads_[a]} -> {self.payloads_[b]} spans ranks "
                    f"{self._rank[a]} -> {self._rank[b]}; poset is not graded"
                )
        # transitive reduction: no cover may be implied by a longer path
        bits = self.down_bits()
        for a, b in self.covers:
            for z in self._up[a]:
                if z != b and (bits[b] >> z) & 1:
                    raise NotGradedError(
                        f"cover {self.payloads_[a]} -> {self.payloads_[b]} is implied "
                        f"by a path through {self.payloads_[z]}; input is not transitively reduced"
                    )

    # -- basic queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.payloads_)

    def __repr__(self) -> str:
        return f"GradedPoset(|P|={len(self)}, rank={self.max_rank()})"

    def payload(self, x: int) -> str:
        self._check(x)
        return self.payloads_[x]

    def object(self, x: int) -> Any:
        self._check(x)
        if self.objects is None:
            return self.payloads_[x]
        return self.objects[x]

    def index(self, payload: str) -> int:
        try:
            return self._index[payload]
        except KeyError:
            raise ElementNotFoundError(f"no element with payload {payload!r}") from None

    def elements(self) -> range:
        return range(len(self.payloads_))

    def zero(self) -> int:
        return self._zero

    def rank(self, x: int) -> int:
        self._check(x)
        return self._rank[x]

    def max_rank(self) -> int:
        return max(self._rank)

    def upper_covers(self, x: int) -> tuple[int, ...]:
        self._check(x)
        return self._up[x]

    def lower_covers(self, x: int) -> tuple[int, ...]:
        self._check(x)
        return self._down[x]

    def rank_level(self, k: int) -> list[int]:
        return [x for x in self.elements() if self._rank[x] == k]

    def maximal_elements(self) -> list[int]:
        return [x for x in self.elements() if not self._up[x]]

    def _check(self, x: int) -> None:
        if not (isinstance(x, int) and 0 <= x < len(self.payloads_)):
            raise ElementNotFoundError(f"unknown element {x!r}")

    # -- order relation ---------------------------------------------------------

    def down_bits(self) -> list[int]:
        """Bitmask per element x of all y with y <= x (computed once)."""
        if self._down_bits is None:
            bits = [0] * len(self.payloads_)
            for x in self.topo_order():
                m = 1 << x
                for y in self._down[x]:
                    m |= bits[y]
                bits[x] = m
            self._down_bits = bits
        return self._down_bits

    def leq(self, x: int, y: int) -> bool:
        self._check(x)
        self._check(y)
        return bool((self.down_bits()[y] >> x) & 1)

    def topo_order(self) -> list[int]:
        """Elements sorted by rank, then by index; a linear extension."""
        return sorted(self.elements(), key=lambda x: (self._rank[x], x))

    # -- Möbius and Whitney numbers ----------------------------------------------

    def mobius_all(self) -> tuple[int, ...]:
        """One-variable Möbius value mu(0,x) for every x."""
        if self._mu is None:
            bits = self.down_bits()
            mu = [0] * len(self.payloads_)
            for x in self.topo_order():
                if x == self._zero:
                    mu[x] = 1
                    continue
                total = 0
                m = bits[x] & ~(1 << x)
                while m:
                    low = m & -m
                    total += mu[low.bit_length() - 1]
                    m ^= low
                mu[x] = -total
            self._mu = tuple(mu)
        return self._mu

    def mobius(self, x: int) -> int:
        self._check(x)
        return self.mobius_all()[x]

    def whitney_first(self) -> tuple[int, ...]:
        """w_k = sum of mu over the rank-k level, k = 0..max rank."""
        mu = self.mobius_all()
        w = [0] * (self.max_rank() + 1)
        for x in self.elements():
            w[self._rank[x]] += mu[x]
        return tuple(w)

    def whitney_second(self) -> tuple[int, ...]:
        """W_k = number of elements of rank k, k = 0..max rank."""
        w = [0] * (self.max_rank() + 1)
        for x in self.elements():
            w[self._rank[x]] += 1
        return tuple(w)

    # -- subposets and duals --------------------------------------------------------

    def interval(self, x: int, y: int) -> "GradedPoset":
        """The induced subposet on {z : x <= z <= y}, with x as its minimum."""
        self._check(x)
        self._check(y)
        if not self.leq(x, y):
            raise ElementNotFoundError(
                f"{self.payloads_[x]} is not below {self.payloads_[y]}"
            )
        up = self._reach_up(x)
        members = sorted(z for z in up if self.leq(z, y))
        return self._induced(members)

    def upper_filter(self, x: int) -> "GradedPoset":
        """The principal upper filter {y : y >= x} as a poset with minimum x."""
        self._check(x)
        members = sorted(self._reach_up(x))
        return self._induced(members)

    def _reach_up(self, x: int) -> set[int]:
        seen = {x}
        stack = [x]
        while stack:
            z = stack.pop()
            for w in self._up[z]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def _induced(self, members: list[int]) -> "GradedPoset":
        pos = {m: i for i, m in enumerate(members)}
        covers = [
            (pos[a], pos[b]) for a, b in self.covers if a in pos and b in pos
        ]
        objs = None if self.objects is None else [self.objects[m] for m in members]
        return GradedPoset([self.payloads_[m] for m in members], covers, objs)

    def order_dual(self) -> "GradedPoset":
        """Covers reversed; defined only when the poset has a unique maximum."""
        tops = self.maximal_elements()
        if len(tops) != 1:
            raise NotGradedError(
                f"order dual needs a unique maximum, found {len(tops)} maximal elements"
            )
        covers = [(b, a) for a, b in self.covers]
        return GradedPoset(self.payloads_, covers, self.objects)

    # -- chains -------------------------------------------------------------------

    def saturated_chains(self, x: int, y: int) -> Iterator[tuple[int, ...]]:
        """All saturated chains from x to y, in depth-first index order."""
        self._check(x)
        self._check(y)
        if not self.leq(x, y):
            return
        bits = self.down_bits()
        target_bits = bits[y]

        def walk(prefix: list[int]) -> Iterator[tuple[int, ...]]:
            z = prefix[-1]
            if z == y:
                yield tuple(prefix)
                return
            for w in self._up[z]:
                if (target_bits >> w) & 1:
                    prefix.append(w)
                    yield from walk(prefix)
                    prefix.pop()

        yield from walk([x])

    def chains_from(self, x: int) -> Iterator[tuple[int, ...]]:
        """All saturated chains starting at x (any endpoint), depth-first."""
        self._check(x)

        def walk(prefix: list[int]) -> Iterator[tuple[int, ...]]:
            yield tuple(prefix)
            for w in self._up[prefix[-1]]:
                prefix.append(w)
                yield from walk(prefix)
                prefix.pop()

        yield from walk([x])


def is_whitney_dual(p: GradedPoset, q: GradedPoset) -> bool:
    """True iff |w_k(P)| = W_k(Q) and |w_k(Q)| = W_k(P) for all k."""
    wp = [abs(v) for v in p.whitney_first()]
    wq = [abs(v) for v in q.whitney_first()]
    sp = list(p.whitney_second())
    sq = list(q.whitney_second())
    size = max(len(wp), len(wq), len(sp), len(sq))
    pad = lambda s: s + [0] * (size - len(s))
    return pad(wp) == pad(sq) and pad(wq) == pad(sp)


def is_whitney_twin(p: GradedPoset, q: GradedPoset) -> bool:
    """True iff w_k(P) = w_k(Q) and W_k(P) = W_k(Q) for all k."""
    wp, wq = list(p.whitney_first()), list(q.whitney_first())
    sp, sq = list(p.whitney_second()), list(q.whitney_second())
    size = max(len(wp), len(wq))
    pad = lambda s: s + [0] * (size - len(s))
    return pad(wp) == pad(wq) and pad(sp) == pad(sq)
