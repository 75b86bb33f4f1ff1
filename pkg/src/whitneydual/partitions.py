"""Weighted/pointed partition posets, rooted spanning forests, and labelings.

Canonical element encodings (also the JSON payloads):
    weighted  block {1,3} with weight 1      ->  "13^1",  blocks joined by "/"
    pointed   block {1,3} pointed at 3       ->  "1~3"    (tilde before the point)
    plain     block {1,3}                    ->  "13"
    forest    tree with root 1, edge {1,2}   ->  "1<1-2>"
Blocks and trees are ordered by their minima, elements ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .config import DEFAULT_LIMITS
from .errors import LimitExceededError, NotGradedError, PreconditionError
from .labeling import EdgeLabeling, LabelPoset
from .poset import GradedPoset


# -- element types ---------------------------------------------------------------


@dataclass(frozen=True)
class PairLabel:
    """The label (a,b)^u attached to a merge of blocks with minima a < b."""

    a: int
    b: int
    u: int

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise NotGradedError(f"label ({self.a},{self.b}) needs a < b")
        if self.u not in (0, 1):
            raise NotGradedError("label color must be 0 or 1")

    def __str__(self) -> str:
        return f"({self.a},{self.b})^{self.u}"


@dataclass(frozen=True)
class WeightedPartition:
    """A set partition with an integer weight 0..|B|-1 on each block."""

    blocks: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for members, weight in self.blocks:
            if not 0 <= weight <= len(members) - 1:
                raise NotGradedError(f"weight {weight} out of range for block {members}")
            if tuple(sorted(members)) != members:
                raise NotGradedError("block members must be sorted")
            if seen & set(members):
                raise NotGradedError("blocks must be disjoint")
            seen |= set(members)
        mins = [b[0][0] for b in self.blocks]
        if mins != sorted(mins):
            raise NotGradedError("blocks must be sorted by minimum")

    @classmethod
    def bottom(cls, ground: Sequence[int]) -> "WeightedPartition":
        return cls(tuple(((g,), 0) for g in sorted(ground)))

    def render(self) -> str:
        return "/".join(
            "".join(str(v) for v in members) + f"^{weight}"
            for members, weight in self.blocks
        )

    def merges(self) -> Iterator[tuple["WeightedPartition", PairLabel]]:
        """All single-merge covers, with their labels."""
        for i, j in combinations(range(len(self.blocks)), 2):
            (ma, wa), (mb, wb) = self.blocks[i], self.blocks[j]
            merged = tuple(sorted(ma + mb))
            rest = [self.blocks[k] for k in range(len(self.blocks)) if k not in (i, j)]
            for u in (0, 1):
                blocks = tuple(sorted(rest + [(merged, wa + wb + u)], key=lambda b: b[0][0]))
                yield WeightedPartition(blocks), PairLabel(ma[0], mb[0], u)


@dataclass(frozen=True)
class PointedPartition:
    """A set partition with a distinguished element in each block."""

    blocks: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for members, point in self.blocks:
            if point not in members:
                raise NotGradedError(f"point {point} not in block {members}")
            if tuple(sorted(members)) != members:
                raise NotGradedError("block members must be sorted")
            if seen & set(members):
                raise NotGradedError("blocks must be disjoint")
            seen |= set(members)
        mins = [b[0][0] for b in self.blocks]
        if mins != sorted(mins):
            raise NotGradedError("blocks must be sorted by minimum")

    @classmethod
    def bottom(cls, ground: Sequence[int]) -> "PointedPartition":
        return cls(tuple(((g,), g) for g in sorted(ground)))

    def render(self) -> str:
        return "/".join(
            "".join(("~" if v == point else "") + str(v) for v in members)
            for members, point in self.blocks
        )

    def merges(self) -> Iterator[tuple["PointedPartition", PairLabel]]:
        """All single-merge covers; u = 1 keeps the min block's point."""
        for i, j in combinations(range(len(self.blocks)), 2):
            (ma, pa), (mb, pb) = self.blocks[i], self.blocks[j]
            merged = tuple(sorted(ma + mb))
            rest = [self.blocks[k] for k in range(len(self.blocks)) if k not in (i, j)]
            for u, point in ((1, pa), (0, pb)):
                blocks = tuple(sorted(rest + [(merged, point)], key=lambda b: b[0][0]))
                yield PointedPartition(blocks), PairLabel(ma[0], mb[0], u)


@dataclass(frozen=True)
class SetPartition:
    """A plain set partition, blocks sorted by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def render(self) -> str:
        return "/".join("".join(str(v) for v in members) for members in self.blocks)

    @classmethod
    def bottom(cls, ground: Sequence[int]) -> "SetPartition":
        return cls(tuple((g,) for g in sorted(ground)))

    def merges(self) -> Iterator[tuple["SetPartition", PairLabel]]:
        for i, j in combinations(range(len(self.blocks)), 2):
            ma, mb = self.blocks[i], self.blocks[j]
            merged = tuple(sorted(ma + mb))
            rest = [self.blocks[k] for k in range(len(self.blocks)) if k not in (i, j)]
            blocks = tuple(sorted(rest + [merged], key=lambda b: b[0]))
            yield SetPartition(blocks), PairLabel(ma[0], mb[0], 0)


@dataclass(frozen=True)
class RootedTree:
    """A rooted labeled tree given by its vertex set, edge set, and root."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    root: int

    def min_vertex(self) -> int:
        return self.vertices[0]

    def render(self) -> str:
        inner = ",".join(f"{a}-{b}" for a, b in self.edges)
        return f"{self.root}<{inner}>"


@dataclass(frozen=True)
class RootedForest:
    """A spanning forest of rooted trees, trees sorted by minimal vertex."""

    trees: tuple[RootedTree, ...]

    @classmethod
    def bottom(cls, ground: Sequence[int]) -> "RootedForest":
        return cls(tuple(RootedTree((g,), (), g) for g in sorted(ground)))

    def render(self) -> str:
        return "/".join(t.render() for t in self.trees)

    def merges(self) -> Iterator[tuple["RootedForest", PairLabel]]:
        """Join two trees by an edge between their roots; either root survives."""
        for i, j in combinations(range(len(self.trees)), 2):
            t1, t2 = self.trees[i], self.trees[j]
            edge = tuple(sorted((t1.root, t2.root)))
            vertices = tuple(sorted(t1.vertices + t2.vertices))
            edges = tuple(sorted(t1.edges + t2.edges + (edge,)))
            rest = [self.trees[k] for k in range(len(self.trees)) if k not in (i, j)]
            for u, root in ((1, t1.root), (0, t2.root)):
                trees = tuple(sorted(rest + [RootedTree(vertices, edges, root)],
                                     key=lambda t: t.min_vertex()))
                yield RootedForest(trees), PairLabel(t1.min_vertex(), t2.min_vertex(), u)


# -- poset construction -------------------------------------------------------------


def _closure_poset(bottom) -> GradedPoset:
    """Breadth-first closure from the bottom element under .merges()."""
    payloads = [bottom.render()]
    objects = [bottom]
    index = {payloads[0]: 0}
    covers: list[tuple[int, int]] = []
    level = [bottom]
    while True:
        produced: dict[str, object] = {}
        edges: list[tuple[int, str]] = []
        for obj in level:
            src = index[obj.render()]
            for succ, _label in obj.merges():
                key = succ.render()
                produced.setdefault(key, succ)
                edges.append((src, key))
        if not produced:
            break
        for key in sorted(produced):
            index[key] = len(payloads)
            payloads.append(key)
            objects.append(produced[key])
        covers.extend((src, index[key]) for src, key in edges)
        level = [produced[key] for key in sorted(produced)]
    return GradedPoset(payloads, covers, objects)


def _check_n(n: int, limit: int) -> None:
    if not 1 <= n <= limit:
        raise LimitExceededError(f"n={n} outside allowed range 1..{limit}")


def build_weighted(n: int, limits=DEFAULT_LIMITS) -> GradedPoset:
    """The poset of weighted partitions of [n]."""
    _check_n(n, limits.max_n_build)
    return build_weighted_on(range(1, n + 1))


def build_weighted_on(ground: Sequence[int]) -> GradedPoset:
    return _closure_poset(WeightedPartition.bottom(ground))


def build_pointed(n: int, limits=DEFAULT_LIMITS) -> GradedPoset:
    """The poset of pointed partitions of [n]."""
    _check_n(n, limits.max_n_build)
    return build_pointed_on(range(1, n + 1))


def build_pointed_on(ground: Sequence[int]) -> GradedPoset:
    return _closure_poset(PointedPartition.bottom(ground))


def build_partition_lattice(n: int, limits=DEFAULT_LIMITS) -> GradedPoset:
    """The lattice of set partitions of [n] ordered by refinement."""
    _check_n(n, max(limits.max_n_build, 7))
    return _closure_poset(SetPartition.bottom(range(1, n + 1)))


def build_spanning_forest_poset(n: int, limits=DEFAULT_LIMITS) -> GradedPoset:
    """Rooted spanning forests of [n]; covers merge two trees at their roots."""
    _check_n(n, limits.max_n_build)
    return _closure_poset(RootedForest.bottom(range(1, n + 1)))


# -- label posets -------------------------------------------------------------------


def _pair_labels(ground: Sequence[int]) -> list[PairLabel]:
    g = sorted(ground)
    return [PairLabel(a, b, u) for a, b in combinations(g, 2) for u in (0, 1)]


def build_label_poset_w(n_or_ground) -> LabelPoset:
    """Ordinal sum over a of the grids {(a,b)^u : b > a} with product order."""
    ground = range(1, n_or_ground + 1) if isinstance(n_or_ground, int) else n_or_ground
    labels = _pair_labels(ground)
    names = [str(l) for l in labels]
    pairs = []
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            if i == j:
                continue
            if x.a < y.a or (x.a == y.a and x.b <= y.b and x.u <= y.u):
                pairs.append((i, j))
    return LabelPoset.from_pairs(names, pairs, transitive_close=False)


def build_label_poset_bullet(n_or_ground) -> LabelPoset:
    """Ordinal sum over a of (antichain of (a,b)^0) below (chain of (a,b)^1)."""
    ground = range(1, n_or_ground + 1) if isinstance(n_or_ground, int) else n_or_ground
    labels = _pair_labels(ground)
    names = [str(l) for l in labels]
    pairs = []
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            if i == j:
                continue
            if x.a < y.a:
                pairs.append((i, j))
            elif x.a == y.a:
                if x.u < y.u or (x.u == y.u == 1 and x.b < y.b):
                    pairs.append((i, j))
    return LabelPoset.from_pairs(names, pairs, transitive_close=False)


# -- concrete labelings --------------------------------------------------------------


def _merged_blocks(lower, upper):
    """The two blocks of ``lower`` merged in the cover, and the new block."""
    lower_set = set(lower.blocks)
    upper_set = set(upper.blocks)
    gone = sorted(lower_set - upper_set, key=lambda b: b[0][0])
    new = list(upper_set - lower_set)
    if len(gone) != 2 or len(new) != 1:
        raise NotGradedError("cover does not merge exactly two blocks")
    return gone[0], gone[1], new[0]


def _weighted_label(lower: WeightedPartition, upper: WeightedPartition) -> PairLabel:
    if not isinstance(lower, WeightedPartition):
        raise PreconditionError("this labeling is defined on weighted partition posets")
    (ma, wa), (mb, wb), (_, wn) = _merged_blocks(lower, upper)
    u = wn - wa - wb
    if u not in (0, 1):
        raise NotGradedError("weight increment must be 0 or 1")
    return PairLabel(ma[0], mb[0], u)


def _pointed_label(lower: PointedPartition, upper: PointedPartition) -> PairLabel:
    if not isinstance(lower, PointedPartition):
        raise PreconditionError("this labeling is defined on pointed partition posets")
    (ma, pa), (mb, pb), (_, pn) = _merged_blocks(lower, upper)
    if pn == pa:
        u = 1
    elif pn == pb:
        u = 0
    else:
        raise NotGradedError("new point must come from one of the merged blocks")
    return PairLabel(ma[0], mb[0], u)


def _label_poset_ground(p: GradedPoset, cls) -> list[int]:
    bottom = p.object(p.zero())
    if not isinstance(bottom, cls):
        raise PreconditionError(
            f"this labeling needs a poset of {cls.__name__} elements, "
            f"got {type(bottom).__name__}"
        )
    return [members[0] for members, _ in bottom.blocks]


def _labeling_from(p: GradedPoset, lp: LabelPoset, extract) -> EdgeLabeling:
    label_of = {}
    for a, b in p.covers:
        label_of[(a, b)] = lp.index(str(extract(p.object(a), p.object(b))))
    return EdgeLabeling(p, lp, label_of)


def label_lambda_w(p: GradedPoset) -> EdgeLabeling:
    """(min A, min B)^u on each merge of a weighted partition poset."""
    ground = _label_poset_ground(p, WeightedPartition)
    return _labeling_from(p, build_label_poset_w(ground), _weighted_label)


def label_lambda_bullet(p: GradedPoset) -> EdgeLabeling:
    """(min A, min B)^u on each merge of a pointed partition poset."""
    ground = _label_poset_ground(p, PointedPartition)
    return _labeling_from(p, build_label_poset_bullet(ground), _pointed_label)


def label_lambda_bullet2(p: GradedPoset) -> EdgeLabeling:
    """Same label map as label_lambda_bullet, over the weighted label order."""
    ground = _label_poset_ground(p, PointedPartition)
    return _labeling_from(p, build_label_poset_w(ground), _pointed_label)


def label_lambda_tilde(p: GradedPoset) -> EdgeLabeling:
    """The two-coordinate labeling of a pointed partition poset.

    A u-merge of blocks with minima a < b on a lower element with m blocks is
    labeled (b, a+n-m) when u = 0 and (b, b+n-m) when u = 1; labels compare in
    the lexicographic (total) order.  Kept as the known non-example: it fails
    the unique-increasing-chain requirement.
    """
    n = len(_label_poset_ground(p, PointedPartition))
    raw: dict[tuple[int, int], tuple[int, int]] = {}
    for a, b in p.covers:
        lower, upper = p.object(a), p.object(b)
        lab = _pointed_label(lower, upper)
        m = len(lower.blocks)
        second = (lab.a if lab.u == 0 else lab.b) + n - m
        raw[(a, b)] = (lab.b, second)
    used = sorted(set(raw.values()))
    lp = LabelPoset.total_order([f"({x},{y})" for x, y in used])
    index = {pair: i for i, pair in enumerate(used)}
    return EdgeLabeling(p, lp, {cov: index[pair] for cov, pair in raw.items()})


LABELING_BUILDERS = {
    "lambda_w": label_lambda_w,
    "lambda_bullet": label_lambda_bullet,
    "lambda_bullet2": label_lambda_bullet2,
    "lambda_tilde": label_lambda_tilde,
}

FAMILY_BUILDERS = {
    "weighted": build_weighted,
    "pointed": build_pointed,
    "partition": build_partition_lattice,
    "sf": build_spanning_forest_poset,
}


# -- closed-form increasing words ------------------------------------------------------


def closed_form_increasing_word(n: int, p: int, variant: str) -> tuple[str, ...]:
    """Predicted word of the unique increasing chain of [0, [n]^p].

    ``variant`` is "bullet" (pointed label order) or "bullet2" (weighted label
    order); the two differ for 1 < p <= n.
    """
    if not 1 <= p <= n:
        raise PreconditionError(f"point {p} outside 1..{n}")
    if variant not in ("bullet", "bullet2"):
        raise PreconditionError(f"unknown variant {variant!r}")
    if p == 1:
        word = [PairLabel(1, k, 1) for k in range(2, n + 1)]
    elif variant == "bullet":
        word = [PairLabel(1, p, 0)]
        word += [PairLabel(1, k, 1) for k in range(2, n + 1) if k != p]
    else:
        word = [PairLabel(1, k, 0) for k in range(2, p + 1)]
        word += [PairLabel(1, k, 1) for k in range(p + 1, n + 1)]
    return tuple(str(l) for l in word)


# -- upper filter collapse -------------------------------------------------------------


def phi_filter_isomorphism(p: GradedPoset, alpha: int):
    """Collapse each block of ``alpha`` to its minimum on the upper filter.

    Returns (filter_poset, target_poset, mapping) where ``mapping`` sends
    filter elements to elements of the pointed partition poset on the block
    minima.  Verifies that the map is a bijection preserving covers and merge
    labels, and raises NotGradedError otherwise.
    """
    alpha_obj = p.object(alpha)
    if not isinstance(alpha_obj, PointedPartition):
        raise PreconditionError("phi_filter_isomorphism needs a pointed partition poset")
    mins = [members[0] for members, _ in alpha_obj.blocks]
    owner = {v: members[0] for members, _ in alpha_obj.blocks for v in members}
    target = build_pointed_on(mins)
    filt = p.upper_filter(alpha)

    def collapse(obj: PointedPartition) -> PointedPartition:
        blocks = []
        for members, point in obj.blocks:
            image = tuple(sorted({owner[v] for v in members}))
            blocks.append((image, owner[point]))
        return PointedPartition(tuple(sorted(blocks, key=lambda b: b[0][0])))

    mapping = {}
    for x in filt.elements():
        mapping[x] = target.index(collapse(filt.object(x)).render())
    if len(set(mapping.values())) != len(target):
        raise NotGradedError("block collapse is not a bijection onto the target")
    if len(filt.covers) != len(target.covers):
        raise NotGradedError("cover counts differ; collapse is not an isomorphism")
    target_covers = set(target.covers)
    for a, b in filt.covers:
        fa, fb = mapping[a], mapping[b]
        if (fa, fb) not in target_covers:
            raise NotGradedError("block collapse does not preserve covers")
        src = _pointed_label(filt.object(a), filt.object(b))
        dst = _pointed_label(target.object(fa), target.object(fb))
        if str(src) != str(dst):
            raise NotGradedError(
                f"label {src} maps to {dst}; collapse does not preserve labels"
            )
    return filt, target, mapping
