"""Exact poset isomorphism by invariant refinement plus backtracking.

The initial coloring of each element is (rank, up-degree, down-degree,
Möbius value); colors are then refined by the multisets of neighbor colors
until stable, and a backtracking search maps color class by color class.
Deterministic (ties broken by element index) and exact, never probabilistic.
A configurable node budget guards against pathological inputs.
"""

from __future__ import annotations

from typing import Optional

from .config import DEFAULT_LIMITS
from .errors import BudgetExhaustedError
from .poset import GradedPoset


def _refine(p: GradedPoset, colors: list[int]) -> list[int]:
    """Iterate neighborhood color refinement to a fixpoint."""
    while True:
        sig = [
            (
                colors[x],
                tuple(sorted(colors[y] for y in p.upper_covers(x))),
                tuple(sorted(colors[y] for y in p.lower_covers(x))),
            )
            for x in p.elements()
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def _initial_colors(p: GradedPoset) -> list[int]:
    mu = p.mobius_all()
    sig = [
        (p.rank(x), len(p.upper_covers(x)), len(p.lower_covers(x)), mu[x])
        for x in p.elements()
    ]
    palette = {s: i for i, s in enumerate(sorted(set(sig)))}
    return [palette[s] for s in sig]


def are_isomorphic(
    p: GradedPoset,
    q: GradedPoset,
    node_budget: int = DEFAULT_LIMITS.iso_node_budget,
) -> Optional[dict[int, int]]:
    """A rank- and cover-preserving bijection P -> Q, or None if none exists.

    Raises BudgetExhaustedError if the search exceeds ``node_budget`` nodes.
    """
    if len(p) != len(q):
        return None
    cp = _refine(p, _initial_colors(p))
    cq = _refine(q, _initial_colors(q))
    if sorted(cp) != sorted(cq):
        return None

    classes_q: dict[int, list[int]] = {}
    for y in q.elements():
        classes_q.setdefault(cq[y], []).append(y)

    # map small color classes first; index order inside a class
    order = sorted(p.elements(), key=lambda x: (len(classes_q[cp[x]]), cp[x], x))
    mapping: dict[int, int] = {}
    used = [False] * len(q)
    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        x = order[i]
        for y in classes_q[cp[x]]:
            if used[y]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise BudgetExhaustedError(
                    f"isomorphism search exceeded {node_budget} nodes"
                )
            ok = True
            for u in p.upper_covers(x):
                if u in mapping and mapping[u] not in q.upper_covers(y):
                    ok = False
                    break
            if ok:
                for d in p.lower_covers(x):
                    if d in mapping and mapping[d] not in q.lower_covers(y):
                        ok = False
                        break
            if ok:
                mapping[x] = y
                used[y] = True
                if extend(i + 1):
                    return True
                del mapping[x]
                used[y] = False
        return False

    if not extend(0):
        return None
    # equal color multisets plus per-pair cover checks make the map a poset
    # isomorphism: cover counts match globally, so no cover can be missed
    assert all(
        (mapping[a], mapping[b]) in set(q.covers) for a, b in p.covers
    )
    return dict(mapping)
