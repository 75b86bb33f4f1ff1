"""Tree monomials, Lyndon-tree census by chain top, and left-comb bases.

Monomials are fully parenthesized strings over leaf labels and a binary
product; the two-product variants subscript the symbol.  Machine-readable
output uses "o", "o0", "o1"; display output uses "∘", "∘₀", "∘₁".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import DEFAULT_LIMITS
from .errors import LimitExceededError, PreconditionError
from .labeling import is_increasing
from .lyndon import (
    FLAVORS,
    POINTED,
    WEIGHTED,
    BicoloredForest,
    Leaf,
    Node,
    Tree,
    all_valid_trees,
    forest_to_chain,
)
from .partitions import (
    _check_n,
    build_pointed,
    build_weighted,
    label_lambda_bullet2,
    label_lambda_w,
)


@dataclass(frozen=True)
class Monomial:
    """A fully parenthesized product expression over distinct leaf labels."""

    expression: str

    def __str__(self) -> str:
        return self.expression


def _render(t: Tree, symbol_of) -> str:
    if isinstance(t, Leaf):
        return str(t.label)
    left = _render(t.left, symbol_of)
    right = _render(t.right, symbol_of)
    if t.color == 1:
        return f"({left}{symbol_of(t)}{right})"
    return f"({right}{symbol_of(t)}{left})"


def theta(t: Tree, machine: bool = False) -> Monomial:
    """The product monomial of a bicolored tree: left∘right when the root is
    colored 1 and right∘left when it is colored 0, recursively."""
    symbol = (lambda _v: "o") if machine else (lambda _v: "∘")
    body = _render(t, symbol)
    if isinstance(t, Node):
        body = body[1:-1]
    return Monomial(body)


def _comb_render(t: Tree, machine: bool) -> str:
    # subscripted products keep both orders textual: color is the subscript
    if isinstance(t, Leaf):
        return str(t.label)
    sym = (f"o{t.color}") if machine else ("∘₀" if t.color == 0 else "∘₁")
    return f"({_comb_render(t.left, machine)}{sym}{_comb_render(t.right, machine)})"


def left_comb(n: int, colors: Sequence[int]) -> Tree:
    """((1 ∘_{c1} 2) ∘_{c2} 3) ... ∘_{c_{n-1}} n as a bicolored tree."""
    if len(colors) != n - 1:
        raise PreconditionError("a left comb on n leaves has n-1 colors")
    t: Tree = Leaf(1)
    for k, c in zip(range(2, n + 1), colors):
        t = Node(t, Leaf(k), c)
    return t


def _step_colors(n: int) -> Iterator[tuple[int, ...]]:
    # 0...01...1 color words: i-1 zeros then ones, for i = 1..n
    for i in range(1, n + 1):
        yield tuple(0 if k < i else 1 for k in range(1, n))


def pbw_perm_basis(n: int, machine: bool = False) -> list[Monomial]:
    """The n left-comb monomials with a 0..0 1..1 color word, rendered via theta."""
    if n < 1:
        raise LimitExceededError("n must be at least 1")
    seen = {}
    for colors in _step_colors(n):
        m = theta(left_comb(n, colors), machine=machine)
        seen[m.expression] = m
    return [seen[k] for k in sorted(seen)]


def pbw_com2_basis(n: int, machine: bool = False) -> list[Monomial]:
    """The n left-comb monomials with subscripted products kept explicit."""
    if n < 1:
        raise LimitExceededError("n must be at least 1")
    out = []
    for colors in _step_colors(n):
        body = _comb_render(left_comb(n, colors), machine)
        if n > 1:
            body = body[1:-1]
        out.append(Monomial(body))
    return sorted(set(out), key=lambda m: m.expression)


def tlyn_trees(n: int, p: int, flavor: str, limits=DEFAULT_LIMITS) -> list[Tree]:
    """Single-tree forests of the flavor whose chain tops at [n] pointed at p.

    The chain is always read in the pointed partition poset, for both
    flavors; membership is decided by the point of the top element.
    """
    _check_n(n, limits.max_n_build)
    if not 1 <= p <= n:
        raise PreconditionError(f"point {p} outside 1..{n}")
    if flavor not in FLAVORS:
        raise PreconditionError(f"unknown flavor {flavor!r}")
    out = []
    for t in all_valid_trees(n, flavor):
        chain, word = forest_to_chain(BicoloredForest.of(t), flavor, strict=True)
        blocks = {g: ((g,), g) for g in range(1, n + 1)}
        for lab in word:
            (ma, pa), (mb, pb) = blocks[lab.a], blocks[lab.b]
            blocks[lab.a] = (tuple(sorted(ma + mb)), pa if lab.u == 1 else pb)
            del blocks[lab.b]
        ((_, point),) = blocks.values()
        if point == p:
            out.append(t)
    return out


def prelie_dimension_check(n: int, limits=DEFAULT_LIMITS) -> int:
    """Total census over tops; must agree between flavors (and equal n^(n-1))."""
    totals = {}
    for flavor in FLAVORS:
        totals[flavor] = sum(len(tlyn_trees(n, p, flavor, limits)) for p in range(1, n + 1))
    if totals[POINTED] != totals[WEIGHTED]:
        raise PreconditionError(
            f"census mismatch between flavors: {totals}"
        )
    return totals[POINTED]


def increasing_chain_census(n: int, flavor: str, limits=DEFAULT_LIMITS) -> dict[str, int]:
    """Increasing maximal-chain counts per maximal element.

    Uses the weighted poset with its merge labeling for flavor "weighted"
    and the pointed poset with the weighted-order labeling for "pointed";
    both are EL, so each maximal interval must contribute exactly one.
    """
    if flavor == WEIGHTED:
        p = build_weighted(n, limits)
        labeling = label_lambda_w(p)
    elif flavor == POINTED:
        p = build_pointed(n, limits)
        labeling = label_lambda_bullet2(p)
    else:
        raise PreconditionError(f"unknown flavor {flavor!r}")
    lp = labeling.label_poset
    counts: dict[str, int] = {}
    buckets = labeling.chains_by_top(p.zero())
    for top in sorted(p.maximal_elements()):
        words = buckets.get(top, [])
        counts[p.payload(top)] = sum(1 for w in words if is_increasing(lp, w))
    return counts
