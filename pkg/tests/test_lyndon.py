"""Bicolored forests: predicates, bijections, merges, and the forest posets."""

from __future__ import annotations

from math import comb

import pytest

from whitneydual import (
    BicoloredForest,
    InvalidForestError,
    InvalidMergeError,
    Leaf,
    Node,
    PairLabel,
    are_isomorphic,
    build_flyn,
    chain_to_forest,
    construct_R,
    forest_to_chain,
    is_bicolored_lyndon,
    is_lyndon_vertex,
    is_normalized,
    is_pointed_lyndon,
    label_lambda_w,
    reverse_minimal_extension,
    u_merge,
)
from whitneydual.lyndon import POINTED, WEIGHTED, all_valid_forests


def nine_leaf_tree() -> Node:
    """The running 9-leaf example: vertices numbered 1..8 bottom-up."""
    v1 = Node(Leaf(6), Leaf(7), 1)
    v2 = Node(Leaf(5), Leaf(8), 1)
    v3 = Node(Leaf(4), v1, 1)
    v4 = Node(Leaf(3), v3, 0)
    v5 = Node(Leaf(2), v2, 0)
    v6 = Node(Leaf(1), Leaf(9), 1)
    v7 = Node(v6, v5, 1)
    v8 = Node(v7, v4, 0)
    return v8


def test_valency():
    t = nine_leaf_tree()
    assert Leaf(7).valency == 7
    assert t.valency == 1
    v5 = t.left.right  # subtree on {2,5,8}
    assert sorted(l for l in [2, 5, 8]) == sorted(
        [v5.left.label, v5.right.left.label, v5.right.right.label]
    )
    assert v5.valency == 2


def test_lyndon_vertices():
    t = nine_leaf_tree()
    v7, v8 = t.left, t
    assert is_lyndon_vertex(v7)  # R(L(v7)) is the leaf 9, valency 9 > 2
    assert not is_lyndon_vertex(v8)  # 2 is not greater than 3
    assert is_lyndon_vertex(Node(Leaf(1), Leaf(2), 0))


def test_reverse_minimal_extension_order():
    t = nine_leaf_tree()
    ext = reverse_minimal_extension(BicoloredForest.of(t))
    vals = [v.valency for v in ext]
    assert vals == sorted(vals, reverse=True)
    assert vals == [6, 5, 4, 3, 2, 1, 1, 1]
    for i, v in enumerate(ext):
        for child in (v.left, v.right):
            if isinstance(child, Node):
                assert ext.index(child) < i


def test_example_tree_predicates():
    t = nine_leaf_tree()
    assert is_normalized(t)
    assert is_pointed_lyndon(BicoloredForest.of(t))
    assert is_bicolored_lyndon(BicoloredForest.of(t))


def test_distinguishing_trees():
    t1 = Node(Node(Leaf(1), Leaf(3), 0), Leaf(2), 1)  # bicolored, not pointed
    t2 = Node(Node(Leaf(1), Leaf(2), 0), Leaf(3), 0)  # pointed, not bicolored
    assert is_bicolored_lyndon(BicoloredForest.of(t1))
    assert not is_pointed_lyndon(BicoloredForest.of(t1))
    assert is_pointed_lyndon(BicoloredForest.of(t2))
    assert not is_bicolored_lyndon(BicoloredForest.of(t2))
    assert is_pointed_lyndon(BicoloredForest.of(Leaf(5)))


def test_forest_requires_disjoint_and_sorted():
    with pytest.raises(InvalidForestError):
        BicoloredForest((Leaf(1), Leaf(1)))
    with pytest.raises(InvalidForestError):
        BicoloredForest((Leaf(2), Leaf(1)))


def worked_forest() -> BicoloredForest:
    """Forest with word (6,7)^1(5,8)^1(4,6)^1(3,4)^0(2,5)^0(1,9)^1(1,2)^1."""
    a = Node(Leaf(4), Node(Leaf(6), Leaf(7), 1), 1)
    b = Node(Leaf(3), a, 0)
    c = Node(Leaf(2), Node(Leaf(5), Leaf(8), 1), 0)
    d = Node(Node(Leaf(1), Leaf(9), 1), c, 1)
    return BicoloredForest.of(d, b)


def test_forest_to_chain_worked_example():
    chain, word = forest_to_chain(worked_forest(), POINTED)
    assert [str(l) for l in word] == [
        "(6,7)^1", "(5,8)^1", "(4,6)^1", "(3,4)^0", "(2,5)^0", "(1,9)^1", "(1,2)^1",
    ]
    assert chain[0].render() == "~1/~2/~3/~4/~5/~6/~7/~8/~9"
    assert chain[1].render() == "~1/~2/~3/~4/~5/~67/~8/~9"
    assert chain[-1].render() == "~12589/3~467"
    labels = [PairLabel(6, 7, 1), PairLabel(5, 8, 1), PairLabel(4, 6, 1),
              PairLabel(3, 4, 0), PairLabel(2, 5, 0), PairLabel(1, 9, 1),
              PairLabel(1, 2, 1)]
    rebuilt = chain_to_forest(labels, 9, POINTED)
    assert rebuilt.render() == worked_forest().render()


def test_empty_chain_round_trip():
    forest = chain_to_forest([], 4, POINTED)
    assert forest.render() == "1|2|3|4"
    chain, word = forest_to_chain(forest, WEIGHTED)
    assert word == [] and len(chain) == 1


def test_two_leaf_weighted_chain():
    forest = BicoloredForest.of(Node(Leaf(1), Leaf(2), 0), Leaf(3))
    chain, word = forest_to_chain(forest, WEIGHTED)
    assert [str(l) for l in word] == ["(1,2)^0"]
    assert chain[-1].render() == "12^0/3^0"


def test_forest_to_chain_rejects_invalid():
    bad = BicoloredForest.of(Node(Node(Leaf(1), Leaf(3), 0), Leaf(2), 1))
    with pytest.raises(InvalidForestError):
        forest_to_chain(bad, POINTED)
    chain, word = forest_to_chain(bad, POINTED, strict=False)
    assert chain[-1].render() == "12~3"  # the 1-merge keeps the min block's point 3


def test_chain_to_forest_rejects_ascents():
    with pytest.raises(InvalidForestError):
        chain_to_forest([PairLabel(1, 2, 0), PairLabel(1, 3, 1)], 3, POINTED)
    with pytest.raises(InvalidForestError):
        chain_to_forest([PairLabel(1, 3, 1)], 2, POINTED)


def test_pointed_merge_figure():
    t1 = Node(Node(Leaf(1), Leaf(4), 1), Node(Leaf(2), Leaf(3), 1), 0)
    t2 = Node(Node(Leaf(5), Leaf(7), 1), Leaf(6), 0)
    f = BicoloredForest.of(t1, t2)
    merged = u_merge(f, t1, t2, 1, POINTED)
    assert merged.render() == "(((1 ((5 7)^1 6)^0)^1 4)^1 (2 3)^1)^0"


def test_bicolored_merge_figure():
    t1 = Node(Node(Leaf(1), Leaf(4), 0), Node(Leaf(2), Leaf(3), 0), 1)
    t2 = Node(Node(Leaf(5), Leaf(7), 1), Leaf(6), 0)
    f = BicoloredForest.of(t1, t2)
    merged = u_merge(f, t1, t2, 1, WEIGHTED)
    assert merged.render() == "(((1 ((5 7)^1 6)^0)^1 4)^0 (2 3)^0)^1"


def test_merge_two_leaves_no_slide():
    f = BicoloredForest.of(Leaf(1), Leaf(2), Leaf(3))
    merged = u_merge(f, f.trees[0], f.trees[1], 0, POINTED)
    assert merged.render() == "(1 2)^0|3"


def test_merge_errors():
    f = BicoloredForest.of(Leaf(1), Leaf(2))
    with pytest.raises(InvalidMergeError):
        u_merge(f, f.trees[0], f.trees[0], 0, POINTED)
    with pytest.raises(InvalidMergeError):
        u_merge(f, f.trees[1], f.trees[0], 0, POINTED)
    with pytest.raises(InvalidMergeError):
        u_merge(f, f.trees[0], Leaf(9), 0, POINTED)


def test_label_order_helper_matches_label_posets():
    from itertools import product

    from whitneydual import build_label_poset_bullet, build_label_poset_w
    from whitneydual.lyndon import _label_less
    from whitneydual.partitions import _pair_labels

    labels = _pair_labels(range(1, 5))
    for flavor, lp in ((WEIGHTED, build_label_poset_w(4)),
                       (POINTED, build_label_poset_bullet(4))):
        for x, y in product(labels, repeat=2):
            assert _label_less(x, y, flavor) == lp.less(lp.index(str(x)), lp.index(str(y)))


def test_flyn3_exact_elements(flyn):
    pointed_tops = {
        "(1 (2 3)^1)^1", "(1 (2 3)^1)^0", "((1 3)^0 2)^0",
        "((1 2)^1 3)^0", "((1 3)^1 2)^1", "((1 3)^1 2)^0",
        "((1 2)^0 3)^0", "(1 (2 3)^0)^1", "(1 (2 3)^0)^0",
    }
    weighted_tops = {
        "(1 (2 3)^1)^1", "(1 (2 3)^1)^0", "((1 2)^1 3)^0",
        "((1 3)^1 2)^1", "((1 3)^1 2)^0", "((1 3)^0 2)^0",
        "((1 3)^0 2)^1", "(1 (2 3)^0)^1", "(1 (2 3)^0)^0",
    }
    fp, fw = flyn[(3, "pointed")], flyn[(3, "weighted")]
    assert {fp.payload(t) for t in fp.maximal_elements()} == pointed_tops
    assert {fw.payload(t) for t in fw.maximal_elements()} == weighted_tops
    assert fp.whitney_second() == fw.whitney_second() == (1, 6, 9)
    assert len(build_flyn(1, POINTED)) == 1


def test_flyn_rank_counts(flyn):
    for n in (2, 3, 4):
        for flavor in (POINTED, WEIGHTED):
            expected = tuple(comb(n - 1, k) * n**k for k in range(n))
            assert flyn[(n, flavor)].whitney_second() == expected


def test_flyn_rank_counts_n5():
    expected = tuple(comb(4, k) * 5**k for k in range(5))
    for flavor in (POINTED, WEIGHTED):
        assert build_flyn(5, flavor).whitney_second() == expected


def test_closure_matches_generate_and_filter(flyn):
    for n in (2, 3, 4):
        for flavor in (POINTED, WEIGHTED):
            generated = {f.render() for f in all_valid_forests(n, flavor)}
            assert generated == set(flyn[(n, flavor)].payloads_)


def test_valid_forest_chain_is_ascent_free(flyn, lb, lw):
    for flavor, labeling in ((POINTED, lb[4]), (WEIGHTED, lw[4])):
        lp = labeling.label_poset
        for x in flyn[(4, flavor)].elements():
            _, word = forest_to_chain(flyn[(4, flavor)].object(x), flavor)
            idx = tuple(lp.index(str(l)) for l in word)
            from whitneydual.labeling import is_ascent_free

            assert is_ascent_free(lp, idx)


def test_all_blue_subposet_counts_and_isomorphism(flyn, weighted):
    # all-0-colored forests form the Whitney dual of the partition lattice
    from whitneydual import GradedPoset

    for n in (3, 4):
        fw = flyn[(n, WEIGHTED)]
        members = [x for x in fw.elements() if "^1" not in fw.payload(x)]
        pos = {m: i for i, m in enumerate(members)}
        sub = GradedPoset(
            [fw.payload(m) for m in members],
            [(pos[a], pos[b]) for a, b in fw.covers if a in pos and b in pos],
        )
        # rank counts are the signless Stirling numbers of the first kind
        stirling = [[1]]
        for m in range(1, n + 1):
            prev = stirling[-1] + [0]
            stirling.append(
                [prev[k - 1] + (m - 1) * prev[k] if k else (m - 1) * prev[0] for k in range(m + 1)]
            )
        expected = tuple(stirling[n][n - k] for k in range(n))
        assert sub.whitney_second() == expected
        w = weighted[n]
        inter = w.interval(w.zero(), w.index("".join(str(i) for i in range(1, n + 1)) + "^0"))
        labeling = label_lambda_w(w).restrict_to(inter)
        assert are_isomorphic(sub, construct_R(inter, labeling)) is not None
