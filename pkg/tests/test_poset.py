"""Core graded poset engine: construction, Möbius, Whitney numbers, duals."""

from __future__ import annotations

import pytest

from whitneydual import (
    ElementNotFoundError,
    GradedPoset,
    NotGradedError,
    are_isomorphic,
    is_whitney_dual,
    is_whitney_twin,
)


def chain_poset(k):
    return GradedPoset([f"c{i}" for i in range(k + 1)], [(i, i + 1) for i in range(k)])


def antichain_over_zero(n):
    return GradedPoset(["0"] + [f"a{i}" for i in range(n)], [(0, i + 1) for i in range(n)])


def test_rejects_two_minima():
    with pytest.raises(NotGradedError):
        GradedPoset(["a", "b"], [])


def test_rejects_non_graded_cover():
    # diamond with one long side: 0<a<b<t and 0<t makes 0->t rank-skipping
    with pytest.raises(NotGradedError):
        GradedPoset(["0", "a", "b", "t"], [(0, 1), (1, 2), (2, 3), (0, 3)])


def test_rejects_non_reduced():
    with pytest.raises(NotGradedError):
        GradedPoset(["0", "a", "b"], [(0, 1), (1, 2), (0, 2)])


def test_rejects_cycle():
    with pytest.raises(NotGradedError):
        GradedPoset(["a", "b", "c"], [(0, 1), (1, 2), (2, 0)])


def test_rejects_duplicate_payloads():
    with pytest.raises(NotGradedError):
        GradedPoset(["x", "x"], [(0, 1)])


def test_unknown_element_errors():
    p = chain_poset(2)
    with pytest.raises(ElementNotFoundError):
        p.mobius(17)
    with pytest.raises(ElementNotFoundError):
        p.index("nope")


def test_mobius_base_and_chain():
    p = chain_poset(1)
    assert p.mobius(p.zero()) == 1
    assert p.whitney_first() == (1, -1)


def test_mobius_figure_values(figure_posets):
    p, _, q = figure_posets
    assert p.mobius(p.index("1")) == 2
    assert [p.mobius(p.index(e)) for e in "abc"] == [-1, -1, -1]
    assert q.mobius(q.index("(1,ba)")) == 1
    assert q.mobius(q.index("(1,ca)")) == 0


def test_whitney_sequences_figure(figure_posets):
    p, _, q = figure_posets
    assert p.whitney_first() == (1, -3, 2)
    assert p.whitney_second() == (1, 3, 1)
    assert q.whitney_first() == (1, -3, 1)
    assert q.whitney_second() == (1, 3, 2)
    assert is_whitney_dual(p, q)
    assert not is_whitney_twin(p, q)


def test_whitney_antichain():
    p = antichain_over_zero(5)
    assert p.whitney_second() == (1, 5)
    assert is_whitney_dual(p, p)


def test_mobius_sum_vanishes(weighted, pointed, sf):
    for p in [weighted[3], pointed[3], sf[3], weighted[4]]:
        mu = p.mobius_all()
        bits = p.down_bits()
        for x in p.elements():
            total = sum(mu[y] for y in p.elements() if (bits[x] >> y) & 1)
            assert total == (1 if x == p.zero() else 0)


def test_whitney_zeroth_entries(weighted, pointed, sf):
    for p in (weighted[4], pointed[4], sf[4]):
        assert p.whitney_first()[0] == 1
        assert p.whitney_second()[0] == 1


def test_dual_and_twin_relations(weighted, pointed, sf, flyn):
    family = [weighted[3], pointed[3], sf[3], flyn[(3, "pointed")], flyn[(3, "weighted")]]
    for p in family:
        assert is_whitney_twin(p, p)
        for q in family:
            assert is_whitney_dual(p, q) == is_whitney_dual(q, p)
            assert is_whitney_twin(p, q) == is_whitney_twin(q, p)
    # transitivity on this family
    for p in family:
        for q in family:
            for r in family:
                if is_whitney_twin(p, q) and is_whitney_twin(q, r):
                    assert is_whitney_twin(p, r)


def test_isomorphic_implies_twin(flyn):
    p, q = flyn[(3, "pointed")], flyn[(3, "weighted")]
    assert are_isomorphic(p, q) is not None
    assert is_whitney_twin(p, q)
    assert p.whitney_first() == q.whitney_first()


def test_interval_and_filter(pointed):
    p3 = pointed[3]
    x = p3.index("~1/~23")
    assert len(p3.upper_filter(x)) == 3
    top = p3.index("~123")
    inter = p3.interval(p3.zero(), top)
    assert inter.whitney_second() == (1, 4, 1)
    single = p3.interval(x, x)
    assert len(single) == 1


def test_interval_requires_comparable(pointed):
    p3 = pointed[3]
    with pytest.raises(ElementNotFoundError):
        p3.interval(p3.index("~1/~23"), p3.index("12~3"))


def test_order_dual_involution(pointed):
    p3 = pointed[3]
    inter = p3.interval(p3.zero(), p3.index("~123"))
    dual = inter.order_dual()
    assert dual.whitney_second() == (1, 4, 1)
    assert are_isomorphic(dual.order_dual(), inter) is not None


def test_order_dual_requires_unique_max(pointed):
    with pytest.raises(NotGradedError):
        pointed[3].order_dual()


def test_order_dual_chain():
    c = chain_poset(2)
    d = c.order_dual()
    assert d.whitney_second() == (1, 1, 1)


def test_saturated_chain_count(figure_posets):
    p, _, _ = figure_posets
    chains = list(p.saturated_chains(p.zero(), p.index("1")))
    assert len(chains) == 3
    assert all(len(c) == 3 for c in chains)


def test_saturated_chains_stream_early_stop(weighted):
    gen = weighted[4].saturated_chains(0, weighted[4].index("1234^3"))
    first = next(gen)
    assert len(first) == 4  # generator can be abandoned after one item
