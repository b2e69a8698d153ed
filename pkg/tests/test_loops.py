import random
from itertools import product

import numpy as np
import pytest

from octoramsey.errors import MalformedTable, NotAGroup, NotMG2Shaped, NotMoufang
from octoramsey.loops import (
    LoopTable,
    PeriodicSequence,
    builtin,
    cyclic,
    element_order,
    format_table,
    is_associative,
    is_moufang,
    m_g2,
    mg2_reduce_to_group,
    moufang_variants,
    octo16,
    parse_table,
    ramsey_reduce,
    symmetric3,
    validate_loop,
)
from octoramsey.octonion import Associator, associator_class

GROUPS = {f"z{n}": cyclic(n) for n in range(2, 7)} | {"s3": symmetric3()}


def is_abelian(g):
    return bool(np.array_equal(g.table, g.table.T))


def reference_mg2(g):
    """Rule-by-rule doubling over pairs (x, flag): flag 1 means x·u."""
    n = g.order
    inv = {a: next(b for b in range(n) if g.mul(a, b) == g.identity) for a in range(n)}

    def star(p, q):
        (a, s), (b, t) = p, q
        if not s and not t:
            return (g.mul(a, b), 0)
        if s and not t:
            return (g.mul(a, inv[b]), 1)
        if not s and t:
            return (g.mul(b, a), 1)
        return (g.mul(inv[b], a), 0)

    elems = [(a, 0) for a in range(n)] + [(a, 1) for a in range(n)]
    pos = {e: i for i, e in enumerate(elems)}
    return [[pos[star(p, q)] for q in elems] for p in elems]


def test_cyclic_four():
    r = validate_loop(cyclic(4))
    assert (r.order, r.moufang, r.associative) == (4, True, True)


def test_octo16():
    loop = octo16()
    r = validate_loop(loop)
    assert r.line() == "valid moufang nonassociative order=16"
    e5, e6, e7 = (loop.index(f"e{j}") for j in (5, 6, 7))
    assert loop.mul(loop.mul(e5, e6), e7) != loop.mul(e5, loop.mul(e6, e7))
    assert associator_class(5, 6, 7) is Associator.ANTI


def test_octo16_associators_match_core():
    loop = octo16()
    for i, j, k in product(range(8), repeat=3):
        same = loop.mul(loop.mul(i, j), k) == loop.mul(i, loop.mul(j, k))
        cls = associator_class(i, j, k)
        assert same == (cls is Associator.ASSOCIATES)


def test_malformed_tables():
    t = cyclic(3).table.copy()
    t[1, 2] = t[1, 1]
    with pytest.raises(MalformedTable):
        validate_loop(LoopTable(3, 0, t))
    with pytest.raises(MalformedTable):
        LoopTable(3, 0, np.zeros((2, 3), dtype=int))
    with pytest.raises(MalformedTable):
        LoopTable(2, 0, np.array([[0, 1], [1, 2]]))
    with pytest.raises(MalformedTable):
        validate_loop(LoopTable(2, 1, np.array([[0, 1], [1, 0]])))


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_mg2(name):
    g = GROUPS[name]
    m = m_g2(g)
    assert m.order == 2 * g.order
    assert m.table.tolist() == reference_mg2(g)
    r = validate_loop(m)
    assert r.moufang
    assert r.associative == is_abelian(g)
    variants = moufang_variants(m)
    assert len(set(variants.values())) == 1


def test_mg2_s3_shape():
    r = validate_loop(m_g2(symmetric3()))
    assert r.line() == "valid moufang nonassociative order=12"


def test_mg2_needs_group():
    with pytest.raises(NotAGroup):
        m_g2(octo16())


def test_moufang_variants_agree_on_octo16():
    assert set(moufang_variants(octo16()).values()) == {True}


def test_non_moufang_loop():
    # The smallest non-associative loop (order 5) is not Moufang.
    t = np.array(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    loop = LoopTable(5, 0, t)
    r = validate_loop(loop)
    assert not r.moufang and not r.associative
    with pytest.raises(NotMoufang):
        element_order(loop, 1)
    with pytest.raises(NotMoufang):
        ramsey_reduce(loop, PeriodicSequence((), (1,)))


def test_element_order():
    loop = octo16()
    assert element_order(loop, 0) == 1
    assert element_order(loop, loop.index("e1")) == 4
    assert element_order(loop, loop.index("-e0")) == 2
    m = m_g2(symmetric3())
    for g in range(m.order):
        assert 12 % element_order(m, g) == 0


def test_power_bracketings_agree():
    from octoramsey.loops import _bracketing_values

    for loop in (octo16(), m_g2(symmetric3())):
        for g in range(loop.order):
            assert all(len(v) == 1 for v in _bracketing_values(loop, g, 8)[1:])


def _table_product(loop, items):
    acc = items[0]
    for x in items[1:]:
        acc = int(loop.table[acc][x])
    return acc


def test_ramsey_reduce_examples():
    loop = octo16()
    w = ramsey_reduce(loop, PeriodicSequence((), (0,)))
    assert (w.element, w.order, w.blocks) == (0, 1, ((0,), (1,), (2,)))
    w = ramsey_reduce(loop, PeriodicSequence((), (loop.index("e1"),)))
    assert w.order == 4 and w.products == (0, 0, 0)
    assert w.blocks[1] == (4, 5, 6, 7)


def test_ramsey_reduce_random_sequences():
    rng = random.Random(1)
    for loop in (m_g2(symmetric3()), octo16(), m_g2(cyclic(5))):
        for _ in range(100):
            seq = PeriodicSequence(
                [rng.randrange(loop.order) for _ in range(rng.randrange(4))],
                [rng.randrange(loop.order) for _ in range(rng.randrange(1, 6))],
            )
            w = ramsey_reduce(loop, seq, 4)
            assert w.element == min(seq.cycle)
            for block in w.blocks:
                assert len(block) == w.order
                assert all(seq[p] == w.element for p in block)
                assert _table_product(loop, [seq[p] for p in block]) == loop.identity
            flat = [p for b in w.blocks for p in b]
            assert flat == sorted(set(flat))


def test_mg2_reduce_to_group():
    m = m_g2(symmetric3())
    n = 6
    red = mg2_reduce_to_group(m, PeriodicSequence((7,), (2, 9)))
    assert red.kind == "subsequence" and red.products == (2, 2, 2)
    red = mg2_reduce_to_group(m, PeriodicSequence((1,), (7, 9, 11)))
    assert red.kind == "pairing"
    assert all(p < n for p in red.products)
    seq = PeriodicSequence((1,), (7, 9, 11))
    for (a, b), p in zip(red.blocks, red.products):
        assert a >= 1 and b == a + 1
        assert p == _table_product(m, [seq[a], seq[b]])


def test_mg2_reduce_small_cycles_exhaustive():
    m = m_g2(cyclic(3))
    for length in (1, 2, 3):
        for cycle in product(range(6), repeat=length):
            red = mg2_reduce_to_group(m, PeriodicSequence((), cycle))
            assert all(p < 3 for p in red.products)


def test_mg2_reduce_rejects_other_loops():
    with pytest.raises(NotMG2Shaped):
        mg2_reduce_to_group(octo16(), PeriodicSequence((), (1,)))
    with pytest.raises(NotMG2Shaped):
        mg2_reduce_to_group(cyclic(5), PeriodicSequence((), (1,)))


def test_table_file_round_trip():
    for loop in (cyclic(3), m_g2(symmetric3()), octo16()):
        text = format_table(loop)
        back = parse_table(text)
        assert back == loop and back.names == loop.names
    with pytest.raises(MalformedTable):
        parse_table("2\n0\n0 1\n")
    with pytest.raises(MalformedTable):
        parse_table("2\n0\n0 1\n1 x\n")


def test_builtin_names():
    assert builtin("Z5") == cyclic(5)
    assert builtin("mg2:s3") == m_g2(symmetric3())
    with pytest.raises(ValueError):
        builtin("q8")
    assert is_associative(builtin("s3")) and is_moufang(builtin("s3"))
