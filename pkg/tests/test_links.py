import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotgrid.alexander import alexander, grid_alexander, torus_alexander
from knotgrid.convert import braid_to_grid
from knotgrid.gridmoves import destabilize, find_destabilization, simplify_grid
from knotgrid.links import (
    BraidWord,
    GridDiagram,
    LinkInputError,
    TwistFamilySpec,
    component_data,
    insert_twists,
)
from knotgrid.poly import one, zero


def braids(max_strands=4, max_len=8):
    def build(draw):
        s = draw(st.integers(min_value=2, max_value=max_strands))
        w = draw(
            st.lists(
                st.tuples(st.integers(1, s - 1), st.booleans()),
                min_size=1,
                max_size=max_len,
            )
        )
        return BraidWord(s, [g if pos else -g for g, pos in w])

    return st.composite(lambda draw: build(draw))()


def test_braid_validation():
    with pytest.raises(LinkInputError):
        BraidWord(2, (2,))
    with pytest.raises(LinkInputError):
        BraidWord(2, (0,))
    with pytest.raises(LinkInputError):
        BraidWord(0, ())


def test_grid_validation():
    with pytest.raises(LinkInputError):
        GridDiagram(2, (0, 1), (0, 1))  # colliding markers
    with pytest.raises(LinkInputError):
        GridDiagram(3, (0, 1, 1), (1, 2, 0))  # not a permutation


def test_braid_components():
    assert BraidWord(2, (1,)).components() == 1
    assert BraidWord(2, (1, 1)).components() == 2
    assert BraidWord(3, (1, -2, 1, -2)).components() == 1


def test_insert_twists_examples():
    spec = TwistFamilySpec(BraidWord(2, (1, 1, 1)), 0)
    assert insert_twists(spec, 1) == spec.base
    assert insert_twists(spec, -1).word == (-1, 1, 1)
    assert insert_twists(spec, 4).word == (1,) * 6
    assert insert_twists(spec, 0).word == (1, 1)
    assert len(insert_twists(spec, -3).word) == len(spec.base.word) + 3 - 1
    assert alexander(insert_twists(spec, -1), cross_check=False) == one()


def test_insert_twists_site_validation():
    with pytest.raises(LinkInputError):
        TwistFamilySpec(BraidWord(2, (-1, 1)), 0)  # negative letter marked
    with pytest.raises(LinkInputError):
        TwistFamilySpec(BraidWord(2, (1,)), 1)


def test_component_data_examples():
    hopf = braid_to_grid(BraidWord(2, (1, 1)))
    cd = component_data(hopf)
    assert cd.count == 2
    assert cd.pairwise_lk == ((0, 1), (1, 0))
    unknot = braid_to_grid(BraidWord(2, (1,)))
    assert component_data(unknot).count == 1
    t24 = component_data(braid_to_grid(BraidWord(2, (1, 1, 1, 1))))
    assert t24.count == 2 and t24.pairwise_lk[0][1] == 2


def test_component_data_braid_sites():
    cd = component_data(BraidWord(2, (1, 1)), sites=(0, 1))
    assert cd.count == 2
    assert cd.site_same_component == (False, False)
    cd3 = component_data(BraidWord(2, (1, 1, 1)), sites=(1,))
    assert cd3.count == 1 and cd3.site_same_component == (True,)


def test_component_data_lk_symmetric_and_zero_diagonal():
    cd = component_data(BraidWord(4, (1, 2, 2, -3, 1)))
    for i, row in enumerate(cd.pairwise_lk):
        assert row[i] == 0
        for j, v in enumerate(row):
            assert cd.pairwise_lk[j][i] == v


def test_braid_to_grid_unknot_and_trefoil():
    g = braid_to_grid(BraidWord(2, (1,)))
    assert grid_alexander(g) == one()
    g3 = braid_to_grid(BraidWord(2, (1, 1, 1)))
    assert grid_alexander(g3) == torus_alexander(3)
    assert g3.size <= 2 + 3 + 1


@given(braids())
@settings(max_examples=40, deadline=None)
def test_braid_to_grid_invariants(b):
    g = braid_to_grid(b)
    # valid grid is enforced by the constructor; check the link round-trips
    assert g.components() == b.components()
    assert grid_alexander(g) == alexander(b, cross_check=False)


@given(braids(max_strands=4, max_len=9))
@settings(max_examples=30, deadline=None)
def test_size_bound_when_all_generators_used(b):
    used = {abs(g) for g in b.word}
    if used != set(range(1, b.strands)):
        return
    g = braid_to_grid(b)
    assert g.size <= b.strands + len(b.word) + 1


def test_mirror_conjugates_alexander():
    for word in [(1, 1, 1), (1, -2, 1, -2), (1, 2, 2, 1)]:
        b = BraidWord(3 if max(abs(g) for g in word) > 1 else 2, word)
        d = alexander(b, cross_check=False)
        dm = alexander(b.mirror(), cross_check=False)
        assert dm in (d.conjugate(), -d.conjugate())


def test_grid_translate_and_transpose_preserve_alexander():
    g = braid_to_grid(BraidWord(3, (1, -2, 1, -2)))
    d = grid_alexander(g)
    for dc, dr in [(1, 0), (0, 1), (3, 2)]:
        assert grid_alexander(g.translate(dc=dc, dr=dr)) == d


# -- grid moves -------------------------------------------------------------


def _random_grid(rng, n):
    while True:
        x = list(range(n))
        o = list(range(n))
        rng.shuffle(x)
        rng.shuffle(o)
        if all(a != b for a, b in zip(x, o)):
            return GridDiagram(n, x, o)


def test_simplify_budget_zero_is_identity():
    g = braid_to_grid(BraidWord(2, (1, 1, 1)), simplify=False)
    assert simplify_grid(g, budget=0) == g


def test_simplify_minimal_grid_fixed():
    g = GridDiagram(2, (1, 0), (0, 1))
    assert simplify_grid(g) == g


def test_destabilize_stabilized_unknot():
    # a size-3 unknot grid with an obvious corner block
    g = GridDiagram(3, (1, 2, 0), (2, 0, 1))
    spot = find_destabilization(g)
    assert spot is not None
    h = destabilize(g, *spot)
    assert h.size == 2 and grid_alexander(h) == one()


def test_moves_preserve_alexander_random_grids():
    import random

    rng = random.Random(9)
    for _ in range(15):
        g = _random_grid(rng, rng.choice([4, 5, 6]))
        d = grid_alexander(g)
        s = simplify_grid(g)
        assert grid_alexander(s) == d
        assert s.size <= g.size
