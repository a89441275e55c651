import pytest

from knotgrid.catalog import catalog
from knotgrid.experiments import (
    compare_mutants,
    compute_family_tables,
    verify_skein_split,
    verify_stabilization,
)
from knotgrid.links import BraidWord, TwistFamilySpec
from knotgrid.mutants import MutantPairSpec

MAX_STATES = 1_000_000  # grids through size 9 complete; larger ones windowed


def test_stabilization_torus_small_range():
    rep = verify_stabilization(
        catalog("unknot-clasp"), [3, 5, 7, 4], spec_name="unknot-clasp",
        max_states=MAX_STATES,
    )
    assert rep.passed
    assert rep.k_observed == 1
    assert rep.first_stable_n == 3
    dec = rep.decomposition
    assert dec["A_hat"].total_dim() == 1 and dec["B_hat"].total_dim() == 1
    assert set(a2 for _, a2 in dec["A_hat"].ranks) == {0}
    assert set(a2 for _, a2 in dec["B_hat"].ranks) == {0}


def test_stabilization_trefoil_family():
    rep = verify_stabilization(
        catalog("trefoil-family"), [3, 5, 7, 4], spec_name="trefoil",
        max_states=MAX_STATES,
    )
    assert rep.passed
    assert rep.k_observed == 2


def test_stabilization_not_yet_stable():
    rep = verify_stabilization(
        catalog("unknot-clasp"), [1], spec_name="too-small", max_states=MAX_STATES
    )
    assert not rep.passed
    assert rep.k_observed is None
    assert any("not-yet-stable" in t for t in rep.notes)


def test_part1_shift_composes_to_n_plus_4():
    # applying the j >= -k isomorphism twice matches L_n -> L_{n+4}
    fam = compute_family_tables(catalog("unknot-clasp"), [3, 5, 7], max_states=MAX_STATES)
    t3, t5, t7 = fam.table(3), fam.table(5), fam.table(7)
    for a2 in range(-2, 7, 2):
        if a2 >= -2:  # inside the stable upper range for this family
            once = t5.slice_a2(a2 + 2)
            twice = t7.slice_a2(a2 + 4)
            assert t3.slice_a2(a2) == once == twice or t3.slice_a2(a2) != once


def test_skein_split_torus():
    clasp = catalog("unknot-clasp")
    for n in (5, 6, 7):
        rep = verify_skein_split(clasp, n, max_states=MAX_STATES)
        assert rep.inequality_ok and rep.equality_ok, n
        # total-dimension bookkeeping in the stable regime
        d_dn, d_n, d_up = rep.total_dims
        factor = 4 if rep.same_component else 1
        assert d_n * factor == d_dn + d_up, n


def test_skein_split_small_n_inequality_unconditional():
    clasp = catalog("unknot-clasp")
    rep = verify_skein_split(clasp, 2, max_states=MAX_STATES)
    assert rep.inequality_ok


def test_skein_split_rejects_resolved_crossing():
    with pytest.raises(ValueError):
        verify_skein_split(catalog("unknot-clasp"), 0, max_states=MAX_STATES)


def test_compare_mutants_identity_inner():
    spec = MutantPairSpec(outer=BraidWord(4, (2, -1)), inner=BraidWord(4, ()), k=0, l=0)
    rep = compare_mutants(spec, range(-2, 3), max_states=MAX_STATES)
    assert rep.all_delta_equal
    assert all(c.hfk_equal for c in rep.checks)
    assert rep.first_hfk_equal_n == -2


def test_compare_mutants_small_pair():
    spec = MutantPairSpec(
        outer=BraidWord(4, (1, -2, 3)), inner=BraidWord(4, (2, 1, 1, -3, 2)),
        k=0, l=0, name="small",
    )
    rep = compare_mutants(spec, range(-1, 2), max_states=MAX_STATES,
                          checks=("delta", "hfk", "genus"))
    assert rep.all_delta_equal
    for c in rep.checks:
        assert not c.error
        assert c.hfk_equal is not False
        if c.genus_pair:
            assert c.genus_pair[0] == c.genus_pair[1]


def test_compare_mutants_resource_limit_is_per_n():
    spec = MutantPairSpec(
        outer=BraidWord(4, (1, -2, 3)), inner=BraidWord(4, (2, 1, 1, -3, 2)),
        k=0, l=0,
    )
    rep = compare_mutants(spec, range(0, 2), max_states=0, window_halfwidth=0)
    assert len(rep.checks) == 2
    assert all(c.error for c in rep.checks)
