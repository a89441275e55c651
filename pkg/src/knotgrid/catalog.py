"""Named links, twist families and mutant pairs, with stored Alexander
polynomials used as self-tests.

The Kinoshita-Terasaka / Conway pair is assembled from its tangle algebra:
the outer tangle is the sum of vertical twist regions -1/3 and 1/2 (one
arc carries a trefoil), the inner (mutation) tangle stacks a horizontal
full twist over the sum of 1/3 and -1/2.  Both knots then have trivial
Alexander polynomial, and the windowed engine computation pins their
Seifert genera at 2 and 3, which is what distinguishes the pair.
"""

from __future__ import annotations

import re

from .links import BraidWord, GridDiagram, LinkInputError, TwistFamilySpec
from .mutants import MutantPairSpec
from .poly import HalfLaurent, one, zero
from .rect import horizontal_twists, mutant_closure_grid, tangle_sum, vertical_twists
from .gridmoves import simplify_grid
from .alexander import torus_alexander


def _kt_tangles():
    outer = tangle_sum(vertical_twists(-3), vertical_twists(2))
    inner = horizontal_twists(2) + tangle_sum(vertical_twists(3), vertical_twists(-2))
    return outer, inner


def kt_pair_spec() -> MutantPairSpec:
    outer, inner = _kt_tangles()
    return MutantPairSpec(outer=outer, inner=inner, k=0, l=0, name="KT/C")


def _kt_grid() -> GridDiagram:
    outer, inner = _kt_tangles()
    return simplify_grid(mutant_closure_grid(inner, outer, 0, 0))


def _conway_grid() -> GridDiagram:
    outer, inner = _kt_tangles()
    return simplify_grid(mutant_closure_grid(inner.rotated(), outer, 0, 0))


_TREFOIL = HalfLaurent({2: 1, 0: -1, -2: 1})
_FIG8 = HalfLaurent({2: -1, 0: 3, -2: -1})

_ENTRIES = {
    # links: (constructor, expected Alexander polynomial)
    "unknot": (lambda: BraidWord(2, (1,)), one()),
    "trefoil": (lambda: BraidWord(2, (1, 1, 1)), _TREFOIL),
    "trefoil-mirror": (lambda: BraidWord(2, (-1, -1, -1)), _TREFOIL),
    "figure8": (lambda: BraidWord(3, (1, -2, 1, -2)), _FIG8),
    "hopf": (lambda: BraidWord(2, (1, 1)), torus_alexander(2)),
    "KT": (_kt_grid, one()),
    "C": (_conway_grid, one()),
}

_FAMILIES = {
    # twist families: (spec constructor, expected Alexander of L_1)
    "unknot-clasp": (lambda: TwistFamilySpec(BraidWord(2, (1,)), 0), one()),
    "trefoil-family": (lambda: TwistFamilySpec(BraidWord(2, (1, 1, 1)), 0), _TREFOIL),
    "figure8-site": (lambda: TwistFamilySpec(BraidWord(3, (1, -2, 1, -2)), 0), _FIG8),
    # twisting the first crossing of the figure-eight's twist region walks
    # through the twist-knot series (L_1 is the figure-eight itself)
    "twist-family": (lambda: TwistFamilySpec(BraidWord(3, (1, -2, 1, -2)), 0), _FIG8),
}

_MUTANT_FAMILIES = {
    "KT_family": lambda: kt_pair_spec(),
    "C_family": lambda: MutantPairSpec(
        outer=_kt_tangles()[0], inner=_kt_tangles()[1].rotated(), k=0, l=0, name="C/KT"
    ),
}

_TORUS_RE = re.compile(r"^torus\(2,\s*(-?\d+)\)$")


def catalog_names():
    return (
        sorted(_ENTRIES)
        + sorted(_FAMILIES)
        + sorted(_MUTANT_FAMILIES)
        + ["torus(2,k)"]
    )


def catalog(name: str):
    """Look up a stored presentation: a BraidWord or GridDiagram for link
    entries, a TwistFamilySpec for family entries, a MutantPairSpec for
    the mutant families, and torus(2,k) for any integer k."""
    m = _TORUS_RE.match(name.strip())
    if m:
        k = int(m.group(1))
        if k == 0:
            return BraidWord(2, (1, -1))  # two-component unlink
        return BraidWord(2, (1 if k > 0 else -1,) * abs(k))
    if name in _ENTRIES:
        return _ENTRIES[name][0]()
    if name in _FAMILIES:
        return _FAMILIES[name][0]()
    if name in _MUTANT_FAMILIES:
        return _MUTANT_FAMILIES[name]()
    raise LinkInputError(
        f"unknown catalog entry {name!r}; available: {', '.join(catalog_names())}"
    )


def expected_alexander(name: str) -> HalfLaurent:
    """The stored polynomial for a catalog entry (self-test data)."""
    m = _TORUS_RE.match(name.strip())
    if m:
        return torus_alexander(int(m.group(1)))
    if name in _ENTRIES:
        return _ENTRIES[name][1]
    if name in _FAMILIES:
        return _FAMILIES[name][1]
    raise LinkInputError(f"no stored polynomial for {name!r}")


def self_test_names():
    """Entries whose stored polynomial the test suite verifies."""
    return sorted(_ENTRIES) + sorted(_FAMILIES) + [f"torus(2,{k})" for k in range(-9, 10)]
