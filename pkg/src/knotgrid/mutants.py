"""Mutant pair construction.

A MutantPairSpec holds two 2-string tangle blocks (inner and outer) and
twist counts k (above the inner tangle) and l (below).  The link is the
plat closure of the 4-strand frame whose middle bundle carries, bottom to
top: l half-twists, the inner block, k half-twists, the outer block.  The
positive mutant replaces the inner block by its half-turn rotation.

Tangle blocks are either braid words in B_4 (the two-in/two-out box that
births a middle pair, runs the word, and kills the middle pair) or raw
Tangle fragments (used by the catalog for the Kinoshita-Terasaka pair).
"""

from __future__ import annotations

from dataclasses import dataclass

from .links import BraidWord, GridDiagram, LinkInputError
from .gridmoves import simplify_grid
from .rect import (
    Tangle,
    mutant_closure_grid,
    rotate_braid_tangle,
    tangle_from_braid,
)


def _as_tangle(block) -> Tangle:
    if isinstance(block, Tangle):
        return block
    if isinstance(block, BraidWord):
        if block.strands != 4:
            raise LinkInputError("tangle endpoints not matched: braid blocks live in B_4")
        if not block.word:
            return Tangle()
        # the born pair must not close into a circle: the box would then
        # have a component missing the four sphere punctures, and the
        # half-turn no longer acts as a mutation on a two-string tangle
        perm = block.permutation()
        if {perm[1], perm[2]} == {1, 2}:
            raise LinkInputError(
                "tangle endpoints not matched: the braid word closes the "
                "internal pair into a circle"
            )
        return tangle_from_braid(block)
    raise LinkInputError(f"cannot read {type(block)!r} as a tangle block")


def _rotate_block(block):
    if isinstance(block, BraidWord):
        return rotate_braid_tangle(block) if block.word else block
    if isinstance(block, Tangle):
        return block.rotated()
    raise LinkInputError(f"cannot rotate {type(block)!r}")


@dataclass(frozen=True)
class MutantPairSpec:
    outer: object  # BraidWord (B_4) or Tangle
    inner: object
    k: int = 0
    l: int = 0
    name: str = ""

    def __post_init__(self):
        _as_tangle(self.outer)
        _as_tangle(self.inner)

    def with_extra_twists(self, n: int) -> "MutantPairSpec":
        """Add n half-twists on the cuff just outside the inner tangle."""
        return MutantPairSpec(self.outer, self.inner, self.k + n, self.l, self.name)


def build_mutant_pair(spec: MutantPairSpec, simplify: bool = True):
    """The link L_{k,l} and its positive mutant, as grid diagrams."""
    inner = _as_tangle(spec.inner)
    outer = _as_tangle(spec.outer)
    g1 = mutant_closure_grid(inner, outer, spec.k, spec.l)
    g2 = mutant_closure_grid(_as_tangle(_rotate_block(spec.inner)), outer, spec.k, spec.l)
    if simplify:
        g1 = simplify_grid(g1)
        g2 = simplify_grid(g2)
    return g1, g2
