"""Conversions between link presentations."""

from __future__ import annotations

from .gridmoves import simplify_grid
from .links import BraidWord, GridDiagram
from .rect import braid_closure_grid


def braid_to_grid(b: BraidWord, simplify: bool = True, budget: int | None = None) -> GridDiagram:
    """Grid diagram presenting the closure of b.

    The raw rectangular construction has size 2s + m; the default
    simplification pass destabilizes it (deterministically) well below
    strands + length + 1 in practice.
    """
    g = braid_closure_grid(b)
    if simplify:
        g = simplify_grid(g, budget)
    return g


def as_grid(link, simplify: bool = True) -> GridDiagram:
    if isinstance(link, GridDiagram):
        return link
    if isinstance(link, BraidWord):
        return braid_to_grid(link, simplify=simplify)
    raise TypeError(f"cannot interpret {type(link)!r} as a link presentation")
