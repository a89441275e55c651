"""Grid moves: cyclic translation, commutation, destabilization, and a
deterministic greedy simplifier.

All moves preserve the presented link.  Destabilization looks for a 2x2
block of cells (toroidally adjacent rows and columns) containing exactly
three markers; the grid is then translated so the block sits at the
origin and the block's corner row and column are deleted, merging the
three markers into one of the opposite type at the block's empty cell.
"""

from __future__ import annotations

from .links import GridDiagram


def translate(g: GridDiagram, dc: int, dr: int) -> GridDiagram:
    return g.translate(dc=dc, dr=dr)


def _column_commutable(g: GridDiagram, c: int) -> bool:
    n = g.size
    a1, b1 = sorted((g.X[c], g.O[c]))
    a2, b2 = sorted((g.X[(c + 1) % n], g.O[(c + 1) % n]))
    if len({a1, b1, a2, b2}) != 4:
        return False
    disjoint = b1 < a2 or b2 < a1
    nested = (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2)
    return disjoint or nested


def commute_columns(g: GridDiagram, c: int) -> GridDiagram | None:
    """Swap columns c and c+1 (planar, c < n-1) when their spans are
    disjoint or nested; None when the move is not available."""
    if c >= g.size - 1 or not _column_commutable(g, c):
        return None
    X = list(g.X)
    O = list(g.O)
    X[c], X[c + 1] = X[c + 1], X[c]
    O[c], O[c + 1] = O[c + 1], O[c]
    return GridDiagram(g.size, X, O)


def commute_rows(g: GridDiagram, r: int) -> GridDiagram | None:
    t = commute_columns(g.transpose(), r)
    return None if t is None else t.transpose()


def find_destabilization(g: GridDiagram):
    """First (r, c) such that the 2x2 cell block at toroidal rows (r, r+1)
    and columns (c, c+1) holds exactly three markers; None if none."""
    n = g.size
    xs = set(zip(range(n), g.X))
    os_ = set(zip(range(n), g.O))
    for r in range(n):
        r2 = (r + 1) % n
        for c in range(n):
            c2 = (c + 1) % n
            cells = ((c, r), (c2, r), (c, r2), (c2, r2))
            count = sum((p in xs) + (p in os_) for p in cells)
            if count == 3:
                return (r, c)
    return None


def destabilize(g: GridDiagram, r: int, c: int) -> GridDiagram:
    """Apply the destabilization at the given block (as from
    find_destabilization)."""
    n = g.size
    h = g.translate(dc=-c, dr=-r)
    xs = {(i, h.X[i]) for i in range(n)}
    os_ = {(i, h.O[i]) for i in range(n)}
    cells = [(0, 0), (1, 0), (0, 1), (1, 1)]
    occupied = {p for p in cells if p in xs or p in os_}
    empty = [p for p in cells if p not in occupied]
    if len(empty) != 1:
        raise ValueError("block is not destabilizable")
    ce, re = empty[0]
    cc, rc = 1 - ce, 1 - re
    corner_is_x = (cc, rc) in xs
    for p in cells:
        xs.discard(p)
        os_.discard(p)
    if corner_is_x:
        os_.add((ce, re))
    else:
        xs.add((ce, re))
    X = [0] * (n - 1)
    O = [0] * (n - 1)
    for col, row in xs:
        X[col - (col > cc)] = row - (row > rc)
    for col, row in os_:
        O[col - (col > cc)] = row - (row > rc)
    return GridDiagram(n - 1, X, O)


def _all_commutations(g: GridDiagram):
    for c in range(g.size - 1):
        h = commute_columns(g, c)
        if h is not None:
            yield ("col", c), h
    for r in range(g.size - 1):
        h = commute_rows(g, r)
        if h is not None:
            yield ("row", r), h


def _search_destab(g: GridDiagram, depth: int):
    """Shortest commutation sequence (BFS, lexicographic) after which a
    destabilization exists; returns the resulting grid or None."""
    seen = {(g.X, g.O)}
    frontier = [g]
    for _ in range(depth):
        nxt = []
        for cur in frontier:
            for _, h in _all_commutations(cur):
                key = (h.X, h.O)
                if key in seen:
                    continue
                seen.add(key)
                if find_destabilization(h) is not None:
                    return h
                nxt.append(h)
        frontier = nxt
        if not frontier:
            break
    return None


def simplify_grid(g: GridDiagram, budget: int | None = None) -> GridDiagram:
    """Shrink a grid by destabilizations, with bounded commutation search
    to expose them.  Deterministic given the budget; budget 0 returns the
    input unchanged.  Only link-preserving grid moves are applied."""
    if budget is None:
        budget = 20 * g.size * g.size
    moves = 0
    cur = g
    while moves < budget and cur.size > 2:
        spot = find_destabilization(cur)
        if spot is not None:
            cur = destabilize(cur, *spot)
            moves += 1
            continue
        found = _search_destab(cur, depth=3)
        if found is None:
            break
        cur = found
        moves += 1
    return cur
