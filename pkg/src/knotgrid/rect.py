"""Building grid diagrams from Morse-position link descriptions.

A link diagram in Morse position is a bottom-to-top sequence of events on
a row of strands: births (cup), deaths (cap) and crossings.  Each event
consumes one fresh grid row; crossings and births insert fresh columns.
The resulting rectangular diagram has every crossing vertical-over-
horizontal, so it is a grid diagram once markers are typed.

Crossings are realized by a jog: the under-strand leaves its column via a
horizontal segment that passes beneath the over-strand's vertical, landing
in a fresh column immediately beside it.  Freshly created rows sit above
all earlier ones and below all later ones, which keeps every horizontal
segment clear of all verticals except the intended over-strand.
"""

from __future__ import annotations

from dataclasses import dataclass

from .links import BraidWord, GridDiagram, LinkInputError

OVER_LEFT = 1  # the left strand of the pair crosses over (positive generator)
OVER_RIGHT = -1


class _Col:
    __slots__ = ("row_a", "row_b", "hint", "created", "epoch")

    def __init__(self, row_a=None, row_b=None, hint=None, created=0, epoch=0):
        self.row_a = row_a  # first endpoint row (created earlier)
        self.row_b = row_b  # second endpoint row
        self.hint = hint  # +1 flow a->b, -1 flow b->a, None free
        self.created = created  # creation order; orientation seeds use it
        self.epoch = epoch  # 0 outside any rotated block, 1 inside


class RectBuilder:
    """Incremental rectangular-diagram builder."""

    def __init__(self):
        self.order: list[_Col] = []  # full left-to-right column order
        self.alive: list[_Col] = []
        self.n_rows = 0
        self.n_cols_created = 0
        self.epoch = 0

    def _new_row(self) -> int:
        r = self.n_rows
        self.n_rows += 1
        return r

    def _new_col(self, **kw) -> _Col:
        col = _Col(created=self.n_cols_created, epoch=self.epoch, **kw)
        self.n_cols_created += 1
        return col

    def _insert(self, col: _Col, full_index: int):
        self.order.insert(full_index, col)

    def cup(self, i: int, hints=(None, None)):
        """Birth two strands occupying alive indices i and i+1."""
        if not (0 <= i <= len(self.alive)):
            raise LinkInputError("cup position out of range")
        r = self._new_row()
        left = self._new_col(row_a=r, hint=hints[0])
        right = self._new_col(row_a=r, hint=hints[1])
        anchor = (
            self.order.index(self.alive[i]) if i < len(self.alive) else len(self.order)
        )
        self._insert(right, anchor)
        self._insert(left, anchor)
        self.alive[i:i] = [left, right]

    def cap(self, i: int):
        """Join the strands at alive indices i and i+1."""
        if not (0 <= i < len(self.alive) - 1):
            raise LinkInputError("cap position out of range")
        r = self._new_row()
        self.alive[i].row_b = r
        self.alive[i + 1].row_b = r
        del self.alive[i : i + 2]

    def cross(self, i: int, over: int):
        """Cross strands at alive indices i and i+1; `over` picks the
        strand whose vertical stays (OVER_LEFT or OVER_RIGHT)."""
        if not (0 <= i < len(self.alive) - 1):
            raise LinkInputError("crossing position out of range")
        r = self._new_row()
        if over == OVER_LEFT:
            keeper, jogger = self.alive[i], self.alive[i + 1]
            landing = self.order.index(keeper)  # immediately left of keeper
        elif over == OVER_RIGHT:
            keeper, jogger = self.alive[i + 1], self.alive[i]
            landing = self.order.index(keeper) + 1  # immediately right
        else:
            raise LinkInputError("over must be OVER_LEFT or OVER_RIGHT")
        jogger.row_b = r
        fresh = self._new_col(row_a=r, hint=jogger.hint)
        self._insert(fresh, landing)
        if over == OVER_LEFT:
            self.alive[i], self.alive[i + 1] = fresh, keeper
        else:
            self.alive[i], self.alive[i + 1] = keeper, fresh

    # -- finishing ------------------------------------------------------------

    def build(self) -> GridDiagram:
        if self.alive:
            raise LinkInputError("diagram not closed: strands remain alive")
        n = len(self.order)
        if self.n_rows != n:
            raise LinkInputError("row/column count mismatch")  # unreachable
        for col in self.order:
            if col.row_a is None or col.row_b is None:
                raise LinkInputError("open column")  # unreachable
        # partner columns through each row
        by_row: dict[int, list[int]] = {}
        for ci, col in enumerate(self.order):
            by_row.setdefault(col.row_a, []).append(ci)
            by_row.setdefault(col.row_b, []).append(ci)
        for r, cols in by_row.items():
            if len(cols) != 2:
                raise LinkInputError("row does not have exactly two endpoints")
        # orient components: flow[c] = +1 means the strand runs row_a -> row_b
        flow = [0] * n
        for start in range(n):
            if flow[start]:
                continue
            comp = []
            c = start
            enter_at_a = True  # traversal enters column c at row_a
            while True:
                comp.append((c, enter_at_a))
                leave_row = self.order[c].row_b if enter_at_a else self.order[c].row_a
                a, b = by_row[leave_row]
                c2 = b if a == c else a
                enter_at_a = self.order[c2].row_a == leave_row
                c = c2
                if (c, enter_at_a) == comp[0]:
                    break
            # seed deterministically from data both members of a mutant
            # pair share: hinted columns first, then any column created
            # outside a rotated block (epoch 0), by creation order
            def _rank(entry):
                c2, _ea = entry
                col = self.order[c2]
                return (col.hint is None, col.epoch, col.created)

            c2, ea = min(comp, key=_rank)
            h = self.order[c2].hint
            if h is None:
                h = 1
            sign = h if ea else -h
            for c2, ea in comp:
                flow[c2] = sign if ea else -sign
        X = [0] * n
        O = [0] * n
        for ci, col in enumerate(self.order):
            if flow[ci] > 0:
                X[ci], O[ci] = col.row_a, col.row_b
            else:
                X[ci], O[ci] = col.row_b, col.row_a
        return GridDiagram(n, X, O)


def braid_closure_grid(b: BraidWord) -> GridDiagram:
    """Raw grid of the braid closure, size 2s + m, before simplification."""
    if not b.word:
        raise LinkInputError("braid word must be nonempty")
    s = b.strands
    bld = RectBuilder()
    bottom_rows = [bld._new_row() for _ in range(s)]
    for j in range(s):
        col = bld._new_col(row_a=bottom_rows[j], hint=1)  # strands flow upward
        bld.order.append(col)
        bld.alive.append(col)
    for g in b.word:
        bld.cross(abs(g) - 1, OVER_LEFT if g > 0 else OVER_RIGHT)
    # nested closure arcs, outermost for position 1; tops created right-to-left
    for j in range(s, 0, -1):
        top = bld._new_row()
        c = bld.alive.pop()
        c.row_b = top
        arc = bld._new_col(row_a=bottom_rows[j - 1], row_b=top, hint=None)
        bld.order.append(arc)
    return bld.build()


# -- tangles -------------------------------------------------------------------
#
# A Tangle is a 2-in / 2-out Morse fragment acting on two adjacent strands.
# Events carry positions relative to the fragment's leftmost strand.

Cross = tuple  # ("x", pos, over)
Cup = tuple  # ("u", pos)
Cap = tuple  # ("n", pos)


@dataclass(frozen=True)
class Tangle:
    events: tuple = ()

    def __add__(self, other: "Tangle") -> "Tangle":
        """Vertical stacking: self at the bottom, other above."""
        return Tangle(self.events + other.events)

    def width_profile(self):
        """Strand count before each event (starting from 2)."""
        w = 2
        out = []
        for ev in self.events:
            out.append(w)
            if ev[0] == "u":
                w += 2
            elif ev[0] == "n":
                w -= 2
        if w != 2:
            raise LinkInputError("tangle fragment does not end with two strands")
        return out

    def rotated(self) -> "Tangle":
        """Half-turn rotation in the plane: order reversed, positions
        mirrored, cups and caps exchanged, over/under preserved."""
        widths = self.width_profile()
        out = []
        for ev, w in zip(reversed(self.events), reversed(widths)):
            if ev[0] == "x":
                out.append(("x", w - 2 - ev[1], ev[2]))
            elif ev[0] == "u":
                # a cup at i among w strands puts the pair at (i, i+1) of
                # w+2; mirrored it caps positions (w-i, w-i+1)
                out.append(("n", w - ev[1]))
            else:
                # a cap at i among w strands becomes a cup recreating the
                # pair at the mirrored slot of the w-strand row
                out.append(("u", w - 2 - ev[1]))
        return Tangle(tuple(out))

    def crossing_count(self) -> int:
        return sum(1 for ev in self.events if ev[0] == "x")


def identity_tangle() -> Tangle:
    return Tangle()

def vertical_twists(m: int) -> Tangle:
    """|m| half-twists of the two strands; sign gives the crossing sense."""
    over = OVER_LEFT if m > 0 else OVER_RIGHT
    return Tangle(tuple(("x", 0, over) for _ in range(abs(m))))


def tangle_sum(t1: Tangle, t2: Tangle) -> Tangle:
    """Horizontal juxtaposition of two fragments."""
    ev: list = [("u", 1)]
    ev.extend(t1.events)  # acts on strands 0,1
    ev.extend((kind, pos + 2, *rest) for kind, pos, *rest in t2.events)
    ev.append(("n", 1))
    return Tangle(tuple(ev))


def _horizontal_full_twist(positive: bool) -> Tangle:
    """The [+2] or [-2] integer tangle: one full horizontal twist."""
    a, b = (OVER_LEFT, OVER_RIGHT) if positive else (OVER_RIGHT, OVER_LEFT)
    return Tangle((("u", 1), ("x", 0, a), ("x", 1, b), ("n", 2)))


def horizontal_twists(m: int) -> Tangle:
    """Integer tangle of |m| horizontal half-twists (even m only: odd
    horizontal twists change the boundary connectivity and are not needed
    by the catalog).  Integer tangles compose by horizontal sum."""
    if m % 2:
        raise LinkInputError("only even horizontal twist counts are supported")
    if m == 0:
        return horizontal_zero()
    block = _horizontal_full_twist(m > 0)
    out = block
    for _ in range(abs(m) // 2 - 1):
        out = tangle_sum(out, block)
    return out


def horizontal_zero() -> Tangle:
    """The zero-crossing horizontal tangle: a cap below a cup."""
    return Tangle((("n", 0), ("u", 0)))


def tangle_from_braid(b: BraidWord) -> Tangle:
    """The spec's two-in/two-out box: birth a pair between the through
    strands, run the 4-strand word, kill the middle pair."""
    if b.strands != 4:
        raise LinkInputError("tangle braid words live in B_4")
    ev: list = [("u", 1)]
    for g in b.word:
        ev.append(("x", abs(g) - 1, OVER_LEFT if g > 0 else OVER_RIGHT))
    ev.append(("n", 1))
    return Tangle(tuple(ev))


def rotate_braid_tangle(b: BraidWord) -> BraidWord:
    """Word-level half-turn: reverse the word and flip sigma_i to sigma_{4-i}."""
    if b.strands != 4:
        raise LinkInputError("tangle braid words live in B_4")
    w = tuple(
        (4 - abs(g)) * (1 if g > 0 else -1) for g in reversed(b.word)
    )
    return BraidWord(4, w)


def numerator_closure_grid(t: Tangle) -> GridDiagram:
    """Close a fragment's bottom pair with a cup and top pair with a cap."""
    bld = RectBuilder()
    bld.cup(0, hints=(1, -1))
    _run_fragment(bld, t, offset=0)
    bld.cap(0)
    return bld.build()


def mutant_closure_grid(inner: Tangle, outer: Tangle, k: int, l: int) -> GridDiagram:
    """The twist-region link: a four-strand plat frame (strands 1-2 and 3-4
    capped together top and bottom) whose middle bundle carries, bottom to
    top, l half-twists, the inner tangle, k half-twists and the outer
    tangle."""
    bld = RectBuilder()
    bld.cup(0, hints=(-1, 1))  # left wire flows down, bundle up
    bld.cup(2, hints=(1, -1))
    for ev in vertical_twists(l).events:
        _apply(bld, ev, offset=1)
    bld.epoch = 1  # the inner block is the rotated box of the mutation
    _run_fragment(bld, inner, offset=1)
    bld.epoch = 0
    for ev in vertical_twists(k).events:
        _apply(bld, ev, offset=1)
    _run_fragment(bld, outer, offset=1)
    bld.cap(2)
    bld.cap(0)
    return bld.build()


def _apply(bld: RectBuilder, ev, offset: int):
    kind = ev[0]
    if kind == "x":
        bld.cross(ev[1] + offset, ev[2])
    elif kind == "u":
        bld.cup(ev[1] + offset)
    elif kind == "n":
        bld.cap(ev[1] + offset)
    else:
        raise LinkInputError(f"unknown event {ev!r}")


def _run_fragment(bld: RectBuilder, t: Tangle, offset: int):
    for ev in t.events:
        _apply(bld, ev, offset)
