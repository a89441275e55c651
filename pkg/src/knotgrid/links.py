"""Link presentations: braid words, grid diagrams, twist families, mutant pairs.

Grid conventions used throughout the package: a grid of size n is the
torus [0,n] x [0,n] with X and O markers in cells, one of each per row and
per column, recorded as permutations column -> row.  The planar diagram
draws a vertical segment in each column between its two markers and a
horizontal one in each row, verticals crossing over horizontals.  Segments
are oriented from X to O in the columns and from O to X in the rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


class LinkInputError(ValueError):
    """Invalid presentation data."""


@dataclass(frozen=True)
class BraidWord:
    """A braid word: positive g means the elementary crossing sigma_g
    (strand g passes over strand g+1), negative g its inverse."""

    strands: int
    word: tuple[int, ...]

    def __init__(self, strands: int, word=()):
        if strands < 1:
            raise LinkInputError("braid needs at least one strand")
        w = tuple(int(g) for g in word)
        for g in w:
            if g == 0 or abs(g) >= strands:
                raise LinkInputError(f"letter {g} invalid for {strands} strands")
        object.__setattr__(self, "strands", int(strands))
        object.__setattr__(self, "word", w)

    def exponent_sum(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    def permutation(self) -> tuple[int, ...]:
        """Position each bottom strand reaches at the top (0-based)."""
        pos = list(range(self.strands))
        for g in self.word:
            i = abs(g) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        # pos[p] = id of strand currently at position p; invert
        top = [0] * self.strands
        for p, sid in enumerate(pos):
            top[sid] = p
        return tuple(top)

    def components(self) -> int:
        """Number of components of the braid closure."""
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for s in range(self.strands):
            if not seen[s]:
                count += 1
                j = s
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        return count

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in self.word))

    def reverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(reversed(self.word)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise LinkInputError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.word + other.word)

    def to_json_obj(self) -> dict:
        return {"strands": self.strands, "word": list(self.word)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BraidWord":
        return cls(int(obj["strands"]), [int(g) for g in obj["word"]])


@dataclass(frozen=True)
class GridDiagram:
    """Toroidal n x n grid; X[i] and O[i] are the marker rows of column i."""

    size: int
    X: tuple[int, ...]
    O: tuple[int, ...]

    def __init__(self, size: int, X, O):
        n = int(size)
        X = tuple(int(v) for v in X)
        O = tuple(int(v) for v in O)
        if n < 2:
            raise LinkInputError("grid size must be at least 2")
        if sorted(X) != list(range(n)) or sorted(O) != list(range(n)):
            raise LinkInputError("X and O must be permutations of 0..n-1")
        if any(X[i] == O[i] for i in range(n)):
            raise LinkInputError("X and O markers collide in a column")
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "O", O)

    def components(self) -> int:
        n = self.size
        xinv = [0] * n
        for i in range(n):
            xinv[self.X[i]] = i
        seen = [False] * n
        count = 0
        for c in range(n):
            if not seen[c]:
                count += 1
                j = c
                while not seen[j]:
                    seen[j] = True
                    j = xinv[self.O[j]]
        if count < 1:
            raise LinkInputError("grid presents an empty link")  # unreachable
        return count

    def mirror(self) -> "GridDiagram":
        """Reflect left-right; presents the mirror image link."""
        n = self.size
        return GridDiagram(
            n,
            tuple(self.X[n - 1 - i] for i in range(n)),
            tuple(self.O[n - 1 - i] for i in range(n)),
        )

    def translate(self, dc: int = 0, dr: int = 0) -> "GridDiagram":
        """Cyclic torus translation by dc columns and dr rows."""
        n = self.size
        X = [0] * n
        O = [0] * n
        for i in range(n):
            X[(i + dc) % n] = (self.X[i] + dr) % n
            O[(i + dc) % n] = (self.O[i] + dr) % n
        return GridDiagram(n, X, O)

    def transpose(self) -> "GridDiagram":
        """Swap rows and columns (marker roles preserved)."""
        n = self.size
        X = [0] * n
        O = [0] * n
        for i in range(n):
            X[self.X[i]] = i
            O[self.O[i]] = i
        return GridDiagram(n, X, O)

    def to_json_obj(self) -> dict:
        return {"size": self.size, "X": list(self.X), "O": list(self.O)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "GridDiagram":
        return cls(int(obj["size"]), obj["X"], obj["O"])


@dataclass(frozen=True)
class TwistFamilySpec:
    """Marked positive letter of a base braid; L_n replaces it by n copies."""

    base: BraidWord
    site: int

    def __post_init__(self):
        if not (0 <= self.site < len(self.base.word)):
            raise LinkInputError("twist site out of range")
        if self.base.word[self.site] <= 0:
            raise LinkInputError("twist site must mark a positive letter")


def insert_twists(spec: TwistFamilySpec, n: int) -> BraidWord:
    """The n-th member of the twist family: the marked letter becomes n
    positive half-twists (n < 0 gives |n| inverse letters, n = 0 deletes)."""
    g = spec.base.word[spec.site]
    if n > 0:
        block = (g,) * n
    elif n < 0:
        block = (-g,) * (-n)
    else:
        block = ()
    w = spec.base.word[: spec.site] + block + spec.base.word[spec.site + 1 :]
    return BraidWord(spec.base.strands, w)


def twist_site_in_member(spec: TwistFamilySpec, n: int) -> int | None:
    """Index of the twist block's first letter inside insert_twists(spec, n),
    or None when n = 0 (the crossing was resolved away)."""
    return spec.site if n != 0 else None


@dataclass(frozen=True)
class ComponentData:
    count: int
    pairwise_lk: tuple[tuple[int, ...], ...]
    site_same_component: tuple[bool, ...]

    def to_json_obj(self) -> dict:
        return {
            "count": self.count,
            "pairwise_lk": [list(r) for r in self.pairwise_lk],
            "site_same_component": list(self.site_same_component),
        }


def _braid_component_data(b: BraidWord, sites) -> ComponentData:
    perm = b.permutation()
    comp = [-1] * b.strands
    count = 0
    for s in range(b.strands):
        if comp[s] < 0:
            j = s
            while comp[j] < 0:
                comp[j] = count
                j = perm[j]
            count += 1
    # walk the word once, recording the strand ids meeting at each letter
    pos = list(range(b.strands))
    letter_pairs = []
    double_lk = [[0] * count for _ in range(count)]
    for g in b.word:
        i = abs(g) - 1
        u, v = pos[i], pos[i + 1]
        letter_pairs.append((u, v))
        cu, cv = comp[u], comp[v]
        if cu != cv:
            s = 1 if g > 0 else -1
            double_lk[cu][cv] += s
            double_lk[cv][cu] += s
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    lk = []
    for row in double_lk:
        out = []
        for v in row:
            if v % 2:
                raise LinkInputError("odd inter-component crossing count")  # unreachable
            out.append(v // 2)
        lk.append(tuple(out))
    flags = []
    for s in sites:
        if not (0 <= s < len(b.word)):
            raise LinkInputError(f"marked site {s} out of range")
        u, v = letter_pairs[s]
        flags.append(comp[u] == comp[v])
    return ComponentData(count, tuple(lk), tuple(flags))


def grid_crossings(g: GridDiagram):
    """Planar crossings (column, row, sign) of the grid diagram."""
    n = g.size
    xinv = [0] * n
    oinv = [0] * n
    for i in range(n):
        xinv[g.X[i]] = i
        oinv[g.O[i]] = i
    out = []
    for c in range(n):
        lo_c, hi_c = sorted((g.X[c], g.O[c]))
        up = g.O[c] > g.X[c]  # column oriented X -> O
        for r in range(lo_c + 1, hi_c):
            a, b = xinv[r], oinv[r]
            lo_r, hi_r = (a, b) if a < b else (b, a)
            if lo_r < c < hi_r:
                to_left = xinv[r] < oinv[r]  # row oriented O -> X
                # right-hand rule with the vertical strand on top
                sign = 1 if up == to_left else -1
                out.append((c, r, sign))
    return out


def _grid_component_labels(g: GridDiagram):
    """Component id per column, following the link through the markers."""
    n = g.size
    xinv = [0] * n
    for i in range(n):
        xinv[g.X[i]] = i
    comp = [-1] * n
    count = 0
    for c in range(n):
        if comp[c] < 0:
            j = c
            while comp[j] < 0:
                comp[j] = count
                j = xinv[g.O[j]]
            count += 1
    return comp, count


def _grid_component_data(g: GridDiagram, sites) -> ComponentData:
    if sites:
        raise LinkInputError("marked sites are defined for braid input only")
    comp, count = _grid_component_labels(g)
    n = g.size
    oinv = [0] * n
    for i in range(n):
        oinv[g.O[i]] = i
    double_lk = [[0] * count for _ in range(count)]
    for c, r, sign in grid_crossings(g):
        cu = comp[c]
        cv = comp[oinv[r]]  # the row's component, via its O marker's column
        if cu != cv:
            double_lk[cu][cv] += sign
            double_lk[cv][cu] += sign
    lk = []
    for row in double_lk:
        out = []
        for v in row:
            if v % 2:
                raise LinkInputError("odd inter-component crossing count")  # unreachable
            out.append(v // 2)
        lk.append(tuple(out))
    return ComponentData(count, tuple(lk), ())


def component_data(link, sites=()) -> ComponentData:
    """Component count, pairwise linking numbers, per-site same-component flags."""
    if isinstance(link, BraidWord):
        return _braid_component_data(link, tuple(sites))
    if isinstance(link, GridDiagram):
        return _grid_component_data(link, tuple(sites))
    raise TypeError(f"unsupported link presentation {type(link)!r}")


def writhe(g: GridDiagram) -> int:
    return sum(s for _, _, s in grid_crossings(g))


def parse_link_spec(text: str):
    """Parse a CLI --link argument: braid:S:g1,g2,... | grid:@file | catalog:NAME."""
    from .catalog import catalog as _lookup

    if text.startswith("braid:"):
        body = text[len("braid:") :]
        parts = body.split(":")
        if len(parts) != 2:
            raise LinkInputError("expected braid:STRANDS:g1,g2,...")
        strands = int(parts[0])
        word = [int(x) for x in parts[1].split(",") if x.strip()]
        return BraidWord(strands, word)
    if text.startswith("grid:@"):
        path = text[len("grid:@") :]
        with open(path, "r", encoding="utf-8") as fh:
            return GridDiagram.from_json_obj(json.load(fh))
    if text.startswith("grid:"):
        return GridDiagram.from_json_obj(json.loads(text[len("grid:") :]))
    if text.startswith("catalog:"):
        return _lookup(text[len("catalog:") :])
    raise LinkInputError(f"unrecognized link spec {text!r}")
