"""Bigraded rank tables and the fixed tensor-factor spaces.

Gradings are tracked as (M, A2) with A2 twice the Alexander grading, so
links with an even number of components stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..poly import HalfLaurent


@dataclass(frozen=True)
class BigradedRanks:
    """Finite map (Maslov, doubled Alexander) -> positive rank."""

    ranks: dict
    l: int
    n: int
    name: str = ""

    def __post_init__(self):
        clean = {k: int(v) for k, v in self.ranks.items() if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("negative rank")
        object.__setattr__(self, "ranks", clean)

    def total_dim(self) -> int:
        return sum(self.ranks.values())

    def rank(self, m: int, a2: int) -> int:
        return self.ranks.get((m, a2), 0)

    def alexander_range(self):
        if not self.ranks:
            return None
        a2s = [a2 for _, a2 in self.ranks]
        return min(a2s), max(a2s)

    def slice_a2(self, a2: int) -> dict:
        return {m: r for (m, aa), r in self.ranks.items() if aa == a2}

    def shifted(self, dm: int = 0, da2: int = 0) -> "BigradedRanks":
        """Shift gradings: entry (m, a2) moves to (m + dm, a2 + da2)."""
        return BigradedRanks(
            {(m + dm, a2 + da2): r for (m, a2), r in self.ranks.items()},
            self.l,
            self.n,
            self.name,
        )

    def __add__(self, other: "BigradedRanks") -> "BigradedRanks":
        out = dict(self.ranks)
        for k, v in other.ranks.items():
            out[k] = out.get(k, 0) + v
        return BigradedRanks(out, self.l, self.n, self.name)

    def tensor(self, other: "BigradedRanks") -> "BigradedRanks":
        out: dict = {}
        for (m1, a1), r1 in self.ranks.items():
            for (m2, a2), r2 in other.ranks.items():
                k = (m1 + m2, a1 + a2)
                out[k] = out.get(k, 0) + r1 * r2
        return BigradedRanks(out, self.l, self.n, self.name)

    def euler_polynomial(self) -> HalfLaurent:
        """Sum of (-1)^M t^A over the table (exponents are A2 halves)."""
        acc: dict = {}
        for (m, a2), r in self.ranks.items():
            acc[a2] = acc.get(a2, 0) + (r if m % 2 == 0 else -r)
        return HalfLaurent(acc)

    def symmetry_holds(self) -> bool:
        """rk_M(A) = rk_{M-2A}(-A), i.e. (m, a2) <-> (m - a2, -a2)."""
        for (m, a2), r in self.ranks.items():
            if self.rank(m - a2, -a2) != r:
                return False
        return True

    def delta_ranks(self) -> dict:
        """Collapse onto the diagonal delta2 = 2M - A2 (twice M - A)."""
        out: dict = {}
        for (m, a2), r in self.ranks.items():
            d2 = 2 * m - a2
            out[d2] = out.get(d2, 0) + r
        return out

    def is_thin(self) -> bool:
        return len(self.delta_ranks()) <= 1

    def genus(self) -> int:
        """Top Alexander grading with nonzero rank (knots: integer)."""
        if not self.ranks:
            raise ValueError("empty rank table")
        top = max(a2 for _, a2 in self.ranks)
        if top % 2:
            raise ValueError("top Alexander grading is not an integer")
        return top // 2

    def to_json_obj(self) -> dict:
        return {
            "l": self.l,
            "n": self.n,
            "ranks": [[m, a2, r] for (m, a2), r in sorted(self.ranks.items())],
        }

    @classmethod
    def from_json_obj(cls, obj: dict, name: str = "") -> "BigradedRanks":
        return cls(
            {(int(m), int(a2)): int(r) for m, a2, r in obj["ranks"]},
            int(obj["l"]),
            int(obj["n"]),
            name,
        )


# the skein triangle tensor factor: F^2 at (-1, 0), F at (0, 1) and (-2, -1)
V_SPACE = BigradedRanks({(-1, 0): 2, (0, 2): 1, (-2, -2): 1}, l=0, n=0, name="V")

# the grid-model tensor factor: F at (0, 0) and (-1, -1)
W_SPACE = BigradedRanks({(0, 0): 1, (-1, -2): 1}, l=0, n=0, name="W")
