"""The concordance invariant tau from the Alexander-filtered grid complex.

The filtered hat complex counts rectangles clear of O markers and of other
state points; crossing an X is allowed and lowers the Alexander filtration.
Cancelling differential entries in order of increasing filtration drop is
a filtered homotopy equivalence at every step (entries into a drop-d
target come from sources at least d above it once smaller drops are
exhausted), so the surviving basis realizes the reduced filtered complex.

The survivors must realize W^(n-1) in the Maslov grading: 2^(n-1)
generators with binomial multiplicities, a unique one in grading zero.
tau is minus the Alexander grading of that survivor.
"""

from __future__ import annotations

import heapq

import numpy as np

from ..links import GridDiagram
from .gradings import GradingTables
from . import _kernels
from .engine import ComplexOptions, ResourceLimitError, enumerate_states


class TauContractError(AssertionError):
    """Surviving basis does not realize W^(n-1): engine bug."""


def _filtered_complex(grid: GridDiagram, max_states: int):
    tables, perms, maslov, a2 = enumerate_states(
        grid, ComplexOptions(a2_window=None, max_states=max_states)
    )
    order = np.argsort(perms)
    perms = perms[order]
    maslov = maslov[order]
    a2 = a2[order]
    xrows = np.array(grid.X, dtype=np.int64)
    orows = np.array(grid.O, dtype=np.int64)
    e_src, e_dst = _kernels.filtered_edges(
        grid.size, xrows, orows, perms, perms.shape[0]
    )
    return maslov, a2, e_src, e_dst


CANCEL_STATE_LIMIT = 50_000


def tau(link, max_states: int = 5_000_000, method: str = "auto") -> int:
    """tau of a knot presented by a grid or braid.

    method: "cancel" runs the filtered cancellation with the W^(n-1)
    contract check; "ranks" evaluates the definition directly through
    subcomplex ranks at Maslov gradings -1, 0, 1; "auto" cancels when the
    state count allows it and falls back to ranks (the two agree on every
    grid both can handle, which the test suite pins).
    """
    from ..convert import as_grid

    grid = as_grid(link)
    if grid.components() != 1:
        raise ValueError("tau is defined for knots (one component)")
    if method == "auto":
        method = "cancel" if _factorial(grid.size) <= CANCEL_STATE_LIMIT else "ranks"
    if method == "ranks":
        return _tau_via_ranks(grid, max_states)
    if method != "cancel":
        raise ValueError(f"unknown tau method {method!r}")
    maslov, a2, e_src, e_dst = _filtered_complex(grid, max_states)
    n_states = maslov.shape[0]

    out: dict[int, set[int]] = {i: set() for i in range(n_states)}
    into: dict[int, set[int]] = {i: set() for i in range(n_states)}
    for k in range(e_src.shape[0]):
        s, d = int(e_src[k]), int(e_dst[k])
        out[s].add(d)
        into[d].add(s)

    heap = []
    for s in range(n_states):
        for d in out[s]:
            heapq.heappush(heap, (int(a2[s] - a2[d]), s, d))
    alive = [True] * n_states

    while heap:
        drop, s, d = heapq.heappop(heap)
        if not (alive[s] and alive[d] and d in out[s]):
            continue
        # cancel the pair (s, d)
        alive[s] = alive[d] = False
        sources = into[d] - {s}
        targets = out[s] - {d}
        for a in list(into[d]):
            out[a].discard(d)
        for b in list(out[s]):
            into[b].discard(s)
        for a in list(out[d]):
            into[a].discard(d)
        for b in list(into[s]):
            out[b].discard(s)
        out[s].clear()
        into[d].clear()
        for a in sources:
            if not alive[a]:
                continue
            for b in targets:
                if not alive[b]:
                    continue
                if b in out[a]:
                    out[a].discard(b)
                    into[b].discard(a)
                else:
                    out[a].add(b)
                    into[b].add(a)
                    heapq.heappush(heap, (int(a2[a] - a2[b]), a, b))

    survivors = [i for i in range(n_states) if alive[i]]
    if any(out[i] for i in survivors):
        raise TauContractError("differential did not fully cancel")
    n = grid.size
    expected = {}
    for k in range(n):
        expected[-k] = expected.get(-k, 0) + _binom(n - 1, k)
    got: dict[int, int] = {}
    for i in survivors:
        got[int(maslov[i])] = got.get(int(maslov[i]), 0) + 1
    if got != expected:
        raise TauContractError(
            f"survivors do not realize W^(n-1): got {got}, expected {expected}"
        )
    zeros = [i for i in survivors if maslov[i] == 0]
    if len(zeros) != 1:
        raise TauContractError("Maslov-zero survivor is not unique")
    a2_val = int(a2[zeros[0]])
    if a2_val % 2:
        raise TauContractError("knot survivor has half-integer Alexander grading")
    # the survivor's level is the least filtration level whose subcomplex
    # already carries H_0; with these Alexander conventions that level IS
    # tau (positive trefoil +1, mirror -1, figure-eight 0)
    return a2_val // 2


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _tau_via_ranks(grid: GridDiagram, max_states: int) -> int:
    """tau from the definition: the least filtration level j such that
    H_0 of the level-j subcomplex already surjects onto H_0 of the whole
    filtered complex.

    With U the span of Maslov-zero generators of level <= j, Z the
    Maslov-zero cycles and B the boundaries, surjectivity says
    dim(U & Z) > dim(U & B), i.e. rank[d1 | U] > rank d1 + rank(d0|U).
    Only the Maslov -1, 0, 1 slices enter.
    """
    maslov, a2, e_src, e_dst = _filtered_complex(grid, max_states)
    idx0 = np.flatnonzero(maslov == 0)
    idx1 = np.flatnonzero(maslov == 1)
    idxm1 = np.flatnonzero(maslov == -1)
    pos0 = -np.ones(maslov.shape[0], dtype=np.int64)
    pos0[idx0] = np.arange(idx0.shape[0])
    posm1 = -np.ones(maslov.shape[0], dtype=np.int64)
    posm1[idxm1] = np.arange(idxm1.shape[0])
    pos1 = -np.ones(maslov.shape[0], dtype=np.int64)
    pos1[idx1] = np.arange(idx1.shape[0])

    src_m = maslov[e_src]
    sel1 = src_m == 1  # d1: M=1 -> M=0
    d1_src = pos1[e_src[sel1]]
    d1_dst = pos0[e_dst[sel1]]
    sel0 = src_m == 0  # d0: M=0 -> M=-1
    d0_src = pos0[e_src[sel0]]
    d0_dst = posm1[e_dst[sel0]]
    n1, n0, nm1 = idx1.shape[0], idx0.shape[0], idxm1.shape[0]

    r1 = int(_kernels.gf2_rank_sparse(d1_src, d1_dst, max(n1, 1), max(n0, 1)))
    r0_full = int(_kernels.gf2_rank_sparse(d0_src, d0_dst, max(n0, 1), max(nm1, 1)))
    if n0 - r0_full - r1 != 1:
        raise TauContractError("filtered H_0 is not one-dimensional")

    a2_0 = a2[idx0]
    order = np.argsort(a2_0, kind="stable")
    levels = sorted(set(int(v) for v in a2_0))
    for j2 in levels:
        in_u = a2_0 <= j2
        u_cols = np.flatnonzero(in_u)
        col_map = -np.ones(n0, dtype=np.int64)
        col_map[u_cols] = np.arange(u_cols.shape[0])
        selu = in_u[d0_src]
        r0u = int(
            _kernels.gf2_rank_sparse(
                col_map[d0_src[selu]], d0_dst[selu], max(u_cols.shape[0], 1), max(nm1, 1)
            )
        )
        # augmented matrix [d1 | unit columns of U] into the M=0 space
        aug_src = np.concatenate([d1_src, n1 + np.arange(u_cols.shape[0])])
        aug_dst = np.concatenate([d1_dst, u_cols])
        r1u = int(
            _kernels.gf2_rank_sparse(
                aug_src, aug_dst, n1 + u_cols.shape[0], max(n0, 1)
            )
        )
        if r1u > r1 + r0u:
            if j2 % 2:
                raise TauContractError("tau level is half-integral for a knot")
            return j2 // 2
    raise TauContractError("no filtration level carries H_0")
