"""Independent brute-force oracles for the HFK engine and tau.

Everything here recomputes from first principles with plain Python data
structures: explicit planar point sets for the gradings, cell-by-cell
rectangle scans for the differential, dense list-of-list GF(2) elimination
for ranks, and the subcomplex-rank definition for tau.  No code is shared
with the optimized engine beyond the grid type itself.
"""

from __future__ import annotations

import itertools

from knotgrid.links import GridDiagram


def _pairs_dominated(pts_a, pts_b):
    """Count pairs (p, q) with p < q coordinatewise strictly."""
    return sum(
        1 for p in pts_a for q in pts_b if p[0] < q[0] and p[1] < q[1]
    )


def oracle_gradings(g: GridDiagram, perm):
    """(M, A2) of one state, straight from the J-formulas with doubled
    coordinates (states at even points, markers at odd)."""
    n = g.size
    state = [(2 * i, 2 * perm[i]) for i in range(n)]
    omarks = [(2 * i + 1, 2 * g.O[i] + 1) for i in range(n)]
    xmarks = [(2 * i + 1, 2 * g.X[i] + 1) for i in range(n)]
    l = g.components()

    def maslov(marks):
        j_xx = _pairs_dominated(state, state)  # symmetric: I = J here
        two_j_xo = _pairs_dominated(state, marks) + _pairs_dominated(marks, state)
        j_oo = _pairs_dominated(marks, marks)
        return j_xx - two_j_xo + j_oo + 1

    m_o = maslov(omarks)
    m_x = maslov(xmarks)
    a2 = (m_o - m_x) - (n - l)
    return m_o, a2


def _rect_cells(n, c0, w, r0, h):
    return {((c0 + dc) % n, (r0 + dr) % n) for dc in range(w) for dr in range(h)}


def _rect_interior_lines(n, c0, w, r0, h):
    cols = {(c0 + dc) % n for dc in range(1, w)}
    rows = {(r0 + dr) % n for dr in range(1, h)}
    return cols, rows


def oracle_rectangles(g: GridDiagram, perm_x, perm_y):
    """All four toroidal rectangles from state x to state y (must differ by
    a transposition), as (cells, interior_cols, interior_rows) triples."""
    n = g.size
    diff = [i for i in range(n) if perm_x[i] != perm_y[i]]
    if len(diff) != 2:
        return []
    i, j = diff
    if perm_x[i] != perm_y[j] or perm_x[j] != perm_y[i]:
        return []
    out = []
    for c0, r0 in ((i, perm_x[i]), (j, perm_x[j])):
        w = (j - c0 if c0 == i else i - c0) % n
        h = ((perm_x[j] if c0 == i else perm_x[i]) - perm_x[c0]) % n
        out.append(
            (
                _rect_cells(n, c0, w, r0, h),
                *_rect_interior_lines(n, c0, w, r0, h),
            )
        )
    return out


def _counts_rect(g, perm_x, perm_y, forbid_x_markers, forbid_o_markers):
    n = g.size
    xcells = {(i, g.X[i]) for i in range(n)}
    ocells = {(i, g.O[i]) for i in range(n)}
    total = 0
    for cells, icols, irows in oracle_rectangles(g, perm_x, perm_y):
        if forbid_x_markers and cells & xcells:
            continue
        if forbid_o_markers and cells & ocells:
            continue
        if any(perm_x[c] in irows for c in icols):
            continue
        total += 1
    return total


def oracle_tilde_tables(g: GridDiagram):
    """Rank tables of the tilde complex by dense GF(2) elimination.

    Returns a dict (M, A2) -> homology rank.
    """
    n = g.size
    states = list(itertools.permutations(range(n)))
    grading = {s: oracle_gradings(g, s) for s in states}
    buckets: dict = {}
    for s in states:
        buckets.setdefault(grading[s], []).append(s)
    for b in buckets.values():
        b.sort()

    def boundary_rank(ms, a2):
        src = buckets.get((ms, a2), [])
        dst = buckets.get((ms - 1, a2), [])
        if not src or not dst:
            return 0
        index = {s: k for k, s in enumerate(dst)}
        rows = []
        for s in src:
            row = [0] * len(dst)
            for t in dst:
                if _counts_rect(g, s, t, True, True) % 2:
                    row[index[t]] = 1
            rows.append(row)
        return _gf2_rank_dense(rows)

    ranks = {}
    for (ms, a2), bucket in buckets.items():
        h = len(bucket) - boundary_rank(ms, a2) - boundary_rank(ms + 1, a2)
        assert h >= 0
        if h:
            ranks[(ms, a2)] = h
    return ranks


def _gf2_rank_dense(rows):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    pivot_row_for_col = {}
    for row in rows:
        cur = row
        while True:
            lead = next((c for c in range(ncols) if cur[c]), None)
            if lead is None:
                break
            if lead not in pivot_row_for_col:
                pivot_row_for_col[lead] = cur
                rank += 1
                break
            piv = pivot_row_for_col[lead]
            cur = [a ^ b for a, b in zip(cur, piv)]
    return rank


def oracle_w_divide(table: dict, copies: int) -> dict:
    cur = dict(table)
    for _ in range(copies):
        quotient: dict = {}
        for m, a2 in sorted(cur, key=lambda k: -k[1]):
            q = cur[(m, a2)] - quotient.get((m + 1, a2 + 2), 0)
            assert q >= 0, "oracle W-division went negative"
            if q:
                quotient[(m, a2)] = q
        rebuilt: dict = {}
        for (m, a2), q in quotient.items():
            rebuilt[(m, a2)] = rebuilt.get((m, a2), 0) + q
            rebuilt[(m - 1, a2 - 2)] = rebuilt.get((m - 1, a2 - 2), 0) + q
        assert rebuilt == cur, "oracle W-division inexact"
        cur = quotient
    return cur


def oracle_hfk(g: GridDiagram) -> dict:
    tilde = oracle_tilde_tables(g)
    return oracle_w_divide(tilde, g.size - g.components())


def oracle_tau(g: GridDiagram) -> int:
    """tau from the definition: the smallest filtration level j whose
    subcomplex already carries the Maslov-zero homology of the filtered
    complex (that level is tau in these conventions).

    Works on the full filtered complex (rectangles clear of O markers and
    of other state points; X markers allowed), so only small grids.
    """
    n = g.size
    if g.components() != 1:
        raise ValueError("tau oracle needs a knot")
    states = list(itertools.permutations(range(n)))
    grading = {s: oracle_gradings(g, s) for s in states}
    by_m: dict = {}
    for s in states:
        by_m.setdefault(grading[s][0], []).append(s)
    for b in by_m.values():
        b.sort()

    def filtered_boundary(s, targets):
        row = []
        for t in targets:
            if _counts_rect(g, s, t, False, True) % 2:
                row.append(t)
        return row

    m0 = by_m.get(0, [])
    m1 = by_m.get(1, [])
    mm1 = by_m.get(-1, [])

    def h0_image_rank(j2):
        """dim of the image of H_0(F_j) -> H_0(C) for filtration 2A <= j2."""
        sub0 = [s for s in m0 if grading[s][1] <= j2]
        sub1 = [s for s in m1 if grading[s][1] <= j2]
        if not sub0:
            return 0
        # cycles in the subcomplex: kernel of d0 restricted
        idx_m1 = {t: k for k, t in enumerate(mm1)}
        rows0 = []
        for s in sub0:
            row = [0] * len(mm1)
            for t in filtered_boundary(s, mm1):
                row[idx_m1[t]] = 1
            rows0.append(row)
        kernel = _gf2_kernel_basis(rows0)
        if not kernel:
            return 0
        # mod out boundaries from the FULL complex at M = 1
        idx_m0 = {s: k for k, s in enumerate(m0)}
        bnd = []
        for s in m1:
            row = [0] * len(m0)
            for t in filtered_boundary(s, m0):
                row[idx_m0[t]] = 1
            if any(row):
                bnd.append(row)
        # embed kernel vectors (over sub0) into full m0 coordinates
        emb = []
        for vec in kernel:
            row = [0] * len(m0)
            for c, s in enumerate(sub0):
                if vec[c]:
                    row[idx_m0[s]] = 1
            emb.append(row)
        return _gf2_rank_dense(bnd + emb) - _gf2_rank_dense(bnd)

    a2s = sorted({grading[s][1] for s in m0})
    target = h0_image_rank(a2s[-1] if a2s else 0)
    assert target == 1, f"filtered H_0 should have rank 1, got {target}"
    for j2 in a2s:
        if h0_image_rank(j2) >= 1:
            assert j2 % 2 == 0
            return j2 // 2
    raise AssertionError("no filtration level carries H_0")


def _gf2_kernel_basis(rows):
    """Basis of the kernel of the matrix whose ROWS are the images of the
    source basis vectors (i.e. kernel of the transpose action x -> xM)."""
    nsrc = len(rows)
    if nsrc == 0:
        return []
    ncols = len(rows[0])
    # augment with identity to track combinations
    aug = [list(rows[i]) + [1 if k == i else 0 for k in range(nsrc)] for i in range(nsrc)]
    pivot_for_col = {}
    kernel = []
    for i in range(nsrc):
        cur = aug[i]
        while True:
            lead = next((c for c in range(ncols) if cur[c]), None)
            if lead is None:
                kernel.append(cur[ncols:])
                break
            if lead not in pivot_for_col:
                pivot_for_col[lead] = cur
                break
            cur = [a ^ b for a, b in zip(cur, pivot_for_col[lead])]
    return kernel
