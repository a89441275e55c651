"""Numba kernels: windowed state enumeration, rectangle differentials, and
sparse GF(2) rank.

States are permutations column -> row, packed 4 bits per column into a
uint64 (grid size <= 16).  Enumeration assigns columns left to right,
maintaining the Maslov non-inversion count incrementally and pruning on
the reachable Alexander range via static per-column weight bounds.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_N = 16


@njit(cache=True, nogil=True)
def _pack(perm, n):
    v = np.uint64(0)
    for i in range(n):
        v |= np.uint64(perm[i]) << np.uint64(4 * i)
    return v


@njit(cache=True, nogil=True)
def _unpack(v, perm, n):
    for i in range(n):
        perm[i] = np.int64((v >> np.uint64(4 * i)) & np.uint64(15))


@njit(cache=True, nogil=True)
def _popcount32(x):
    x = x - ((x >> 1) & 0x55555555)
    x = (x & 0x33333333) + ((x >> 2) & 0x33333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F
    return ((x * 0x01010101) & 0xFFFFFFFF) >> 24


@njit(cache=True, nogil=True)
def enumerate_states(n, aweight, mweight, a2_lo, a2_hi, max_states):
    """All states with a2_lo <= A2-weight-sum <= a2_hi.

    Returns (perms, a2sums, msums, noninvs, status): status 0 ok, 1 over
    limit.  The A2 and Maslov values of a state are its weight sums plus
    table constants (and the non-inversion count for Maslov), which the
    caller folds in.
    """
    # static suffix bounds of the per-column Alexander weights
    suf_max = np.zeros(n + 1, dtype=np.int64)
    suf_min = np.zeros(n + 1, dtype=np.int64)
    for c in range(n - 1, -1, -1):
        hi = aweight[c, 0]
        lo = aweight[c, 0]
        for r in range(1, n):
            if aweight[c, r] > hi:
                hi = aweight[c, r]
            if aweight[c, r] < lo:
                lo = aweight[c, r]
        suf_max[c] = suf_max[c + 1] + hi
        suf_min[c] = suf_min[c + 1] + lo

    # first pass: count
    count = 0
    perm = np.zeros(n, dtype=np.int64)
    perms = np.zeros(0, dtype=np.uint64)
    a2s = np.zeros(0, dtype=np.int64)
    msums = np.zeros(0, dtype=np.int64)
    nis = np.zeros(0, dtype=np.int64)
    out = 0
    for _pass in range(2):
        if _pass == 1:
            perms = np.zeros(count, dtype=np.uint64)
            a2s = np.zeros(count, dtype=np.int64)
            msums = np.zeros(count, dtype=np.int64)
            nis = np.zeros(count, dtype=np.int64)
            out = 0
        depth = 0
        used = 0
        a2 = 0
        ms = 0
        ni = 0
        row_at = np.full(n, -1, dtype=np.int64)
        next_row = np.zeros(n, dtype=np.int64)
        while depth >= 0:
            if depth == n:
                if _pass == 0:
                    count += 1
                    if count > max_states:
                        return (
                            np.zeros(0, dtype=np.uint64),
                            np.zeros(0, dtype=np.int64),
                            np.zeros(0, dtype=np.int64),
                            np.zeros(0, dtype=np.int64),
                            1,
                        )
                else:
                    perms[out] = _pack(perm, n)
                    a2s[out] = a2
                    msums[out] = ms
                    nis[out] = ni
                    out += 1
                depth -= 1
                if depth < 0:
                    break
                r = row_at[depth]
                used &= ~(1 << r)
                a2 -= aweight[depth, r]
                ms -= mweight[depth, r]
                ni -= _popcount32(used & ((1 << r) - 1))
                next_row[depth] = r + 1
                continue
            advanced = False
            r = next_row[depth]
            while r < n:
                if not (used >> r) & 1:
                    na2 = a2 + aweight[depth, r]
                    if (
                        na2 + suf_max[depth + 1] >= a2_lo
                        and na2 + suf_min[depth + 1] <= a2_hi
                    ):
                        ni += _popcount32(used & ((1 << r) - 1))
                        used |= 1 << r
                        a2 = na2
                        ms += mweight[depth, r]
                        row_at[depth] = r
                        perm[depth] = r
                        next_row[depth] = r + 1
                        depth += 1
                        if depth < n:
                            next_row[depth] = 0
                        advanced = True
                        break
                r += 1
            if not advanced:
                depth -= 1
                if depth < 0:
                    break
                r = row_at[depth]
                used &= ~(1 << r)
                a2 -= aweight[depth, r]
                ms -= mweight[depth, r]
                ni -= _popcount32(used & ((1 << r) - 1))
                next_row[depth] = r + 1
    return perms, a2s, msums, nis, 0


@njit(cache=True, nogil=True)
def _rect_clear(n, perm, xrows, orows, c0, w, r0, h, forbid_x, forbid_o):
    """True when the rectangle with SW grid corner (c0, r0), extents (w, h),
    contains no forbidden marker cells and no other state points."""
    for dc in range(w):
        c = c0 + dc
        if c >= n:
            c -= n
        if forbid_x:
            if (xrows[c] - r0) % n < h:
                return False
        if forbid_o:
            if (orows[c] - r0) % n < h:
                return False
        if dc > 0:
            v = (perm[c] - r0) % n
            if 0 < v < h:
                return False
    return True


@njit(cache=True, nogil=True)
def _count_x_inside(n, xrows, c0, w, r0, h):
    cnt = 0
    for dc in range(w):
        c = c0 + dc
        if c >= n:
            c -= n
        if (xrows[c] - r0) % n < h:
            cnt += 1
    return cnt


@njit(cache=True, nogil=True)
def _bsearch(arr, lo, hi, key):
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True, nogil=True)
def graded_edges(n, xrows, orows, perms, src_lo, src_hi, dst_lo, dst_hi):
    """Edges of the A2-preserving differential from states
    perms[src_lo:src_hi] to perms[dst_lo:dst_hi] (each slice sorted).

    Counts empty rectangles (no X, no O, no state interior); a pair of
    states is connected when an odd number of its rectangles is empty.
    Returns (src_local, dst_local) index arrays.
    """
    max_edges = (src_hi - src_lo) * 4
    e_src = np.zeros(max_edges, dtype=np.int64)
    e_dst = np.zeros(max_edges, dtype=np.int64)
    cnt = 0
    perm = np.zeros(n, dtype=np.int64)
    for si in range(src_lo, src_hi):
        _unpack(perms[si], perm, n)
        for i in range(n - 1):
            for j in range(i + 1, n):
                r = perm[i]
                s = perm[j]
                w1 = j - i
                h1 = (s - r) % n
                par = 0
                if _rect_clear(n, perm, xrows, orows, i, w1, r, h1, True, True):
                    par ^= 1
                if _rect_clear(
                    n, perm, xrows, orows, j, n - w1, s, (r - s) % n, True, True
                ):
                    par ^= 1
                if par:
                    perm[i], perm[j] = s, r
                    key = _pack(perm, n)
                    perm[i], perm[j] = r, s
                    pos = _bsearch(perms, dst_lo, dst_hi, key)
                    if pos < dst_hi and perms[pos] == key:
                        if cnt >= max_edges:
                            ns = max_edges * 2
                            t1 = np.zeros(ns, dtype=np.int64)
                            t2 = np.zeros(ns, dtype=np.int64)
                            t1[:cnt] = e_src
                            t2[:cnt] = e_dst
                            e_src = t1
                            e_dst = t2
                            max_edges = ns
                        e_src[cnt] = si - src_lo
                        e_dst[cnt] = pos - dst_lo
                        cnt += 1
                    else:
                        # graded differential cannot leave the A2 block
                        return (
                            np.zeros(1, dtype=np.int64),
                            np.zeros(0, dtype=np.int64),
                        )
    return e_src[:cnt], e_dst[:cnt]


@njit(cache=True, nogil=True)
def filtered_edges(n, xrows, orows, perms, n_states):
    """Edges of the Alexander-filtered differential (rectangles clear of O
    and of state interior; X allowed) over the full sorted state list.
    Returns (src, dst) global index arrays; parity per target pair."""
    max_edges = n_states * 4
    e_src = np.zeros(max_edges, dtype=np.int64)
    e_dst = np.zeros(max_edges, dtype=np.int64)
    cnt = 0
    perm = np.zeros(n, dtype=np.int64)
    for si in range(n_states):
        _unpack(perms[si], perm, n)
        for i in range(n - 1):
            for j in range(i + 1, n):
                r = perm[i]
                s = perm[j]
                w1 = j - i
                h1 = (s - r) % n
                par = 0
                if _rect_clear(n, perm, xrows, orows, i, w1, r, h1, False, True):
                    par ^= 1
                if _rect_clear(
                    n, perm, xrows, orows, j, n - w1, s, (r - s) % n, False, True
                ):
                    par ^= 1
                if par:
                    perm[i], perm[j] = s, r
                    key = _pack(perm, n)
                    perm[i], perm[j] = r, s
                    pos = _bsearch(perms, 0, n_states, key)
                    if pos < n_states and perms[pos] == key:
                        if cnt >= max_edges:
                            ns = max_edges * 2
                            t1 = np.zeros(ns, dtype=np.int64)
                            t2 = np.zeros(ns, dtype=np.int64)
                            t1[:cnt] = e_src
                            t2[:cnt] = e_dst
                            e_src = t1
                            e_dst = t2
                            max_edges = ns
                        e_src[cnt] = si
                        e_dst[cnt] = pos
                        cnt += 1
    return e_src[:cnt], e_dst[:cnt]


@njit(cache=True, nogil=True)
def gf2_rank_sparse(e_src, e_dst, ncols, nrows):
    """Rank over GF(2) of the matrix with a 1 at (e_dst[k], e_src[k]).

    Left-to-right column reduction with max-row pivots; columns are kept
    as sorted row-index arrays in a growable pool.
    """
    nnz = e_src.shape[0]
    if nnz == 0:
        return 0
    # CSC by source column (counting sort; e_src need not be sorted)
    col_ptr = np.zeros(ncols + 1, dtype=np.int64)
    for k in range(nnz):
        col_ptr[e_src[k] + 1] += 1
    for c in range(ncols):
        col_ptr[c + 1] += col_ptr[c]
    rows_by_col = np.zeros(nnz, dtype=np.int64)
    fill = col_ptr.copy()
    for k in range(nnz):
        c = e_src[k]
        rows_by_col[fill[c]] = e_dst[k]
        fill[c] += 1

    pivot_owner = np.full(nrows, -1, dtype=np.int64)
    pool = np.zeros(max(4 * nnz, 1024), dtype=np.int64)
    pool_top = 0
    own_start = np.zeros(ncols, dtype=np.int64)
    own_len = np.zeros(ncols, dtype=np.int64)
    cur = np.zeros(nrows, dtype=np.int64)
    tmp = np.zeros(nrows, dtype=np.int64)
    rank = 0
    for c in range(ncols):
        clen = 0
        for k in range(col_ptr[c], col_ptr[c + 1]):
            cur[clen] = rows_by_col[k]
            clen += 1
        if clen == 0:
            continue
        cur[:clen].sort()
        # drop duplicate entries mod 2 (defensive; inputs are simple)
        m = 0
        k = 0
        while k < clen:
            k2 = k
            while k2 < clen and cur[k2] == cur[k]:
                k2 += 1
            if (k2 - k) % 2 == 1:
                cur[m] = cur[k]
                m += 1
            k = k2
        clen = m
        while clen > 0:
            piv = cur[clen - 1]
            owner = pivot_owner[piv]
            if owner < 0:
                pivot_owner[piv] = c
                if pool_top + clen > pool.shape[0]:
                    grow = pool.shape[0] * 2
                    while grow < pool_top + clen:
                        grow *= 2
                    npool = np.zeros(grow, dtype=np.int64)
                    npool[:pool_top] = pool[:pool_top]
                    pool = npool
                own_start[c] = pool_top
                own_len[c] = clen
                for k in range(clen):
                    pool[pool_top + k] = cur[k]
                pool_top += clen
                rank += 1
                break
            # XOR with the owner column (merge of sorted lists)
            os_ = own_start[owner]
            ol = own_len[owner]
            a = 0
            b = 0
            m = 0
            while a < clen and b < ol:
                va = cur[a]
                vb = pool[os_ + b]
                if va == vb:
                    a += 1
                    b += 1
                elif va < vb:
                    tmp[m] = va
                    m += 1
                    a += 1
                else:
                    tmp[m] = vb
                    m += 1
                    b += 1
            while a < clen:
                tmp[m] = cur[a]
                m += 1
                a += 1
            while b < ol:
                tmp[m] = pool[os_ + b]
                m += 1
                b += 1
            for k in range(m):
                cur[k] = tmp[k]
            clen = m
    return rank
