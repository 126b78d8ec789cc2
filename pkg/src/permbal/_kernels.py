"""Hot counting kernels: numba-jitted with a pure-numpy fallback.

The public functions dispatch by backend.  By default the numba path is
used whenever numba imports; set PERMBAL_NO_NUMBA=1 to force the numpy
fallback (same results, slower).  `benchmarks/bench_kernels.py` times the
two paths against each other.

Pattern counts are indexed by the lexicographic rank of the pattern within
S_k (123 -> 0, 132 -> 1, ..., 321 -> 5 for k = 3).

All k <= 4 profile kernels run in int64; callers must keep
k! * C(n, k) < 2**63 (checked in profiles.py) or use the naive path.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

ENV_FLAG = "PERMBAL_NO_NUMBA"

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        return decorator


def _numba_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip() not in ("", "0")


def backend() -> str:
    """Active backend name: "numba" or "numpy"."""
    return "numba" if (HAVE_NUMBA and not _numba_disabled()) else "numpy"


# ---------------------------------------------------------------------------
# Pattern index tables (pure python, computed once)
# ---------------------------------------------------------------------------


def _rank_pattern(vals) -> int:
    """Lexicographic rank within S_k of the pattern of distinct values."""
    from math import factorial

    k = len(vals)
    ranks = [1 + sum(1 for w in vals if w < v) for v in vals]
    idx = 0
    remaining = list(range(1, k + 1))
    for i in range(k):
        d = remaining.index(ranks[i])
        idx += d * factorial(k - 1 - i)
        remaining.pop(d)
    return idx


def _build_pattern4_table() -> np.ndarray:
    """table[asc, band_a, interval_b] -> S4 lex index.

    Middle pair (u, w) at positions 2 and 3; `asc` = (u < w); `band_a`
    classifies the first value a against {u, w}; `interval_b` locates the
    last value b within the four gaps cut by sorted(a, u, w).
    """
    table = np.zeros((2, 3, 4), dtype=np.int64)
    for asc in (0, 1):
        u, w = (10, 20) if asc else (20, 10)
        for band, a in enumerate((5, 15, 25)):
            t1, t2, t3 = sorted((a, u, w))
            for interval, b in enumerate((t1 - 1, t1 + 1, t2 + 1, t3 + 1)):
                table[asc, band, interval] = _rank_pattern((a, u, w, b))
    return table


PATTERN4_TABLE = _build_pattern4_table()

_FACT = (1, 1, 2, 6, 24)


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    num = 1
    for i in range(k):
        num = num * (n - i) // (i + 1)
    return num


# ---------------------------------------------------------------------------
# numpy fallback implementations
# ---------------------------------------------------------------------------


def _prefix_table(v: np.ndarray) -> np.ndarray:
    """P[m][y] = #{idx < m : v[idx] <= y}, shape (n+1, n+1), int32."""
    n = v.shape[0]
    P = np.zeros((n + 1, n + 1), dtype=np.int32)
    if n:
        ys = np.arange(n + 1, dtype=v.dtype)
        P[1:] = np.cumsum(v[:, None] <= ys[None, :], axis=0, dtype=np.int32)
    return P


def _inversions_np(v: np.ndarray) -> int:
    """Mergesort-free inversion count via a Fenwick tree (O(n log n))."""
    n = v.shape[0]
    tree = [0] * (n + 1)
    inv = 0
    for i in range(n - 1, -1, -1):
        x = int(v[i]) - 1
        while x > 0:
            inv += tree[x]
            x -= x & (-x)
        x = int(v[i])
        while x <= n:
            tree[x] += 1
            x += x & (-x)
    return inv


def _profile2_np(v: np.ndarray) -> np.ndarray:
    n = v.shape[0]
    inv = _inversions_np(v)
    return np.array([_binom(n, 2) - inv, inv], dtype=np.int64)


def _profile3_np(v: np.ndarray) -> np.ndarray:
    n = v.shape[0]
    counts = np.zeros(6, dtype=np.int64)
    if n < 3:
        return counts
    P = _prefix_table(v)
    for kp in range(1, n):
        i = np.arange(kp)
        a = v[:kp]
        c = int(v[kp])
        lo = np.minimum(a, c)
        hi = np.maximum(a, c)
        below = P[kp, lo] - P[i + 1, lo]
        upto = P[kp, hi] - P[i + 1, hi]
        mid = upto - below
        above = (kp - i - 1) - upto
        asc = a < c
        desc = ~asc
        counts[2] += int(below[asc].sum())
        counts[0] += int(mid[asc].sum())
        counts[1] += int(above[asc].sum())
        counts[4] += int(below[desc].sum())
        counts[5] += int(mid[desc].sum())
        counts[3] += int(above[desc].sum())
    return counts


def _profile4_np(v: np.ndarray) -> np.ndarray:
    n = v.shape[0]
    counts = np.zeros(24, dtype=np.int64)
    if n < 4:
        return counts
    P = _prefix_table(v)
    ys = np.arange(n + 1, dtype=np.int64)
    table = PATTERN4_TABLE
    for kp in range(2, n):
        Rk = ys - P[kp + 1]
        rem = n - kp - 1
        w = int(v[kp])
        for j in range(1, kp):
            u = int(v[j])
            asc = 1 if u < w else 0
            a = v[:j].astype(np.int64)
            t1 = np.minimum(np.minimum(a, u), w)
            t3 = np.maximum(np.maximum(a, u), w)
            t2 = a + u + w - t1 - t3
            r1 = Rk[t1]
            r2 = Rk[t2]
            r3 = Rk[t3]
            cs = np.stack((r1, r2 - r1, r3 - r2, rem - r3))
            band = np.where(a == t1, 0, np.where(a == t2, 1, 2))
            idx = table[asc, band]  # shape (j, 4)
            np.add.at(counts, idx.T, cs)
    return counts


def _lex_ranks_batch(cols: list[np.ndarray]) -> np.ndarray:
    """Lexicographic S_k index per row for k columns of distinct values."""
    k = len(cols)
    ranks = []
    for i in range(k):
        r = np.ones_like(cols[i])
        for j in range(k):
            if j != i:
                r += cols[j] < cols[i]
        ranks.append(r)
    idx = np.zeros_like(cols[0])
    from math import factorial

    for i in range(k - 1):
        d = ranks[i] - 1
        for j in range(i):
            d = d - (ranks[i] > ranks[j])
        idx = idx + d * factorial(k - 1 - i)
    return idx


def _deltas_batch(V: np.ndarray, k: int) -> np.ndarray:
    """Scaled delta max_tau |k! * count - C(n,k)| for each row of V."""
    rows, n = V.shape
    combos = list(itertools.combinations(range(n), k))
    counts = np.zeros((rows, _FACT[k]), dtype=np.int64)
    ar = np.arange(rows)
    for combo in combos:
        idx = _lex_ranks_batch([V[:, c] for c in combo])
        counts[ar, idx] += 1
    return np.abs(_FACT[k] * counts - _binom(n, k)).max(axis=1)


def _transform_batch(V: np.ndarray, g: int) -> np.ndarray:
    n = V.shape[1]
    if g == 1:  # r
        out = np.empty_like(V)
        np.put_along_axis(out, V - 1, np.broadcast_to(n - np.arange(n), V.shape), axis=1)
        return out
    if g == 2:  # r2
        return (n + 1 - V)[:, ::-1]
    if g == 3:  # r3
        out = np.empty_like(V)
        np.put_along_axis(out, n - V, np.broadcast_to(np.arange(1, n + 1), V.shape), axis=1)
        return out
    if g == 4:  # reverse
        return V[:, ::-1]
    if g == 5:  # complement
        return n + 1 - V
    if g == 6:  # inverse
        out = np.empty_like(V)
        np.put_along_axis(out, V - 1, np.broadcast_to(np.arange(1, n + 1), V.shape), axis=1)
        return out
    if g == 7:  # antidiagonal
        out = np.empty_like(V)
        np.put_along_axis(out, n - V, np.broadcast_to(n - np.arange(n), V.shape), axis=1)
        return out
    raise ValueError(g)


def _canonical_mask_batch(V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(keep, stab): lex-min-of-orbit mask and stabilizer sizes."""
    rows = V.shape[0]
    keep = np.ones(rows, dtype=bool)
    stab = np.ones(rows, dtype=np.int64)
    for g in range(1, 8):
        T = _transform_batch(V, g)
        diff = T != V
        any_diff = diff.any(axis=1)
        first = np.argmax(diff, axis=1)
        ar = np.arange(rows)
        less = any_diff & (T[ar, first] < V[ar, first])
        keep &= ~less
        stab += (~any_diff).astype(np.int64)
    return keep, stab


def _sweep_np(n: int, k: int, max_wit: int, chunk: int = 200_000):
    best = None
    witnesses: list[tuple[int, ...]] = []
    wit_count = 0
    balanced = 0
    nodes = 0
    it = itertools.permutations(range(1, n + 1))
    while True:
        batch = list(itertools.islice(it, chunk))
        if not batch:
            break
        V = np.array(batch, dtype=np.int64)
        nodes += V.shape[0]
        keep, stab = _canonical_mask_batch(V)
        S = V[keep]
        if S.shape[0] == 0:
            continue
        stabs = stab[keep]
        deltas = _deltas_batch(S, k)
        balanced += int((8 // stabs[deltas == 0]).sum())
        m = int(deltas.min())
        if best is None or m < best:
            best = m
            witnesses = []
            wit_count = 0
        if m == best:
            rows = S[deltas == best]
            wit_count += rows.shape[0]
            for r in rows:
                if len(witnesses) < max_wit:
                    witnesses.append(tuple(int(x) for x in r))
        del V, S
    wit_arr = np.array(witnesses if witnesses else np.zeros((0, n)), dtype=np.int64)
    return best, wit_arr, wit_count, balanced, nodes


def _greedy_np(start: np.ndarray, mov_a: np.ndarray, mov_b: np.ndarray, k: int):
    # Same acceptance rule as the jitted kernel: lexicographic (max, sum).
    prof = {2: _profile2_np, 3: _profile3_np, 4: _profile4_np}[k]
    n = start.shape[0]
    target = _binom(n, k)

    def pair(values):
        devs = np.abs(_FACT[k] * prof(values) - target)
        return int(devs.max()), int(devs.sum())

    v = start.copy()
    cur_d, cur_s = pair(v)
    best = cur_d
    best_v = v.copy()
    used = 0
    for t in range(mov_a.shape[0]):
        used += 1
        a, b = int(mov_a[t]), int(mov_b[t])
        if a == b:
            continue
        v[a], v[b] = v[b], v[a]
        d, s = pair(v)
        if d < cur_d or (d == cur_d and s <= cur_s):
            cur_d, cur_s = d, s
            if d < best:
                best = d
                best_v = v.copy()
            if d == 0:
                break
        else:
            v[a], v[b] = v[b], v[a]
    return best, best_v, used


# ---------------------------------------------------------------------------
# numba implementations (same algorithms, scalar loops)
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _inversions_jit(v):
        n = v.shape[0]
        tree = np.zeros(n + 1, dtype=np.int64)
        inv = 0
        for i in range(n - 1, -1, -1):
            x = v[i] - 1
            while x > 0:
                inv += tree[x]
                x -= x & (-x)
            x = v[i]
            while x <= n:
                tree[x] += 1
                x += x & (-x)
        return inv

    @njit(cache=True)
    def _prefix_jit(v):
        n = v.shape[0]
        P = np.zeros((n + 1, n + 1), dtype=np.int32)
        for i in range(1, n + 1):
            val = v[i - 1]
            for y in range(1, n + 1):
                P[i, y] = P[i - 1, y] + (1 if val <= y else 0)
        return P

    @njit(cache=True)
    def _profile3_jit(v):
        n = v.shape[0]
        counts = np.zeros(6, dtype=np.int64)
        if n < 3:
            return counts
        P = _prefix_jit(v)
        for i in range(n):
            a = v[i]
            for kp in range(i + 1, n):
                c = v[kp]
                lo = a if a < c else c
                hi = a + c - lo
                below = P[kp, lo] - P[i + 1, lo]
                upto = P[kp, hi] - P[i + 1, hi]
                mid = upto - below
                above = (kp - i - 1) - upto
                if a < c:
                    counts[2] += below
                    counts[0] += mid
                    counts[1] += above
                else:
                    counts[4] += below
                    counts[5] += mid
                    counts[3] += above
        return counts

    @njit(cache=True)
    def _profile4_jit(v, table):
        n = v.shape[0]
        counts = np.zeros(24, dtype=np.int64)
        if n < 4:
            return counts
        P = _prefix_jit(v)
        for kp in range(2, n):
            w = v[kp]
            rem = n - kp - 1
            for j in range(1, kp):
                u = v[j]
                asc = 1 if u < w else 0
                for i in range(j):
                    a = v[i]
                    t1 = min(a, min(u, w))
                    t3 = max(a, max(u, w))
                    t2 = a + u + w - t1 - t3
                    r1 = t1 - P[kp + 1, t1]
                    r2 = t2 - P[kp + 1, t2]
                    r3 = t3 - P[kp + 1, t3]
                    band = 0 if a == t1 else (1 if a == t2 else 2)
                    counts[table[asc, band, 0]] += r1
                    counts[table[asc, band, 1]] += r2 - r1
                    counts[table[asc, band, 2]] += r3 - r2
                    counts[table[asc, band, 3]] += rem - r3
        return counts

    @njit(cache=True)
    def _delta_pair_jit(v, k, table, target):
        """(max, sum) of |k! * count - C(n,k)| over all order-k patterns."""
        n = v.shape[0]
        best = 0
        total = 0
        if k == 2:
            inv = _inversions_jit(v)
            asc = (n * (n - 1)) // 2 - inv
            for c in (asc, inv):
                d = abs(2 * c - target)
                total += d
                if d > best:
                    best = d
        elif k == 3:
            counts = _profile3_jit(v)
            for idx in range(6):
                d = abs(6 * counts[idx] - target)
                total += d
                if d > best:
                    best = d
        else:
            counts = _profile4_jit(v, table)
            for idx in range(24):
                d = abs(24 * counts[idx] - target)
                total += d
                if d > best:
                    best = d
        return best, total

    @njit(cache=True)
    def _scaled_delta_jit(v, k, table, target):
        best, _ = _delta_pair_jit(v, k, table, target)
        return best

    @njit(cache=True)
    def _transform_jit(v, g, buf):
        n = v.shape[0]
        if g == 1:
            for i in range(n):
                buf[v[i] - 1] = n - i
        elif g == 2:
            for i in range(n):
                buf[i] = n + 1 - v[n - 1 - i]
        elif g == 3:
            for i in range(n):
                buf[n - v[i]] = i + 1
        elif g == 4:
            for i in range(n):
                buf[i] = v[n - 1 - i]
        elif g == 5:
            for i in range(n):
                buf[i] = n + 1 - v[i]
        elif g == 6:
            for i in range(n):
                buf[v[i] - 1] = i + 1
        else:
            for i in range(n):
                buf[n - v[i]] = n - i

    @njit(cache=True)
    def _next_perm_jit(v):
        n = v.shape[0]
        i = n - 2
        while i >= 0 and v[i] >= v[i + 1]:
            i -= 1
        if i < 0:
            return False
        j = n - 1
        while v[j] <= v[i]:
            j -= 1
        v[i], v[j] = v[j], v[i]
        lo, hi = i + 1, n - 1
        while lo < hi:
            v[lo], v[hi] = v[hi], v[lo]
            lo += 1
            hi -= 1
        return True

    @njit(cache=True)
    def _sweep_jit(n, k, table, target, max_wit):
        v = np.arange(1, n + 1, dtype=np.int64)
        buf = np.empty(n, dtype=np.int64)
        witnesses = np.zeros((max_wit, n), dtype=np.int64)
        best = np.int64(2) ** 62
        wit_count = 0
        balanced = 0
        nodes = 0
        while True:
            nodes += 1
            stab = 1
            is_min = True
            for g in range(1, 8):
                _transform_jit(v, g, buf)
                cmp = 0
                for i in range(n):
                    if buf[i] < v[i]:
                        cmp = -1
                        break
                    if buf[i] > v[i]:
                        cmp = 1
                        break
                if cmp < 0:
                    is_min = False
                    break
                if cmp == 0:
                    stab += 1
            if is_min:
                d = _scaled_delta_jit(v, k, table, target)
                if d < best:
                    best = d
                    wit_count = 0
                if d == best:
                    if wit_count < max_wit:
                        witnesses[wit_count] = v
                    wit_count += 1
                if d == 0:
                    balanced += 8 // stab
            if not _next_perm_jit(v):
                break
        return best, witnesses, wit_count, balanced, nodes

    @njit(cache=True)
    def _greedy_jit(start, mov_a, mov_b, k, table, target):
        # Accept lexicographically non-worsening (max, sum) deviation moves:
        # the sum tiebreak gives a gradient across the large l-inf plateaus.
        v = start.copy()
        cur_d, cur_s = _delta_pair_jit(v, k, table, target)
        best = cur_d
        best_v = v.copy()
        used = 0
        for t in range(mov_a.shape[0]):
            used += 1
            a = mov_a[t]
            b = mov_b[t]
            if a == b:
                continue
            tmp = v[a]
            v[a] = v[b]
            v[b] = tmp
            d, s = _delta_pair_jit(v, k, table, target)
            if d < cur_d or (d == cur_d and s <= cur_s):
                cur_d = d
                cur_s = s
                if d < best:
                    best = d
                    best_v[:] = v
                if d == 0:
                    break
            else:
                tmp = v[a]
                v[a] = v[b]
                v[b] = tmp
        return best, best_v, used


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def inversions(v: np.ndarray) -> int:
    if backend() == "numba":
        return int(_inversions_jit(np.ascontiguousarray(v, dtype=np.int64)))
    return _inversions_np(v)


def profile2_counts(v: np.ndarray) -> np.ndarray:
    n = v.shape[0]
    inv = inversions(v)
    return np.array([_binom(n, 2) - inv, inv], dtype=np.int64)


def profile3_counts(v: np.ndarray) -> np.ndarray:
    if backend() == "numba":
        return _profile3_jit(np.ascontiguousarray(v, dtype=np.int64))
    return _profile3_np(np.asarray(v))


def profile4_counts(v: np.ndarray) -> np.ndarray:
    if backend() == "numba":
        return _profile4_jit(np.ascontiguousarray(v, dtype=np.int64), PATTERN4_TABLE)
    return _profile4_np(np.asarray(v))


def sweep_min_delta(n: int, k: int, max_wit: int = 64):
    """(best_scaled_delta, witness_array, witness_count, balanced_count, nodes).

    Enumerates S_n keeping only lexicographic minima of D4 orbits;
    balanced_count sums full orbit sizes, so it counts all of S_n.
    """
    target = _binom(n, k)
    if backend() == "numba":
        best, wits, wc, bal, nodes = _sweep_jit(n, k, PATTERN4_TABLE, target, max_wit)
        return int(best), wits[: min(wc, max_wit)].copy(), int(wc), int(bal), int(nodes)
    best, wits, wc, bal, nodes = _sweep_np(n, k, max_wit)
    return int(best), wits, int(wc), int(bal), int(nodes)


def greedy_descent(start: np.ndarray, mov_a: np.ndarray, mov_b: np.ndarray, k: int):
    """Hill-climb accepting non-worsening transpositions; returns
    (best_scaled_delta, best_values, moves_used)."""
    target = _binom(start.shape[0], k)
    if backend() == "numba":
        best, best_v, used = _greedy_jit(
            np.ascontiguousarray(start, dtype=np.int64),
            np.ascontiguousarray(mov_a, dtype=np.int64),
            np.ascontiguousarray(mov_b, dtype=np.int64),
            k,
            PATTERN4_TABLE,
            target,
        )
        return int(best), best_v, int(used)
    best, best_v, used = _greedy_np(np.asarray(start, dtype=np.int64), mov_a, mov_b, k)
    return int(best), best_v, int(used)
