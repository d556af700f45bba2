"""Path counts in the multi-dimensional Eulerian graph E_c.

Vertices are points of Z_{>=0}^{n+1}.  From vertex i there are
``c_j + i_{n+1}`` edges to ``i + e_j`` (j <= n) and
``c_{n+1} + i_1 + ... + i_n`` edges to ``i + e_{n+1}``.  ``A_c(i)`` counts
paths from the origin to ``i`` with those multiplicities.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DegenerateNormalizer, DimensionMismatch, MalformedInput

__all__ = [
    "DEFAULT_BRUTEFORCE_BUDGET",
    "PathCountTable",
    "path_count",
    "path_count_bruteforce",
    "bruteforce_counts",
    "ratio_sequence",
    "step_multiplicity",
]

DEFAULT_BRUTEFORCE_BUDGET = 12


def _check_param(c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(int(x) for x in c)
    if len(c) < 2:
        raise DimensionMismatch(f"parameter vector needs at least 2 entries, got {len(c)}")
    if any(x < 0 for x in c):
        raise MalformedInput(f"parameter entries must be nonnegative: {c}")
    return c


def _check_index(c: tuple[int, ...], i: Sequence[int]) -> tuple[int, ...]:
    i = tuple(int(x) for x in i)
    if len(i) != len(c):
        raise DimensionMismatch(f"index has {len(i)} coordinates, parameter vector has {len(c)}")
    if any(x < 0 for x in i):
        raise MalformedInput(f"index coordinates must be nonnegative: {i}")
    return i


def step_multiplicity(c: Sequence[int], pos: Sequence[int], j: int) -> int:
    """Number of edges from ``pos`` in direction ``j`` (0-based)."""
    last = len(c) - 1
    if j == last:
        return c[last] + sum(pos[:last])
    return c[j] + pos[last]


class PathCountTable:
    """Memoized A_c for one parameter vector.

    Readers may run concurrently; table growth is serialized by a lock.
    """

    def __init__(self, c: Sequence[int]):
        self.c = _check_param(c)
        self._memo: dict[tuple[int, ...], int] = {(0,) * len(self.c): 1}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._memo)

    def __call__(self, i: Sequence[int]) -> int:
        i = _check_index(self.c, i)
        hit = self._memo.get(i)
        if hit is not None:
            return hit
        with self._lock:
            self._fill(i)
        return self._memo[i]

    def _fill(self, target: tuple[int, ...]) -> None:
        # explicit stack instead of recursion: i_{n+1} can be in the hundreds
        c, memo = self.c, self._memo
        d = len(c)
        last = d - 1
        stack = [target]
        while stack:
            v = stack[-1]
            if v in memo:
                stack.pop()
                continue
            missing = []
            total = 0
            for j in range(d):
                if v[j] == 0:
                    continue
                prev = v[:j] + (v[j] - 1,) + v[j + 1:]
                val = memo.get(prev)
                if val is None:
                    missing.append(prev)
                    continue
                if j == last:
                    total += (c[last] + sum(v[:last])) * val
                else:
                    total += (c[j] + v[last]) * val
            if missing:
                stack.extend(missing)
            else:
                memo[v] = total
                stack.pop()


_tables: dict[tuple[int, ...], PathCountTable] = {}
_tables_lock = threading.Lock()


def _table(c: Sequence[int]) -> PathCountTable:
    key = _check_param(c)
    t = _tables.get(key)
    if t is None:
        with _tables_lock:
            t = _tables.setdefault(key, PathCountTable(key))
    return t


def path_count(c: Sequence[int], i: Sequence[int]) -> int:
    """Exact number of paths from the origin to ``i`` in E_c."""
    return _table(c)(i)


def _orderings(counts: list[int], n_steps: int) -> Iterator[list[int]]:
    """Distinct orderings of a step multiset given by per-direction counts."""
    seq: list[int] = []

    def rec():
        if len(seq) == n_steps:
            yield seq
            return
        for j, k in enumerate(counts):
            if k:
                counts[j] -= 1
                seq.append(j)
                yield from rec()
                seq.pop()
                counts[j] += 1

    yield from rec()


def path_count_bruteforce(
    c: Sequence[int], i: Sequence[int], budget: int = DEFAULT_BRUTEFORCE_BUDGET
) -> int:
    """Count paths by listing every step ordering and multiplying edge counts."""
    c = _check_param(c)
    i = _check_index(c, i)
    steps = sum(i)
    if steps > budget:
        raise BudgetExceeded(f"enumeration needs {steps} steps, budget is {budget}")
    total = 0
    for seq in _orderings(list(i), steps):
        pos = [0] * len(c)
        weight = 1
        for j in seq:
            weight *= step_multiplicity(c, pos, j)
            if not weight:
                break
            pos[j] += 1
        total += weight
    return total


def bruteforce_counts(
    c: Sequence[int], max_steps: int, budget: int = DEFAULT_BRUTEFORCE_BUDGET
) -> dict[tuple[int, ...], int]:
    """Enumerate every walk of length <= ``max_steps`` from the origin.

    Each walk is an explicit row (no merging of walks that meet), so the
    result is an independent check on the recurrence.  Returns the summed
    weight per endpoint; endpoints reached only with weight 0 are omitted.
    """
    c = _check_param(c)
    if max_steps > budget:
        raise BudgetExceeded(f"enumeration of {max_steps} steps exceeds budget {budget}")
    d = len(c)
    last = d - 1
    bound = (max(c) + max_steps) ** max_steps * d**max_steps
    dtype = np.int64 if bound < 2**62 else object
    base = max_steps + 1
    place = [base ** (last - j) for j in range(d)]

    # per walk: endpoint key (mixed radix), last coordinate, weight.
    # the first n coordinates always sum to (step - last coordinate).
    key = np.zeros(1, dtype=np.int64)
    tail = np.zeros(1, dtype=np.int64)
    w = np.ones(1, dtype=dtype)
    keys, weights = [key], [w]
    for step in range(max_steps):
        nk, nt, nw = [], [], []
        for j in range(d):
            if j == last:
                mult = (c[last] + step - tail).astype(dtype)
            else:
                mult = (c[j] + tail).astype(dtype)
            ww = w * mult
            keep = ww != 0
            if not keep.any():
                continue
            nk.append(key[keep] + place[j])
            nt.append(tail[keep] + (j == last))
            nw.append(ww[keep])
        if not nk:
            break
        key, tail, w = np.concatenate(nk), np.concatenate(nt), np.concatenate(nw)
        keys.append(key)
        weights.append(w)

    all_k = np.concatenate(keys)
    all_w = np.concatenate(weights)
    if dtype is np.int64 and len(all_w) < 2**22:
        # exact: each 31-bit limb sums to < 2**53 over fewer than 2**22 walks
        size = base**d
        limbs = []
        rest = all_w
        while True:
            limbs.append(np.bincount(all_k, weights=rest & (2**31 - 1), minlength=size))
            rest = rest >> 31
            if not rest.any():
                break
        present = np.flatnonzero(np.bincount(all_k, minlength=size))
        uniq = present
        sums = [sum(int(limb[k]) << (31 * t) for t, limb in enumerate(limbs)) for k in present.tolist()]
    else:
        order = np.argsort(all_k, kind="stable")
        all_k, all_w = all_k[order], all_w[order]
        starts = np.flatnonzero(np.r_[True, all_k[1:] != all_k[:-1]])
        uniq = all_k[starts]
        sums = np.add.reduceat(all_w, starts).tolist()

    out = {}
    for k, s in zip(uniq.tolist(), sums):
        coords = []
        for _ in range(d):
            k, r = divmod(k, base)
            coords.append(r)
        out[tuple(reversed(coords))] = int(s)
    return out


def ratio_sequence(c: Sequence[int], prefix: Sequence[int], max_h: int) -> list[Fraction]:
    """``A_c(prefix, h) / (c_{n+1} + m)**h`` for h = 1..max_h."""
    c = _check_param(c)
    prefix = tuple(int(x) for x in prefix)
    if len(prefix) != len(c) - 1:
        raise DimensionMismatch(f"prefix has {len(prefix)} entries, expected {len(c) - 1}")
    if any(x < 0 for x in prefix):
        raise MalformedInput(f"prefix entries must be nonnegative: {prefix}")
    if max_h < 1:
        raise MalformedInput("max_h must be at least 1")
    base = c[-1] + sum(prefix)
    if base == 0:
        raise DegenerateNormalizer("c_{n+1} + m is zero; the ratio sequence is undefined")
    table = _table(c)
    return [Fraction(table(prefix + (h,)), base**h) for h in range(1, max_h + 1)]
