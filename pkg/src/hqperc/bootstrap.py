"""The r-neighbour bootstrap process on Q_d.

Starting from a seed set, every round simultaneously infects each healthy
vertex with at least r infected neighbours; the closure is the fixed point
of this update.  A seed percolates when its closure is all of Q_d.

The production engine is bit parallel: the whole 2^d-vertex state lives in
one big integer, the neighbour image along coordinate i is produced by
swapping the two half-lanes of the state along that coordinate, and the
per-vertex neighbour counts accumulate in ceil(log2(r+1)) bit planes of a
saturating binary counter, giving O(d * 2^d / w) word operations per round.
A naive per-vertex rescan engine is kept as an independent reference; the
two must agree on every input.
"""

from __future__ import annotations

import functools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb

from .hypercube import (
    D_MAX,
    DomainError,
    VertexSet,
    check_dimension,
    format_vertex,
    neighbors,
)

DEFAULT_SEARCH_BUDGET = 2_000_000

# subset counts below this are scanned in-process even when workers > 1
_PARALLEL_MIN = 50_000

_MASK_CACHE_MAX_D = 22


class SearchAborted(RuntimeError):
    """An exhaustive search refused to run past its subset budget."""


def _check_threshold(r: int, d: int) -> int:
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise DomainError(f"threshold must be a positive integer, got {r!r}")
    if r > d:
        raise DomainError(f"threshold {r} exceeds dimension {d}: no vertex has {r} neighbours")
    return r


def _build_masks(d: int) -> tuple[tuple[int, ...], int]:
    """Per-coordinate masks selecting the indices whose bit i is 0, plus the all-ones state."""
    n = 1 << d
    masks = []
    for i in range(d):
        s = 1 << i
        m = (1 << s) - 1
        width = 2 * s
        while width < n:
            m |= m << width
            width *= 2
        masks.append(m)
    return tuple(masks), (1 << n) - 1


@functools.lru_cache(maxsize=None)
def _cached_masks(d: int) -> tuple[tuple[int, ...], int]:
    return _build_masks(d)


def _masks_for(d: int) -> tuple[tuple[int, ...], int]:
    if d <= _MASK_CACHE_MAX_D:
        return _cached_masks(d)
    return _build_masks(d)


def _plane_count(r: int) -> int:
    planes = 1
    while (1 << planes) < r + 1:
        planes += 1
    return planes


def _round_bits(bits: int, d: int, r: int, masks, full: int) -> int:
    """One synchronous update of the raw state integer."""
    nplanes = _plane_count(r)
    planes = [0] * nplanes
    for i in range(d):
        s = 1 << i
        m = masks[i]
        carry = ((bits & m) << s) | ((bits >> s) & m)
        for j in range(nplanes):
            t = planes[j] & carry
            planes[j] ^= carry
            carry = t
            if not carry:
                break
        else:
            # counter would wrap: clamp the overflowed lanes to all-ones
            for j in range(nplanes):
                planes[j] |= carry
    # bit-sliced comparison: count >= r
    ge = 0
    eq = full
    for j in reversed(range(nplanes)):
        if (r >> j) & 1:
            eq &= planes[j]
        else:
            ge |= eq & planes[j]
    return bits | ge | eq


def _close_bits(bits: int, d: int, r: int) -> int:
    masks, full = _masks_for(d)
    while True:
        new = _round_bits(bits, d, r, masks, full)
        if new == bits:
            return bits
        bits = new


def closure(a0: VertexSet, r: int) -> VertexSet:
    """The unique fixed point of the synchronous r-neighbour update containing a0."""
    _check_threshold(r, a0.d)
    return VertexSet(a0.d, _close_bits(a0.bits, a0.d, r))


def percolates(a0: VertexSet, r: int) -> bool:
    """True iff the closure of a0 is all of Q_d."""
    return closure(a0, r).is_full()


def closure_rounds(a0: VertexSet, r: int) -> tuple[VertexSet, int]:
    """The closure plus the number of strictly growing rounds it took."""
    _check_threshold(r, a0.d)
    masks, full = _masks_for(a0.d)
    bits = a0.bits
    rounds = 0
    while True:
        new = _round_bits(bits, a0.d, r, masks, full)
        if new == bits:
            return VertexSet(a0.d, bits), rounds
        bits = new
        rounds += 1


def step(a: VertexSet, r: int) -> VertexSet:
    """One synchronous round of the r-neighbour update."""
    _check_threshold(r, a.d)
    masks, full = _masks_for(a.d)
    return VertexSet(a.d, _round_bits(a.bits, a.d, r, masks, full))


@dataclass(frozen=True)
class InfectionTrace:
    """The full synchronous round history of a bootstrap run.

    rounds[t] is the set infected after t rounds; the list stops at the
    first fixed point, so the final element equals the closure and no two
    consecutive entries are equal (unless the seed is already fixed).
    """

    d: int
    r: int
    rounds: tuple[VertexSet, ...]
    percolated: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "rounds": [
                [format_vertex(v, self.d) for v in stage] for stage in self.rounds
            ],
            "percolated": self.percolated,
        }


def trace(a0: VertexSet, r: int) -> InfectionTrace:
    """Run the process round by round, recording every intermediate state."""
    _check_threshold(r, a0.d)
    masks, full = _masks_for(a0.d)
    d = a0.d
    bits = a0.bits
    rounds = [a0]
    while True:
        new = _round_bits(bits, d, r, masks, full)
        if new == bits:
            break
        bits = new
        rounds.append(VertexSet(d, bits))
    return InfectionTrace(d, r, tuple(rounds), bits == full)


def reference_closure(a0: VertexSet, r: int) -> VertexSet:
    """Independent per-vertex rescan engine, for cross-checking the bit-parallel one."""
    _check_threshold(r, a0.d)
    d = a0.d
    infected = set(a0)
    while True:
        added = {
            v
            for v in range(1 << d)
            if v not in infected
            and sum(1 for u in neighbors(v, d) if u in infected) >= r
        }
        if not added:
            return VertexSet.of(d, infected)
        infected |= added


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("HQPERC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"HQPERC_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _unrank_combination(n: int, size: int, rank: int) -> list[int]:
    """The rank-th size-subset of range(n) in lexicographic order."""
    members = []
    x = 0
    remaining = size
    while remaining:
        block = comb(n - x - 1, remaining - 1)
        if rank < block:
            members.append(x)
            remaining -= 1
        else:
            rank -= block
        x += 1
    return members


def _scan_chunk(d: int, r: int, size: int, start: int, count: int) -> tuple[int, ...] | None:
    """Scan `count` subsets starting at lexicographic rank `start`; first witness or None."""
    masks, full = _masks_for(d)
    n = 1 << d
    members = _unrank_combination(n, size, start)
    for _ in range(count):
        bits = 0
        for v in members:
            bits |= 1 << v
        state = bits
        while True:
            new = _round_bits(state, d, r, masks, full)
            if new == state:
                break
            state = new
        if state == full:
            return tuple(members)
        # advance to the next combination in lexicographic order
        i = size - 1
        while i >= 0 and members[i] == n - size + i:
            i -= 1
        if i < 0:
            return None
        members[i] += 1
        for j in range(i + 1, size):
            members[j] = members[j - 1] + 1
    return None


def search_percolating_set(
    d: int,
    r: int,
    size: int,
    budget: int | None = None,
    workers: int | None = None,
) -> VertexSet | None:
    """Exhaustively look for a percolating set of exactly the given cardinality.

    Subsets are enumerated in lexicographic order of their member indices and
    the first witness found is returned, so the result is deterministic even
    when the scan is partitioned across worker processes.  Returns None when
    the full enumeration proves no witness exists.  A search whose subset
    count C(2^d, size) exceeds the budget refuses to start and raises
    SearchAborted; pass an explicit budget to opt in to larger scans.
    """
    check_dimension(d)
    _check_threshold(r, d)
    n = 1 << d
    if not 0 <= size <= n:
        raise DomainError(f"size {size} out of range for Q_{d}")
    limit = DEFAULT_SEARCH_BUDGET if budget is None else budget
    if limit < 1:
        raise DomainError(f"budget must be positive, got {limit}")
    total = comb(n, size)
    if total > limit:
        raise SearchAborted(
            f"search aborted: C({n}, {size}) = {total} subsets exceeds budget {limit}"
        )

    nworkers = _worker_count(workers)
    if size == 0:
        return None  # the empty seed never percolates for r >= 1, d >= 1
    if nworkers <= 1 or total < _PARALLEL_MIN:
        found = _scan_chunk(d, r, size, 0, total)
    else:
        chunk = -(-total // (nworkers * 4))
        starts = list(range(0, total, chunk))
        found = None
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            jobs = [(d, r, size, s, min(chunk, total - s)) for s in starts]
            for result in pool.map(_scan_chunk, *zip(*jobs)):
                if result is not None:
                    found = result
                    break
    if found is None:
        return None
    return VertexSet.of(d, found)
