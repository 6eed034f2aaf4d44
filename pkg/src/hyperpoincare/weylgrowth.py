"""Level-by-level enumeration of Weyl group elements through their images of ρ.

An element ``w`` is represented by ``w(ρ)`` in fundamental-weight coordinates.
Because ρ is strictly dominant this representation is faithful, and
coordinate ``i`` of ``w(ρ)`` is negative exactly when ``σ_i w`` is shorter
than ``w``. So the next level is obtained from the current one by applying
``σ_i`` wherever coordinate ``i`` is positive, and only the current frontier
has to be kept in memory.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from .cartan import CartanMatrix, Weight, reflect, weyl_vector
from .errors import BudgetExceeded, LevelNotEnumerated, NotFinite
from .polyseries import IntPoly, TruncSeries

log = logging.getLogger(__name__)

__all__ = [
    "GrowthSeries",
    "growth_series",
    "parabolic_coset_growth",
    "enumerate_growth",
    "iter_levels",
    "reduced_words",
    "level_images",
    "finite_order",
    "subgroup_poincare",
    "DEFAULT_MAX_ELEMENTS",
    "DEFAULT_WORD_DEPTH",
]

DEFAULT_MAX_ELEMENTS = 2 ** 31
DEFAULT_WORD_DEPTH = 8
BUDGET_ENV = "HYPERPOINCARE_MAX_BYTES"
_DEFAULT_MAX_BYTES = 2 * 2 ** 30
# |coordinate| * (1 + max|A_ij|) must stay below this to keep int64 exact
_INT64_SAFE = 2 ** 62


def _default_max_bytes() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else _DEFAULT_MAX_BYTES


@dataclass(frozen=True)
class GrowthSeries:
    """Counts ``c_k = |W^k|`` for ``k = 0..truncation``.

    ``complete`` means the enumeration ran out of elements, so the
    coefficients are the whole (finite) Poincaré polynomial.
    ``budget_exceeded`` marks a partial result cut short by the memory or
    element budget; its ``truncation`` is the last level actually counted.
    """

    coeffs: tuple
    truncation: int
    complete: bool
    budget_exceeded: bool = False

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def as_series(self, truncation: Optional[int] = None) -> TruncSeries:
        """Coefficients as a :class:`TruncSeries`; complete series are zero-padded."""
        T = self.truncation if truncation is None else truncation
        if T > self.truncation and not self.complete:
            raise ValueError(f"series only known to t^{self.truncation}")
        c = list(self.coeffs[: T + 1]) + [0] * max(0, T + 1 - len(self.coeffs))
        return TruncSeries(c)

    def as_poly(self) -> IntPoly:
        if not self.complete:
            raise ValueError("series is not complete; the group may be infinite")
        return IntPoly(self.coeffs)


# ---------------------------------------------------------------------------
# frontier arithmetic
# ---------------------------------------------------------------------------

def _unique_rows(rows: np.ndarray) -> np.ndarray:
    """Distinct rows, sorted; exact for any int64 content."""
    if len(rows) == 0:
        return rows
    if rows.dtype == object:
        uniq = sorted({tuple(r) for r in rows.tolist()})
        return np.array(uniq, dtype=object).reshape(len(uniq), rows.shape[1])
    lo = rows.min(axis=0)
    span = rows.max(axis=0) - lo + 1
    # pack each row into one int64 when the box fits, otherwise compare raw bytes
    if float(np.prod(span.astype(np.float64))) < 2.0 ** 62:
        mult = np.ones(rows.shape[1], dtype=np.int64)
        for j in range(rows.shape[1] - 2, -1, -1):
            mult[j] = mult[j + 1] * span[j + 1]
        keys = (rows - lo) @ mult
        _, idx = np.unique(keys, return_index=True)
        return rows[idx]
    rows = np.ascontiguousarray(rows)
    void = rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()
    _, idx = np.unique(void, return_index=True)
    return rows[idx]


def _expand_chunk(F: np.ndarray, A: np.ndarray) -> np.ndarray:
    parts = []
    for i in range(A.shape[0]):
        sel = F[F[:, i] > 0]
        if len(sel):
            parts.append(sel - sel[:, i:i + 1] * A[:, i])
    if not parts:
        return F[:0]
    return _unique_rows(np.concatenate(parts))


def _needs_bigint(F: np.ndarray, amax: int) -> bool:
    if F.dtype == object or len(F) == 0:
        return False
    return int(np.abs(F).max()) * (amax + 1) >= _INT64_SAFE


def _candidate_count(F: np.ndarray) -> int:
    return int((F > 0).sum())


def iter_levels(m: CartanMatrix, max_order: Optional[int] = None, *, workers: int = 1,
                max_elements: int = DEFAULT_MAX_ELEMENTS, max_bytes: Optional[int] = None,
                check: bool = False) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield ``(k, frontier)`` where ``frontier`` holds the distinct images ``w(ρ)`` with ``ℓ(w) = k``.

    Rows are sorted, so the output does not depend on ``workers``. Stops after
    ``max_order`` or when a frontier is empty (the empty frontier is not
    yielded). Raises :class:`BudgetExceeded` before building a level whose
    candidate set would exceed the budget.
    """
    A = np.array(m.entries, dtype=np.int64)
    amax = int(np.abs(A).max())
    A_big = np.array(m.entries, dtype=object)
    max_bytes = _default_max_bytes() if max_bytes is None else max_bytes
    N = m.rank
    F = np.ones((1, N), dtype=np.int64)
    k = 0
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while True:
            if check:
                _check_level(F, k)
            yield k, F
            if max_order is not None and k >= max_order:
                return
            n_cand = _candidate_count(F)
            if n_cand > max_elements or n_cand * N * 8 * 2 > max_bytes:
                raise BudgetExceeded(f"level {k + 1} would need {n_cand} candidate vectors")
            if _needs_bigint(F, amax):
                log.info("coordinates near int64 range at level %d; switching to big integers", k)
                F = F.astype(object)
            Aw = A_big if F.dtype == object else A
            if pool is None or len(F) < 4096 or F.dtype == object:
                F = _expand_chunk(F, Aw)
            else:
                chunks = np.array_split(F, workers)
                parts = list(pool.map(lambda c: _expand_chunk(c, Aw), chunks))
                F = _unique_rows(np.concatenate(parts))
            k += 1
            if len(F) == 0:
                return
    finally:
        if pool is not None:
            pool.shutdown()


def _check_level(F: np.ndarray, k: int) -> None:
    if F.dtype != object:
        assert (F != 0).all(), f"zero coordinate in an image of rho at level {k}"
        if k:
            assert (F < 0).any(axis=1).all(), f"image without a descent at level {k}"
    else:
        for r in F.tolist():
            assert all(x != 0 for x in r)
            assert not k or any(x < 0 for x in r)


def _normalize_J(m: CartanMatrix, J: Iterable[int]) -> tuple:
    out = tuple(sorted({int(j) for j in J}))
    for j in out:
        if not 1 <= j <= m.rank:
            raise ValueError(f"node {j} out of range 1..{m.rank}")
    return out


def _emit(checkpoint, record: dict) -> None:
    if checkpoint is None:
        return
    if callable(checkpoint):
        checkpoint(record)
    else:
        checkpoint.write(json.dumps(record, sort_keys=True) + "\n")
        checkpoint.flush()


def enumerate_growth(m: CartanMatrix, max_order: Optional[int], subsets: Sequence[Iterable[int]] = (),
                     *, workers: int = 1, max_elements: int = DEFAULT_MAX_ELEMENTS,
                     max_bytes: Optional[int] = None, checkpoint=None,
                     check: bool = False) -> Tuple[GrowthSeries, Dict[tuple, GrowthSeries]]:
    """One enumeration pass producing the full growth series and one coset series per subset.

    ``checkpoint`` is either a callable taking a dict or a text stream that
    receives one JSON record per level with keys ``level``, ``coefficient``,
    ``frontier_size`` and ``elapsed``.
    """
    if max_order is not None and max_order < 0:
        raise ValueError("max_order must be nonnegative")
    Js = [_normalize_J(m, J) for J in subsets]
    idx = [np.array([j - 1 for j in J], dtype=np.intp) for J in Js]
    counts = []
    jcounts = [[] for _ in Js]
    budget = False
    last = None
    t0 = time.perf_counter()
    levels = iter_levels(m, max_order, workers=workers, max_elements=max_elements,
                         max_bytes=max_bytes, check=check)
    try:
        for k, F in levels:
            last = F
            counts.append(len(F))
            for J, ix, jc in zip(Js, idx, jcounts):
                if len(ix) == 0:
                    jc.append(len(F))
                elif F.dtype == object:
                    jc.append(sum(1 for r in F.tolist() if all(r[i] > 0 for i in ix)))
                else:
                    jc.append(int((F[:, ix] > 0).all(axis=1).sum()))
            _emit(checkpoint, {"level": k, "coefficient": len(F), "frontier_size": len(F),
                               "elapsed": round(time.perf_counter() - t0, 3)})
    except BudgetExceeded as e:
        log.warning("%s; returning series through t^%d", e, len(counts) - 1)
        budget = True
    # the last level reached is the top one iff no image can be lengthened
    complete = not budget and _candidate_count(last) == 0
    T = len(counts) - 1
    full = GrowthSeries(tuple(counts), T, complete, budget)
    parts = {J: GrowthSeries(tuple(jc), T, complete, budget) for J, jc in zip(Js, jcounts)}
    return full, parts


def growth_series(m: CartanMatrix, max_order: Optional[int], **kw) -> GrowthSeries:
    """Number of Weyl group elements of each length ``0..max_order``.

    ``max_order=None`` runs until the frontier empties, which only happens
    for finite groups. Keyword arguments are passed to :func:`enumerate_growth`.
    """
    full, _ = enumerate_growth(m, max_order, **kw)
    return full


def parabolic_coset_growth(m: CartanMatrix, J: Iterable[int], max_order: Optional[int],
                           **kw) -> GrowthSeries:
    """Count minimal-length coset representatives for ``W_J`` by length.

    These are the elements whose image of ρ is positive on every node of
    ``J``; their counts are the coefficients of ``R`` in
    ``P(W) = P(W_J) * R``.
    """
    J = _normalize_J(m, J)
    _, parts = enumerate_growth(m, max_order, [J], **kw)
    return parts[J]


def subgroup_poincare(m: CartanMatrix, J: Iterable[int], max_order: Optional[int] = None,
                      **kw) -> GrowthSeries:
    """Growth series of the parabolic subgroup ``W_J`` from its own subdiagram."""
    J = _normalize_J(m, J)
    if not J:
        return GrowthSeries((1,), 0, True)
    sub = m.submatrix(J)
    if max_order is None and sub.kind != "Finite":
        raise NotFinite(f"subdiagram on {list(J)} is not of finite type")
    return growth_series(sub, max_order, **kw)


def finite_order(m: CartanMatrix, depth_cap: int = 1000, **kw) -> int:
    """Order of a finite Weyl group by exhaustive enumeration."""
    s = growth_series(m, depth_cap, **kw)
    if not s.complete:
        raise NotFinite(f"no termination within {s.truncation} levels; the group looks infinite")
    return s.total


# ---------------------------------------------------------------------------
# canonical reduced words
# ---------------------------------------------------------------------------

def _word_levels(m: CartanMatrix, k: int) -> Iterator[Dict[tuple, tuple]]:
    """Dicts image -> lexicographically smallest reduced word, for levels 0..k."""
    ents = m.entries
    N = m.rank
    cur = {tuple([1] * N): ()}
    yield cur
    for _ in range(k):
        nxt = {}
        for v in cur:
            for i in range(N):
                c = v[i]
                if c <= 0:
                    continue
                u = tuple(x - c * row[i] for x, row in zip(v, ents))
                if u in nxt:
                    continue
                # smallest left descent of u, then the canonical word of the shorter element
                d = next(j for j in range(N) if u[j] < 0)
                cd = u[d]
                shorter = tuple(x - cd * row[d] for x, row in zip(u, ents))
                nxt[u] = (d + 1,) + cur[shorter]
        cur = nxt
        yield cur
        if not cur:
            return


def level_images(m: CartanMatrix, k: int, J: Optional[Iterable[int]] = None) -> set:
    """The set of ``w(ρ)`` (as :class:`Weight`) with ``ℓ(w) = k``, optionally J-dominant."""
    for level, F in iter_levels(m, k):
        if level == k:
            rows = F.tolist()
            if J is not None:
                J = _normalize_J(m, J)
                rows = [r for r in rows if all(r[j - 1] > 0 for j in J)]
            return {Weight(r) for r in rows}
    return set()


def reduced_words(m: CartanMatrix, k: int, J: Optional[Iterable[int]] = None,
                  limit: Optional[int] = None, max_depth: int = DEFAULT_WORD_DEPTH) -> list:
    """One canonical reduced word per element of length ``k``.

    The canonical word is the lexicographically smallest reduced word under
    the node order ``1 < 2 < ... < N``; it is found by always peeling off
    the smallest left descent. With ``J`` given, only minimal coset
    representatives for ``W_J`` are returned. Words are sorted, and
    ``limit`` keeps the first ``limit`` of them.
    """
    if k < 0 or k > max_depth:
        raise LevelNotEnumerated(f"level {k} is outside the word-tracking depth 0..{max_depth}")
    Jn = _normalize_J(m, J) if J is not None else ()
    level = {}
    for level in _word_levels(m, k):
        pass
    words = []
    for img, w in level.items():
        if all(img[j - 1] > 0 for j in Jn):
            words.append(w)
    words.sort()
    return words[:limit] if limit is not None else words
