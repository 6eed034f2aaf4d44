"""Factorizations of growth series.

Three kinds of statement are checked here:

* parabolic factorizations ``P(W) = P(W_J) * R`` where ``R`` counts minimal
  coset representatives,
* explicit rational functions claimed to expand to a given ``R``,
* finite denominators ``Q`` with ``P(H) = P(G) / Q`` for a finite simple
  type ``G`` that need not sit inside the diagram of ``H``.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .cartan import CartanMatrix
from .errors import Mismatch, NegativeCoefficient, TruncationTooShallow
from .polyseries import (FiniteType, IntPoly, TruncSeries, all_finite_types, as_series,
                         finite_poincare, finite_type, polynomial_terminates, series_div,
                         series_mul)
from .weylgrowth import GrowthSeries, enumerate_growth, subgroup_poincare

log = logging.getLogger(__name__)

__all__ = [
    "RationalFunction",
    "DenominatorFit",
    "FactorizationReport",
    "CheckResult",
    "compute_R",
    "verify_factorization",
    "fit_denominator",
    "search_denominator",
    "rational_check",
]

SeriesInput = Union[GrowthSeries, TruncSeries, IntPoly]


def _series(h: SeriesInput) -> TruncSeries:
    if isinstance(h, GrowthSeries):
        return h.as_series()
    return as_series(h)


@dataclass(frozen=True)
class RationalFunction:
    numerator: IntPoly
    denominator: IntPoly

    def __post_init__(self):
        if self.denominator[0] not in (1, -1):
            raise ValueError("denominator must have constant term +1 or -1")

    def expand(self, truncation: int) -> TruncSeries:
        return series_div(self.numerator.to_series(truncation),
                          self.denominator.to_series(truncation))


@dataclass(frozen=True)
class DenominatorFit:
    """A finite ``Q`` with ``Q * P(H) == P(G)`` through ``t**verified_to``.

    The claim is only as strong as the data: the quotient showed ``guard``
    trailing zeros at truncation ``verified_to``.
    """

    finite_type: FiniteType
    Q: IntPoly
    observed_degree: int
    D: int
    verified_to: int
    guard: int

    def record(self, algebra: Optional[str] = None) -> dict:
        return {
            "algebra": algebra,
            "G": self.finite_type.name,
            "Q": list(self.Q.coeffs),
            "observed_degree": self.observed_degree,
            "D": self.D,
            "verified_to": self.verified_to,
            "guard": self.guard,
        }


class CheckResult(NamedTuple):
    ok: bool
    first_mismatch: Optional[int]


def compute_R(h: SeriesInput, sub: SeriesInput, exploratory: bool = False) -> TruncSeries:
    """``h / sub`` as a series.

    When ``sub`` is the Poincaré polynomial of a parabolic subgroup the
    result counts coset representatives and cannot be negative; a negative
    coefficient raises :class:`NegativeCoefficient` unless ``exploratory``,
    in which case it is only logged.
    """
    hs = _series(h)
    sub = _series(sub) if not isinstance(sub, IntPoly) else sub
    R = series_div(hs, sub)
    for k, c in enumerate(R.coeffs):
        if c < 0:
            if not exploratory:
                raise NegativeCoefficient(k, c)
            log.warning("quotient has negative coefficient %d at t^%d; divisor is not a parabolic factor", c, k)
            break
    return R


@dataclass(frozen=True)
class FactorizationReport:
    J: tuple
    truncation: int
    growth: GrowthSeries
    cosets: GrowthSeries
    subgroup: IntPoly

    @property
    def R(self) -> TruncSeries:
        return self.cosets.as_series()


def verify_factorization(m: CartanMatrix, J: Iterable[int], T: int, **kw) -> FactorizationReport:
    """Check ``P(W) = P(W_J) * R`` coefficient by coefficient through ``t**T``.

    ``P(W)`` and the coset counts ``R`` come from a single enumeration of
    ``m``; ``P(W_J)`` from a separate enumeration of the ``J`` subdiagram,
    which must be of finite type. Raises :class:`Mismatch` on the first
    disagreement.
    """
    J = tuple(sorted(set(J)))
    PJ = subgroup_poincare(m, J, None).as_poly()
    full, parts = enumerate_growth(m, T, [J], **kw)
    cosets = parts[J]
    w = full.as_series()
    conv = series_mul(PJ, cosets.as_series())
    for M in range(w.truncation + 1):
        if conv[M] != w[M]:
            raise Mismatch(M, w[M], conv[M], "convolution")
    R = compute_R(w, PJ)
    for M in range(w.truncation + 1):
        if R[M] != cosets[M]:
            raise Mismatch(M, R[M], cosets[M], "coset count")
    return FactorizationReport(J, w.truncation, full, cosets, PJ)


def fit_denominator(h: SeriesInput, g: Union[str, FiniteType], guard: int = 1) -> Optional[DenominatorFit]:
    """Try to write ``h = P(g) / Q`` with ``Q`` a polynomial.

    ``Q`` is read off from ``P(g) / h``; it is accepted when its last
    ``guard`` coefficients vanish. At least ``D + guard`` coefficients of
    ``h`` are required, ``D`` being the number of positive roots of ``g``.
    """
    hs = _series(h)
    if hs[0] != 1:
        raise ValueError(f"growth series must start with 1, got {hs[0]}")
    g = finite_type(g)
    D = g.positive_roots
    if len(hs) < D + guard:
        raise TruncationTooShallow(
            f"{g} needs {D + guard} coefficients (D={D}, guard={guard}); series has {len(hs)}")
    q = series_div(finite_poincare(g), hs)
    Q = polynomial_terminates(q, guard)
    if Q is None:
        return None
    return DenominatorFit(g, Q, Q.degree, D, hs.truncation, guard)


def search_denominator(h: SeriesInput, max_rank: int, guard: int = 1,
                       workers: int = 1) -> list:
    """All finite simple types of rank ``<= max_rank`` giving a polynomial denominator.

    Types needing more coefficients than ``h`` provides are skipped. The
    result is ordered by (D, family, rank).
    """
    hs = _series(h)
    candidates = [g for g in all_finite_types(max_rank) if g.positive_roots + guard <= len(hs)]

    def attempt(g):
        return fit_denominator(hs, g, guard)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fits = list(pool.map(attempt, candidates))
    else:
        fits = [attempt(g) for g in candidates]
    return [f for f in fits if f is not None]


def rational_check(rf: RationalFunction, target: SeriesInput) -> CheckResult:
    """Expand ``rf`` to the truncation of ``target`` and compare."""
    ts = _series(target)
    got = rf.expand(ts.truncation)
    for k, (a, b) in enumerate(zip(got.coeffs, ts.coeffs)):
        if a != b:
            return CheckResult(False, k)
    return CheckResult(True, None)
