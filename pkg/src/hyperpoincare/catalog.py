"""The table of 48 hyperbolic denominators, with end-to-end verification.

Only H_48 ships with a Cartan matrix. The other entries carry their
denominator polynomial and finite type; their matrices can be supplied
through an override file (a JSON list of ``{id, name, rank, cartan}``
records, or one such record per line).
"""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .cartan import H48, CartanMatrix, parse_algebra
from .errors import SchemaError, TruncationTooShallow
from .factorization import fit_denominator
from .polyseries import FiniteType, IntPoly, finite_type, parse_poly, render_poly
from .weylgrowth import growth_series

__all__ = [
    "CatalogEntry",
    "VerificationReport",
    "PublishedConstants",
    "VERIFIED",
    "MATRIX_UNAVAILABLE",
    "MISMATCH",
    "load_catalog",
    "read_overrides",
    "verify_entry",
    "verify_catalog",
    "published_constants",
    "render_table",
]

VERIFIED = "Verified"
MATRIX_UNAVAILABLE = "MatrixUnavailable"
MISMATCH = "Mismatch"

_DATA = "q_table.json"


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    finite_type: FiniteType
    q_table: IntPoly
    alias_of: Optional[int] = None
    cartan: Optional[CartanMatrix] = None
    name: Optional[str] = None

    @property
    def label(self) -> str:
        return self.name or f"H{self.id}"

    def display(self) -> str:
        g = str(self.finite_type)
        if self.alias_of is not None:
            return f"Q_{self.id}({g}) = Q_{self.alias_of}({g})"
        return f"Q_{self.id}({g}) = ({render_poly(self.q_table)})"


@dataclass(frozen=True)
class VerificationReport:
    id: int
    status: str
    depth: Optional[int] = None
    computed_q: Optional[IntPoly] = None
    observed_degree: Optional[int] = None
    D: Optional[int] = None
    guard: Optional[int] = None
    reason: Optional[str] = None
    elapsed: float = 0.0

    def record(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "depth": self.depth,
            "Q": list(self.computed_q.coeffs) if self.computed_q is not None else None,
            "observed_degree": self.observed_degree,
            "D": self.D,
            "guard": self.guard,
            "reason": self.reason,
        }


def _checksum(entries) -> str:
    body = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


@lru_cache(maxsize=1)
def _builtin_table() -> tuple:
    raw = json.loads(resources.files(__package__).joinpath("data").joinpath(_DATA).read_text())
    entries = raw["entries"]
    if _checksum(entries) != raw["sha256"]:
        raise SchemaError(f"{_DATA}: checksum mismatch; the transcribed table was modified")
    by_id = {}
    for e in entries:
        i = e["id"]
        ft = finite_type(e["finite_type"])
        if "alias_of" in e:
            target = e["alias_of"]
            if target >= i or target not in by_id:
                raise SchemaError(f"{_DATA}: entry {i} aliases {target}, which does not precede it")
            base = by_id[target]
            if base.alias_of is not None:
                raise SchemaError(f"{_DATA}: entry {i} aliases another alias ({target})")
            if base.finite_type != ft:
                raise SchemaError(f"{_DATA}: entry {i} aliases {target} across finite types")
            by_id[i] = CatalogEntry(i, ft, base.q_table, alias_of=target)
        else:
            by_id[i] = CatalogEntry(i, ft, IntPoly(e["q"]))
    if sorted(by_id) != list(range(1, 49)):
        raise SchemaError(f"{_DATA}: expected ids 1..48")
    by_id[48] = replace(by_id[48], cartan=H48(), name="H48")
    return tuple(by_id[i] for i in range(1, 49))


def read_overrides(path) -> dict:
    """Parse an override file into ``{id: CartanMatrix}``.

    Accepts a JSON array of records, an object with an ``entries`` array,
    or JSON Lines. Every matrix must be hyperbolic.
    """
    path = Path(path)
    text = path.read_text()
    located = []
    try:
        doc = json.loads(text)
        recs = doc["entries"] if isinstance(doc, dict) and "entries" in doc else doc
        if isinstance(recs, dict):
            recs = [recs]
        if not isinstance(recs, list):
            raise SchemaError(f"{path}: expected a list of records")
        located = [(f"{path}: record {n + 1}", r) for n, r in enumerate(recs)]
    except json.JSONDecodeError as first:
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                located.append((f"{path}:{lineno}", json.loads(line)))
            except json.JSONDecodeError as e:
                raise SchemaError(f"{path}:{lineno}: {e.msg}") from first
    out = {}
    for where, rec in located:
        if not isinstance(rec, dict):
            raise SchemaError(f"{where}: expected an object")
        i = rec.get("id")
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= 48:
            raise SchemaError(f"{where}: field 'id' must be an integer in 1..48")
        m = parse_algebra(rec, where=where)
        if not m.hyperbolic:
            raise SchemaError(f"{where}: matrix for entry {i} is {m.kind}, not hyperbolic")
        if i in out:
            raise SchemaError(f"{where}: duplicate entry {i}")
        out[i] = m
    return out


def load_catalog(path=None) -> list:
    """The 48 entries, with matrices from the override file at ``path`` applied."""
    entries = list(_builtin_table())
    if path is not None:
        for i, m in read_overrides(path).items():
            e = entries[i - 1]
            entries[i - 1] = replace(e, cartan=m, name=m.name or e.name)
    return entries


def verify_entry(e: CatalogEntry, T: Optional[int] = None, guard: int = 1, **kw) -> VerificationReport:
    """Enumerate ``e``'s growth series, fit a denominator for its finite type, compare.

    ``T`` defaults to ``D + guard``. Keyword arguments go to the enumeration
    (``workers``, ``max_bytes``, ...).
    """
    D = e.finite_type.positive_roots
    if e.cartan is None:
        return VerificationReport(e.id, MATRIX_UNAVAILABLE, D=D, guard=guard,
                                  reason="no Cartan matrix available for this entry")
    T = D + guard if T is None else T
    t0 = time.perf_counter()

    def fail(reason, **extra):
        return VerificationReport(e.id, MISMATCH, D=D, guard=guard, reason=reason,
                                  elapsed=time.perf_counter() - t0, **extra)

    h = growth_series(e.cartan, T, **kw)
    series = h.as_series()
    try:
        fit = fit_denominator(series, e.finite_type, guard)
    except TruncationTooShallow as err:
        return fail(f"TruncationTooShallow: {err}", depth=h.truncation)
    if fit is None:
        return fail(f"P({e.finite_type})/P(H) does not terminate within t^{series.truncation}",
                    depth=series.truncation)
    if fit.Q != e.q_table:
        return fail("computed denominator differs from the tabulated one", depth=fit.verified_to,
                    computed_q=fit.Q, observed_degree=fit.observed_degree)
    if fit.observed_degree not in (D - 1, D):
        return fail(f"degree {fit.observed_degree} is neither D-1 nor D", depth=fit.verified_to,
                    computed_q=fit.Q, observed_degree=fit.observed_degree)
    return VerificationReport(e.id, VERIFIED, depth=fit.verified_to, computed_q=fit.Q,
                              observed_degree=fit.observed_degree, D=D, guard=guard,
                              elapsed=time.perf_counter() - t0)


def verify_catalog(entries: Iterable[CatalogEntry], T: Optional[int] = None, guard: int = 1,
                   **kw) -> list:
    reports = [verify_entry(e, T, guard, **kw) for e in entries]
    return sorted(reports, key=lambda r: r.id)


def render_table(entries: Iterable[CatalogEntry], reports: Optional[Iterable[VerificationReport]] = None) -> str:
    """Plain-text table in the ``Q_i(G) = (...)`` display style, with status when given."""
    status = {r.id: r.status for r in reports} if reports is not None else {}
    lines = []
    for e in entries:
        line = e.display()
        if e.id in status:
            line = f"{status[e.id]:<18}{line}"
        lines.append(line)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# constants displayed in the worked example
# ---------------------------------------------------------------------------

_R12_DENOMINATOR_R1 = ("1 - t^2 - 2 t^3 - t^4 + t^6 + t^7 + 3 t^8 + 2 t^9 - t^13 - 2 t^14"
                       " - 2 t^15 - t^16 + t^19 + t^20")
_R12_DENOMINATOR_R2 = ("1 - t^2 - 2 t^3 - t^4 + t^6 + t^7 + 3 t^8 + 2 t^9 - t^13 - 2 t^14"
                       " - 2 t^15 - t^16 + t^19 + t^20")
_R1_FACTORS = (("1 + t", 3), ("1 + t^2", 1), ("1 - t + t^2", 1), ("1 + t^4", 1))
_R3_FACTORS = (("1 - t", 3), ("1 + t", 1), ("1 + t + t^2", 2), ("1 + t^4", 1),
               ("1 + t + t^2 + t^3 + t^4", 1))
_R3_DENOMINATOR = ("1 - t^2 - 2 t^3 - t^4 + t^5 + t^6 + t^8 + t^9 + t^10 + t^11"
                   " - t^14 - t^15")
_H48_SERIES = (1, 6, 20, 52, 117, 237, 445, 791, 1347, 2216, 3550, 5568, 8582, 13044,
               19604, 29189, 43129, 63332, 92518, 134572, 195052, 281882, 406361,
               584620, 839655, 1204232)
_A4_POINCARE = (1, 4, 9, 15, 20, 22, 20, 15, 9, 4, 1)
_R1_COUNTS = (1, 2, 3, 7, 12, 19, 32)


def _product(factors) -> IntPoly:
    out = IntPoly([1])
    for text, power in factors:
        out = out * parse_poly(text) ** power
    return out


@dataclass(frozen=True)
class PublishedConstants:
    h48_series: tuple
    a4_poincare: IntPoly
    r1_numerator_factors: tuple
    r1_numerator: IntPoly
    r1_denominator: IntPoly
    r2_numerator: IntPoly
    r2_denominator: IntPoly
    r3_numerator_factors: tuple
    r3_numerator: IntPoly
    r3_denominator: IntPoly
    r1_counts: tuple


@lru_cache(maxsize=1)
def published_constants() -> PublishedConstants:
    """Published values for H_48: its growth series through t^25 and the R_1, R_2, R_3 displays."""
    return PublishedConstants(
        h48_series=_H48_SERIES,
        a4_poincare=IntPoly(_A4_POINCARE),
        r1_numerator_factors=tuple((parse_poly(s), k) for s, k in _R1_FACTORS),
        r1_numerator=_product(_R1_FACTORS),
        r1_denominator=parse_poly(_R12_DENOMINATOR_R1),
        r2_numerator=parse_poly("1 + t"),
        r2_denominator=parse_poly(_R12_DENOMINATOR_R2),
        r3_numerator_factors=tuple((parse_poly(s), k) for s, k in _R3_FACTORS),
        r3_numerator=_product(_R3_FACTORS),
        r3_denominator=parse_poly(_R3_DENOMINATOR),
        r1_counts=_R1_COUNTS,
    )
