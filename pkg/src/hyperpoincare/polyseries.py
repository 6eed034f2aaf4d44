"""Exact integer polynomials, truncated power series, and closed-form
Poincaré polynomials of finite and affine Weyl groups.

Everything here works over Python integers; no floating point is used, so
trailing-zero tests on quotient series are exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import GuardExceedsTruncation, NonUnitConstant, UnknownType

__all__ = [
    "IntPoly",
    "TruncSeries",
    "FiniteType",
    "finite_type",
    "all_finite_types",
    "finite_poincare",
    "affine_poincare",
    "series_mul",
    "series_div",
    "polynomial_terminates",
    "as_series",
    "parse_poly",
    "render_poly",
]


def _trim(coeffs: Iterable[int]) -> tuple:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Integer polynomial in ``t`` with coefficients stored lowest degree first.

    The zero polynomial has ``degree is None``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __pow__(self, n: int) -> "IntPoly":
        out = IntPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return render_poly(self)

    def to_series(self, truncation: int) -> "TruncSeries":
        return TruncSeries([self[k] for k in range(truncation + 1)])

    def to_csv(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def from_csv(cls, text: str) -> "IntPoly":
        return cls(int(x) for x in text.split(",") if x.strip())


class TruncSeries:
    """Formal power series known through ``t**truncation``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = tuple(int(x) for x in coeffs)
        if not c:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("TruncSeries", self.coeffs))

    def truncate(self, T: int) -> "TruncSeries":
        if T > self.truncation:
            raise ValueError(f"cannot extend a series known to t^{self.truncation} to t^{T}")
        return TruncSeries(self.coeffs[: T + 1])

    def __mul__(self, other):
        return series_mul(self, other)

    def __truediv__(self, other):
        return series_div(self, other)

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)})"

    def __str__(self):
        return render_poly(IntPoly(self.coeffs)) + f" + O(t^{self.truncation + 1})"

    def to_csv(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def from_csv(cls, text: str) -> "TruncSeries":
        return cls(int(x) for x in text.split(",") if x.strip())


SeriesLike = Union[TruncSeries, IntPoly, Sequence[int]]


def as_series(x: SeriesLike, truncation: Optional[int] = None) -> TruncSeries:
    """Coerce ``x`` to a :class:`TruncSeries`.

    Polynomials are exact, so they are padded with zeros to ``truncation``
    (default: their own degree).
    """
    if isinstance(x, TruncSeries):
        return x if truncation is None else x.truncate(min(truncation, x.truncation))
    if isinstance(x, IntPoly):
        T = truncation if truncation is not None else max(x.degree or 0, 0)
        return x.to_series(T)
    s = TruncSeries(x)
    return s if truncation is None else s.truncate(min(truncation, s.truncation))


def _pair(a: SeriesLike, b: SeriesLike):
    # polynomials carry no truncation of their own: pad them to the other operand
    if isinstance(a, IntPoly) and isinstance(b, IntPoly):
        T = (a.degree or 0) + (b.degree or 0)
        return a.to_series(T), b.to_series(T)
    if isinstance(a, IntPoly):
        b = as_series(b)
        return a.to_series(b.truncation), b
    if isinstance(b, IntPoly):
        a = as_series(a)
        return a, b.to_series(a.truncation)
    a, b = as_series(a), as_series(b)
    T = min(a.truncation, b.truncation)
    return a.truncate(T), b.truncate(T)


def series_mul(a: SeriesLike, b: SeriesLike) -> TruncSeries:
    """Cauchy product of two series, truncated to the shorter operand."""
    a, b = _pair(a, b)
    T = a.truncation
    ac, bc = a.coeffs, b.coeffs
    out = [0] * (T + 1)
    for i, x in enumerate(ac):
        if x:
            for j in range(T + 1 - i):
                out[i + j] += x * bc[j]
    return TruncSeries(out)


def series_div(num: SeriesLike, den: SeriesLike) -> TruncSeries:
    """Quotient ``q`` with ``q * den == num`` through the shared truncation.

    The divisor must have constant term +1 or -1 so the quotient stays
    integral.
    """
    num, den = _pair(num, den)
    d0 = den.coeffs[0]
    if d0 not in (1, -1):
        raise NonUnitConstant(f"divisor constant term is {d0}, expected +1 or -1")
    nc, dc = num.coeffs, den.coeffs
    q = []
    for n in range(len(nc)):
        acc = nc[n]
        for s in range(n):
            acc -= q[s] * dc[n - s]
        q.append(acc * d0)
    return TruncSeries(q)


def polynomial_terminates(s: TruncSeries, guard: int = 1) -> Optional[IntPoly]:
    """Return the polynomial prefix of ``s`` if its last ``guard`` coefficients vanish.

    Returns None when the series shows no sign of terminating at this
    truncation.
    """
    if guard < 1:
        raise ValueError("guard must be at least 1")
    if guard > len(s.coeffs):
        raise GuardExceedsTruncation(
            f"guard {guard} exceeds the {len(s.coeffs)} available coefficients"
        )
    if any(s.coeffs[-guard:]):
        return None
    return IntPoly(s.coeffs[:-guard])


# ---------------------------------------------------------------------------
# finite and affine types
# ---------------------------------------------------------------------------

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}


def _degrees(family: str, rank: int) -> tuple:
    if family in _MIN_RANK:
        if rank < _MIN_RANK[family]:
            raise UnknownType(f"{family}_{rank}: rank must be at least {_MIN_RANK[family]}")
        if family == "A":
            return tuple(range(2, rank + 2))
        if family in "BC":
            return tuple(range(2, 2 * rank + 1, 2))
        return tuple(range(2, 2 * rank - 1, 2)) + (rank,)
    try:
        return _EXCEPTIONAL_DEGREES[(family, rank)]
    except KeyError:
        raise UnknownType(f"no finite type {family}_{rank}") from None


@dataclass(frozen=True, order=False)
class FiniteType:
    """A finite simple type such as ``B_5``, with its invariant degrees."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in "ABCDEFG" or len(self.family) != 1:
            raise UnknownType(f"unknown family {self.family!r}")
        _degrees(self.family, self.rank)

    @property
    def degrees(self) -> tuple:
        return _degrees(self.family, self.rank)

    @property
    def positive_roots(self) -> int:
        return sum(d - 1 for d in self.degrees)

    D = positive_roots

    @property
    def order(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def sort_key(self):
        return (self.positive_roots, self.family, self.rank)

    def __str__(self):
        return f"{self.family}_{self.rank}"


_TYPE_RE = re.compile(r"^\s*([A-Ga-g])_?\{?(\d+)\}?\s*$")


def finite_type(name: Union[str, FiniteType], rank: Optional[int] = None) -> FiniteType:
    """Build a :class:`FiniteType` from ``"B5"``, ``"B_5"`` or ``("B", 5)``."""
    if isinstance(name, FiniteType):
        return name
    if rank is not None:
        return FiniteType(name.upper(), int(rank))
    m = _TYPE_RE.match(name)
    if not m:
        raise UnknownType(f"cannot parse finite type {name!r}")
    return FiniteType(m.group(1).upper(), int(m.group(2)))


def all_finite_types(max_rank: int) -> list:
    """Every finite simple type of rank at most ``max_rank``, ordered by (D, family, rank)."""
    out = []
    for family in "ABCD":
        for n in range(_MIN_RANK[family], max_rank + 1):
            out.append(FiniteType(family, n))
    for (family, n) in _EXCEPTIONAL_DEGREES:
        if n <= max_rank:
            out.append(FiniteType(family, n))
    return sorted(out, key=FiniteType.sort_key)


def _q_integer(d: int) -> IntPoly:
    # (t^d - 1)/(t - 1)
    return IntPoly([1] * d)


def finite_poincare(ft: Union[str, FiniteType]) -> IntPoly:
    """Poincaré polynomial of a finite Weyl group as a product of t-integers.

    >>> finite_poincare("A2").coeffs
    (1, 2, 2, 1)
    """
    ft = finite_type(ft)
    out = IntPoly([1])
    for d in ft.degrees:
        out = out * _q_integer(d)
    return out


def affine_poincare(ft: Union[str, FiniteType], max_order: int) -> TruncSeries:
    """Growth series of the affine Weyl group built on ``ft`` (Bott's product).

    The finite polynomial is multiplied by ``1/(1 - t**(d - 1))`` for every
    degree ``d`` and truncated at ``max_order``.
    """
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    ft = finite_type(ft)
    c = list(finite_poincare(ft).to_series(max_order).coeffs)
    for d in ft.degrees:
        e = d - 1
        # multiply by the geometric series in t^e: running sum with stride e
        for k in range(e, max_order + 1):
            c[k] += c[k - e]
    return TruncSeries(c)


# ---------------------------------------------------------------------------
# text forms
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*\{?(\d+)\}?)?)?")


def parse_poly(text: str, var: str = "t") -> IntPoly:
    """Parse a display like ``"1 - t - 2 t^3 + t^4"`` into an :class:`IntPoly`."""
    s = text.replace(var, "t").replace("(", "").replace(")", "").strip()
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict = {}
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    n = max(coeffs) + 1
    return IntPoly(coeffs.get(k, 0) for k in range(n))


def render_poly(p: Union[IntPoly, Sequence[int]], var: str = "t") -> str:
    """Human-readable form, e.g. ``1 - t - 2t^3 + t^4``."""
    coeffs = p.coeffs if isinstance(p, IntPoly) else tuple(p)
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"
