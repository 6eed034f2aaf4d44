"""Generalized Cartan matrices, their classification, and the weight lattice.

Conventions
-----------
Nodes are numbered from 1 in every public function, as in ``Σ(5, 3)``.
Entry ``A[i][j]`` is the pairing of ``α_j`` with the coroot ``α_i^∨``, so the
fundamental-weight coordinates of ``α_j`` form column ``j`` of ``A``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import Disconnected, NotGCM, SchemaError, Singular, UnknownType

FINITE = "Finite"
AFFINE = "Affine"
INDEFINITE = "Indefinite"

__all__ = [
    "FINITE", "AFFINE", "INDEFINITE",
    "CartanMatrix", "Weight", "RationalMatrix",
    "validate_gcm", "classify", "reflect", "apply_word", "weyl_vector",
    "inverse_cartan", "determinant", "components",
    "cartan_matrix", "finite_cartan", "affine_cartan", "H48",
    "load_algebra", "algebra_record",
]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _adjacency(entries) -> list:
    n = len(entries)
    return [[j for j in range(n) if j != i and entries[i][j] != 0] for i in range(n)]


def components(entries, nodes: Optional[Iterable[int]] = None) -> list:
    """Connected components (0-based node lists) of the diagram restricted to ``nodes``."""
    n = len(entries)
    remaining = set(range(n) if nodes is None else nodes)
    adj = _adjacency(entries)
    out = []
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in remaining and w not in comp:
                    comp.add(w)
                    stack.append(w)
        remaining -= comp
        out.append(sorted(comp))
    return out


def _sub(entries, nodes):
    return [[entries[i][j] for j in nodes] for i in nodes]


def _classify_connected(entries) -> str:
    n = len(entries)
    for size in range(1, n):
        for nodes in combinations(range(n), size):
            if determinant(_sub(entries, nodes)) <= 0:
                return INDEFINITE
    det = determinant(entries)
    if det > 0:
        return FINITE
    if det == 0:
        return AFFINE
    return INDEFINITE


def _hyperbolic(entries, kind) -> bool:
    if kind != INDEFINITE:
        return False
    n = len(entries)
    for drop in range(n):
        rest = [i for i in range(n) if i != drop]
        for comp in components(entries, rest):
            if _classify_connected(_sub(entries, comp)) == INDEFINITE:
                return False
    return True


@dataclass(frozen=True)
class CartanMatrix:
    """A validated generalized Cartan matrix.

    ``kind`` is ``None`` only for disconnected diagrams, which are accepted
    when explicitly allowed (parabolic subdiagrams are often disconnected).
    """

    entries: tuple
    kind: Optional[str]
    hyperbolic: bool
    name: Optional[str] = None
    labels: Optional[tuple] = None

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def connected(self) -> bool:
        return len(components(self.entries)) == 1

    def column(self, j: int) -> tuple:
        """Fundamental-weight coordinates of simple root ``j`` (1-based)."""
        return tuple(row[j - 1] for row in self.entries)

    def submatrix(self, nodes: Iterable[int], name: Optional[str] = None) -> "CartanMatrix":
        """Cartan matrix of the subdiagram on the 1-based ``nodes`` (sorted)."""
        idx = sorted({int(j) - 1 for j in nodes})
        for j in idx:
            if not 0 <= j < self.rank:
                raise ValueError(f"node {j + 1} out of range 1..{self.rank}")
        labels = tuple(self.labels[j] for j in idx) if self.labels else None
        return validate_gcm(_sub(self.entries, idx), name=name, labels=labels,
                            allow_disconnected=True)

    def __str__(self):
        rows = "\n".join(" ".join(f"{x:3d}" for x in r) for r in self.entries)
        head = self.name or f"rank {self.rank}"
        return f"{head} ({self.kind}{', hyperbolic' if self.hyperbolic else ''})\n{rows}"


def validate_gcm(raw, name: Optional[str] = None, labels=None,
                 allow_disconnected: bool = False) -> CartanMatrix:
    """Check the GCM axioms and classify.

    Raises
    ------
    NotGCM
        Non-square input, a diagonal entry other than 2, a positive
        off-diagonal entry, or ``A[i][j] == 0`` without ``A[j][i] == 0``.
    Disconnected
        Disconnected diagram when ``allow_disconnected`` is false.
    """
    try:
        rows = [list(r) for r in raw]
    except TypeError:
        raise NotGCM("matrix must be a sequence of rows") from None
    n = len(rows)
    if n == 0:
        raise NotGCM("empty matrix")
    entries = []
    for i, r in enumerate(rows):
        if len(r) != n:
            raise NotGCM(f"row {i + 1} has {len(r)} entries, expected {n}")
        out = []
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise NotGCM(f"non-integer entry {x!r} in row {i + 1}")
            out.append(int(x))
        entries.append(tuple(out))
    for i in range(n):
        if entries[i][i] != 2:
            raise NotGCM(f"diagonal entry A[{i + 1}][{i + 1}] = {entries[i][i]}, expected 2")
        for j in range(n):
            if i == j:
                continue
            if entries[i][j] > 0:
                raise NotGCM(f"positive off-diagonal entry A[{i + 1}][{j + 1}] = {entries[i][j]}")
            if (entries[i][j] == 0) != (entries[j][i] == 0):
                raise NotGCM(f"zero pattern not symmetric at ({i + 1},{j + 1})")
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise NotGCM(f"{len(labels)} labels for rank {n}")
    entries = tuple(entries)
    comps = components(entries)
    if len(comps) > 1:
        if not allow_disconnected:
            raise Disconnected(f"diagram has {len(comps)} components: "
                               + ", ".join(str([i + 1 for i in c]) for c in comps))
        kinds = {_classify_connected(_sub(entries, c)) for c in comps}
        kind = FINITE if kinds == {FINITE} else None
        return CartanMatrix(entries, kind, False, name, labels)
    kind = _classify_connected(entries)
    return CartanMatrix(entries, kind, _hyperbolic(entries, kind), name, labels)


def classify(m: CartanMatrix):
    """Return ``(kind, hyperbolic)`` for a connected diagram.

    Finite when every principal minor is positive, affine when the full
    determinant vanishes and every proper principal minor is positive,
    indefinite otherwise. Hyperbolic means indefinite with every connected
    piece left after deleting a single node finite or affine.
    """
    entries = m.entries if isinstance(m, CartanMatrix) else validate_gcm(m, allow_disconnected=True).entries
    if len(components(entries)) != 1:
        raise Disconnected("classify needs a connected diagram; split it into components first")
    kind = _classify_connected(entries)
    return kind, _hyperbolic(entries, kind)


# ---------------------------------------------------------------------------
# weights and reflections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """Weight in the fundamental-weight basis; coordinate ``i`` is the pairing with coroot ``i``.

    Coordinates are Python integers, so they never overflow.
    """

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __getitem__(self, i: int) -> int:
        """1-based coordinate access."""
        return self.coords[i - 1]

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def is_dominant(self, nodes: Optional[Iterable[int]] = None) -> bool:
        idx = range(1, len(self.coords) + 1) if nodes is None else nodes
        return all(self.coords[j - 1] > 0 for j in idx)


def weyl_vector(m: CartanMatrix) -> Weight:
    return Weight((1,) * m.rank)


def reflect(w: Weight, i: int, m: CartanMatrix) -> Weight:
    """Simple reflection ``σ_i`` on a weight: ``w - w_i * α_i``."""
    if not 1 <= i <= m.rank:
        raise ValueError(f"node {i} out of range 1..{m.rank}")
    c = w.coords[i - 1]
    if c == 0:
        return w
    return Weight(tuple(x - c * row[i - 1] for x, row in zip(w.coords, m.entries)))


def apply_word(word: Sequence[int], m: CartanMatrix, w: Optional[Weight] = None) -> Weight:
    """Image of ``w`` (default ρ) under ``σ_{i_1} ⋯ σ_{i_k}``; the rightmost letter acts first."""
    v = weyl_vector(m) if w is None else w
    for i in reversed(tuple(word)):
        v = reflect(v, i, m)
    return v


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        b = other.entries if isinstance(other, (RationalMatrix, CartanMatrix)) else other
        n, k = len(self.entries), len(b[0])
        return RationalMatrix(tuple(
            tuple(sum(Fraction(self.entries[i][s]) * b[s][j] for s in range(len(b))) for j in range(k))
            for i in range(n)))

    def __rmatmul__(self, other):
        a = other.entries if isinstance(other, CartanMatrix) else other
        return RationalMatrix(tuple(
            tuple(sum(a[i][s] * self.entries[s][j] for s in range(len(self.entries)))
                  for j in range(len(self.entries[0])))
            for i in range(len(a))))

    def is_identity(self) -> bool:
        return all(x == (1 if i == j else 0)
                   for i, r in enumerate(self.entries) for j, x in enumerate(r))

    def tolist(self):
        return [list(r) for r in self.entries]


def inverse_cartan(m: CartanMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan over :class:`fractions.Fraction`.

    Row ``i`` holds the simple-root expansion of the fundamental weight ``λ_i``.
    """
    n = m.rank
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise Singular(f"Cartan matrix {m.name or ''} is singular".strip())
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return RationalMatrix(tuple(tuple(r[n:]) for r in a))


# ---------------------------------------------------------------------------
# built-in matrices
# ---------------------------------------------------------------------------

def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _link(a, i, j, aij=-1, aji=-1):
    # 1-based; aij = <α_j, α_i^∨>
    a[i - 1][j - 1] = aij
    a[j - 1][i - 1] = aji


def _finite_entries(family: str, n: int):
    if family == "A":
        return _chain(n)
    if family == "B":
        a = _chain(n)
        _link(a, n - 1, n, -1, -2)  # α_n short
        return a
    if family == "C":
        a = _chain(n)
        _link(a, n - 1, n, -2, -1)  # α_n long
        return a
    if family == "D":
        a = _chain(n)
        _link(a, n - 1, n, 0, 0)
        _link(a, n - 2, n)
        return a
    if family == "E":
        # Bourbaki: 1-3-4-5-...-n with 2 attached to 4
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, n)]:
            _link(a, i, j)
        return a
    if family == "F":
        a = _chain(4)
        _link(a, 2, 3, -1, -2)  # α_1, α_2 long
        return a
    if family == "G":
        a = _chain(2)
        _link(a, 1, 2, -3, -1)  # α_1 short
        return a
    raise UnknownType(family)


def finite_cartan(ft) -> CartanMatrix:
    """Cartan matrix of a finite simple type, Bourbaki numbering."""
    from .polyseries import finite_type
    ft = finite_type(ft)
    return validate_gcm(_finite_entries(ft.family, ft.rank), name=ft.name)


# node of the finite diagram that the affine node attaches to, and the bond
_AFFINE_ATTACH = {
    "B": (2, -1, -1), "D": (2, -1, -1), "C": (1, -1, -2),
    "F": (1, -1, -1), "G": (2, -1, -1),
}


def affine_cartan(ft) -> CartanMatrix:
    """Untwisted affine Cartan matrix; the affine node is node 1, the finite nodes follow."""
    from .polyseries import finite_type
    ft = finite_type(ft)
    fam, n = ft.family, ft.rank
    a = [[2 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
    fin = _finite_entries(fam, n)
    for i in range(n):
        for j in range(n):
            a[i + 1][j + 1] = fin[i][j]
    if fam == "A":
        if n == 1:
            _link(a, 1, 2, -2, -2)
        else:
            _link(a, 1, 2)
            _link(a, 1, n + 1)
    elif fam == "E":
        attach = {6: 2, 7: 1, 8: 8}[n]
        _link(a, 1, attach + 1)
    else:
        node, a0j, aj0 = _AFFINE_ATTACH[fam]
        _link(a, 1, node + 1, a0j, aj0)
    return validate_gcm(a, name=f"affine:{ft.name}")


_H48_ENTRIES = (
    (2, -1, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0),
    (0, -1, 2, -1, -1, -1),
    (0, 0, -1, 2, 0, 0),
    (0, 0, -1, 0, 2, 0),
    (0, 0, -1, 0, 0, 2),
)


def H48() -> CartanMatrix:
    """The rank-6 hyperbolic algebra H_48 with the node order of its worked examples.

    Nodes 1-2-3 form a chain and node 3 also meets 4, 5 and 6, so nodes
    1..4 span A_4, nodes 1..5 span D_5 and nodes 2..6 span affine D_4.
    """
    return validate_gcm(_H48_ENTRIES, name="H48")


def cartan_matrix(name: str) -> CartanMatrix:
    """Resolve a built-in name: ``A4``, ``B_5``, ``affine:D4`` or ``H48``."""
    key = name.strip()
    if key.upper() in ("H48", "H_48"):
        return H48()
    if key.lower().startswith("affine:"):
        return affine_cartan(key.split(":", 1)[1])
    return finite_cartan(key)


# ---------------------------------------------------------------------------
# algebra definition files
# ---------------------------------------------------------------------------

def algebra_record(m: CartanMatrix) -> dict:
    rec = {"name": m.name or "", "rank": m.rank, "cartan": [list(r) for r in m.entries]}
    if m.labels:
        rec["labels"] = list(m.labels)
    return rec


def parse_algebra(rec: dict, where: str = "<record>", allow_disconnected=False) -> CartanMatrix:
    """Build a matrix from a ``{name, rank, cartan, labels?}`` record."""
    if not isinstance(rec, dict):
        raise SchemaError(f"{where}: expected an object")
    for key in ("rank", "cartan"):
        if key not in rec:
            raise SchemaError(f"{where}: missing field {key!r}")
    rank, cartan = rec["rank"], rec["cartan"]
    if not isinstance(rank, int) or rank < 1:
        raise SchemaError(f"{where}: field 'rank' must be a positive integer")
    if (not isinstance(cartan, list) or len(cartan) != rank
            or any(not isinstance(r, list) or len(r) != rank for r in cartan)):
        raise SchemaError(f"{where}: field 'cartan' must be a {rank}x{rank} array of integers")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in cartan for x in r):
        raise SchemaError(f"{where}: field 'cartan' must contain integers only")
    name = rec.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError(f"{where}: field 'name' must be a string")
    try:
        return validate_gcm(cartan, name=name, labels=rec.get("labels"),
                            allow_disconnected=allow_disconnected)
    except NotGCM as e:
        raise SchemaError(f"{where}: {e}") from e


def load_algebra(path) -> CartanMatrix:
    """Read a JSON algebra definition file."""
    path = Path(path)
    try:
        rec = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}:{e.lineno}: {e.msg}") from e
    return parse_algebra(rec, where=str(path))
