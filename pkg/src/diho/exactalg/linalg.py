"""Exact linear algebra over Q and Z.

Vectors are sparse ``dict`` objects mapping a column index to a nonzero
``Fraction`` (or ``int``).  Nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class Subspace:
    """Reduced row echelon basis of a subspace of Q^n.

    Columns are addressed by index ``0..n-1``; ``columns`` optionally names
    them (the basis words of one grade).  Rows are kept fully reduced: every
    pivot column is zero in every other row, pivots strictly increase.
    """

    def __init__(self, columns: Sequence | int = 0, rows: Iterable[dict] = ()):
        if isinstance(columns, int):
            columns = tuple(range(columns))
        self.columns = tuple(columns)
        self.index = {c: i for i, c in enumerate(self.columns)}
        self._rows: dict[int, dict[int, Fraction]] = {}
        self._col: dict[int, set[int]] = {}  # non-pivot column -> pivots of rows using it
        for r in rows:
            self.add(r)

    @property
    def ambient_dim(self) -> int:
        return len(self.columns)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    @property
    def rows(self) -> list[dict[int, Fraction]]:
        return [dict(self._rows[p]) for p in self.pivots]

    def free_columns(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.ambient_dim) if i not in self._rows)

    def reduce(self, vec: dict) -> dict[int, Fraction]:
        """Remainder of ``vec`` after eliminating every pivot column."""
        out = {k: Fraction(v) for k, v in vec.items() if v != 0}
        # rows are fully reduced, so subtracting one never creates another pivot entry
        for p in [k for k in out if k in self._rows]:
            row = self._rows[p]
            c = out.get(p)
            if c:
                for k, v in row.items():
                    nv = out.get(k, 0) - c * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when the rank grew."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        r = {k: v / lead for k, v in r.items()}
        for q in self._col.pop(p, ()):
            row = self._rows[q]
            c = row.pop(p)
            for k, v in r.items():
                if k == p:
                    continue
                nv = row.get(k, 0) - c * v
                if nv:
                    if k not in row:
                        self._col.setdefault(k, set()).add(q)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    self._col[k].discard(q)
        self._rows[p] = r
        for k in r:
            if k != p:
                self._col.setdefault(k, set()).add(p)
        return True

    def copy(self) -> "Subspace":
        s = Subspace(self.columns)
        s._rows = {p: dict(r) for p, r in self._rows.items()}
        s._col = {k: set(v) for k, v in self._col.items()}
        return s

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self._rows.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.columns == other.columns and self.rows == other.rows

    def __repr__(self):
        return f"Subspace(rank={self.rank}, ambient={self.ambient_dim})"


def rank(rows: Iterable[dict]) -> int:
    """Rank of sparse vectors over any hashable (not necessarily ordered) keys."""
    index: dict = {}
    s = Subspace(0)
    for r in rows:
        s.add({index.setdefault(k, len(index)): v for k, v in r.items()})
    return s.rank


def nullspace(columns: Sequence[dict], ncols: int | None = None) -> list[dict[int, Fraction]]:
    """Basis of {x : sum_j x_j * columns[j] = 0}, in reduced echelon form.

    ``columns[j]`` is the image of the j-th standard basis vector, a sparse
    vector over an arbitrary hashable index set.
    """
    n = len(columns) if ncols is None else ncols
    eqs: dict = {}
    for j in range(n):
        for k, v in columns[j].items():
            if v != 0:
                eqs.setdefault(k, {})[j] = v
    rowspace = Subspace(n, eqs.values())
    basis = []
    for f in rowspace.free_columns():
        x = {f: Fraction(1)}
        for p, row in zip(rowspace.pivots, rowspace.rows):
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return Subspace(n, basis).rows


def solve_in_span(basis: Sequence[dict], vec: dict) -> list[Fraction] | None:
    """Coefficients c with sum c_i basis[i] == vec, or None.  Basis must be independent."""
    m = len(basis)
    eqs: dict = {}
    for i, b in enumerate(basis):
        for k, v in b.items():
            if v != 0:
                eqs.setdefault(k, {})[i] = v
    for k, v in vec.items():
        if v != 0:
            eqs.setdefault(k, {})[m] = v
    s = Subspace(m + 1, eqs.values())
    if m in s.pivots:
        return None
    if any(f != m for f in s.free_columns()):
        raise ValueError("basis vectors are linearly dependent")
    coeffs = [Fraction(0)] * m
    for p, row in zip(s.pivots, s.rows):
        coeffs[p] = row.get(m, Fraction(0))
    return coeffs


# ----------------------------------------------------------------------------
# integer lattices


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def integer_row_echelon(rows: Sequence[Sequence[int]], track: bool = False):
    """Row echelon form over Z using unimodular row operations.

    Returns ``(E, U)`` with ``U @ A == E``; ``U`` is None unless ``track``.
    Pivots are positive; rows below the rank are zero.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c]:
                if piv is None:
                    piv = i
                    continue
                a, b = A[piv][c], A[i][c]
                g, x, y = _xgcd(a, b)
                ag, bg = a // g, b // g
                A[piv], A[i] = (
                    [x * u + y * v for u, v in zip(A[piv], A[i])],
                    [-bg * u + ag * v for u, v in zip(A[piv], A[i])],
                )
                if U is not None:
                    U[piv], U[i] = (
                        [x * u + y * v for u, v in zip(U[piv], U[i])],
                        [-bg * u + ag * v for u, v in zip(U[piv], U[i])],
                    )
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        if U is not None:
            U[r], U[piv] = U[piv], U[r]
        if A[r][c] < 0:
            A[r] = [-v for v in A[r]]
            if U is not None:
                U[r] = [-v for v in U[r]]
        r += 1
    return A, U


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {x in Z^ncols : matrix @ x == 0}."""
    if ncols == 0:
        return []
    At = [[matrix[i][j] for i in range(len(matrix))] for j in range(ncols)]
    if not matrix:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    E, U = integer_row_echelon(At, track=True)
    return [U[i] for i in range(ncols) if not any(E[i])]


class Lattice:
    """Integer span of a list of vectors, with exact membership tests."""

    def __init__(self, dim: int, gens: Iterable[Sequence[int]] = ()):
        self.dim = dim
        gens = [list(g) for g in gens]
        E, _ = integer_row_echelon(gens) if gens else ([], None)
        self.rows = [r for r in E if any(r)]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in v):
            return False
        v = [int(x) for x in v]
        for row in self.rows:
            c = next(i for i, x in enumerate(row) if x)
            if any(v[:c]):
                return False
            q, rem = divmod(v[c], row[c])
            if rem:
                return False
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)


# ----------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfReport:
    rank: int
    invariant_factors: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        f = self.invariant_factors
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"invariant factors {f} do not divide successively")
        if any(d <= 1 for d in f):
            raise ValueError("invariant factors must be > 1")

    def quotient(self, ncols: int) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion) of Z^ncols modulo the row span."""
        return ncols - self.rank, self.invariant_factors


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form, divisibility chain enforced."""
    A = [list(map(int, r)) for r in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        # pick smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remainder to the pivot position
                best = (t, t)
                for i in range(t, m):
                    if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t, n):
                    if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                        best = (t, j)
                i, j = best
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    # enforce d_1 | d_2 | ... via gcd/lcm swaps
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g
    return diag


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SnfReport:
    if not matrix or not matrix[0]:
        return SnfReport(0, ())
    d = smith_diagonal(matrix)
    return SnfReport(len(d), tuple(x for x in d if x > 1))


def integerize(vec: dict) -> dict[int, int]:
    """Clear denominators of a rational vector (scales by the lcm)."""
    den = 1
    for v in vec.values():
        v = Fraction(v)
        den = den * v.denominator // gcd(den, v.denominator)
    return {k: int(Fraction(v) * den) for k, v in vec.items() if v != 0}
