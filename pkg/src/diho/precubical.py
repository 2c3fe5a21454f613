"""Finite precubical sets: data model, validation, JSON, paths, builders.

Face convention: for an n-cell, ``face(c, eps, i)`` (``i`` in 1..n) is the
(n-1)-cell where coordinate ``i`` is frozen to ``eps``.  For an edge
``e``, ``face(e, 0, 1)`` is its start vertex and ``face(e, 1, 1)`` its end.
The initial corner of a cell is reached by repeatedly taking ``d^0_1``,
the final corner by ``d^1_1``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class PrecubicalError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """A failed precubical identity or a dangling face reference."""

    cell: str
    kind: str  # "identity" | "reference" | "arity"
    eps: int | None = None
    eta: int | None = None
    i: int | None = None
    j: int | None = None
    lhs: str | None = None
    rhs: str | None = None
    detail: str = ""

    def __str__(self):
        if self.kind == "identity":
            return (
                f"cell {self.cell}: d^{self.eps}_{self.i} d^{self.eta}_{self.j} = {self.lhs} "
                f"but d^{self.eta}_{self.j - 1} d^{self.eps}_{self.i} = {self.rhs} "
                f"(eps={self.eps}, eta={self.eta}, i={self.i}, j={self.j})"
            )
        return f"cell {self.cell}: {self.kind}: {self.detail}"


class PrecubicalSet:
    """Cells by dimension plus lower/upper face tuples for every n-cell, n >= 1.

    ``faces[c] == (lower, upper)`` where ``lower[i-1] = d^0_i c`` and
    ``upper[i-1] = d^1_i c``.  Instances are treated as immutable.
    """

    def __init__(self, cells: Mapping[int, Sequence[str]], faces: Mapping[str, tuple]):
        self._cells = {int(n): tuple(map(str, ids)) for n, ids in cells.items()}
        top = max((n for n, ids in self._cells.items() if ids), default=0)
        for n in range(top + 1):
            self._cells.setdefault(n, ())
        self._cells = {n: self._cells[n] for n in sorted(self._cells) if n <= top or self._cells[n]}
        self._dim_of: dict[str, int] = {}
        for n, ids in self._cells.items():
            for c in ids:
                if c in self._dim_of:
                    raise PrecubicalError(f"cell id {c!r} used twice")
                self._dim_of[c] = n
        self._faces = {str(c): (tuple(map(str, lo)), tuple(map(str, hi))) for c, (lo, hi) in faces.items()}
        unknown = set(self._faces) - set(self._dim_of)
        if unknown:
            raise PrecubicalError(f"faces given for unknown cells {sorted(unknown)}")

    # --- accessors --------------------------------------------------------

    @property
    def dim(self) -> int:
        return max((n for n, ids in self._cells.items() if ids), default=0)

    def cells(self, n: int) -> tuple[str, ...]:
        return self._cells.get(n, ())

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.cells(0)

    @property
    def edges(self) -> tuple[str, ...]:
        return self.cells(1)

    @property
    def squares(self) -> tuple[str, ...]:
        return self.cells(2)

    def cell_dim(self, c: str) -> int:
        return self._dim_of[c]

    def __contains__(self, c) -> bool:
        return c in self._dim_of

    def face(self, c: str, eps: int, i: int) -> str:
        n = self._dim_of[c]
        if not 1 <= i <= n:
            raise PrecubicalError(f"face index {i} out of range for {n}-cell {c!r}")
        try:
            return self._faces[c][eps][i - 1]
        except (KeyError, IndexError):
            raise PrecubicalError(f"cell {c!r} has no face d^{eps}_{i}") from None

    def source(self, e: str) -> str:
        return self.face(e, 0, 1)

    def target(self, e: str) -> str:
        return self.face(e, 1, 1)

    def initial(self, c: str) -> str:
        while self._dim_of[c] > 0:
            c = self.face(c, 0, 1)
        return c

    def final(self, c: str) -> str:
        while self._dim_of[c] > 0:
            c = self.face(c, 1, 1)
        return c

    def faces_of(self, c: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return self._faces.get(c, ((), ()))

    def __eq__(self, other):
        if not isinstance(other, PrecubicalSet):
            return NotImplemented
        return self._cells == other._cells and self._faces == other._faces

    def __repr__(self):
        counts = ", ".join(f"{len(self.cells(n))}" for n in range(self.dim + 1))
        return f"PrecubicalSet(cells per dim = [{counts}])"

    # --- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "dims": self.dim,
            "cells": {str(n): list(ids) for n, ids in self._cells.items()},
            "faces": {c: {"0": list(lo), "1": list(hi)} for c, (lo, hi) in self._faces.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, doc: Mapping) -> "PrecubicalSet":
        try:
            cells = {int(n): list(ids) for n, ids in doc["cells"].items()}
            faces = {c: (f.get("0", []), f.get("1", [])) for c, f in doc.get("faces", {}).items()}
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            raise PrecubicalError(f"malformed precubical document: {exc}") from None
        C = cls(cells, faces)
        if "dims" in doc and int(doc["dims"]) < C.dim:
            raise PrecubicalError(f"declared dims {doc['dims']} below actual dimension {C.dim}")
        return C

    @classmethod
    def from_json(cls, text: str) -> "PrecubicalSet":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PrecubicalError(f"invalid JSON: {exc}") from None
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path) -> "PrecubicalSet":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


# ----------------------------------------------------------------------------
# validation


def validate(C: PrecubicalSet) -> list[Violation]:
    """All failures of the precubical identities and of face references."""
    out: list[Violation] = []
    structural_ok: set[str] = set()
    for n in range(1, C.dim + 1):
        for c in C.cells(n):
            lo, hi = C.faces_of(c)
            if len(lo) != n or len(hi) != n:
                out.append(Violation(c, "arity", detail=f"expected {n} faces per side, got {len(lo)}/{len(hi)}"))
                continue
            ok = True
            for f in lo + hi:
                if f not in C or C.cell_dim(f) != n - 1:
                    out.append(Violation(c, "reference", detail=f"face {f!r} is not an existing {n - 1}-cell"))
                    ok = False
            if ok:
                structural_ok.add(c)
    for c in C.cells(0):
        if any(C.faces_of(c)):
            out.append(Violation(c, "arity", detail="vertices have no faces"))
    for n in range(2, C.dim + 1):
        for c in C.cells(n):
            if c not in structural_ok:
                continue
            for j in range(2, n + 1):
                for i in range(1, j):
                    for eps in (0, 1):
                        for eta in (0, 1):
                            a = C.face(c, eta, j)
                            b = C.face(c, eps, i)
                            if a not in structural_ok and n - 1 > 0 and C.cell_dim(a) > 0:
                                continue
                            if b not in structural_ok and C.cell_dim(b) > 0:
                                continue
                            lhs = C.face(a, eps, i)
                            rhs = C.face(b, eta, j - 1)
                            if lhs != rhs:
                                out.append(Violation(c, "identity", eps, eta, i, j, lhs, rhs))
    return out


def corner_lemma_failures(C: PrecubicalSet) -> list[str]:
    """2-cells whose boundary paths fail to share corners (implied by the identities)."""
    bad = []
    for A in C.squares:
        if C.target(C.face(A, 0, 2)) != C.source(C.face(A, 1, 1)):
            bad.append(f"{A}: end(d0_2) != start(d1_1)")
        if C.target(C.face(A, 0, 1)) != C.source(C.face(A, 1, 2)):
            bad.append(f"{A}: end(d0_1) != start(d1_2)")
    return bad


# ----------------------------------------------------------------------------
# paths


@dataclass(frozen=True, order=True)
class PathWord:
    """Composable edge sequence starting at ``start`` (empty = constant path)."""

    start: str
    edges: tuple = ()
    end: str = ""

    def __post_init__(self):
        if not self.end:
            if self.edges:
                raise PrecubicalError("PathWord with edges needs an explicit end vertex")
            object.__setattr__(self, "end", self.start)

    def __len__(self):
        return len(self.edges)

    def concat(self, other: "PathWord") -> "PathWord":
        if self.end != other.start:
            raise PrecubicalError(f"cannot concatenate {self} and {other}")
        return PathWord(self.start, self.edges + other.edges, other.end)

    def __str__(self):
        if not self.edges:
            return f"e_{self.start}"
        sep = "" if all(len(e) == 1 for e in self.edges) else "."
        return sep.join(self.edges)

    __repr__ = __str__


def make_path(C: PrecubicalSet, edges: Sequence[str], start: str | None = None) -> PathWord:
    """Check composability and build the path (``start`` needed only when empty)."""
    edges = tuple(edges)
    if not edges:
        if start is None or start not in C.vertices:
            raise PrecubicalError(f"empty path needs a known start vertex, got {start!r}")
        return PathWord(start)
    for e in edges:
        if e not in C.edges:
            raise PrecubicalError(f"unknown edge {e!r}")
    for e, f in zip(edges, edges[1:]):
        if C.target(e) != C.source(f):
            raise PrecubicalError(f"edges {e!r} and {f!r} do not compose")
    if start is not None and start != C.source(edges[0]):
        raise PrecubicalError("path does not start at the given vertex")
    return PathWord(C.source(edges[0]), edges, C.target(edges[-1]))


def _out_edges(C: PrecubicalSet) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {v: [] for v in C.vertices}
    for e in sorted(C.edges):
        out[C.source(e)].append(e)
    return out


def is_acyclic(C: PrecubicalSet) -> bool:
    """True iff the 1-skeleton has no directed cycle (self-loops count)."""
    out = _out_edges(C)
    state: dict[str, int] = {}
    for root in C.vertices:
        if state.get(root):
            continue
        stack = [(root, iter(out[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            e = next(it, None)
            if e is None:
                state[v] = 2
                stack.pop()
                continue
            w = C.target(e)
            s = state.get(w, 0)
            if s == 1:
                return False
            if s == 0:
                state[w] = 1
                stack.append((w, iter(out[w])))
    return True


def default_max_len(C: PrecubicalSet, max_len: int | None) -> int:
    if max_len is not None:
        if max_len < 0:
            raise PrecubicalError("max_len must be >= 0")
        return max_len
    if not is_acyclic(C):
        raise PrecubicalError("complex has directed cycles: an explicit max_len is required")
    return len(C.edges)


def reachable(C: PrecubicalSet) -> dict[str, set[str]]:
    """Reflexive-transitive closure of the 1-skeleton."""
    out = _out_edges(C)
    reach = {}
    for v in C.vertices:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for e in out[x]:
                y = C.target(e)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach[v] = seen
    return reach


def enumerate_paths(C: PrecubicalSet, a: str, b: str, max_len: int | None = None) -> list[PathWord]:
    """All edge paths a -> b with at most ``max_len`` edges, lexicographic by edge ids."""
    for v in (a, b):
        if v not in C.vertices:
            raise PrecubicalError(f"unknown vertex {v!r}")
    L = default_max_len(C, max_len)
    out = _out_edges(C)
    reach = reachable(C)
    found = []
    stack = [(a, ())]
    while stack:
        v, edges = stack.pop()
        if v == b:
            found.append(PathWord(a, edges, b))
        if len(edges) == L:
            continue
        for e in reversed(out[v]):
            w = C.target(e)
            if b in reach[w]:
                stack.append((w, edges + (e,)))
    found.sort(key=lambda p: p.edges)
    return found


def all_paths(C: PrecubicalSet, max_len: int | None = None) -> dict[tuple[str, str], list[PathWord]]:
    L = default_max_len(C, max_len)
    reach = reachable(C)
    return {(a, b): enumerate_paths(C, a, b, L) for a in C.vertices for b in C.vertices if b in reach[a]}


# ----------------------------------------------------------------------------
# builders


def cubical_subcomplex(
    cubes: Iterable[tuple[tuple[int, ...], tuple[int, ...]]],
    label,
) -> PrecubicalSet:
    """Precubical set of a union of lattice cubes in Z^d, closed under faces.

    A cube is ``(base, axes)`` with ``axes`` strictly increasing; it spans
    ``base + [0,1]^axes``.  ``d^eps_i`` freezes ``axes[i-1]`` at ``eps``.
    ``label(base, axes)`` names cells.
    """
    todo = [(tuple(b), tuple(ax)) for b, ax in cubes]
    allc: set = set()
    while todo:
        c = todo.pop()
        if c in allc:
            continue
        allc.add(c)
        base, axes = c
        for k, ax in enumerate(axes):
            for eps in (0, 1):
                nb = list(base)
                nb[ax] += eps
                todo.append((tuple(nb), axes[:k] + axes[k + 1:]))
    bydim: dict[int, list] = {}
    for c in allc:
        bydim.setdefault(len(c[1]), []).append(c)
    cells = {}
    faces = {}
    for n, cs in bydim.items():
        names = sorted(label(*c) for c in cs)
        cells[n] = names
        for base, axes in cs:
            if not axes:
                continue
            lo, hi = [], []
            for k, ax in enumerate(axes):
                for eps, side in ((0, lo), (1, hi)):
                    nb = list(base)
                    nb[ax] += eps
                    side.append(label(tuple(nb), axes[:k] + axes[k + 1:]))
            faces[label(base, axes)] = (lo, hi)
    return PrecubicalSet(cells, faces)


# Labels of the 2x2 and 3x3 grid diagrams; coordinates are (column, row),
# column increasing rightwards and row downwards.
_SQUARE_VERTICES = {(0, 0): "4", (1, 0): "2", (0, 1): "3", (1, 1): "1"}
_SQUARE_EDGES = {
    ((0, 0), (0,)): "a",
    ((0, 1), (0,)): "d",
    ((0, 0), (1,)): "b",
    ((1, 0), (1,)): "c",
}
_SQUARE_CELLS = {(0, 0): "C"}

_GRID3_EDGES = {
    ((0, 0), (0,)): "i",
    ((1, 0), (0,)): "j",
    ((0, 1), (0,)): "d",
    ((1, 1), (0,)): "f",
    ((0, 2), (0,)): "a",
    ((1, 2), (0,)): "b",
    ((0, 0), (1,)): "k",
    ((0, 1), (1,)): "c",
    ((1, 0), (1,)): "h",
    ((1, 1), (1,)): "e",
    ((2, 0), (1,)): "l",
    ((2, 1), (1,)): "g",
}
_GRID3_CELLS = {(0, 0): "C", (1, 0): "E", (0, 1): "F", (1, 1): "D"}


def _grid_labels(rows: int, cols: int):
    if (rows, cols) == (2, 2):
        return (lambda p: _SQUARE_VERTICES[p]), _SQUARE_EDGES, _SQUARE_CELLS
    if (rows, cols) == (3, 3):
        return (lambda p: str(9 - 3 * p[1] - p[0])), _GRID3_EDGES, _GRID3_CELLS
    vertex = lambda p: f"p{p[1]}_{p[0]}"  # noqa: E731
    edges = {}
    for r in range(rows):
        for c in range(cols):
            edges[((c, r), (0,))] = f"x{r}_{c}"
            edges[((c, r), (1,))] = f"y{r}_{c}"
    cells = {(c, r): f"s{r}_{c}" for r in range(rows - 1) for c in range(cols - 1)}
    return vertex, edges, cells


def grid_complex(rows: int, cols: int, filled: Iterable = ()) -> PrecubicalSet:
    """``rows x cols`` grid of vertices, edges pointing right and down.

    ``filled`` names the unit squares carrying a 2-cell, either by label or
    by ``(row, col)`` of their top-left corner.  The 2x2 and 3x3 grids use
    the labels of the classic square and two-holes diagrams (vertices 4,2,3,1
    and 9..1, squares C, E / F, D).
    """
    if rows < 1 or cols < 1:
        raise PrecubicalError("grid needs at least one row and column")
    vertex, edge_names, cell_names = _grid_labels(rows, cols)
    by_label = {v: k for k, v in cell_names.items()}
    squares = set()
    for f in filled:
        if isinstance(f, str):
            if f not in by_label:
                raise PrecubicalError(f"unknown square label {f!r}")
            squares.add(by_label[f])
        else:
            r, c = f
            if not (0 <= r < rows - 1 and 0 <= c < cols - 1):
                raise PrecubicalError(f"square {(r, c)} out of range for a {rows}x{cols} grid")
            squares.add((c, r))
    cubes = [((c, r), ()) for r in range(rows) for c in range(cols)]
    cubes += [((c, r), (0,)) for r in range(rows) for c in range(cols - 1)]
    cubes += [((c, r), (1,)) for r in range(rows - 1) for c in range(cols)]
    cubes += [(p, (0, 1)) for p in sorted(squares)]

    def label(base, axes):
        if not axes:
            return vertex(base)
        if len(axes) == 1:
            return edge_names[(base, axes)]
        return cell_names[base]

    return cubical_subcomplex(cubes, label)


def filled_square() -> PrecubicalSet:
    return grid_complex(2, 2, {"C"})


def empty_square() -> PrecubicalSet:
    return grid_complex(2, 2)


def two_holes_left() -> PrecubicalSet:
    return grid_complex(3, 3, {"C", "D"})


def two_holes_right() -> PrecubicalSet:
    return grid_complex(3, 3, {"E", "F"})


_CUBE_VERTICES = {
    (0, 0, 0): "8",
    (1, 0, 0): "7",
    (0, 1, 0): "6",
    (0, 0, 1): "4",
    (1, 1, 0): "5",
    (1, 0, 1): "3",
    (0, 1, 1): "2",
    (1, 1, 1): "1",
}


def hollow_cube() -> PrecubicalSet:
    """Boundary of the 3-cube: 8 vertices (8 initial, 1 final), 12 edges, 6 squares."""

    def corners(base, axes):
        pts = []
        for bits in itertools.product((0, 1), repeat=len(axes)):
            p = list(base)
            for ax, b in zip(axes, bits):
                p[ax] += b
            pts.append(_CUBE_VERTICES[tuple(p)])
        return pts

    def label(base, axes):
        if not axes:
            return _CUBE_VERTICES[base]
        return ("s" if len(axes) == 2 else "") + "".join(corners(base, axes))

    faces = []
    for ax in range(3):
        others = tuple(x for x in range(3) if x != ax)
        for eps in (0, 1):
            base = [0, 0, 0]
            base[ax] = eps
            faces.append((tuple(base), others))
    return cubical_subcomplex(faces, label)


def loop_graph() -> PrecubicalSet:
    """One vertex ``u`` with one loop edge ``t``."""
    return PrecubicalSet({0: ["u"], 1: ["t"]}, {"t": (["u"], ["u"])})


def two_half_circles() -> PrecubicalSet:
    """Directed circle split at vertices 1, 2: ``u: 1 -> 2`` and ``v: 2 -> 1``."""
    return PrecubicalSet({0: ["1", "2"], 1: ["u", "v"]}, {"u": (["1"], ["2"]), "v": (["2"], ["1"])})


def kronecker() -> PrecubicalSet:
    """Two parallel edges ``alpha``, ``beta`` from 1 to 2."""
    return PrecubicalSet({0: ["1", "2"], 1: ["alpha", "beta"]}, {"alpha": (["1"], ["2"]), "beta": (["1"], ["2"])})


def discrete(vertices: Iterable[str]) -> PrecubicalSet:
    return PrecubicalSet({0: list(vertices)}, {})


def subcomplex(C: PrecubicalSet, cells: Iterable[str]) -> PrecubicalSet:
    """Smallest subcomplex containing ``cells`` (closed under faces)."""
    keep: set = set()
    todo = list(cells)
    while todo:
        c = todo.pop()
        if c in keep:
            continue
        if c not in C:
            raise PrecubicalError(f"unknown cell {c!r}")
        keep.add(c)
        lo, hi = C.faces_of(c)
        todo.extend(lo + hi)
    cells_by = {n: [c for c in C.cells(n) if c in keep] for n in range(C.dim + 1)}
    return PrecubicalSet(cells_by, {c: C.faces_of(c) for c in keep if C.cell_dim(c) > 0})


def is_subcomplex(X: PrecubicalSet, C: PrecubicalSet) -> bool:
    for n in range(X.dim + 1):
        for c in X.cells(n):
            if c not in C or C.cell_dim(c) != n or X.faces_of(c) != C.faces_of(c):
                return False
    return True


def relabel(C: PrecubicalSet, mapping: Mapping[str, str]) -> PrecubicalSet:
    """Rename cells (ids missing from ``mapping`` keep their name)."""
    m = lambda c: mapping.get(c, c)  # noqa: E731
    cells = {n: [m(c) for c in C.cells(n)] for n in range(C.dim + 1)}
    faces = {m(c): ([m(x) for x in lo], [m(x) for x in hi]) for c, (lo, hi) in ((c, C.faces_of(c)) for n in range(1, C.dim + 1) for c in C.cells(n))}
    return PrecubicalSet(cells, faces)


def disjoint_union(C1: PrecubicalSet, C2: PrecubicalSet, tags: tuple[str, str] = ("1", "2")) -> PrecubicalSet:
    """Disjoint union; every id is prefixed ``"<tag>:"`` so ids never collide."""
    R1 = relabel(C1, {c: f"{tags[0]}:{c}" for n in range(C1.dim + 1) for c in C1.cells(n)})
    R2 = relabel(C2, {c: f"{tags[1]}:{c}" for n in range(C2.dim + 1) for c in C2.cells(n)})
    top = max(R1.dim, R2.dim)
    cells = {n: list(R1.cells(n)) + list(R2.cells(n)) for n in range(top + 1)}
    faces = {}
    for R in (R1, R2):
        for n in range(1, R.dim + 1):
            for c in R.cells(n):
                faces[c] = R.faces_of(c)
    return PrecubicalSet(cells, faces)


BUILDERS = {
    "filled_square": filled_square,
    "empty_square": empty_square,
    "two_holes_left": two_holes_left,
    "two_holes_right": two_holes_right,
    "hollow_cube": hollow_cube,
    "loop_graph": loop_graph,
    "two_half_circles": two_half_circles,
    "kronecker": kronecker,
}
