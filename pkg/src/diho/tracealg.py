"""Trace algebras of a precubical set.

* ``r0_algebra``: reachable vertex pairs, ``(x,y)(y,t) = (x,t)``.
* ``path_algebra``: edge paths with concatenation.
* ``two_path_algebra``: chained sequences of 2-cells with concatenation.
* ``mixed_algebra``: chained sequences of edges and 2-cells; together with
  the path algebra it forms the low end of the trace complex (see
  :mod:`diho.simplicial`).
* ``boundary_maps``: the two boundary morphisms replacing each 2-cell by its
  bottom-right path (``delta0``) or its left-top path (``delta1``).
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactalg import Element, GradedAlgebra, Morphism, TruncationError
from .precubical import (
    PathWord,
    PrecubicalError,
    PrecubicalSet,
    all_paths,
    default_max_len,
    reachable,
)


def r0_algebra(C: PrecubicalSet) -> GradedAlgebra:
    reach = reachable(C)
    basis = {(x, y): [(x, y)] for x in C.vertices for y in C.vertices if y in reach[x]}
    return GradedAlgebra(
        C.vertices,
        basis,
        lambda u, v: Element.word((u[0], v[1])),
        name="R0",
        units={x: (x, x) for x in C.vertices},
    )


class PathAlgebra(GradedAlgebra):
    """Free category algebra on the 1-skeleton, truncated at ``max_len`` edges."""

    def __init__(self, C: PrecubicalSet, max_len: int | None = None):
        self.complex = C
        self.max_len = default_max_len(C, max_len)
        basis = {g: ps for g, ps in all_paths(C, self.max_len).items()}

        def mul(p: PathWord, q: PathWord):
            if len(p) + len(q) > self.max_len:
                raise TruncationError(f"path {p}{q} is longer than the cap {self.max_len}")
            return Element.word(p.concat(q))

        super().__init__(
            C.vertices,
            basis,
            mul,
            name="R1",
            units={v: PathWord(v) for v in C.vertices},
            word_length=len,
        )

    def path(self, edges, start: str | None = None) -> PathWord:
        """Basis word for an edge sequence (a string of one-letter ids also works)."""
        edges = tuple(edges)
        if not edges:
            if start is None:
                raise PrecubicalError("empty path needs a start vertex")
            return PathWord(start)
        C = self.complex
        for e in edges:
            if e not in C.edges:
                raise PrecubicalError(f"unknown edge {e!r}")
        w = PathWord(C.source(edges[0]), edges, C.target(edges[-1]))
        if w not in self:
            raise PrecubicalError(f"{edges} is not a path of length <= {self.max_len}")
        return w

    def element_of(self, *terms) -> Element:
        """``element_of(("ac", 1), ("bd", -1))`` builds a combination of paths."""
        return Element({self.path(e): c for e, c in terms})


def path_algebra(C: PrecubicalSet, max_len: int | None = None) -> PathAlgebra:
    return PathAlgebra(C, max_len)


# ----------------------------------------------------------------------------
# sequences of cells


@dataclass(frozen=True, order=True)
class CellSequence:
    """Chained cells of dimension 1 or 2 from ``start`` to ``end``.

    Consecutive cells satisfy final corner of one = initial corner of the
    next.  The empty sequence at a vertex is allowed in the mixed algebra.
    """

    start: str
    cells: tuple = ()
    end: str = ""

    def __post_init__(self):
        if not self.end:
            object.__setattr__(self, "end", self.start)

    def __str__(self):
        if not self.cells:
            return f"e_{self.start}"
        return "(" + ",".join(self.cells) + ")"

    __repr__ = __str__


def _edge_length(C: PrecubicalSet, cells) -> int:
    return sum(C.cell_dim(c) for c in cells)


def _sequences(C: PrecubicalSet, allowed_dims, max_cells: int | None, max_edges: int | None, with_empty: bool):
    out_cells: dict[str, list[str]] = {v: [] for v in C.vertices}
    for n in allowed_dims:
        for c in C.cells(n):
            out_cells[C.initial(c)].append(c)
    for v in out_cells:
        out_cells[v].sort()
    basis: dict = {}
    for v in C.vertices:
        stack = [((), v)]
        while stack:
            cells, end = stack.pop()
            if cells or with_empty:
                basis.setdefault((v, end), []).append(CellSequence(v, cells, end))
            if max_cells is not None and len(cells) >= max_cells:
                continue
            for c in out_cells[end]:
                nxt = cells + (c,)
                if max_edges is not None and _edge_length(C, nxt) > max_edges:
                    continue
                stack.append((nxt, C.final(c)))
    for g in basis:
        basis[g].sort(key=lambda s: s.cells)
    return basis


def _corner_graph_acyclic(C: PrecubicalSet) -> bool:
    succ = {A: [B for B in C.squares if C.initial(B) == C.final(A)] for A in C.squares}
    state: dict = {}

    def visit(A) -> bool:
        state[A] = 1
        for B in succ[A]:
            s = state.get(B, 0)
            if s == 1 or (s == 0 and not visit(B)):
                return False
        state[A] = 2
        return True

    return all(state.get(A) == 2 or visit(A) for A in C.squares)


class TwoPathAlgebra(GradedAlgebra):
    """Nonempty chained sequences of 2-cells, concatenation product."""

    def __init__(self, C: PrecubicalSet, max_cells: int | None = None):
        self.complex = C
        if max_cells is None:
            if not _corner_graph_acyclic(C):
                raise PrecubicalError("2-cells chain in a cycle: an explicit cap is required")
            max_cells = len(C.squares)
        self.max_cells = max_cells
        basis = _sequences(C, (2,), max_cells, None, with_empty=False)

        def mul(s: CellSequence, t: CellSequence):
            if len(s.cells) + len(t.cells) > self.max_cells:
                raise TruncationError(f"2-cell sequence longer than the cap {self.max_cells}")
            return Element.word(CellSequence(s.start, s.cells + t.cells, t.end))

        super().__init__(C.vertices, basis, mul, name="R2", word_length=lambda s: len(s.cells))


def two_path_algebra(C: PrecubicalSet, max_cells: int | None = None) -> TwoPathAlgebra:
    return TwoPathAlgebra(C, max_cells)


class MixedAlgebra(GradedAlgebra):
    """Chained sequences of edges and 2-cells of total edge length <= ``max_len``.

    A 2-cell counts as two edges, so both boundary maps land in the path
    algebra with the same cap.  Sequences made only of edges are the
    images of paths under the degeneracy.
    """

    def __init__(self, C: PrecubicalSet, max_len: int | None = None):
        self.complex = C
        self.max_len = default_max_len(C, max_len)
        basis = _sequences(C, (1, 2), None, self.max_len, with_empty=True)

        def mul(s: CellSequence, t: CellSequence):
            cells = s.cells + t.cells
            if _edge_length(C, cells) > self.max_len:
                raise TruncationError(f"cell sequence longer than the cap {self.max_len}")
            return Element.word(CellSequence(s.start, cells, t.end))

        super().__init__(
            C.vertices,
            basis,
            mul,
            name="R1+2",
            units={v: CellSequence(v) for v in C.vertices},
            word_length=lambda s: _edge_length(C, s.cells),
        )


def mixed_algebra(C: PrecubicalSet, max_len: int | None = None) -> MixedAlgebra:
    return MixedAlgebra(C, max_len)


# ----------------------------------------------------------------------------
# boundaries


def lower_path(C: PrecubicalSet, A: str) -> tuple[str, str]:
    """Bottom then right boundary edges of a 2-cell."""
    return C.face(A, 0, 2), C.face(A, 1, 1)


def upper_path(C: PrecubicalSet, A: str) -> tuple[str, str]:
    """Left then top boundary edges of a 2-cell."""
    return C.face(A, 0, 1), C.face(A, 1, 2)


def _boundary_word(C: PrecubicalSet, start: str, cells, side: int) -> PathWord:
    edges: list[str] = []
    for c in cells:
        if C.cell_dim(c) == 1:
            edges.append(c)
        else:
            edges.extend(lower_path(C, c) if side == 0 else upper_path(C, c))
    if not edges:
        return PathWord(start)
    for e, f in zip(edges, edges[1:]):
        if C.target(e) != C.source(f):
            raise PrecubicalError(f"boundary edges {e!r}, {f!r} do not compose")
    return PathWord(start, tuple(edges), C.target(edges[-1]))


def cell_relation(P: PathAlgebra, A: str) -> Element:
    """(bottom·right) − (left·top) for the 2-cell ``A``."""
    C = P.complex
    if A not in C.squares:
        raise PrecubicalError(f"{A!r} is not a 2-cell")
    lo = _boundary_word(C, C.initial(A), (A,), 0)
    hi = _boundary_word(C, C.initial(A), (A,), 1)
    if (lo.start, lo.end) != (hi.start, hi.end):
        raise PrecubicalError(f"boundary paths of {A!r} do not share endpoints")
    return Element.word(lo) - Element.word(hi)


def boundary_maps(P: PathAlgebra, S: GradedAlgebra) -> tuple[Morphism, Morphism]:
    """``(delta0, delta1)`` from a 2-cell or mixed sequence algebra into ``P``."""
    C = P.complex
    maps = []
    for side in (0, 1):
        images = {}
        for s in S.words():
            w = _boundary_word(C, s.start, s.cells, side)
            if w not in P:
                raise TruncationError(f"boundary of {s} exceeds the path cap {P.max_len}")
            images[s] = Element.word(w)
        maps.append(Morphism(S, P, images, name=f"delta{side}"))
    return maps[0], maps[1]


def degeneracy(P: PathAlgebra, M: MixedAlgebra) -> Morphism:
    """Paths viewed as edge-only cell sequences."""
    return Morphism(P, M, {p: Element.word(CellSequence(p.start, p.edges, p.end)) for p in P.words()}, name="s0")


def bigrading(A: GradedAlgebra, R0: GradedAlgebra) -> Morphism:
    """Endpoint map sending every basis word of ``A`` to its reachability pair."""
    return Morphism(A, R0, {w: Element.word(A.grade(w)) for w in A.words()}, name="d_0")
