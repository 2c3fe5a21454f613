"""First directed homology algebra of a precubical set.

``ha1`` quotients the path algebra by relations coming from the 2-cells.
Three relation modes are offered:

* ``IDEAL``: the two-sided ideal generated by every cell relation
  ``(bottom·right) − (left·top)``.  Only this mode gives a quotient algebra.
* ``IMAGE``: the linear span of ``(delta0 − delta1)(z)`` for ``z`` ranging
  over chained sequences of 2-cells.
* ``LOCAL``: the linear span of the cell relations alone.

Grade by grade LOCAL ⊆ IMAGE ⊆ IDEAL.
"""
from __future__ import annotations

import enum
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactalg import (
    AlgebraError,
    Element,
    GradedAlgebra,
    QuotientAlgebra,
    SnfReport,
    Submodule,
    image_elements,
    span_submodule,
    two_sided_ideal,
)
from .precubical import PathWord, PrecubicalSet
from .tracealg import PathAlgebra, boundary_maps, cell_relation, r0_algebra, two_path_algebra


class QuotientMode(str, enum.Enum):
    IDEAL = "ideal"
    IMAGE = "image"
    LOCAL = "local"

    @classmethod
    def parse(cls, value) -> "QuotientMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown quotient mode {value!r}; expected ideal, image or local") from None


# ----------------------------------------------------------------------------
# dimension matrices


@dataclass(frozen=True)
class Entry:
    rank: int
    torsion: tuple[int, ...] = ()

    def pretty(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("R")
        elif self.rank > 1:
            parts.append(f"R^{self.rank}")
        parts.extend(f"R/{d}" for d in self.torsion)
        return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class DimensionMatrix:
    """Entry ``[i][j]`` describes grade ``(order[i], order[j])``: rows are sources."""

    order: tuple
    entries: tuple

    @classmethod
    def of_algebra(cls, A: GradedAlgebra, order: Sequence | None = None) -> "DimensionMatrix":
        order = tuple(A.objects if order is None else order)
        return cls(order, tuple(tuple(Entry(A.dim(a, b)) for b in order) for a in order))

    def ranks(self) -> list[list[int]]:
        return [[e.rank for e in row] for row in self.entries]

    def entry(self, a, b) -> Entry:
        return self.entries[self.order.index(a)][self.order.index(b)]

    def rank(self, a, b) -> int:
        return self.entry(a, b).rank

    def restrict(self, subset: Iterable) -> "DimensionMatrix":
        keep = set(subset)
        unknown = keep - set(self.order)
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown)}")
        order = tuple(v for v in self.order if v in keep)
        return DimensionMatrix(order, tuple(tuple(self.entry(a, b) for b in order) for a in order))

    def permuted(self, mapping) -> "DimensionMatrix":
        """Same matrix with vertices renamed by ``mapping``."""
        return DimensionMatrix(tuple(mapping.get(v, v) for v in self.order), self.entries)

    def reordered(self, order: Sequence) -> "DimensionMatrix":
        if sorted(order) != sorted(self.order):
            raise ValueError("new order must be a permutation of the vertices")
        return DimensionMatrix(tuple(order), tuple(tuple(self.entry(a, b) for b in order) for a in order))

    def block_sum(self, other: "DimensionMatrix") -> "DimensionMatrix":
        order = self.order + other.order
        if len(set(order)) != len(order):
            raise ValueError("block sum needs disjoint vertex sets")
        zero = Entry(0)
        rows = [row + tuple(zero for _ in other.order) for row in self.entries]
        rows += [tuple(zero for _ in self.order) + row for row in other.entries]
        return DimensionMatrix(order, tuple(rows))

    def to_dict(self) -> dict:
        return {
            "order": list(self.order),
            "entries": [[{"rank": e.rank, "torsion": list(e.torsion)} for e in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, doc) -> "DimensionMatrix":
        return cls(
            tuple(doc["order"]),
            tuple(tuple(Entry(int(e["rank"]), tuple(e.get("torsion", ()))) for e in row) for row in doc["entries"]),
        )

    def pretty(self) -> str:
        cells = [[e.pretty() for e in row] for row in self.entries]
        labels = [str(v) for v in self.order]
        lw = max((len(s) for s in labels), default=0)
        width = max([len(c) for row in cells for c in row] + [len(s) for s in labels] + [1])
        lines = [" " * lw + " | " + " ".join(s.rjust(width) for s in labels)]
        lines.append("-" * len(lines[0]))
        for v, row in zip(labels, cells):
            lines.append(v.rjust(lw) + " | " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# homology


def ha0(C: PrecubicalSet) -> GradedAlgebra:
    """Reachability algebra of the vertices."""
    return r0_algebra(C)


def _default_jobs(jobs: int | None) -> int:
    if jobs is not None:
        return max(1, int(jobs))
    try:
        return max(1, int(os.environ.get("DIHO_JOBS", "1")))
    except ValueError:
        return 1


@dataclass
class HomologyPresentation:
    """Path algebra together with a per-grade relation span."""

    complex: PrecubicalSet
    mode: QuotientMode
    base: PathAlgebra
    relations: Submodule
    reps: dict = field(default_factory=dict)
    snf: dict = field(default_factory=dict)

    @property
    def max_len(self) -> int:
        return self.base.max_len

    def dim(self, a, b) -> int:
        return self.relations.codim(a, b)

    def dimension_matrix(self, order: Sequence | None = None) -> DimensionMatrix:
        order = tuple(self.base.objects if order is None else order)
        rows = []
        for a in order:
            row = []
            for b in order:
                rep = self.snf.get((a, b))
                n = self.base.dim(a, b)
                if rep is None:
                    row.append(Entry(n))
                else:
                    free, tors = rep.quotient(n)
                    row.append(Entry(free, tors))
            rows.append(tuple(row))
        return DimensionMatrix(order, tuple(rows))

    def torsion_free(self) -> bool:
        return all(not r.invariant_factors for r in self.snf.values())

    def normal_form(self, x: Element) -> Element:
        A = self.base
        out: dict = {}
        for g, part in A.split(Element(x)).items():
            r = self.relations.span(g).reduce(A.vector(part, g))
            out.update(A.from_vector(r, g).items())
        return Element(out)

    def quotient_algebra(self) -> QuotientAlgebra:
        if self.mode is not QuotientMode.IDEAL:
            raise AlgebraError(f"{self.mode.value} relations are not an ideal; no quotient algebra")
        return QuotientAlgebra(self.base, self.relations, name="HA1")


def relation_generators(P: PathAlgebra, mode: QuotientMode) -> list[Element]:
    C = P.complex
    if mode is QuotientMode.IMAGE and C.squares:
        R2 = two_path_algebra(C)
        d0, d1 = boundary_maps(P, R2)
        return image_elements(d0, d1)
    return [cell_relation(P, A) for A in C.squares]


def ha1(
    C: PrecubicalSet,
    mode: QuotientMode | str = QuotientMode.IDEAL,
    max_len: int | None = None,
    jobs: int | None = None,
) -> HomologyPresentation:
    """Path algebra modulo the 2-cell relations of the chosen mode.

    Representatives are the non-pivot paths of each grade under the
    lexicographic path order.  For cyclic complexes everything is computed
    in the length filtration ``<= max_len``.
    """
    mode = QuotientMode.parse(mode)
    P = PathAlgebra(C, max_len)
    gens = relation_generators(P, mode)
    if mode is QuotientMode.IDEAL:
        rel = two_sided_ideal(P, gens)
    else:
        rel = span_submodule(P, gens)
    H = HomologyPresentation(C, mode, P, rel)
    grades = P.grades()
    for g in grades:
        words = P.basis(*g)
        H.reps[g] = tuple(words[i] for i in rel.span(g).free_columns())
    nontrivial = [g for g in grades if rel.span(g).rank]
    with ThreadPoolExecutor(max_workers=_default_jobs(jobs)) as pool:
        for g, rep in zip(nontrivial, pool.map(rel.snf, nontrivial)):
            H.snf[g] = rep
    for g in grades:
        H.snf.setdefault(g, SnfReport(0, ()))
    return H


def restricted_ha1(H: HomologyPresentation, vertex_subset: Iterable) -> DimensionMatrix:
    return H.dimension_matrix().restrict(vertex_subset)


def _as_element(H: HomologyPresentation, p) -> Element:
    if isinstance(p, Element):
        return p
    if isinstance(p, PathWord):
        if p not in H.base:
            raise AlgebraError(f"{p} is not a basis path (cap {H.max_len})")
        return Element.word(p)
    return Element.word(H.base.path(p))


def class_equal(H: HomologyPresentation, p, q) -> bool:
    """Whether ``p − q`` lies in the relation span (paths or edge strings)."""
    x, y = _as_element(H, p), _as_element(H, q)
    gx = {H.base.grade(w) for w in x}
    gy = {H.base.grade(w) for w in y}
    if x and y and gx != gy:
        raise AlgebraError(f"grade mismatch: {sorted(gx)} vs {sorted(gy)}")
    return H.relations.contains(x - y)


def multiply_classes(H: HomologyPresentation, x, y) -> Element:
    """Normal form of the product of two classes (IDEAL mode only)."""
    if H.mode is not QuotientMode.IDEAL:
        raise AlgebraError(f"class multiplication is only well defined in ideal mode, not {H.mode.value}")
    return H.normal_form(H.base.multiply(_as_element(H, x), _as_element(H, y)))
