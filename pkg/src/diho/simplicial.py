"""Truncated simplicial algebras, Moore complexes and exact sequences.

A truncated simplicial algebra has levels ``0..top`` (each a
:class:`GradedAlgebra`), face morphisms ``faces[(n, i)]`` from level ``n``
to ``n - 1`` and optional degeneracies ``degeneracies[(n, i)]`` from level
``n`` to ``n + 1``.  Face maps are expected to preserve grades so that
the Moore complex splits grade by grade.

All lattices are computed over Z: the Moore complex carries Z-bases, so
homology comes with its torsion.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .dihomology import DimensionMatrix, Entry, QuotientMode, ha1
from .exactalg import (
    AlgebraError,
    Element,
    GradedAlgebra,
    Lattice,
    Morphism,
    TruncationError,
    coproduct,
    identity,
    integer_kernel,
    nullspace,
    rank,
    smith_normal_form,
)
from .exactalg.linalg import integerize, solve_in_span
from .precubical import PrecubicalError, PrecubicalSet, disjoint_union, is_subcomplex, relabel
from .tracealg import PathAlgebra, boundary_maps, degeneracy, mixed_algebra


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialViolation:
    identity: str
    level: int
    detail: str = ""

    def __str__(self):
        return f"level {self.level}: {self.identity} {self.detail}".rstrip()


class TruncatedSimplicialAlgebra:
    def __init__(
        self,
        levels: Sequence[GradedAlgebra],
        faces: Mapping[tuple[int, int], Morphism],
        degeneracies: Mapping[tuple[int, int], Morphism] | None = None,
        name: str = "",
    ):
        self.levels = list(levels)
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies or {})
        self.name = name
        if not self.levels:
            raise SimplicialError("need at least one level")
        for n in range(1, self.top + 1):
            for i in range(n + 1):
                f = self.faces.get((n, i))
                if f is None:
                    raise SimplicialError(f"missing face d_{i} at level {n}")
                if f.domain is not self.levels[n] or f.codomain is not self.levels[n - 1]:
                    raise SimplicialError(f"face d_{i} at level {n} has wrong endpoints")
        for (n, i), s in self.degeneracies.items():
            if not (0 <= i <= n and n + 1 <= self.top):
                raise SimplicialError(f"degeneracy s_{i} at level {n} out of range")
            if s.domain is not self.levels[n] or s.codomain is not self.levels[n + 1]:
                raise SimplicialError(f"degeneracy s_{i} at level {n} has wrong endpoints")

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def d(self, n: int, i: int) -> Morphism:
        return self.faces[(n, i)]

    def s(self, n: int, i: int) -> Morphism | None:
        return self.degeneracies.get((n, i))

    def __repr__(self):
        dims = [L.dim() for L in self.levels]
        return f"TruncatedSimplicialAlgebra({self.name or '?'}, dims={dims})"


def _same(f: Morphism, g: Morphism) -> bool:
    return all(f.images[w] == g.images[w] for w in f.domain.words())


def _compose(first: Morphism, second: Morphism) -> Morphism:
    return first.then(second)


def check_simplicial(S: TruncatedSimplicialAlgebra, multiplicative: bool = True) -> list[SimplicialViolation]:
    """Every simplicial identity defined inside the truncation, plus multiplicativity."""
    out: list[SimplicialViolation] = []
    top = S.top
    for n in range(2, top + 1):
        for j in range(n + 1):
            for i in range(j):
                # d_i d_j = d_{j-1} d_i
                if not _same(_compose(S.d(n, j), S.d(n - 1, i)), _compose(S.d(n, i), S.d(n - 1, j - 1))):
                    out.append(SimplicialViolation(f"d_{i} d_{j} = d_{j - 1} d_{i}", n))
    for (n, j), s in sorted(S.degeneracies.items()):
        m = n + 1
        for i in range(m + 1):
            lhs = _compose(s, S.d(m, i))
            if i < j:
                s2 = S.s(n - 1, j - 1) if n >= 1 else None
                if s2 is None:
                    continue
                rhs = _compose(S.d(n, i), s2)
                name = f"d_{i} s_{j} = s_{j - 1} d_{i}"
            elif i in (j, j + 1):
                rhs = identity(S.levels[n])
                name = f"d_{i} s_{j} = id"
            else:
                s2 = S.s(n - 1, j) if n >= 1 else None
                if s2 is None:
                    continue
                rhs = _compose(S.d(n, i - 1), s2)
                name = f"d_{i} s_{j} = s_{j} d_{i - 1}"
            if not _same(lhs, rhs):
                out.append(SimplicialViolation(name, n))
    for n in range(S.top - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                # s_i s_j = s_{j+1} s_i for i <= j
                maps = (S.s(n, j), S.s(n + 1, i), S.s(n, i), S.s(n + 1, j + 1))
                if None in maps:
                    continue
                if not _same(_compose(maps[0], maps[1]), _compose(maps[2], maps[3])):
                    out.append(SimplicialViolation(f"s_{i} s_{j} = s_{j + 1} s_{i}", n))
    if multiplicative:
        for (n, i), f in sorted(S.faces.items()):
            if not f.is_algebra_map:
                out.append(SimplicialViolation(f"d_{i} is not multiplicative", n, f"witness {f.witness[:2]}"))
        for (n, i), f in sorted(S.degeneracies.items()):
            if not f.is_algebra_map:
                out.append(SimplicialViolation(f"s_{i} is not multiplicative", n, f"witness {f.witness[:2]}"))
    return out


# ----------------------------------------------------------------------------
# Moore complex


def _int_vector(x: Element, what: str) -> dict:
    out = {}
    for w, c in x.items():
        c = Fraction(c)
        if c.denominator != 1:
            raise SimplicialError(f"{what} has a non-integer coefficient {c}")
        out[w] = int(c)
    return out


def _check_grades(S: TruncatedSimplicialAlgebra):
    for (n, i), f in S.faces.items():
        if not f.is_grade_preserving():
            raise SimplicialError(f"face d_{i} at level {n} does not preserve grades")


@dataclass
class MooreComplex:
    """Joint kernels ``N_n`` (Z-bases per grade) and differentials ``(-1)^n d_n``.

    ``bases[n][g]`` lists level-``n`` elements; ``matrices[n][g][k]`` holds
    the coordinates of the differential of ``bases[n][g][k]`` in
    ``bases[n-1][g]``.
    """

    source: TruncatedSimplicialAlgebra
    bases: list = field(default_factory=list)
    matrices: list = field(default_factory=list)

    @property
    def top(self) -> int:
        return self.source.top

    def grades(self) -> list:
        seen = []
        for level in self.source.levels:
            for g in level.grades():
                if g not in seen:
                    seen.append(g)
        return seen

    def rank_of(self, n: int, g) -> int:
        return len(self.bases[n].get(g, []))

    def differential_matrix(self, n: int, g) -> list[list[int]]:
        """Rows = N_n basis elements, columns = N_{n-1} coordinates."""
        if n == 0 or n > self.top:
            return []
        return [list(r) for r in self.matrices[n].get(g, [])]

    def boundary_squares(self) -> list[tuple[int, object]]:
        """Positions ``(n, grade)`` where ``∂_{n-1} ∘ ∂_n`` is nonzero."""
        bad = []
        for n in range(2, self.top + 1):
            for g in self.grades():
                A = self.differential_matrix(n, g)
                B = self.differential_matrix(n - 1, g)
                if not A or not B:
                    continue
                for row in A:
                    if any(sum(row[k] * B[k][j] for k in range(len(row))) for j in range(len(B[0]))):
                        bad.append((n, g))
                        break
        return bad


def moore_normalize(S: TruncatedSimplicialAlgebra) -> MooreComplex:
    _check_grades(S)
    M = MooreComplex(S)
    for n, level in enumerate(S.levels):
        per = {}
        for g in level.grades():
            words = level.basis(*g)
            if n == 0:
                per[g] = [Element.word(w) for w in words]
                continue
            rows_index: dict = {}
            rows: list[list[int]] = []
            for i in range(n):
                f = S.d(n, i)
                for k, w in enumerate(words):
                    for t, c in _int_vector(f.images[w], f"d_{i}").items():
                        key = (i, t)
                        if key not in rows_index:
                            rows_index[key] = len(rows)
                            rows.append([0] * len(words))
                        rows[rows_index[key]][k] = c
            kern = integer_kernel(rows, len(words))
            per[g] = [Element({words[k]: v for k, v in enumerate(vec) if v}) for vec in kern]
        M.bases.append(per)
    M.matrices.append({})
    for n in range(1, S.top + 1):
        sign = -1 if n % 2 else 1
        per = {}
        for g, basis in M.bases[n].items():
            target = M.bases[n - 1].get(g, [])
            tvecs = [dict(x.items()) for x in target]
            rows = []
            for x in basis:
                y = S.d(n, n)(x) * sign
                if not y:
                    rows.append([0] * len(target))
                    continue
                coeffs = solve_in_span(tvecs, dict(y.items())) if tvecs else None
                if coeffs is None:
                    raise SimplicialError(f"d_{n} of a normalized element leaves N_{n - 1}")
                if any(c.denominator != 1 for c in coeffs):
                    raise SimplicialError("N_{n-1} basis is not a Z-basis for the differential")
                rows.append([int(c) for c in coeffs])
            per[g] = rows
        M.matrices.append(per)
    bad = M.boundary_squares()
    if bad:
        raise SimplicialError(f"boundary of boundary is nonzero at {bad[:3]}")
    return M


def _matrix_rank(rows: list[list[int]]) -> int:
    return rank({j: v for j, v in enumerate(r) if v} for r in rows)


def homology(M: MooreComplex, n: int) -> dict:
    """``H_n`` per grade as :class:`Entry` (free rank and torsion).

    At the top level the truncation provides no boundaries, so the value is
    the module of cycles.
    """
    if not 0 <= n <= M.top:
        raise SimplicialError(f"degree {n} outside the truncation 0..{M.top}")
    out = {}
    for g in M.grades():
        dim = M.rank_of(n, g)
        if dim == 0:
            continue
        cyc = dim - (_matrix_rank(M.differential_matrix(n, g)) if n else 0)
        B = M.differential_matrix(n + 1, g) if n < M.top else []
        snf = smith_normal_form(B) if B else None
        b = snf.rank if snf else 0
        out[g] = Entry(cyc - b, snf.invariant_factors if snf else ())
    return out


def cycle_basis(M: MooreComplex, n: int, g) -> list[Element]:
    basis = M.bases[n].get(g, [])
    if n == 0:
        return list(basis)
    D = M.differential_matrix(n, g)
    ncols = len(D[0]) if D else 0
    if ncols == 0:
        return list(basis)
    cols_as_rows = [[D[k][j] for k in range(len(D))] for j in range(ncols)]
    out = []
    for vec in integer_kernel(cols_as_rows, len(D)):
        acc = Element()
        for k, c in enumerate(vec):
            if c:
                acc = acc + basis[k] * c
        out.append(acc)
    return out


def boundary_lattice(M: MooreComplex, n: int, g) -> tuple[tuple, Lattice]:
    """Z-span of ``∂_{n+1}(N_{n+1})`` inside level ``n`` words of grade ``g``."""
    S = M.source
    words = S.levels[n].basis(*g)
    pos = {w: k for k, w in enumerate(words)}
    gens = []
    if n < M.top:
        sign = -1 if (n + 1) % 2 else 1
        for x in M.bases[n + 1].get(g, []):
            y = S.d(n + 1, n + 1)(x) * sign
            vec = [0] * len(words)
            for w, c in _int_vector(y, "boundary").items():
                vec[pos[w]] = c
            gens.append(vec)
    return words, Lattice(len(words), gens)


@dataclass
class EckmannHiltonReport:
    degree: int
    pairs_checked: int
    counterexamples: list

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def eckmann_hilton_check(S: TruncatedSimplicialAlgebra | MooreComplex, n: int = 1, limit: int | None = None) -> EckmannHiltonReport:
    """Check that the product of any two ``n``-cycles is an ``n``-boundary (over Z).

    Products of Z-basis cycles suffice by bilinearity.  Needs level ``n+1``.
    Counterexamples are returned, never suppressed.
    """
    M = S if isinstance(S, MooreComplex) else moore_normalize(S)
    if n < 1:
        raise SimplicialError("the zero-multiplication property concerns degrees n >= 1")
    if n + 1 > M.top:
        raise SimplicialError(f"degree {n} needs level {n + 1}, truncation stops at {M.top}")
    level = M.source.levels[n]
    cycles = {g: cycle_basis(M, n, g) for g in M.grades()}
    lattices: dict = {}
    checked = 0
    bad = []
    for g1, xs in cycles.items():
        for g2, ys in cycles.items():
            if g1[1] != g2[0]:
                continue
            for x in xs:
                for y in ys:
                    if limit is not None and checked >= limit:
                        return EckmannHiltonReport(n, checked, bad)
                    checked += 1
                    try:
                        p = level.multiply(x, y)
                    except TruncationError:
                        continue
                    for h, part in level.split(p).items():
                        if h not in lattices:
                            lattices[h] = boundary_lattice(M, n, h)
                        words, L = lattices[h]
                        pos = {w: k for k, w in enumerate(words)}
                        vec = [0] * len(words)
                        for w, c in part.items():
                            vec[pos[w]] = c
                        if not L.contains(vec):
                            bad.append((x, y, p))
    return EckmannHiltonReport(n, checked, bad)


# ----------------------------------------------------------------------------
# coproducts and the fold map


def _tensor_images(C_dom: GradedAlgebra, C_cod: GradedAlgebra, maps: Mapping[int, Morphism]) -> dict:
    images = {}
    for x in C_dom.words():
        acc: dict = {(): Fraction(1)}
        for s, w in x:
            img = maps[s].images[w]
            nxt: dict = {}
            for prefix, c in acc.items():
                for t, d in img.items():
                    key = prefix + ((s, t),)
                    nxt[key] = nxt.get(key, 0) + c * d
            acc = nxt
            if not acc:
                break
        for key in acc:
            if key not in C_cod:
                raise TruncationError(f"image {key} of {x} is outside the truncated coproduct")
        images[x] = Element(acc)
    return images


def simplicial_coproduct(S1: TruncatedSimplicialAlgebra, S2: TruncatedSimplicialAlgebra, word_cap: int) -> TruncatedSimplicialAlgebra:
    """Levelwise coproduct with structure maps applied factor by factor."""
    top = min(S1.top, S2.top)
    levels = [coproduct(S1.levels[n], S2.levels[n], word_cap) for n in range(top + 1)]
    faces = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            maps = {1: S1.d(n, i), 2: S2.d(n, i)}
            faces[(n, i)] = Morphism(levels[n], levels[n - 1], _tensor_images(levels[n], levels[n - 1], maps), f"d{i}")
    degs = {}
    for (n, i) in S1.degeneracies:
        if (n, i) in S2.degeneracies and n + 1 <= top:
            maps = {1: S1.s(n, i), 2: S2.s(n, i)}
            degs[(n, i)] = Morphism(levels[n], levels[n + 1], _tensor_images(levels[n], levels[n + 1], maps), f"s{i}")
    return TruncatedSimplicialAlgebra(levels, faces, degs, name=f"({S1.name} ⊔ {S2.name})")


def fold_map_h(
    coprod: GradedAlgebra,
    target: GradedAlgebra,
    embed: Mapping[int, Callable[[Hashable], Hashable]] | None = None,
) -> Morphism:
    """``x_1 ⊗ … ⊗ x_n ↦ x_1 × … × x_n`` computed in ``target``.

    Factor words are included into ``target`` by ``embed[side]`` (identity
    by default); a factor missing from ``target`` means the inclusion of
    subcomplexes is violated.
    """
    embed = embed or {}
    images = {}
    for x in coprod.words():
        acc = None
        for s, w in x:
            t = embed.get(s, lambda u: u)(w)
            if t not in target:
                raise PrecubicalError(f"{w} is not a word of the ambient algebra: subcomplex inclusion violated")
            acc = Element.word(t) if acc is None else target.multiply(acc, Element.word(t))
            if not acc:
                break
        images[x] = acc
    return Morphism(coprod, target, images, name="h")


# ----------------------------------------------------------------------------
# exactness


@dataclass
class LinearMap:
    """Linear map between free modules with labelled bases."""

    domain: tuple
    codomain: tuple
    images: dict
    name: str = ""

    @classmethod
    def of(cls, f: Morphism, name: str = "") -> "LinearMap":
        return cls(tuple(f.domain.words()), tuple(f.codomain.words()), dict(f.images), name or f.name)

    @classmethod
    def zero(cls, domain: Sequence, codomain: Sequence, name: str = "0") -> "LinearMap":
        return cls(tuple(domain), tuple(codomain), {}, name)

    def __call__(self, x: Mapping) -> dict:
        acc: dict = {}
        for w, c in x.items():
            for t, d in self.images.get(w, {}).items():
                acc[t] = acc.get(t, 0) + c * d
        return {t: c for t, c in acc.items() if c}


@dataclass(frozen=True)
class PositionVerdict:
    position: int
    name: str
    image_rank: int
    kernel_rank: int
    contained: bool

    @property
    def exact(self) -> bool:
        return self.contained and self.image_rank == self.kernel_rank

    def to_dict(self) -> dict:
        return {
            "position": self.position,
            "name": self.name,
            "image_rank": self.image_rank,
            "kernel_rank": self.kernel_rank,
            "contained": self.contained,
            "exact": self.exact,
        }


@dataclass
class ExactnessReport:
    positions: list

    @property
    def exact(self) -> bool:
        return all(p.exact for p in self.positions)

    def failures(self) -> list:
        return [p for p in self.positions if not p.exact]

    def to_dict(self) -> dict:
        return {"exact": self.exact, "positions": [p.to_dict() for p in self.positions]}


def exactness_check(maps: Sequence[LinearMap], names: Sequence[str] | None = None) -> ExactnessReport:
    """At every interior module, compare the incoming image with the outgoing kernel.

    Exact means the image lies in the kernel and both have the same rank,
    decided exactly over Q.
    """
    for f, g in zip(maps, maps[1:]):
        if f.codomain != g.domain:
            raise ValueError(f"maps {f.name} and {g.name} do not compose")
    out = []
    for k, (f, g) in enumerate(zip(maps, maps[1:]), start=1):
        images = [dict(f.images.get(w, {})) for w in f.domain]
        image_rank = rank(images)
        cols = [dict(g.images.get(w, {})) for w in g.domain]
        kernel_rank = len(g.domain) - rank(_transpose_keys(cols))
        contained = all(not g(v) for v in images)
        name = names[k] if names else f"M{k}"
        out.append(PositionVerdict(k, name, image_rank, kernel_rank, contained))
    return ExactnessReport(out)


def _transpose_keys(cols: list[dict]) -> list[dict]:
    rows: dict = {}
    for j, col in enumerate(cols):
        for t, c in col.items():
            if c:
                rows.setdefault(t, {})[j] = c
    return list(rows.values())


def kernel_map(f: Morphism) -> LinearMap:
    """Inclusion of a Z-basis of ``ker f`` (computed over all domain words at once)."""
    words = f.domain.words()
    cols = [f.images[w] for w in words]
    basis = [integerize(v) for v in nullspace(cols)]
    labels = tuple(("ker", k) for k in range(len(basis)))
    images = {labels[k]: {words[j]: c for j, c in v.items()} for k, v in enumerate(basis)}
    return LinearMap(labels, tuple(words), images, "incl")


def short_sequence(f: Morphism) -> tuple[list[LinearMap], list[str]]:
    """``0 → ker f → domain → codomain → 0`` as a list of maps."""
    inc = kernel_map(f)
    F = LinearMap.of(f)
    maps = [LinearMap.zero((), inc.domain, "0"), inc, F, LinearMap.zero(F.codomain, (), "0")]
    return maps, ["0", "ker", "domain", "codomain", "0"]


# ----------------------------------------------------------------------------
# trace complexes


def trace_complex(C: PrecubicalSet, max_len: int | None = None) -> TruncatedSimplicialAlgebra:
    """Levels 0, 1 = path algebra and mixed edge/2-cell sequence algebra.

    Faces are the two boundary maps, the degeneracy views a path as an
    edge-only sequence.  The Moore complex has ``N_1 = ker d_0`` and
    ``H_0 = R1 / d_1(ker d_0)``, the quotient by the two-sided ideal of the
    cell relations.
    """
    P = PathAlgebra(C, max_len)
    M = mixed_algebra(C, P.max_len)
    d0, d1 = boundary_maps(P, M)
    s0 = degeneracy(P, M)
    return TruncatedSimplicialAlgebra([P, M], {(1, 0): d0, (1, 1): d1}, {(0, 0): s0}, name="trace")


def moore_h0_matrix(C: PrecubicalSet, max_len: int | None = None) -> DimensionMatrix:
    M = moore_normalize(trace_complex(C, max_len))
    H = homology(M, 0)
    order = C.vertices
    return DimensionMatrix(order, tuple(tuple(H.get((a, b), Entry(0)) for b in order) for a in order))


@dataclass
class LesReport:
    matrices: dict
    block_sum_ok: bool
    exactness: ExactnessReport
    word_cap: int
    h_is_surjective: bool

    @property
    def ok(self) -> bool:
        return self.block_sum_ok and self.exactness.exact and self.h_is_surjective

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "block_sum_ok": self.block_sum_ok,
            "word_cap": self.word_cap,
            "h_surjective": self.h_is_surjective,
            "exactness": self.exactness.to_dict(),
            "matrices": {k: m.to_dict() for k, m in self.matrices.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def disjoint_union_les_report(
    C1: PrecubicalSet,
    C2: PrecubicalSet,
    mode: QuotientMode | str = QuotientMode.IDEAL,
    word_cap: int = 2,
    max_len: int | None = None,
) -> LesReport:
    """First homology of a disjoint union against the parts, plus the fold sequence.

    Checks HA1(C1 ⊔ C2) equals the block sum of HA1(C1), HA1(C2) and that
    ``0 → ker h → R1[C1] ⊔ R1[C2] → R1[C1 ⊔ C2] → 0`` is exact, with the
    coproduct truncated at ``word_cap`` factors.
    """
    U = disjoint_union(C1, C2)
    X1 = relabel(C1, {c: f"1:{c}" for n in range(C1.dim + 1) for c in C1.cells(n)})
    X2 = relabel(C2, {c: f"2:{c}" for n in range(C2.dim + 1) for c in C2.cells(n)})
    for X in (X1, X2):
        if not is_subcomplex(X, U):  # pragma: no cover
            raise PrecubicalError("part is not a subcomplex of the union")
    HU = ha1(U, mode, max_len).dimension_matrix()
    H1 = ha1(X1, mode, max_len).dimension_matrix()
    H2 = ha1(X2, mode, max_len).dimension_matrix()
    blocks = H1.block_sum(H2).reordered(HU.order)
    P = PathAlgebra(U, max_len)
    P1 = PathAlgebra(X1, max_len if max_len is not None else None)
    P2 = PathAlgebra(X2, max_len if max_len is not None else None)
    Cop = coproduct(P1, P2, word_cap)
    h = fold_map_h(Cop, P)
    maps, names = short_sequence(h)
    report = exactness_check(maps, names)
    surjective = report.positions[-1].exact
    return LesReport({"union": HU, "part1": H1, "part2": H2}, blocks == HU, report, word_cap, surjective)


# ----------------------------------------------------------------------------
# simplicial sets, free simplicial modules, monoid nerves


@dataclass
class FiniteSimplicialSet:
    """Simplices per level with face and degeneracy tables (truncated at ``top``)."""

    levels: list
    faces: dict  # (n, i) -> {simplex: simplex}
    degeneracies: dict  # (n, i) -> {simplex: simplex}

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def violations(self) -> list[str]:
        out = []
        d, s = self.faces, self.degeneracies
        for n in range(2, self.top + 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j):
                        if d[(n - 1, i)][d[(n, j)][x]] != d[(n - 1, j - 1)][d[(n, i)][x]]:
                            out.append(f"d_{i} d_{j} at {x!r}")
        for n in range(self.top):
            for x in self.levels[n]:
                for j in range(n + 1):
                    y = s[(n, j)][x]
                    for i in range(n + 2):
                        lhs = d[(n + 1, i)][y]
                        if i in (j, j + 1):
                            rhs = x
                        elif i < j:
                            rhs = s[(n - 1, j - 1)][d[(n, i)][x]]
                        else:
                            rhs = s[(n - 1, j)][d[(n, i - 1)][x]]
                        if lhs != rhs:
                            out.append(f"d_{i} s_{j} at {x!r}")
        return out

    @classmethod
    def from_complex(cls, facets: Iterable[Iterable], top: int) -> "FiniteSimplicialSet":
        """Nerve of an ordered simplicial complex: nondecreasing vertex tuples."""
        facets = [tuple(sorted(f)) for f in facets]
        verts = sorted({v for f in facets for v in f})
        levels = []
        for n in range(top + 1):
            simp = set()
            for f in facets:
                simp.update(itertools.combinations_with_replacement(f, n + 1))
            levels.append(sorted(simp))
        return cls._from_tuples(levels)

    @classmethod
    def _from_tuples(cls, levels) -> "FiniteSimplicialSet":
        faces, degs = {}, {}
        for n in range(1, len(levels)):
            for i in range(n + 1):
                faces[(n, i)] = {x: x[:i] + x[i + 1:] for x in levels[n]}
        for n in range(len(levels) - 1):
            for i in range(n + 1):
                degs[(n, i)] = {x: x[: i + 1] + x[i:] for x in levels[n]}
        return cls(levels, faces, degs)

    def collapse(self, sub: Callable[[object], bool]) -> "FiniteSimplicialSet":
        """Quotient identifying the sub-simplicial set ``sub`` with a point."""
        def m(n, x):
            return ("*", n) if sub(x) else x

        levels = []
        for n, L in enumerate(self.levels):
            kept = [x for x in L if not sub(x)]
            levels.append(([("*", n)] if len(kept) < len(L) else []) + kept)
        faces = {(n, i): {m(n, x): m(n - 1, y) for x, y in t.items()} for (n, i), t in self.faces.items()}
        degs = {(n, i): {m(n, x): m(n + 1, y) for x, y in t.items()} for (n, i), t in self.degeneracies.items()}
        return FiniteSimplicialSet(levels, faces, degs)

    @classmethod
    def monoid_nerve(cls, elements: Sequence, op: Callable, unit, top: int) -> "FiniteSimplicialSet":
        levels = [list(itertools.product(elements, repeat=n)) for n in range(top + 1)]
        faces, degs = {}, {}
        for n in range(1, top + 1):
            for i in range(n + 1):
                faces[(n, i)] = {x: _nerve_face(x, i, op) for x in levels[n]}
        for n in range(top):
            for i in range(n + 1):
                degs[(n, i)] = {x: x[:i] + (unit,) + x[i:] for x in levels[n]}
        return cls(levels, faces, degs)


def _nerve_face(x: tuple, i: int, op) -> tuple:
    n = len(x)
    if i == 0:
        return x[1:]
    if i == n:
        return x[:-1]
    return x[: i - 1] + (op(x[i - 1], x[i]),) + x[i + 1:]


def free_simplicial_module(X: FiniteSimplicialSet) -> TruncatedSimplicialAlgebra:
    """Free module on each level with zero multiplication, one grade."""
    levels = [
        GradedAlgebra(("*",), {("*", "*"): list(L)}, lambda u, v: None, name=f"Z[X_{n}]")
        for n, L in enumerate(X.levels)
    ]
    faces = {
        (n, i): Morphism(levels[n], levels[n - 1], {x: Element.word(y) for x, y in t.items()}, f"d{i}")
        for (n, i), t in X.faces.items()
    }
    degs = {
        (n, i): Morphism(levels[n], levels[n + 1], {x: Element.word(y) for x, y in t.items()}, f"s{i}")
        for (n, i), t in X.degeneracies.items()
    }
    return TruncatedSimplicialAlgebra(levels, faces, degs, name="Z[X]")


def monoid_nerve_algebra(A: GradedAlgebra, elements: Sequence, op: Callable, unit, top: int = 2) -> TruncatedSimplicialAlgebra:
    """Levels ``A ⊗ Z[M^n]`` over the nerve of a commutative monoid ``M``.

    Multiplication is componentwise, so faces (which multiply neighbours
    in ``M``) are algebra maps exactly when ``M`` is commutative.
    """
    for a in elements:
        for b in elements:
            if op(a, b) != op(b, a):
                raise AlgebraError("monoid must be commutative for the nerve to be simplicial in algebras")
    X = FiniteSimplicialSet.monoid_nerve(elements, op, unit, top)
    levels = []
    for n, L in enumerate(X.levels):
        basis = {g: [(w, m) for w in A.basis(*g) for m in L] for g in A.grades()}

        def mul(u, v, n=n):
            prod = A.mul_words(u[0], v[0])
            m = tuple(op(a, b) for a, b in zip(u[1], v[1]))
            return Element({(w, m): c for w, c in prod.items()})

        levels.append(GradedAlgebra(A.objects, basis, mul, name=f"{A.name}[M^{n}]"))
    faces = {
        (n, i): Morphism(levels[n], levels[n - 1], {(w, m): Element.word((w, t[m])) for w in A.words() for m in X.levels[n]}, f"d{i}")
        for (n, i), t in X.faces.items()
    }
    degs = {
        (n, i): Morphism(levels[n], levels[n + 1], {(w, m): Element.word((w, t[m])) for w in A.words() for m in X.levels[n]}, f"s{i}")
        for (n, i), t in X.degeneracies.items()
    }
    return TruncatedSimplicialAlgebra(levels, faces, degs, name=f"{A.name}[N M]")
