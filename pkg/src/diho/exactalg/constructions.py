"""Ideals, quotients, kernels, cokernels, coproducts and products of algebras."""
from __future__ import annotations

from typing import Iterable, Mapping

from .algebra import AlgebraError, Element, Grade, GradedAlgebra, Morphism, TruncationError
from .linalg import Subspace, integerize, nullspace, smith_normal_form, SnfReport


class Submodule:
    """Per-grade echelon description of a graded submodule of an algebra.

    ``generators`` keeps, per grade, integer vectors whose Z-span is the
    submodule over Z; it feeds the torsion computation and may be empty when
    only the rational span is known.
    """

    def __init__(self, algebra: GradedAlgebra, spans: Mapping[Grade, Subspace], generators=None):
        self.algebra = algebra
        self.spans: dict[Grade, Subspace] = {}
        for g in algebra.grades():
            self.spans[g] = spans.get(g) or Subspace(algebra.basis(*g))
        self.generators: dict[Grade, list[dict[int, int]]] = dict(generators or {})

    def span(self, grade: Grade) -> Subspace:
        return self.spans.get(tuple(grade)) or Subspace(self.algebra.basis(*grade))

    def dim(self, a, b) -> int:
        return self.span((a, b)).rank

    def codim(self, a, b) -> int:
        return self.algebra.dim(a, b) - self.dim(a, b)

    def total_dim(self) -> int:
        return sum(s.rank for s in self.spans.values())

    def contains(self, x: Element) -> bool:
        A = self.algebra
        return all(self.span(g).contains(A.vector(part, g)) for g, part in A.split(x).items())

    def elements(self, grade: Grade) -> list[Element]:
        return [self.algebra.from_vector(r, grade) for r in self.span(grade).rows]

    def is_two_sided(self) -> bool:
        return not self.closure_failures(stop_at_first=True)

    def closure_failures(self, stop_at_first: bool = False) -> list:
        """Products (basis word x element) leaving the submodule."""
        A = self.algebra
        bad = []
        for g in A.grades():
            for x in self.elements(g):
                for u in A.ending_at(g[0]):
                    try:
                        y = A.multiply(Element.word(u), x)
                    except TruncationError:
                        continue
                    if y and not self.contains(y):
                        bad.append(("left", u, x))
                        if stop_at_first:
                            return bad
                for v in A.starting_at(g[1]):
                    try:
                        y = A.multiply(x, Element.word(v))
                    except TruncationError:
                        continue
                    if y and not self.contains(y):
                        bad.append(("right", v, x))
                        if stop_at_first:
                            return bad
        return bad

    def snf(self, grade: Grade) -> SnfReport:
        gens = self.generators.get(tuple(grade))
        n = self.algebra.dim(*grade)
        if gens is None:
            gens = [integerize(r) for r in self.span(grade).rows]
        rows = [[v.get(i, 0) for i in range(n)] for v in gens]
        return smith_normal_form(rows)

    def __repr__(self):
        return f"Submodule(dim={self.total_dim()}, algebra={self.algebra.name})"


class Ideal(Submodule):
    pass


def _homogeneous(A: GradedAlgebra, x: Element) -> Grade:
    gs = {A.grade(w) for w in x}
    if len(gs) != 1:
        raise AlgebraError(f"generator {x!r} is not homogeneous; split it by grade first")
    return gs.pop()


def _record(A, spans, gens, seen, x: Element) -> bool:
    g = A.grade_of(x)
    key = (g, x)
    if key in seen:
        return False
    seen.add(key)
    span = spans.setdefault(g, Subspace(A.basis(*g)))
    vec = A.vector(x, g)
    gens.setdefault(g, []).append(integerize(vec))
    return span.add(vec)


def two_sided_ideal(A: GradedAlgebra, generators: Iterable[Element]) -> Ideal:
    """Two-sided ideal generated by homogeneous elements.

    Spans every ``u·g·v`` with ``u``, ``v`` basis words or an implicit
    identity, then saturates under left/right multiplication by basis words
    until the rank stops growing.  Products overflowing a truncated algebra
    are dropped, which yields the length-filtered ideal.
    """
    spans: dict[Grade, Subspace] = {}
    gens: dict[Grade, list] = {}
    seen: set = set()
    for g in generators:
        g = Element(g)
        if not g:
            continue
        a, b = _homogeneous(A, g)
        lefts = [g]
        for u in A.ending_at(a):
            try:
                lefts.append(A.multiply(Element.word(u), g))
            except TruncationError:
                pass
        for x in lefts:
            if not x:
                continue
            _record(A, spans, gens, seen, x)
            for v in A.starting_at(b):
                try:
                    y = A.multiply(x, Element.word(v))
                except TruncationError:
                    continue
                if y:
                    _record(A, spans, gens, seen, y)
    ideal = Ideal(A, spans, gens)
    while True:
        grew = False
        for side, w, x in ideal.closure_failures():
            y = A.multiply(Element.word(w), x) if side == "left" else A.multiply(x, Element.word(w))
            grew |= _record(A, spans, gens, seen, y)
        if not grew:
            break
        ideal = Ideal(A, spans, gens)
    return ideal


def span_submodule(A: GradedAlgebra, elements: Iterable[Element]) -> Submodule:
    """Plain linear span, split by grade (no multiplicative closure)."""
    spans: dict = {}
    gens: dict = {}
    seen: set = set()
    for x in elements:
        for part in A.split(Element(x)).values():
            _record(A, spans, gens, seen, part)
    return Submodule(A, spans, gens)


class QuotientAlgebra(GradedAlgebra):
    """``A / I`` with representatives = non-pivot basis words of each grade."""

    def __init__(self, A: GradedAlgebra, ideal: Submodule, name: str = ""):
        self.parent = A
        self.ideal = ideal
        reps = {}
        for g in A.grades():
            words = A.basis(*g)
            reps[g] = [words[i] for i in ideal.span(g).free_columns()]
        super().__init__(
            A.objects,
            reps,
            lambda u, v: self.normal_form(A.mul_words(u, v)),
            name=name or f"{A.name}/I",
            units={a: w for a, w in A.units.items() if w in {x for ws in reps.values() for x in ws}},
        )
        self.representatives = {g: tuple(ws) for g, ws in reps.items() if ws}

    def normal_form(self, x: Element) -> Element:
        A = self.parent
        out: dict = {}
        for g, part in A.split(Element(x)).items():
            r = self.ideal.span(g).reduce(A.vector(part, g))
            out.update(A.from_vector(r, g).items())
        return Element(out)

    def projection(self) -> Morphism:
        return Morphism(self.parent, self, {w: self.normal_form(Element.word(w)) for w in self.parent.words()}, "pi")

    def snf(self, grade: Grade) -> SnfReport:
        return self.ideal.snf(grade)


def quotient(A: GradedAlgebra, ideal: Submodule, check: bool = True) -> QuotientAlgebra:
    if check:
        bad = ideal.closure_failures(stop_at_first=True)
        if bad:
            side, w, x = bad[0]
            raise AlgebraError(f"not a two-sided ideal: {side} product with {w!r} leaves it (element {x!r})")
    return QuotientAlgebra(A, ideal)


def _check_grades(f: Morphism) -> None:
    owner: dict = {}
    for g, hit in f.grade_images().items():
        for h in hit:
            if h in owner and owner[h] != g:
                raise AlgebraError(
                    f"grade-mixing morphism: domain grades {owner[h]} and {g} both map into {h}"
                )
            owner[h] = g


def kernel(f: Morphism, g: Morphism | None = None, verify_ideal: bool = True) -> Submodule:
    """Per-grade kernel of ``f - g`` (the equalizer of f and g).

    With ``g`` omitted and ``f`` multiplicative the result is checked to be
    a two-sided ideal.  The pair form is generally not an ideal.
    """
    h = f if g is None else f - g
    _check_grades(h)
    A = h.domain
    spans = {}
    for gr in A.grades():
        words = A.basis(*gr)
        cols = [h.images[w] for w in words]
        spans[gr] = Subspace(words, nullspace(cols))
    K = Submodule(A, spans)
    if verify_ideal and g is None and f.is_algebra_map and not K.is_two_sided():  # pragma: no cover
        raise AlgebraError("kernel of an algebra map failed to be an ideal")
    return K


def image_elements(f: Morphism, g: Morphism | None = None) -> list[Element]:
    h = f if g is None else f - g
    out = []
    for w in h.domain.words():
        out.extend(h.codomain.split(h.images[w]).values())
    return out


def cokernel(f: Morphism, g: Morphism | None = None) -> QuotientAlgebra:
    """Codomain modulo the two-sided ideal generated by the image of ``f - g``."""
    I = two_sided_ideal(f.codomain, image_elements(f, g))
    return quotient(f.codomain, I)


# ----------------------------------------------------------------------------
# coproduct and product


def coproduct(A: GradedAlgebra, B: GradedAlgebra, word_cap: int, name: str = "") -> GradedAlgebra:
    """Free product of A and B, truncated to alternating words of length <= word_cap.

    A word is a tuple of ``(side, basis word)`` factors with alternating
    sides 1, 2.  Its length is its number of factors, where a factor taken
    from a nested coproduct counts with its own length.  All words live in one
    grade ``("*", "*")``: products of factors from different sides never
    vanish, so the coproduct carries no bigrading.  A product whose length
    exceeds the cap raises :class:`TruncationError`.
    """
    if word_cap < 1:
        raise ValueError("word_cap must be >= 1")
    sides = {1: A, 2: B}

    def factors(X, w) -> int:
        inner = getattr(X, "factor_length", None)
        return inner(w) if inner else 1

    def length(word) -> int:
        return sum(factors(sides[s], w) for s, w in word)

    words = []
    frontier = [((s, w),) for s in (1, 2) for w in sides[s].words()]
    frontier = [x for x in frontier if length(x) <= word_cap]
    while frontier:
        words.extend(frontier)
        nxt = []
        for x in frontier:
            s = 3 - x[-1][0]
            for w in sides[s].words():
                y = x + ((s, w),)
                if length(y) <= word_cap:
                    nxt.append(y)
        frontier = nxt

    def mul(x, y):
        if x[-1][0] != y[0][0]:
            z = x + y
            if length(z) > word_cap:
                raise TruncationError(f"coproduct word longer than cap {word_cap}")
            return Element.word(z)
        s = x[-1][0]
        merged = sides[s].mul_words(x[-1][1], y[0][1])
        out = {}
        for w, c in merged.items():
            z = x[:-1] + ((s, w),) + y[1:]
            if length(z) > word_cap:
                raise TruncationError(f"coproduct word longer than cap {word_cap}")
            out[z] = c
        return Element(out)

    C = GradedAlgebra(
        ("*",),
        {("*", "*"): words},
        mul,
        name=name or f"({A.name} ⊔ {B.name})",
        word_length=length,
    )
    C.factors = (A, B)
    C.word_cap = word_cap
    C.factor_length = length
    return C


def coproduct_injection(C: GradedAlgebra, side: int) -> Morphism:
    src = C.factors[side - 1]
    return Morphism(src, C, {w: Element.word(((side, w),)) for w in src.words() if ((side, w),) in C}, f"in{side}")


def direct_product(A: GradedAlgebra, B: GradedAlgebra, name: str = "") -> GradedAlgebra:
    """Componentwise product algebra; objects and words are tagged 1 or 2."""
    sides = {1: A, 2: B}
    basis = {}
    for s, X in sides.items():
        for (a, b) in X.grades():
            basis[((s, a), (s, b))] = [(s, w) for w in X.basis(a, b)]
    objects = [(1, a) for a in A.objects] + [(2, b) for b in B.objects]

    def mul(x, y):
        s = x[0]
        return Element({(s, w): c for w, c in sides[s].mul_words(x[1], y[1]).items()})

    units = {(s, a): (s, w) for s, X in sides.items() for a, w in X.units.items()}
    P = GradedAlgebra(objects, basis, mul, name=name or f"({A.name} x {B.name})", units=units)
    P.factors = (A, B)
    return P


def product_projection(P: GradedAlgebra, side: int) -> Morphism:
    tgt = P.factors[side - 1]
    return Morphism(P, tgt, {w: (Element.word(w[1]) if w[0] == side else Element()) for w in P.words()}, f"pr{side}")


__all__ = [
    "Submodule",
    "Ideal",
    "two_sided_ideal",
    "span_submodule",
    "QuotientAlgebra",
    "quotient",
    "kernel",
    "cokernel",
    "image_elements",
    "coproduct",
    "coproduct_injection",
    "direct_product",
    "product_projection",
]
