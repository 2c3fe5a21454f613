"""Bigraded non-unital associative algebras with exact coefficients."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping


class TruncationError(ArithmeticError):
    """A product left the length-truncated part of an algebra."""


class AlgebraError(ValueError):
    pass


class Element(Mapping):
    """Finite linear combination of basis words with rational coefficients.

    Zero coefficients are never stored, so the empty element is zero.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        t: dict = {}
        for w, c in items:
            c = t.get(w, 0) + Fraction(c)
            if c:
                t[w] = c
            else:
                t.pop(w, None)
        self._terms = t

    @classmethod
    def word(cls, w: Hashable, coeff=1) -> "Element":
        return cls({w: coeff})

    def __getitem__(self, w):
        return self._terms[w]

    def coefficient(self, w) -> Fraction:
        return self._terms.get(w, Fraction(0))

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "Element") -> "Element":
        return Element(itertools.chain(self._terms.items(), other.items()))

    def __sub__(self, other: "Element") -> "Element":
        return Element(itertools.chain(self._terms.items(), ((w, -c) for w, c in other.items())))

    def __neg__(self) -> "Element":
        return Element({w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar) -> "Element":
        if isinstance(scalar, Element):
            return NotImplemented
        return Element({w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == Element(other)._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self._terms.items():
            if c == 1:
                parts.append(f"{w}")
            elif c == -1:
                parts.append(f"-{w}")
            else:
                parts.append(f"{c}*{w}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = Element()

Grade = tuple  # (source object, target object)


class GradedAlgebra:
    """Algebra on a free module with a finite, bigraded basis.

    ``basis`` maps each grade ``(a, b)`` to the ordered basis words of that
    grade.  ``mul(u, v)`` is called only when ``target(u) == source(v)`` and
    returns an ``Element`` (or ``None`` / empty for zero); it may raise
    :class:`TruncationError` when the product leaves a truncated algebra.
    """

    def __init__(
        self,
        objects: Iterable,
        basis: Mapping[Grade, Iterable],
        mul: Callable[[Hashable, Hashable], Element | None],
        name: str = "",
        units: Mapping | None = None,
        word_length: Callable[[Hashable], int] | None = None,
    ):
        self.objects = tuple(objects)
        self.name = name
        self._basis: dict[Grade, tuple] = {}
        self._grade: dict = {}
        self._pos: dict = {}
        obj = set(self.objects)
        for g, words in basis.items():
            words = tuple(words)
            if not words:
                continue
            a, b = g
            if a not in obj or b not in obj:
                raise AlgebraError(f"grade {g} uses unknown objects")
            self._basis[(a, b)] = words
            for i, w in enumerate(words):
                self._pos[w] = i
                if w in self._grade:
                    raise AlgebraError(f"basis word {w!r} appears twice")
                self._grade[w] = (a, b)
        self._mul = mul
        self._cache: dict = {}
        self.units = dict(units or {})
        self._word_length = word_length

    # --- basis ------------------------------------------------------------

    def grades(self) -> list[Grade]:
        return list(self._basis)

    def basis(self, a=None, b=None) -> tuple:
        if a is None and b is None:
            return tuple(self._grade)
        return self._basis.get((a, b), ())

    def words(self) -> tuple:
        return tuple(self._grade)

    def grade(self, w) -> Grade:
        try:
            return self._grade[w]
        except KeyError:
            raise AlgebraError(f"{w!r} is not a basis word of {self.name or 'algebra'}") from None

    def source(self, w):
        return self.grade(w)[0]

    def target(self, w):
        return self.grade(w)[1]

    def __contains__(self, w) -> bool:
        return w in self._grade

    def dim(self, a=None, b=None) -> int:
        if a is None and b is None:
            return len(self._grade)
        return len(self._basis.get((a, b), ()))

    def word_length(self, w) -> int:
        return self._word_length(w) if self._word_length else 1

    def starting_at(self, a) -> list:
        return [w for (s, _), ws in self._basis.items() if s == a for w in ws]

    def ending_at(self, b) -> list:
        return [w for (_, t), ws in self._basis.items() if t == b for w in ws]

    def dimension_matrix(self, order=None) -> list[list[int]]:
        order = list(self.objects if order is None else order)
        return [[self.dim(a, b) for b in order] for a in order]

    def grade_of(self, x: Element) -> Grade:
        gs = {self.grade(w) for w in x}
        if len(gs) != 1:
            raise AlgebraError(f"element {x!r} is not homogeneous")
        return gs.pop()

    def split(self, x: Element) -> dict[Grade, Element]:
        """Homogeneous components of ``x`` keyed by grade."""
        parts: dict = {}
        for w, c in x.items():
            parts.setdefault(self.grade(w), {})[w] = c
        return {g: Element(t) for g, t in parts.items()}

    # --- coordinates ------------------------------------------------------

    def vector(self, x: Element, grade: Grade) -> dict[int, Fraction]:
        out = {}
        for w, c in x.items():
            if self._grade.get(w) != tuple(grade):
                raise AlgebraError(f"{w!r} is not in grade {grade}")
            out[self._pos[w]] = c
        return out

    def from_vector(self, vec: Mapping[int, Fraction], grade: Grade) -> Element:
        words = self.basis(*grade)
        return Element({words[i]: c for i, c in vec.items()})

    # --- multiplication ---------------------------------------------------

    def mul_words(self, u, v) -> Element:
        if self.target(u) != self.source(v):
            return ZERO
        key = (u, v)
        r = self._cache.get(key)
        if r is None:
            r = self._mul(u, v)
            r = ZERO if r is None else Element(r)
            for w in r:
                self.grade(w)
            self._cache[key] = r
        return r

    def multiply(self, x: Element, y: Element) -> Element:
        acc: dict = {}
        for u, a in x.items():
            tu = self.target(u)
            for v, b in y.items():
                if self.source(v) != tu:
                    continue
                for w, c in self.mul_words(u, v).items():
                    acc[w] = acc.get(w, 0) + a * b * c
        return Element(acc)

    def product(self, *xs: Element) -> Element:
        out = xs[0]
        for x in xs[1:]:
            out = self.multiply(out, x)
        return out

    def unit(self, a) -> Element:
        if a not in self.units:
            raise AlgebraError(f"no idempotent recorded at {a!r}")
        return Element.word(self.units[a])

    def element(self, *terms) -> Element:
        """``A.element(w)`` or ``A.element((w, c), ...)``."""
        if len(terms) == 1 and not isinstance(terms[0], tuple):
            return Element.word(terms[0])
        return Element(terms)

    # --- checks -----------------------------------------------------------

    def composable_triples(self):
        for u in self.words():
            for v in self.starting_at(self.target(u)):
                for w in self.starting_at(self.target(v)):
                    yield u, v, w

    def associativity_violations(self, limit: int = 10_000, rng: random.Random | None = None):
        """Basis triples where (uv)w != u(vw).

        Exhaustive when there are at most ``limit`` composable triples, a
        random sample of ``limit`` triples otherwise.  Triples whose products
        overflow a truncation are skipped.
        """
        triples = list(self.composable_triples())
        if len(triples) > limit:
            rng = rng or random.Random(0)
            triples = rng.sample(triples, limit)
        bad = []
        for u, v, w in triples:
            try:
                left = self.multiply(self.mul_words(u, v), Element.word(w))
                right = self.multiply(Element.word(u), self.mul_words(v, w))
            except TruncationError:
                continue
            if left != right:
                bad.append((u, v, w))
        return bad

    def is_associative(self, limit: int = 10_000) -> bool:
        return not self.associativity_violations(limit)

    def __repr__(self):
        return f"GradedAlgebra({self.name or '?'}, dim={self.dim()}, objects={len(self.objects)})"


def zero_algebra(name: str = "0") -> GradedAlgebra:
    return GradedAlgebra((), {}, lambda u, v: None, name=name)


class Morphism:
    """Linear map between graded algebras, given on domain basis words.

    ``is_algebra_map`` is computed by checking ``f(uv) == f(u)f(v)`` on every
    composable-or-not basis pair, never assumed.
    """

    def __init__(self, domain: GradedAlgebra, codomain: GradedAlgebra, images: Mapping, name: str = ""):
        self.domain = domain
        self.codomain = codomain
        self.name = name
        self.images: dict = {}
        for w in domain.words():
            img = Element(images.get(w, ()))
            for t in img:
                codomain.grade(t)
            self.images[w] = img
        extra = set(images) - set(self.images)
        if extra:
            raise AlgebraError(f"images given for non-basis words {sorted(map(repr, extra))[:3]}")
        self._witness = None
        self._checked = False
        self.skipped_pairs = 0
        self.exhaustive = True

    def __call__(self, x: Element) -> Element:
        acc: dict = {}
        for w, c in x.items():
            for t, d in self.images[w].items():
                acc[t] = acc.get(t, 0) + c * d
        return Element(acc)

    def apply_word(self, w) -> Element:
        return self.images[w]

    def _check(self, limit: int = 200_000, seed: int = 0):
        if self._checked:
            return
        A, B = self.domain, self.codomain
        pairs = [(u, v) for u in A.words() for v in A.words()] if A.dim() ** 2 <= limit else None
        if pairs is None:
            rng = random.Random(seed)
            words = A.words()
            pairs = [(rng.choice(words), rng.choice(words)) for _ in range(limit)]
            self.exhaustive = False
        else:
            self.exhaustive = True
        skipped = 0
        witness = None
        for u, v in pairs:
            try:
                lhs = self(A.mul_words(u, v))
                rhs = B.multiply(self.images[u], self.images[v])
            except TruncationError:
                skipped += 1
                continue
            if lhs != rhs:
                witness = (u, v, lhs, rhs)
                break
        self._witness = witness
        self.skipped_pairs = skipped
        self._checked = True

    @property
    def is_algebra_map(self) -> bool:
        self._check()
        return self._witness is None

    @property
    def witness(self):
        """First basis pair (u, v, f(uv), f(u)f(v)) breaking multiplicativity."""
        self._check()
        return self._witness

    def grade_images(self) -> dict[Grade, set]:
        """Codomain grades hit by each domain grade."""
        out: dict = {}
        for g in self.domain.grades():
            hit = set()
            for w in self.domain.basis(*g):
                hit.update(self.codomain.grade(t) for t in self.images[w])
            out[g] = hit
        return out

    def is_grade_preserving(self) -> bool:
        return all(hit <= {g} for g, hit in self.grade_images().items())

    def __sub__(self, other: "Morphism") -> "Morphism":
        _same_shape(self, other)
        return Morphism(
            self.domain,
            self.codomain,
            {w: self.images[w] - other.images[w] for w in self.domain.words()},
            name=f"({self.name}-{other.name})",
        )

    def __add__(self, other: "Morphism") -> "Morphism":
        _same_shape(self, other)
        return Morphism(
            self.domain,
            self.codomain,
            {w: self.images[w] + other.images[w] for w in self.domain.words()},
            name=f"({self.name}+{other.name})",
        )

    def scaled(self, c) -> "Morphism":
        return Morphism(self.domain, self.codomain, {w: self.images[w] * c for w in self.domain.words()})

    def then(self, other: "Morphism") -> "Morphism":
        """Composite ``other ∘ self``."""
        if other.domain is not self.codomain:
            raise AlgebraError("morphisms are not composable")
        return Morphism(self.domain, other.codomain, {w: other(self.images[w]) for w in self.domain.words()})

    def __repr__(self):
        return f"Morphism({self.name or '?'}: {self.domain.name} -> {self.codomain.name})"


def _same_shape(f: Morphism, g: Morphism):
    if f.domain is not g.domain or f.codomain is not g.codomain:
        raise AlgebraError("morphisms must share domain and codomain")


def identity(A: GradedAlgebra) -> Morphism:
    return Morphism(A, A, {w: Element.word(w) for w in A.words()}, name="id")


def zero_map(A: GradedAlgebra, B: GradedAlgebra) -> Morphism:
    return Morphism(A, B, {}, name="0")
