"""Finite categories, their convolution algebras, and linearized functors."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .algebra import Element, GradedAlgebra, Morphism


class CategoryError(ValueError):
    pass


class FunctorError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteCategory:
    """A finite category given by an explicit composition table.

    ``compose[(f, g)]`` is the composite "f then g" (``g ∘ f``), defined for
    every pair with ``target(f) == source(g)``.
    """

    objects: tuple
    morphisms: Mapping[Hashable, tuple]  # name -> (source, target)
    identities: Mapping[Hashable, Hashable]  # object -> identity morphism
    compose: Mapping[tuple, Hashable] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        problems = self.problems()
        if problems:
            raise CategoryError("; ".join(problems[:5]))

    def source(self, f):
        return self.morphisms[f][0]

    def target(self, f):
        return self.morphisms[f][1]

    def hom(self, a, b) -> list:
        return [f for f, st in self.morphisms.items() if st == (a, b)]

    def problems(self) -> list[str]:
        out = []
        objs = set(self.objects)
        for f, (a, b) in self.morphisms.items():
            if a not in objs or b not in objs:
                out.append(f"morphism {f!r} has unknown endpoint")
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self.morphisms.get(i) != (a, a):
                out.append(f"missing identity at {a!r}")
        if out:
            return out
        for (f, g), h in self.compose.items():
            if f not in self.morphisms or g not in self.morphisms or h not in self.morphisms:
                out.append(f"composition entry ({f!r},{g!r}) uses unknown morphisms")
            elif self.target(f) != self.source(g):
                out.append(f"composition entry ({f!r},{g!r}) on non-composable pair")
            elif self.morphisms[h] != (self.source(f), self.target(g)):
                out.append(f"composite of ({f!r},{g!r}) has wrong endpoints")
        if out:
            return out
        for f, (a, b) in self.morphisms.items():
            for g in self.out_of(b):
                if (f, g) not in self.compose:
                    out.append(f"composite of ({f!r},{g!r}) missing")
        if out:
            return out
        for f, (a, b) in self.morphisms.items():
            if self.compose[(self.identities[a], f)] != f or self.compose[(f, self.identities[b])] != f:
                out.append(f"identity law fails at {f!r}")
            for g in self.out_of(b):
                fg = self.compose[(f, g)]
                for h in self.out_of(self.target(g)):
                    if self.compose[(fg, h)] != self.compose[(f, self.compose[(g, h)])]:
                        out.append(f"associativity fails at ({f!r},{g!r},{h!r})")
        return out

    def out_of(self, a) -> list:
        return [f for f, (s, _) in self.morphisms.items() if s == a]

    # --- constructors -----------------------------------------------------

    @classmethod
    def discrete(cls, objects: Iterable) -> "FiniteCategory":
        objects = tuple(objects)
        ids = {a: ("id", a) for a in objects}
        return cls(objects, {ids[a]: (a, a) for a in objects}, ids, {(ids[a], ids[a]): ids[a] for a in objects})

    @classmethod
    def from_poset(cls, elements: Iterable, leq) -> "FiniteCategory":
        """Poset category; ``leq(x, y)`` must be a partial order."""
        elements = tuple(elements)
        mors = {(x, y): (x, y) for x in elements for y in elements if leq(x, y)}
        ids = {x: (x, x) for x in elements}
        comp = {}
        for (x, y) in mors:
            for (y2, z) in mors:
                if y2 == y:
                    comp[((x, y), (y, z))] = (x, z)
        return cls(elements, mors, ids, comp)

    @classmethod
    def free(cls, vertices: Iterable, arrows: Mapping[Hashable, tuple]) -> "FiniteCategory":
        """Free category on an acyclic quiver.

        Non-identity morphisms are tuples of arrow names; the identity at
        ``v`` is ``("id", v)``.
        """
        vertices = tuple(vertices)
        out: dict = {v: [] for v in vertices}
        for name, (s, t) in arrows.items():
            if s not in out or t not in out:
                raise CategoryError(f"arrow {name!r} has unknown endpoint")
            out[s].append((name, t))
        paths: dict = {}
        ids = {v: ("id", v) for v in vertices}
        for v in vertices:
            paths[ids[v]] = (v, v)
            stack = [((), v)]
            while stack:
                p, end = stack.pop()
                for name, t in out[end]:
                    q = p + (name,)
                    if len(q) > len(arrows):
                        raise CategoryError("quiver has a directed cycle; free category is infinite")
                    paths[q] = (v, t)
                    stack.append((q, t))
        comp = {}
        for f, (a, b) in paths.items():
            for g, (b2, c) in paths.items():
                if b2 != b:
                    continue
                if f == ids[a]:
                    comp[(f, g)] = g
                elif g == ids[b]:
                    comp[(f, g)] = f
                else:
                    comp[(f, g)] = f + g
        return cls(vertices, paths, ids, comp)


def convolution_algebra(cat: FiniteCategory, name: str = "") -> GradedAlgebra:
    """Free module on the morphisms; product of f, g is "f then g" when composable, else 0."""
    basis: dict = {}
    for f, (a, b) in cat.morphisms.items():
        basis.setdefault((a, b), []).append(f)
    comp = cat.compose
    return GradedAlgebra(
        cat.objects,
        basis,
        lambda f, g: Element.word(comp[(f, g)]),
        name=name or "R[C]",
        units=dict(cat.identities),
    )


@dataclass(frozen=True)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: Mapping
    on_morphisms: Mapping

    def problems(self) -> list[str]:
        C, D = self.source, self.target
        out = []
        for a in C.objects:
            if self.on_objects.get(a) not in set(D.objects):
                out.append(f"object {a!r} not sent to an object of the target")
        for f, (a, b) in C.morphisms.items():
            g = self.on_morphisms.get(f)
            if g not in D.morphisms:
                out.append(f"morphism {f!r} not sent to a morphism")
            elif D.morphisms[g] != (self.on_objects.get(a), self.on_objects.get(b)):
                out.append(f"morphism {f!r}: endpoints not preserved")
        if out:
            return out
        for a in C.objects:
            if self.on_morphisms[C.identities[a]] != D.identities[self.on_objects[a]]:
                out.append(f"identity at {a!r} not preserved")
        for (f, g), h in C.compose.items():
            if D.compose[(self.on_morphisms[f], self.on_morphisms[g])] != self.on_morphisms[h]:
                out.append(f"composite ({f!r},{g!r}) not preserved")
        return out

    def injective_on_objects(self) -> bool:
        return len(set(self.on_objects.values())) == len(self.source.objects)


def linearize_functor(F: Functor) -> tuple[Morphism, bool]:
    """Linear extension of a functor between convolution algebras.

    Returns the morphism and whether it is multiplicative, decided by
    checking every basis pair.  The witness of a failure is available as
    ``morphism.witness``.
    """
    problems = F.problems()
    if problems:
        raise FunctorError("; ".join(problems[:5]))
    A = convolution_algebra(F.source)
    B = convolution_algebra(F.target)
    f = Morphism(A, B, {m: Element.word(F.on_morphisms[m]) for m in A.words()}, name="F")
    return f, f.is_algebra_map
