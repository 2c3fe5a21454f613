"""Seeded random generators for categories, functors and simplicial algebras."""
from __future__ import annotations

import itertools
import random

from diho.exactalg import FiniteCategory, Functor, convolution_algebra
from diho.simplicial import monoid_nerve_algebra


def random_dag_pairs(rng: random.Random, order: list, p: float) -> set:
    """Random pairs (a, b) with a before b in ``order``."""
    return {(a, b) for a, b in itertools.combinations(order, 2) if rng.random() < p}


def _closure(objects, pairs) -> set:
    rel = {(x, x) for x in objects} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def random_poset_functor(rng: random.Random) -> Functor:
    """Order embedding of a random poset into a random larger poset (<= 5 objects)."""
    m = rng.randint(1, 5)
    k = rng.randint(1, m)
    target_objs = [f"y{i}" for i in range(m)]
    src_objs = [f"x{i}" for i in range(k)]
    f = dict(zip(src_objs, rng.sample(target_objs, k)))
    topo = {y: i for i, y in enumerate(target_objs)}
    src_order = sorted(src_objs, key=lambda x: topo[f[x]])
    src_rel = _closure(src_objs, random_dag_pairs(rng, src_order, 0.5))
    image = {(f[a], f[b]) for a, b in src_rel if a != b}
    tgt_rel = _closure(target_objs, image | random_dag_pairs(rng, target_objs, 0.3))
    C = FiniteCategory.from_poset(src_objs, lambda a, b: (a, b) in src_rel)
    D = FiniteCategory.from_poset(target_objs, lambda a, b: (a, b) in tgt_rel)
    on_m = {(a, b): (f[a], f[b]) for (a, b) in C.morphisms}
    return Functor(C, D, f, on_m)


def random_free_functor(rng: random.Random) -> Functor:
    """Functor between free categories, injective on objects, arrows sent to random morphisms."""
    m = rng.randint(1, 5)
    k = rng.randint(1, m)
    target_objs = [f"y{i}" for i in range(m)]
    src_objs = [f"x{i}" for i in range(k)]
    f = dict(zip(src_objs, rng.sample(target_objs, k)))
    topo = {y: i for i, y in enumerate(target_objs)}
    src_order = sorted(src_objs, key=lambda x: topo[f[x]])
    src_arrows = {}
    for n, (a, b) in enumerate(sorted(random_dag_pairs(rng, src_order, 0.6))):
        for r in range(rng.randint(1, 2)):
            src_arrows[f"a{n}_{r}"] = (a, b)
    tgt_arrows = {f"b_{a}": (f[s], f[t]) for a, (s, t) in src_arrows.items()}
    for n, pair in enumerate(sorted(random_dag_pairs(rng, target_objs, 0.3))):
        tgt_arrows[f"c{n}"] = pair
    C = FiniteCategory.free(src_objs, src_arrows)
    D = FiniteCategory.free(target_objs, tgt_arrows)
    arrow_image = {}
    for a, (s, t) in src_arrows.items():
        choices = [g for g in D.hom(f[s], f[t]) if g != D.identities[f[s]]]
        arrow_image[a] = rng.choice(sorted(choices, key=repr))
    on_m = {}
    for g in C.morphisms:
        if g[0] == "id":
            on_m[g] = D.identities[f[g[1]]]
            continue
        img = arrow_image[g[0]]
        for a in g[1:]:
            img = D.compose[(img, arrow_image[a])]
        on_m[g] = img
    return Functor(C, D, f, on_m)


def random_injective_functor(rng: random.Random) -> Functor:
    return (random_poset_functor if rng.random() < 0.5 else random_free_functor)(rng)


def random_commutative_monoid(rng: random.Random):
    """(elements, op, unit) of a small commutative monoid."""
    kind = rng.choice(["cyclic", "mult", "max", "capped", "klein"])
    if kind == "cyclic":
        n = rng.randint(1, 4)
        return list(range(n)), lambda a, b: (a + b) % n, 0
    if kind == "mult":
        n = rng.randint(2, 4)
        return list(range(n)), lambda a, b: (a * b) % n, 1
    if kind == "max":
        n = rng.randint(1, 3)
        return list(range(n)), max, 0
    if kind == "capped":
        n = rng.randint(1, 3)
        return list(range(n + 1)), lambda a, b: min(a + b, n), 0
    return [(0, 0), (0, 1), (1, 0), (1, 1)], lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (0, 0)


def random_small_algebra(rng: random.Random):
    n = rng.randint(1, 3)
    objs = [f"v{i}" for i in range(n)]
    arrows = {f"g{k}": pair for k, pair in enumerate(sorted(random_dag_pairs(rng, objs, 0.5)))}
    return convolution_algebra(FiniteCategory.free(objs, arrows))


def random_simplicial_algebra(rng: random.Random):
    """A ⊗ Z[N M] truncated at level 2, for a random algebra A and commutative monoid M."""
    elements, op, unit = random_commutative_monoid(rng)
    return monoid_nerve_algebra(random_small_algebra(rng), elements, op, unit, top=2)
