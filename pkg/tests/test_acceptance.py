"""Acceptance criteria, one marker per criterion; the summary prints a verdict line for each."""
import random
from fractions import Fraction

import pytest

from diho.dihomology import Entry, QuotientMode, ha1, multiply_classes
from diho.exactalg import Element, FiniteCategory, Functor, linearize_functor
from diho.precubical import (
    BUILDERS,
    disjoint_union,
    empty_square,
    filled_square,
    hollow_cube,
    kronecker,
    loop_graph,
    relabel,
    two_holes_left,
    two_holes_right,
)
from diho.exactalg import coproduct
from diho.simplicial import (
    FiniteSimplicialSet,
    check_simplicial,
    disjoint_union_les_report,
    eckmann_hilton_check,
    exactness_check,
    fold_map_h,
    free_simplicial_module,
    homology,
    moore_normalize,
    short_sequence,
    trace_complex,
)
from diho.tracealg import PathAlgebra, lower_path, upper_path
from oracles import (
    SQUARE_EDGES,
    TWO_HOLES_EDGES,
    TWO_HOLES_LEFT_RELATIONS,
    padded_relation_ranks,
    path_count_matrix,
    unnormalized_homology,
)
from randgen import random_injective_functor, random_simplicial_algebra

FOUR = ["1", "2", "3", "4"]
NINE = [str(k) for k in range(1, 10)]

# Printed matrices; row i, column j counts paths (or classes) from vertex i to vertex j.
EMPTY_SQUARE_PRINTED = [
    [1, 0, 0, 0],
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [2, 1, 1, 1],
]
FILLED_SQUARE_PRINTED = [
    [1, 0, 0, 0],
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 1, 1, 1],
]
TWO_HOLES_PRINTED = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0, 0],
    [2, 1, 0, 1, 1, 0, 0, 0, 0],
    [3, 2, 1, 1, 1, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0],
    [3, 1, 0, 2, 1, 0, 1, 1, 0],
    [6, 3, 1, 3, 2, 1, 1, 1, 1],
]
LEFT_PRINTED = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0, 0],
    [1, 1, 0, 1, 1, 0, 0, 0, 0],
    [3, 2, 1, 1, 1, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0],
    [3, 1, 0, 2, 1, 0, 1, 1, 0],
    [6, 3, 1, 3, 1, 1, 1, 1, 1],
]
RIGHT_PRINTED = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0, 0],
    [2, 1, 0, 1, 1, 0, 0, 0, 0],
    [3, 1, 1, 1, 1, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0],
    [3, 1, 0, 1, 1, 0, 1, 1, 0],
    [6, 3, 1, 3, 2, 1, 1, 1, 1],
]


def ranks(C, mode, order, max_len=None):
    return ha1(C, mode, max_len).dimension_matrix(order).ranks()


# --- 1 ---------------------------------------------------------------------


@pytest.mark.criterion(1, "path-algebra golden matrices (empty square, two holes)")
def test_empty_square_path_matrix():
    got = PathAlgebra(empty_square()).dimension_matrix(FOUR)
    assert got == EMPTY_SQUARE_PRINTED
    assert path_count_matrix(SQUARE_EDGES, FOUR, 4) == EMPTY_SQUARE_PRINTED


@pytest.mark.criterion(1, "path-algebra golden matrices (empty square, two holes)")
@pytest.mark.parametrize("builder", [two_holes_left, two_holes_right])
def test_two_holes_path_matrix(builder):
    assert PathAlgebra(builder()).dimension_matrix(NINE) == TWO_HOLES_PRINTED
    assert path_count_matrix(TWO_HOLES_EDGES, NINE, 6) == TWO_HOLES_PRINTED


# --- 2 ---------------------------------------------------------------------


@pytest.mark.criterion(2, "filled-square HA1 golden matrix in all three modes")
@pytest.mark.parametrize("mode", list(QuotientMode))
def test_filled_square_ha1(mode):
    H = ha1(filled_square(), mode)
    assert H.dimension_matrix(FOUR).ranks() == FILLED_SQUARE_PRINTED
    assert H.torsion_free()


# --- 3 ---------------------------------------------------------------------


@pytest.mark.criterion(3, "two-holes HA1: local golden matrices, ideal vs brute-force oracle, left != right")
def test_two_holes_local_matches_printed():
    left = ranks(two_holes_left(), "local", NINE)
    right = ranks(two_holes_right(), "local", NINE)
    assert left == LEFT_PRINTED and right == RIGHT_PRINTED
    assert (left[8][4], left[4][0]) == (1, 1)
    assert (right[7][3], right[5][1]) == (1, 1)


@pytest.mark.criterion(3, "two-holes HA1: local golden matrices, ideal vs brute-force oracle, left != right")
def test_two_holes_ideal_padded_grades_match_oracle():
    got = ranks(two_holes_left(), "ideal", NINE)
    paths = path_count_matrix(TWO_HOLES_EDGES, NINE, 6)
    rel = padded_relation_ranks(TWO_HOLES_EDGES, TWO_HOLES_LEFT_RELATIONS, 6)
    oracle = [[paths[i][j] - rel.get((a, b), 0) for j, b in enumerate(NINE)] for i, a in enumerate(NINE)]
    assert got == oracle
    at = lambda a, b: got[int(a) - 1][int(b) - 1]  # noqa: E731
    assert at(9, 1) == 3
    assert at(9, 4) == at(9, 2) == at(6, 1) == at(8, 1) == 2


@pytest.mark.criterion(3, "two-holes HA1: local golden matrices, ideal vs brute-force oracle, left != right")
def test_two_holes_ideal_left_and_right_differ():
    left = ranks(two_holes_left(), "ideal", NINE)
    right = ranks(two_holes_right(), "ideal", NINE)
    assert left != right
    # witness grade: the left hole sits between 9 and 5, the right one does not
    assert (left[8][4], right[8][4]) == (1, 2)


# --- 4 ---------------------------------------------------------------------


@pytest.mark.criterion(4, "Kronecker product formula on 20 random pairs")
def test_kronecker_formula():
    P = PathAlgebra(kronecker())
    assert P.dimension_matrix(["1", "2"]) == [[1, 2], [0, 1]]
    e1, e2 = P.path((), "1"), P.path((), "2")
    al, be = P.path(("alpha",)), P.path(("beta",))

    def elem(a, b, c, d):
        # [[a, 0], [(b, c), d]] lists the target vertex first
        return Element({e2: a, al: b, be: c, e1: d})

    rng = random.Random(2024)
    for _ in range(20):
        a, b, c, d, a2, b2, c2, d2 = (Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(8))
        lhs = P.multiply(elem(a, b, c, d), elem(a2, b2, c2, d2))
        assert lhs == elem(a2 * a, a2 * b + b2 * d, a2 * c + c2 * d, d2 * d)


# --- 5 ---------------------------------------------------------------------


@pytest.mark.criterion(5, "loop graph: dim HA1(u,u) = L+1 and exponents add")
@pytest.mark.parametrize("cap", [1, 5, 10])
def test_loop_graph_polynomial(cap):
    H = ha1(loop_graph(), max_len=cap)
    assert H.dim("u", "u") == cap + 1
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            p = H.base.path("t" * i, "u")
            q = H.base.path("t" * j, "u")
            assert multiply_classes(H, p, q) == Element.word(H.base.path("t" * (i + j), "u"))


# --- 6 ---------------------------------------------------------------------


@pytest.mark.criterion(6, "collapse functor 2 -> 1 fails with witness ((1,0),(0,1)); injective functors pass")
def test_collapse_functor_witness():
    two = FiniteCategory.discrete(["alpha", "beta"])
    one = FiniteCategory.discrete(["gamma"])
    F = Functor(two, one, {"alpha": "gamma", "beta": "gamma"},
                {("id", "alpha"): ("id", "gamma"), ("id", "beta"): ("id", "gamma")})
    f, ok = linearize_functor(F)
    assert not ok
    basis = [("id", "alpha"), ("id", "beta")]
    u, v, f_uv, fu_fv = f.witness
    coords = lambda w: tuple(int(w == b) for b in basis)  # noqa: E731
    assert (coords(u), coords(v)) == ((1, 0), (0, 1))
    assert f_uv == Element() and fu_fv == Element.word(("id", "gamma"))


@pytest.mark.criterion(6, "collapse functor 2 -> 1 fails with witness ((1,0),(0,1)); injective functors pass")
def test_random_injective_functors_pass():
    for seed in range(100):
        F = random_injective_functor(random.Random(seed))
        assert F.injective_on_objects() and len(F.target.objects) <= 5
        f, ok = linearize_functor(F)
        assert ok, (seed, f.witness)


# --- 7 ---------------------------------------------------------------------


def _small_sets():
    d2 = FiniteSimplicialSet.from_complex([(0, 1, 2)], 3)
    return {
        "simplex": d2,
        "triangle boundary": FiniteSimplicialSet.from_complex([(0, 1), (1, 2), (0, 2)], 3),
        "circle": FiniteSimplicialSet.from_complex([(0, 1)], 3).collapse(lambda x: len(set(x)) < 2),
        "sphere": d2.collapse(lambda x: len(set(x)) < 3),
        "Z/2 nerve": FiniteSimplicialSet.monoid_nerve([0, 1], lambda a, b: (a + b) % 2, 0, 3),
    }


@pytest.mark.criterion(7, "Moore complexes: boundary squares vanish, oracle homology, Eckmann-Hilton on 200 algebras")
def test_moore_matches_unnormalized_homology():
    for name, X in _small_sets().items():
        M = moore_normalize(free_simplicial_module(X))
        assert M.boundary_squares() == [], name
        for n in range(X.top):
            got = homology(M, n).get(("*", "*"), Entry(0))
            assert got == Entry(*unnormalized_homology(X.levels, X.faces, n)), (name, n)


@pytest.mark.criterion(7, "Moore complexes: boundary squares vanish, oracle homology, Eckmann-Hilton on 200 algebras")
def test_trace_complexes_are_complexes():
    for name, builder in sorted(BUILDERS.items()):
        cap = 4 if name in ("loop_graph", "two_half_circles") else None
        S = trace_complex(builder(), cap)
        assert check_simplicial(S) == [], name
        assert moore_normalize(S).boundary_squares() == [], name


@pytest.mark.criterion(7, "Moore complexes: boundary squares vanish, oracle homology, Eckmann-Hilton on 200 algebras")
def test_eckmann_hilton_on_random_algebras():
    checked = 0
    for seed in range(200):
        S = random_simplicial_algebra(random.Random(seed))
        M = moore_normalize(S)
        assert M.boundary_squares() == [], seed
        report = eckmann_hilton_check(M)
        assert report.ok, (seed, report.counterexamples[:1])
        checked += report.pairs_checked
    assert checked > 0


# --- 8 ---------------------------------------------------------------------

PAIRS = [(filled_square, filled_square), (filled_square, empty_square), (two_holes_left, two_holes_right)]


@pytest.mark.criterion(8, "disjoint unions: block-sum HA1 and exact fold sequence")
@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: f"{p[0].__name__}+{p[1].__name__}")
def test_disjoint_union_block_sum_and_exactness(pair):
    C1, C2 = pair[0](), pair[1]()
    U = disjoint_union(C1, C2)
    whole = ha1(U).dimension_matrix()
    o1, o2 = [f"1:{v}" for v in C1.vertices], [f"2:{v}" for v in C2.vertices]
    blocks = ha1(C1).dimension_matrix().permuted(dict(zip(C1.vertices, o1))).block_sum(
        ha1(C2).dimension_matrix().permuted(dict(zip(C2.vertices, o2))))
    assert whole.reordered(o1 + o2) == blocks
    report = disjoint_union_les_report(C1, C2)
    assert report.block_sum_ok and report.h_is_surjective
    assert [p.name for p in report.exactness.positions] == ["ker", "domain", "codomain"]
    assert report.exactness.exact, report.exactness.to_dict()


@pytest.mark.criterion(8, "disjoint unions: block-sum HA1 and exact fold sequence")
def test_fold_sequence_built_by_hand():
    C1, C2 = two_holes_left(), empty_square()
    U = disjoint_union(C1, C2)
    P1 = PathAlgebra(relabel(C1, {c: f"1:{c}" for n in range(3) for c in C1.cells(n)}))
    P2 = PathAlgebra(relabel(C2, {c: f"2:{c}" for n in range(3) for c in C2.cells(n)}))
    h = fold_map_h(coproduct(P1, P2, 2), PathAlgebra(U))
    assert h.is_algebra_map
    maps, names = short_sequence(h)
    assert exactness_check(maps, names).exact


# --- 9 ---------------------------------------------------------------------


def conjugate(M, perm):
    """P M P^T for the permutation matrix P with P[perm[i]][i] = 1."""
    n = len(M)
    P = [[int(perm[j] == i) for j in range(n)] for i in range(n)]
    PM = [[sum(P[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(PM[i][k] * P[j][k] for k in range(n)) for j in range(n)] for i in range(n)]


@pytest.mark.criterion(9, "relabeling gives permutation-conjugate matrices (cube HA2, dihomeomorphism excluded)")
@pytest.mark.parametrize("builder", [filled_square, two_holes_left, two_holes_right, hollow_cube])
def test_relabeling_is_permutation_conjugation(builder):
    C = builder()
    order = list(C.vertices)
    rng = random.Random(7)
    for _ in range(3):
        perm = list(range(len(order)))
        rng.shuffle(perm)
        # vertex order[i] becomes the name order[perm[i]]
        R = relabel(C, {v: f"~{order[perm[i]]}" for i, v in enumerate(order)})
        new_order = [f"~{v}" for v in order]
        for mode in QuotientMode:
            M = ha1(C, mode).dimension_matrix(order).ranks()
            N = ha1(R, mode).dimension_matrix(new_order).ranks()
            assert N == conjugate(M, perm)
