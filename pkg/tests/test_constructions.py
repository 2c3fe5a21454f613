import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diho.exactalg import (
    AlgebraError,
    Element,
    FiniteCategory,
    Morphism,
    TruncationError,
    cokernel,
    convolution_algebra,
    coproduct,
    coproduct_injection,
    direct_product,
    identity,
    kernel,
    product_projection,
    quotient,
    span_submodule,
    two_sided_ideal,
    zero_algebra,
    zero_map,
)
from diho.precubical import filled_square, two_holes_left
from diho.tracealg import PathAlgebra
from oracles import alternating_word_count


def square_algebra():
    return PathAlgebra(filled_square())


def test_empty_generators_give_zero_ideal():
    P = square_algebra()
    I = two_sided_ideal(P, [])
    assert I.total_dim() == 0


def test_square_ideal_is_one_dimensional():
    P = square_algebra()
    r = P.element_of(("ac", 1), ("bd", -1))
    I = two_sided_ideal(P, [r])
    assert I.total_dim() == 1 and I.dim("4", "1") == 1
    assert I.is_two_sided()


def test_two_holes_ideal_at_corner():
    P = PathAlgebra(two_holes_left())
    gens = [P.element_of(("ih", 1), ("kd", -1)), P.element_of(("fg", 1), ("eb", -1))]
    I = two_sided_ideal(P, gens)
    assert I.dim("9", "1") == 3
    assert I.is_two_sided()


def test_inhomogeneous_generator_rejected():
    P = square_algebra()
    with pytest.raises(AlgebraError):
        two_sided_ideal(P, [P.element_of(("ac", 1), ("a", 1))])


def test_quotient_by_zero_ideal_is_identity():
    P = square_algebra()
    Q = quotient(P, two_sided_ideal(P, []))
    assert Q.dimension_matrix() == P.dimension_matrix()
    x = P.element_of(("ac", 2), ("bd", 1))
    assert Q.normal_form(x) == x


def test_square_quotient():
    P = square_algebra()
    r = P.element_of(("ac", 1), ("bd", -1))
    I = two_sided_ideal(P, [r])
    Q = quotient(P, I)
    assert Q.dimension_matrix(["1", "2", "3", "4"]) == [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]]
    assert not Q.normal_form(r)
    x = P.element_of(("ac", 3), ("bd", 2), ("a", 1))
    nf = Q.normal_form(x)
    assert Q.normal_form(nf) == nf
    assert I.contains(nf - x)
    assert Q.projection().is_algebra_map


def test_quotient_rejects_non_ideal():
    P = PathAlgebra(two_holes_left())
    S = span_submodule(P, [P.element_of(("ih", 1), ("kd", -1))])
    with pytest.raises(AlgebraError):
        quotient(P, S)


def test_kernel_examples():
    P = square_algebra()
    K = kernel(identity(P), identity(P))
    assert K.total_dim() == P.dim()
    K0 = kernel(zero_map(P, P))
    assert K0.total_dim() == P.dim()
    assert kernel(identity(P)).total_dim() == 0


def test_kernel_rejects_grade_mixing():
    P = square_algebra()
    e = {w: Element.word(P.path((), "1")) for w in P.words() if P.grade(w) in {("4", "4"), ("1", "1")}}
    f = Morphism(P, P, e)
    with pytest.raises(AlgebraError):
        kernel(f)


def test_cokernel_examples():
    P = square_algebra()
    assert cokernel(zero_map(P, P)).dimension_matrix() == P.dimension_matrix()
    assert cokernel(identity(P)).dim() == 0


def test_coproduct_with_zero_algebra():
    P = square_algebra()
    C = coproduct(P, zero_algebra(), 3)
    assert C.dim() == P.dim()
    f = coproduct_injection(C, 1)
    assert f.is_algebra_map


def test_coproduct_rules():
    A = convolution_algebra(FiniteCategory.discrete(["x"]))
    B = convolution_algebra(FiniteCategory.discrete(["y"]))
    a, b = ("id", "x"), ("id", "y")
    C = coproduct(A, B, 4)
    w12 = Element.word(((1, a), (2, b)))
    # junction sides differ: concatenate
    assert C.multiply(w12, w12) == Element.word(((1, a), (2, b), (1, a), (2, b)))
    # junction sides agree: merge the boundary factors
    w21 = Element.word(((2, b), (1, a)))
    assert C.multiply(w12, w21) == Element.word(((1, a), (2, b), (1, a)))
    with pytest.raises(TruncationError):
        C.multiply(Element.word(((1, a), (2, b), (1, a), (2, b))), w12)


def test_coproduct_word_count_matches_formula():
    P = square_algebra()
    Q = PathAlgebra(two_holes_left())
    for cap in (1, 2, 3):
        C = coproduct(P, Q, cap)
        assert C.dim() == alternating_word_count(P.dim(), Q.dim(), cap)


def test_coproduct_associative_dimensions():
    A = convolution_algebra(FiniteCategory.discrete(["x", "y"]))
    B = convolution_algebra(FiniteCategory.discrete(["z"]))
    D = convolution_algebra(FiniteCategory.discrete(["u", "v", "w"]))
    left = coproduct(coproduct(A, B, 3), D, 3)
    right = coproduct(A, coproduct(B, D, 3), 3)
    assert left.dim() == right.dim()


def test_coproduct_is_associative_algebra():
    A = convolution_algebra(FiniteCategory.free(["1", "2"], {"f": ("1", "2")}))
    B = convolution_algebra(FiniteCategory.discrete(["z"]))
    assert coproduct(A, B, 3).is_associative()


def test_direct_product():
    one = convolution_algebra(FiniteCategory.discrete(["g"]))
    P = direct_product(one, one)
    x = Element({(1, ("id", "g")): 2, (2, ("id", "g")): 3})
    y = Element({(1, ("id", "g")): 5, (2, ("id", "g")): 7})
    assert P.multiply(x, y) == Element({(1, ("id", "g")): 10, (2, ("id", "g")): 21})
    assert product_projection(P, 1).is_algebra_map
    Z = direct_product(one, zero_algebra())
    assert Z.dim() == one.dim()
    e = Element.word((1, ("id", "g")))
    assert Z.multiply(e, e) == e


def _random_element(P, data):
    words = P.words()
    picks = data.draw(st.lists(st.tuples(st.integers(0, len(words) - 1), st.integers(-3, 3)), max_size=4))
    return Element({words[i]: c for i, c in picks})


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_ideal_absorbs_products(data):
    P = PathAlgebra(two_holes_left())
    I = two_sided_ideal(P, [P.element_of(("ih", 1), ("kd", -1)), P.element_of(("fg", 1), ("eb", -1))])
    x = _random_element(P, data)
    u, v = _random_element(P, data), _random_element(P, data)
    r = P.element_of(("ih", 1), ("kd", -1)) * data.draw(st.integers(-2, 2))
    assert I.contains(P.product(u, r, v))
    Q = quotient(P, I)
    nf = Q.normal_form(x)
    assert Q.normal_form(nf) == nf
    assert I.contains(x - nf)
    y = _random_element(P, data)
    assert Q.normal_form(P.multiply(x, y)) == Q.normal_form(P.multiply(Q.normal_form(x), Q.normal_form(y)))
