"""Exact bigraded algebras: elements, ideals, quotients, (co)products, SNF."""
from .algebra import (
    AlgebraError,
    Element,
    GradedAlgebra,
    Morphism,
    TruncationError,
    ZERO,
    identity,
    zero_algebra,
    zero_map,
)
from .category import (
    CategoryError,
    FiniteCategory,
    Functor,
    FunctorError,
    convolution_algebra,
    linearize_functor,
)
from .constructions import (
    Ideal,
    QuotientAlgebra,
    Submodule,
    cokernel,
    coproduct,
    coproduct_injection,
    direct_product,
    image_elements,
    kernel,
    product_projection,
    quotient,
    span_submodule,
    two_sided_ideal,
)
from .linalg import Lattice, SnfReport, Subspace, integer_kernel, nullspace, rank, smith_normal_form

multiply = GradedAlgebra.multiply
SubspaceBasis = Subspace
