"""Exact-arithmetic free Lie algebras, the group obtained from the
Baker-Campbell-Hausdorff product, the simplicial bar construction, and the
machinery that verifies the tuple-encoded morphism simplicial set is
isomorphic to it."""

from .algebras import (
    Abelian,
    AlgebraValidationError,
    COEFFICIENT_POOL,
    Deg0LieAlgebra,
    FreeNilpotent,
    StructureConstants,
    load_structure_constants,
    nested_bracket,
    random_element,
)
from .bch import (
    AssocSeries,
    NonLieResidueError,
    UniversalBchTable,
    assoc_oracle,
    assoc_to_lie,
    bch_inverse,
    bch_product,
    bernoulli_number,
    bernoulli_operator,
    bernoulli_operator_inverse,
    exp_group,
    lie_to_assoc,
    universal_bch,
)
from .expr import ExpressionError, parse_expression
from .freelie import (
    Alphabet,
    ContextMismatchError,
    FreeLieContext,
    LieElement,
    LyndonWord,
    bracket,
    is_lyndon,
    lyndon_words,
    standard_split,
    witt_dimension,
)
from .realization import (
    CocycleReport,
    GeneratorSymbol,
    HomSimplex,
    IsoReport,
    codegeneracy,
    codegeneracy_image,
    coface,
    coface_image,
    from_bar,
    hom_equal,
    hom_maps,
    induced_degeneracy,
    induced_degeneracy_bruteforce,
    induced_face,
    induced_face_bruteforce,
    pair_image,
    parse_generator_symbol,
    to_bar,
    to_bar_dropping_inverse,
    triangle_cocycle_check,
    verify_isomorphism,
)
from .simplicial import (
    BarSimplex,
    Group,
    SimplicialMaps,
    SimplicialReport,
    bar_degeneracy,
    bar_equal,
    bar_face,
    bar_maps,
    check_simplicial_identities,
    format_bar_simplex,
)

__version__ = "0.1.0"
