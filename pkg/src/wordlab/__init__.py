"""Infinite words, colorings of their factors and monochromatic factorizations."""
from ._kernels import BACKEND
from .certificates import Certificate, read_certificates
from .colorings import (
    Coloring,
    ColoringError,
    Constant,
    ExplicitTable,
    FactorOf,
    FiniteSemigroup,
    FirstLetter,
    LengthMod,
    PrefixEndingLetter,
    PrefixOf,
    Product,
    SemigroupMorphism,
    parse_coloring,
)
from .factorizations import (
    BudgetExceeded,
    ExtractionTooShort,
    Factorization,
    coarsen,
    find_monochromatic,
    find_sequential,
    groups_by_letter_count,
    verify_conditional,
    verify_monochromatic,
    verify_sequential,
    verify_shift_invariant,
    verify_ultra,
)
from .factors import FactorIndex, HorizonTooSmall, Verdict, build_index
from .ramsey import (
    ComponentColoring,
    Exhausted,
    FSWitness,
    MTWitness,
    PairColoring,
    extract_monochromatic_positions,
    hindman_search,
    milliken_taylor_search,
    shift_invariant_ultra,
    shifted_extract,
    ultra_from_fs,
)
from .sturmian import (
    BlockSequence,
    Inconclusive,
    NotSturmianInput,
    PermutedWitness,
    desubstitute_L0,
    find_permuted_nonfactor,
    refute_ultra_on_subshift,
)
from .words import (
    BINARY,
    Alphabet,
    Explicit,
    Fibonacci,
    MechanicalSturmian,
    Morphism,
    MorphicFixedPoint,
    Periodic,
    Stair,
    ThueMorse,
    UltimatelyPeriodic,
    WordStream,
    parse_word,
)

__version__ = "0.1.0"
