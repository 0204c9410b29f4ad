"""Computing with upward and downward closed subsets of WQOs through
canonical filter and ideal bases."""

from .kernel import (
    CD_ITERATION_CAP,
    ClosedSet,
    ConstructionError,
    DOWN,
    DownSet,
    KindMismatch,
    PolarityMismatch,
    Presentation,
    ShortPresentation,
    UP,
    UpSet,
    WqoError,
    as_short,
    canonize,
    complement,
    derive_full_presentation,
    downward,
    empty_set,
    full_set,
    intersect,
    member,
    set_equal,
    subset,
    term_key,
    union,
    upward,
)
from .base import (
    CNF_OMEGA,
    CNF_ONE,
    CNF_ZERO,
    CnfOrdinal,
    FinIdeal,
    FiniteQoSpec,
    MalformedOrdinal,
    NAT_OMEGA,
    NatIdeal,
    OrdCut,
    OutOfUniverse,
    alphabet,
    cnf_from_int,
    cnf_leq,
    cnf_lt,
    cnf_omega_power,
    cnf_size,
    cnf_succ,
    cnf_validate,
    finite_qo,
    naturals,
    ordinal,
)
from .sum_product import (
    Pair,
    PairIdeal,
    SumElement,
    SumIdeal,
    disjoint_sum,
    lex_sum,
    product,
)
from .sequences import (
    AtomProduct,
    One,
    Star,
    conjugacy,
    higman,
    seq_complement_filter,
    seq_complement_ideal,
    seq_ideal_subset,
    seq_intersect_filters,
    seq_intersect_ideals,
    seq_odot,
    seq_reduce,
    stuttering,
)
from .sets_multisets import (
    Bag,
    FinSet,
    PfIdeal,
    bag,
    finset,
    multiset,
    powerset_fin,
)
from .transformers import (
    ClosureFns,
    SubspaceFns,
    adherent,
    extend,
    induce,
    quotient,
)

__all__ = [name for name in dir() if not name.startswith("_")]
