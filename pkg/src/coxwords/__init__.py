"""Reduced words in Coxeter groups, intervening neighbours and the roots-and-chips game."""

from .field import FieldValue, ApproxValue, PrecisionExhausted, compare, sign, weight
from .graph import (
    INF,
    CatalogEntry,
    CoxeterGraph,
    GraphError,
    GraphFormatError,
    UnknownLetter,
    bicoloured_word,
    catalog,
    extend_pendant,
    find_affine_witness,
    has_intervening_neighbours,
    in_violation,
    increase_label,
    load_graph,
    parse_graph,
)
from .roots import SmallRootSet, enumerate_small_roots, is_small, reflect, side, unit_root
from .recognizer import (
    build_dfa,
    check_speyer_property,
    is_reduced,
    oracle_is_reduced_deletion,
    reduce_fully,
    run_first_letter_path,
)
from .game import (
    GamePosition,
    check_diamond,
    explore,
    fire,
    initial_position,
    legal_moves,
    orientation_path,
    orientation_tour,
)

__version__ = "0.1.0"
