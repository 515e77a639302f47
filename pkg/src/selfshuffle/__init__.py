"""Self-shuffling infinite words: exact constructions, graph search and checks."""

from .checkers import abelian_borders, longest_ab_borderfree_prefix, lyndon_status, shuffling_delay_sturmian
from .constructions import (
    characteristic_shuffle,
    fibonacci_shuffle,
    full_complexity_shuffle,
    pal_shuffle,
    period_doubling_shuffle,
    shift_transport,
    sturmian_shuffle,
    three_shuffle_example,
    tm_shuffle,
)
from .exact_arith import CirclePoint, QuadExt, parse_quad
from .shuffle import ShuffleWitness, search_self_shuffle, steering_to_word, transport_witness, verify_witness
from .stepping_stone import EmbeddingParams, graph_vs_embedding_check, path_extract, region_classify, tilde_map
from .sturmian import CharacteristicWord, DirectiveSequence, SturmianSpec, mechanical, rotation_word
from .words import InfiniteWord, Morphism, fixed_point, named_word, periodic

__version__ = "0.1.0"
