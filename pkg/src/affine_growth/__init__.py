"""Exact computations in affine groups of the line over number rings and Q(t):
ball growth, positive independence of pairs, and Mahler measures."""

from .affine import AffineMap, GroupClass, Word, classify_group, eval_word, gamma_generators
from .config import Config
from .field import ModulusRing, RingElement
from .freeness import (
    FreenessVerdict,
    PingPongCertificate,
    RelationWitness,
    Verdict,
    check_pingpong,
    decide_pair,
    find_relation,
    refute_pair,
    search_freeness_certificate,
    translation_relation,
    verify_relation,
)
from .growth import (
    GeneratingSet,
    ball_sizes,
    count_positive_words,
    dplus_lower,
    dplus_upper,
    entropy_bounds,
)
from .mahler import ct_family_verify, is_kronecker, lehmer_experiment, mahler_measure
from .places import contraction_exponent, isolate_roots

__all__ = [
    "AffineMap", "GroupClass", "Word", "classify_group", "eval_word", "gamma_generators",
    "Config", "ModulusRing", "RingElement",
    "FreenessVerdict", "PingPongCertificate", "RelationWitness", "Verdict",
    "check_pingpong", "decide_pair", "find_relation", "refute_pair",
    "search_freeness_certificate", "translation_relation", "verify_relation",
    "GeneratingSet", "ball_sizes", "count_positive_words", "dplus_lower", "dplus_upper",
    "entropy_bounds", "ct_family_verify", "is_kronecker", "lehmer_experiment",
    "mahler_measure", "contraction_exponent", "isolate_roots",
]
