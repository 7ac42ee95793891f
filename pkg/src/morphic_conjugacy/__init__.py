"""Morphic words, exact factor membership and conjugacy-class avoidance."""

from .conjugacy import (
    AvoidanceCertificate,
    ConjugacyClass,
    class_avoided_in_word,
    class_of,
    complete_classes_up_to,
    is_complete,
)
from .factors import (
    FactorSet,
    MembershipOracle,
    MembershipVerdict,
    ResourceError,
    closure_factor_set,
    coded_factor_set,
    desubstitute,
    verify_marker,
)
from .morphism import Morphism, compose, fixed_point_prefix, identity, parse_morphism, power
from .words import Alphabet, canonical_rotation, count_letter, distinct_rotations, find_occurrences, rotate

__version__ = "0.1.0"
