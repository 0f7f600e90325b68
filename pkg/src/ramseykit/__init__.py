"""Finite structural Ramsey theory: morphisms, quotients, arrows and approximation schemes."""

from .arrowcheck import ArrowQuery, ArrowResult, CapExceeded, check_arrow, min_threshold, search_witness, verify_lower_bound
from .paramwords import ParameterWord, enumerate_parameter_words, partial_substitute, substitute, to_rigid_surjection
from .quotients import DIRECT, DUAL, Coloring, GroupFamily, HomClass, act_left, class_size_law, hom_classes
from .relstruct import Embedding, Signature, Structure, enumerate_embeddings, graph, linear_order
from .rigidsurj import RigidSurjection, enumerate_rigid_surjections

__version__ = "0.1.0"
