"""Vertex-primitive digraphs, their automorphism groups, and exact relative fixity."""

from .autsearch import are_isomorphic, automorphism_group, find_isomorphism
from .digraph import Digraph, complete_graph, loop_graph, srg_parameters
from .errors import (BudgetExceeded, ClosureExceedsCap, Irregular, NotAGraph, NotHomogeneous,
                     NotTransitive, PrimfixError, RigidGraph, SearchBudgetExceeded, TrivialGroup)
from .families import (Family, FamilyDescriptor, construct, generalized_hamming, hamming_graph,
                       johnson, merged_product_action, squashed_johnson)
from .fixity import ClassificationResult, FixityReport, classify, fixity_brute, relfix_formula
from .jset import JSet, is_hamming, is_homogeneous
from .permgroup import Permutation, PermutationGroup, is_primitive, minimal_degree

__version__ = "0.1.0"
