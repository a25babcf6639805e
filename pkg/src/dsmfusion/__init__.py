"""Belief-function fusion on reduced hyper power sets.

Elements are coded as sets of Venn-diagram part numbers, which turns union
and intersection into set operations. The package covers frame coding and
constraints, expert mass functions, combination rules (conjunctive,
Dempster, Yager, disjunctive, Florea, PCR6, mean), decision functions and
the generation and decoding of the reduced hyper power set.
"""

from .codification import (
    EMPTY,
    SHAFER,
    ElementCode,
    Frame,
    apply_constraints,
    coding_theta,
    dsm_cardinality,
    enumerate_parts,
    eval_expression,
    make_frame,
    smarandache_string,
)
from .combination import Rule, combine, conjunctive, disjunctive, global_conjunctive, pcr6
from .decision import Criterion, DecisionOutcome, build_decision_domain, decide
from .expression import parse_expression
from .hyperpowerset import cardinality_histogram, decode, generate_dthetar, intersection_basis
from .mass import MassFunction, coding_expert, reduce

__version__ = "0.1.0"
