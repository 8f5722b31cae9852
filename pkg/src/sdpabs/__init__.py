"""Symbolic decision procedures for predicate abstraction over EUF and
difference logic."""
from .errors import CapExceeded, CnfBlowup, CubeLimit, NodeLimit, ParseError, SdpAbsError
from .logic import DifEdge, DifEq, DifNe, EufEq, TermStore, negate, to_cnf
from .parser import Problem, parse_problem
from .saturation import Verdict, dp_check, dp_trace
from .euf import EufTheory, congruence_closure_oracle
from .dif import DifTheory, negative_cycle_oracle
from .circuit import CircuitStore
from .sdp import sdp
from .combine import decide, dp_combined, purify, sdp_combined, theory_of
from .bdd import BDD, build_bdd, bdd_equiv
from .predabs import abstract_clause, abstract_formula, brute_force_Fp, check_implies_goal

__version__ = "0.1.0"
