"""Exact octonion arithmetic, bracketed terms, and the non-Ramsey witness.

The central object is the sequence ``b_n = sum_i 2**(2**(8n+1+i)) e_i``:
products of its terms under different bracketings are told apart exactly,
using non-adjacent form to compare coefficients.
"""

from .errors import OctoRamseyError
from .loops import LoopTable, PeriodicSequence, element_order, is_associative, is_moufang, m_g2, validate_loop
from .naf import SparseDyadic, naf_decode, naf_encode, sd_equal, sd_from_terms
from .octonion import Associator, BigOctonion, SignedUnit, associator_class, oct_mul, unit_mul
from .signs import LambdaSets, distinguish, lambda_sets, right_assoc_normalize
from .terms import Pair, Unit, Var, enumerate_orderly, eval_assigned, eval_units, parse, render
from .witness import (
    SymbolicOctonion,
    WitnessReport,
    bad_term,
    bigint_eval,
    claim_check,
    fr_prefix,
    in_X,
    symbolic_eval,
)

__version__ = "0.1.0"
