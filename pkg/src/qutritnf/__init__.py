"""Exact arithmetic for single-qutrit Clifford+T operators: the ring Z[xi, 1/3],
a T-optimal normal form, and exact synthesis of 3x3 unitaries."""

from .cyclotomic import CHI, CycInt, RingElem, chi_divide, denom_exp_chi, parity
from .exactmat import Phase, PhasedOp, UMat, gate_matrix, projective_eq
from .normalform import NormalForm, ParseError, normalize, nf_to_matrix, nf_to_op, parse, string_to_matrix
from .synth import Member, NotInGroup, exact_synthesize, peel

__all__ = [
    "CHI", "CycInt", "RingElem", "chi_divide", "denom_exp_chi", "parity",
    "Phase", "PhasedOp", "UMat", "gate_matrix", "projective_eq",
    "NormalForm", "ParseError", "normalize", "nf_to_matrix", "nf_to_op", "parse",
    "string_to_matrix", "Member", "NotInGroup", "exact_synthesize", "peel",
]
