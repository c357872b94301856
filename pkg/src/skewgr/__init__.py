"""Exact computations in derivation-twisted skew polynomial rings over
F_p(t_0, t_1, ...) and in associated graded algebras of free-algebra quotients."""

from .field import GF, NEG_INF, ModulusMismatch, MultiPoly, PrimeField, RationalFn, gcd
from .graded import (
    FreeContext,
    GradedIdealTable,
    NCPoly,
    chain_compare,
    generation_check,
    gr_ideal,
    leading_form,
    quotient_dims,
)
from .invariants import InvariantReport, almost_equal, candidate_c1, invariant_derivative, separation_sweep
from .ore import LambdaSeq, OrePoly, OreRing, commutator, delta, ore_mul, ore_pow, ore_pth_root, t_word
from .evaluate import evaluate, parse_value
from .syntax import ParseError, parse_expr

__version__ = "0.1.0"
