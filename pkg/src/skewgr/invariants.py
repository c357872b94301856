"""Invariants separating the rings K[x; delta_lam] for different sequences lam.

An isomorphism between the rings for ``lam`` and ``lam2`` fixing K must send
x to ``c0 + c1 x`` with ``c1 = (t_{k+1} + lam[k] t_0) / (t_{k+1} + lam2[k] t_0)``
for every k.  Since ``c1`` cannot depend on every variable, its derivative
in ``t_{k+1}`` must vanish for large k, which forces ``lam[k] == lam2[k]``.
This module computes ``c1``, that derivative, and decides whether two
eventually periodic sequences agree at all but finitely many indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import NamedTuple

from .field import GF, ModulusMismatch, RationalFn
from .ore import LambdaSeq


class InvariantMismatch(ArithmeticError):
    """The mechanical derivative disagrees with its closed form (an arithmetic bug)."""


@dataclass(frozen=True)
class InvariantReport:
    k: int
    c1: RationalFn
    dc1: RationalFn
    separated: bool
    lambda_k: int
    lambda_prime_k: int

    def to_record(self) -> dict:
        return {"k": self.k, "c1": str(self.c1), "dc1": str(self.dc1), "separated": self.separated}


class Agreement(NamedTuple):
    equivalent: bool
    witnesses: tuple


def _check_p(lam: LambdaSeq, lam2: LambdaSeq) -> None:
    if lam.p != lam2.p:
        raise ModulusMismatch(f"sequences over GF({lam.p}) and GF({lam2.p})")


def candidate_c1(lam: LambdaSeq, lam2: LambdaSeq, k: int) -> RationalFn:
    """``(t_{k+1} + lam[k] t_0) / (t_{k+1} + lam2[k] t_0)`` in canonical form."""
    _check_p(lam, lam2)
    if k < 0:
        raise ValueError("k must be >= 0")
    F = GF(lam.p)
    t0, tk1 = F.var(0), F.var(k + 1)
    return F.ratfn(tk1 + t0.scale(lam[k]), tk1 + t0.scale(lam2[k]))


def closed_form_derivative(lam: LambdaSeq, lam2: LambdaSeq, k: int) -> RationalFn:
    """``t_0 (lam2[k] - lam[k]) / (t_{k+1} + lam2[k] t_0)^2``."""
    F = GF(lam.p)
    t0, tk1 = F.var(0), F.var(k + 1)
    return F.ratfn(t0.scale(lam2[k] - lam[k]), (tk1 + t0.scale(lam2[k])) ** 2)


def invariant_derivative(lam: LambdaSeq, lam2: LambdaSeq, k: int) -> InvariantReport:
    c1 = candidate_c1(lam, lam2, k)
    dc1 = c1.partial(k + 1)
    expected = closed_form_derivative(lam, lam2, k)
    if dc1 != expected:
        raise InvariantMismatch(f"d c1 / d t{k + 1} = {dc1}, closed form gives {expected}")
    separated = not dc1.is_zero()
    if separated != (lam[k] != lam2[k]):
        raise InvariantMismatch(f"separation at k={k} disagrees with the sequences")
    return InvariantReport(k, c1, dc1, separated, lam[k], lam2[k])


def almost_equal(lam: LambdaSeq, lam2: LambdaSeq) -> Agreement:
    """Decide whether ``lam`` and ``lam2`` differ at only finitely many indices.

    Past both prefixes the two sequences are periodic with common period
    ``lcm`` of the tail lengths, so one such period settles the question.
    When equivalent, ``witnesses`` lists every disagreement; otherwise it
    lists the first three disagreements beyond the prefixes.
    """
    _check_p(lam, lam2)
    start = max(len(lam.prefix), len(lam2.prefix))
    period = lcm(lam.period, lam2.period)
    tail_diff = [k for k in range(start, start + period) if lam[k] != lam2[k]]
    if not tail_diff:
        return Agreement(True, tuple(k for k in range(start) if lam[k] != lam2[k]))
    witnesses = []
    k = start
    while len(witnesses) < 3:
        if lam[k] != lam2[k]:
            witnesses.append(k)
        k += 1
    return Agreement(False, tuple(witnesses))


def separation_sweep(lam: LambdaSeq, lam2: LambdaSeq, bound: int) -> list:
    """Reports for every ``k <= bound``."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    return [invariant_derivative(lam, lam2, k) for k in range(bound + 1)]
