"""Derivations of F_p(t_0, t_1, ...) and the differential polynomial ring K[x; delta].

For a sequence ``lam`` over F_p the derivation is fixed on generators by
``delta(t_k) = t_{k+1} + lam[k] * t_0`` and extended by the Leibniz and
quotient rules.  In ``K[x; delta]`` the commutation rule is
``x * a = a * x + delta(a)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

from .field import NEG_INF, GF, ModulusMismatch, MultiPoly, PrimeField, RationalFn, mono_mul
from .syntax import BinOp, Gen, Node, Num, Var


@dataclass(frozen=True)
class LambdaSeq:
    """An eventually periodic sequence over F_p: ``prefix`` then ``tail`` repeated."""

    prefix: tuple
    tail: tuple
    p: int

    def __post_init__(self):
        GF(self.p)  # validates p
        if not self.tail:
            raise ValueError("tail of a LambdaSeq must be nonempty")
        object.__setattr__(self, "prefix", tuple(int(v) % self.p for v in self.prefix))
        object.__setattr__(self, "tail", tuple(int(v) % self.p for v in self.tail))

    @classmethod
    def parse(cls, text: str, p: int) -> "LambdaSeq":
        """Parse ``"a0,a1,...;b0,b1,..."`` (prefix;tail).  Without ``;`` the
        whole list is the periodic tail."""
        head, sep, tail = text.partition(";")
        if not sep:
            head, tail = "", head

        def ints(s):
            s = s.strip()
            return tuple(int(v) for v in s.split(",")) if s else ()

        try:
            return cls(ints(head), ints(tail), p)
        except ValueError as exc:
            raise ValueError(f"bad lambda spec {text!r}: {exc}") from None

    @classmethod
    def constant(cls, value: int, p: int) -> "LambdaSeq":
        return cls((), (value,), p)

    @property
    def period(self) -> int:
        return len(self.tail)

    def __getitem__(self, k: int) -> int:
        if k < 0:
            raise IndexError("LambdaSeq index must be >= 0")
        if k < len(self.prefix):
            return self.prefix[k]
        return self.tail[(k - len(self.prefix)) % len(self.tail)]

    def head(self, n: int) -> list:
        return [self[k] for k in range(n)]

    def __str__(self):
        return ",".join(map(str, self.prefix)) + ";" + ",".join(map(str, self.tail))


# ---------------------------------------------------------------------------
# The derivation
# ---------------------------------------------------------------------------


def _delta_poly(lam: LambdaSeq, f: MultiPoly) -> MultiPoly:
    p = lam.p
    out: dict = {}
    for m, c in f.terms.items():
        for pos, (k, e) in enumerate(m):
            v = c * e % p
            if not v:
                continue
            base = m[:pos] + (((k, e - 1),) if e > 1 else ()) + m[pos + 1:]
            # d(t_k) = t_{k+1} + lam_k t_0
            up = mono_mul(base, ((k + 1, 1),))
            out[up] = (out.get(up, 0) + v) % p
            lk = lam[k]
            if lk:
                low = mono_mul(base, ((0, 1),))
                out[low] = (out.get(low, 0) + v * lk) % p
    return MultiPoly(f.field, {m: c for m, c in out.items() if c}, _clean=True)


def delta(lam: LambdaSeq, f) -> RationalFn:
    """Apply the derivation determined by ``lam`` to an element of K."""
    if isinstance(f, MultiPoly):
        f = RationalFn.from_poly(f)
    if f.field.p != lam.p:
        raise ModulusMismatch(f"lambda is over GF({lam.p}), element over {f.field}")
    du = _delta_poly(lam, f.num)
    if f.den.is_constant():
        return RationalFn(du, f.den, _canonical=True)
    dv = _delta_poly(lam, f.den)
    return RationalFn(du * f.den - f.num * dv, f.den * f.den)


@functools.lru_cache(maxsize=None)
def _binomial_row(n: int, p: int) -> tuple:
    if n == 0:
        return (1,)
    prev = _binomial_row(n - 1, p)
    return tuple((prev[k - 1] if k else 0) + (prev[k] if k < n else 0) for k in range(n + 1))


def binomial_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p from a cached Pascal triangle."""
    if k < 0 or k > n:
        return 0
    return _binomial_row(n, p)[k] % p


# ---------------------------------------------------------------------------
# The ring K[x; delta]
# ---------------------------------------------------------------------------


class OreRing:
    """The differential polynomial ring K[x; delta_lam] over K = F_p(t_0, t_1, ...)."""

    def __init__(self, lam: LambdaSeq):
        self.lam = lam
        self.field: PrimeField = GF(lam.p)

    @property
    def p(self) -> int:
        return self.lam.p

    def __eq__(self, other):
        return isinstance(other, OreRing) and other.lam == self.lam

    def __hash__(self):
        return hash(("OreRing", self.lam))

    def __repr__(self):
        return f"OreRing(lambda={self.lam}, p={self.p})"

    def __call__(self, value) -> "OrePoly":
        if isinstance(value, OrePoly):
            if value.ring != self:
                raise ValueError("element belongs to a different Ore ring")
            return value
        return OrePoly(self, [value])

    def zero(self) -> "OrePoly":
        return OrePoly(self, [])

    def one(self) -> "OrePoly":
        return OrePoly(self, [1])

    @property
    def x(self) -> "OrePoly":
        return OrePoly(self, [0, 1])

    def t(self, k: int) -> "OrePoly":
        return OrePoly(self, [self.field.t(k)])

    def delta(self, f) -> RationalFn:
        return delta(self.lam, f)


class OrePoly:
    """``sum c_i x^i`` in K[x; delta] with coefficients c_i in K."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: OreRing, coeffs: Sequence = ()):
        field = ring.field
        cs = []
        for c in coeffs:
            if isinstance(c, RationalFn):
                if c.field != field:
                    raise ModulusMismatch(f"coefficient over {c.field}, ring over {field}")
            elif isinstance(c, MultiPoly):
                if c.field != field:
                    raise ModulusMismatch(f"coefficient over {c.field}, ring over {field}")
                c = RationalFn.from_poly(c)
            elif isinstance(c, int) and not isinstance(c, bool):
                c = RationalFn.from_poly(field.const(c))
            else:
                raise TypeError(f"cannot use {type(c).__name__} as an Ore coefficient")
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)
        self._hash = None

    @property
    def lam(self) -> LambdaSeq:
        return self.ring.lam

    def degree(self):
        """Degree in x; ``NEG_INF`` for zero."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def leading_coeff(self) -> RationalFn:
        if not self.coeffs:
            return RationalFn.from_poly(self.ring.field.zero())
        return self.coeffs[-1]

    def coeff(self, i: int) -> RationalFn:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RationalFn.from_poly(self.ring.field.zero())

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other) -> "OrePoly":
        if isinstance(other, OrePoly):
            if other.ring != self.ring:
                raise ValueError(f"Ore ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (RationalFn, MultiPoly, int)) and not isinstance(other, bool):
            return OrePoly(self.ring, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly(self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return OrePoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ore_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ore_mul(other, self)

    def __truediv__(self, other):
        """Right division by a nonzero element of K."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.degree() != 0:
            raise ValueError("can only divide by a nonzero element of the coefficient field")
        return ore_mul(self, OrePoly(self.ring, [other.coeffs[0].inverse()]))

    def __pow__(self, n: int):
        return ore_pow(self, n)

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (RationalFn, MultiPoly, int)) and not isinstance(other, bool):
            return self == OrePoly(self.ring, [other])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.coeffs))
        return self._hash

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(str(c))
                continue
            xp = "x" if i == 1 else f"x^{i}"
            if c == 1:
                parts.append(xp)
            elif c.is_polynomial() and len(c.num) > 1:
                parts.append(f"({c})*{xp}")
            else:
                parts.append(f"{c}*{xp}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OrePoly({self}, lambda={self.lam})"


def _check_rings(f: OrePoly, g: OrePoly) -> None:
    if f.ring != g.ring:
        if f.ring.p != g.ring.p:
            raise ModulusMismatch(f"Ore rings over GF({f.ring.p}) and GF({g.ring.p})")
        raise ValueError(f"Ore ring mismatch: lambda {f.lam} vs {g.lam}")


def ore_mul(f: OrePoly, g: OrePoly) -> OrePoly:
    """Product via ``(a x^i)(b x^j) = a sum_k C(i,k) delta^k(b) x^(i+j-k)``."""
    _check_rings(f, g)
    if f.is_zero() or g.is_zero():
        return f.ring.zero()
    lam, p = f.lam, f.ring.p
    n = len(f.coeffs) - 1
    zero = RationalFn.from_poly(f.ring.field.zero())
    out = [zero] * (n + len(g.coeffs))
    for j, b in enumerate(g.coeffs):
        if b.is_zero():
            continue
        dpow = [b]
        while len(dpow) <= n and not dpow[-1].is_zero():
            dpow.append(delta(lam, dpow[-1]))
        for i, a in enumerate(f.coeffs):
            if a.is_zero():
                continue
            for k in range(min(i, len(dpow) - 1) + 1):
                c = binomial_mod(i, k, p)
                if c and not dpow[k].is_zero():
                    out[i + j - k] = out[i + j - k] + a * dpow[k] * c
    return OrePoly(f.ring, out)


def _x_times(g: OrePoly) -> OrePoly:
    """``x * g``, pushing x across each coefficient once."""
    zero = RationalFn.from_poly(g.ring.field.zero())
    out = [zero] * (len(g.coeffs) + 1)
    for j, b in enumerate(g.coeffs):
        out[j + 1] = out[j + 1] + b
        out[j] = out[j] + delta(g.lam, b)
    return OrePoly(g.ring, out)


def ore_mul_stepwise(f: OrePoly, g: OrePoly) -> OrePoly:
    """Product computed by repeatedly rewriting ``x * a -> a * x + delta(a)``.

    Independent of the binomial formula in :func:`ore_mul`; kept as a check.
    """
    _check_rings(f, g)
    result = f.ring.zero()
    cur = g
    for i, a in enumerate(f.coeffs):
        if i:
            cur = _x_times(cur)
        if not a.is_zero():
            result = result + OrePoly(f.ring, [a * c for c in cur.coeffs])
    return result


def commutator(f: OrePoly, g: OrePoly) -> OrePoly:
    """``f g - g f``."""
    _check_rings(f, g)
    return ore_mul(f, g) - ore_mul(g, f)


def ore_pow(f: OrePoly, n: int) -> OrePoly:
    if not isinstance(n, int) or n < 0:
        raise ValueError("exponent must be a nonnegative int")
    result = f.ring.one()
    for _ in range(n):
        result = ore_mul(result, f)
    return result


def ore_pth_root(f: OrePoly) -> Optional[OrePoly]:
    """A g with ``g**p == f``, or None.

    Degree-0 elements delegate to the field.  For positive degree ``m`` with
    ``p | m`` the leading coefficient of the root is forced (it is the p-th
    root of the leading coefficient of f); the lower coefficients are then
    chosen top-down, trying 0 and the p-th root of the residual coefficient
    at ``x^(j p)``.  Every returned root has been checked by re-exponentiation;
    None means the search found no root, which is exact in degree 0.
    """
    ring = f.ring
    p = ring.p
    if f.is_zero():
        return f
    m = f.degree()
    if m == 0:
        r = f.coeffs[0].pth_root()
        return None if r is None else OrePoly(ring, [r])
    if m % p:
        return None
    n = m // p
    lead = f.coeffs[-1].pth_root()
    if lead is None:
        return None
    zero = RationalFn.from_poly(ring.field.zero())

    def search(coeffs: list, j: int) -> Optional[OrePoly]:
        g = OrePoly(ring, coeffs)
        gp = ore_pow(g, p)
        if j < 0:
            return g if gp == f else None
        residual = f - gp
        candidates = [zero]
        r = residual.coeff(j * p).pth_root()
        if r is not None and not r.is_zero():
            candidates.append(r)
        for c in candidates:
            trial = list(coeffs)
            trial[j] = c
            found = search(trial, j - 1)
            if found is not None:
                return found
        return None

    return search([zero] * n + [lead], n - 1)


# ---------------------------------------------------------------------------
# Generation of t_k from t_0 and x
# ---------------------------------------------------------------------------


def t_word(lam: LambdaSeq, k: int) -> Node:
    """Expression in ``t0``, ``x`` and F_p scalars that evaluates to ``t_k``.

    Built from ``t_{j+1} = x t_j - t_j x - lam[j] t_0``.  Subtrees are shared,
    so the tree stays linear in size even though its printed form doubles at
    each step.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    t0 = Var(0)
    x = Gen(None)
    word: Node = t0
    for j in range(k):
        nxt: Node = BinOp("-", BinOp("*", x, word), BinOp("*", word, x))
        if lam[j]:
            nxt = BinOp("-", nxt, BinOp("*", Num(lam[j]), t0))
        word = nxt
    return word
