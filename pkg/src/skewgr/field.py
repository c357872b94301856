"""Exact arithmetic over F_p, F_p[t_0, t_1, ...] and F_p(t_0, t_1, ...).

Variables are indexed by arbitrary natural numbers and stored sparsely, so a
computation only ever touches the finitely many indices it needs.

A monomial is a tuple of ``(index, exponent)`` pairs sorted by index with no
zero exponents; ``()`` is the monomial 1.  Monomials are ordered graded
lexicographically with ``t0 > t1 > t2 > ...``.

The prime is carried by a shared :class:`PrimeField` context.  Mixing values
built over different primes raises :class:`ModulusMismatch`.
"""

from __future__ import annotations

import functools
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

NEG_INF = float("-inf")
"""Degree of the zero polynomial.  Degree arithmetic stays total with it."""

Monomial = tuple  # tuple[tuple[int, int], ...]

_MAX_PRIME = 2**31


class ModulusMismatch(ValueError):
    """Raised when values over different primes are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    """Sort key realising graded lex with lower variable index more significant."""
    return (sum(e for _, e in m), tuple((-i, e) for i, e in m))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ia, ea = a[i]
        ib, eb = b[j]
        if ia == ib:
            out.append((ia, ea + eb))
            i += 1
            j += 1
        elif ia < ib:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """``a / b`` if ``b`` divides ``a``, else None."""
    if not b:
        return a
    exps = dict(a)
    for i, e in b:
        have = exps.get(i, 0)
        if have < e:
            return None
        if have == e:
            del exps[i]
        else:
            exps[i] = have - e
    return tuple(sorted(exps.items()))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    eb = dict(b)
    return tuple((i, min(e, eb[i])) for i, e in a if i in eb)


def mono_pow(m: Monomial, n: int) -> Monomial:
    return tuple((i, e * n) for i, e in m)


def mono_str(m: Monomial) -> str:
    return "*".join(f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in m)


# ---------------------------------------------------------------------------
# Prime field context
# ---------------------------------------------------------------------------


class PrimeField:
    """The prime field F_p, shared by every value of one computation.

    Use :func:`GF` rather than instantiating directly, so that every value
    over the same prime refers to the same context object.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int):
            raise TypeError("p must be an int")
        if not (2 <= p < _MAX_PRIME) or not is_prime(p):
            raise ValueError(f"p must be a prime below 2^31, got {p}")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {}, _clean=True)

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c: int) -> "MultiPoly":
        c %= self.p
        return MultiPoly(self, {(): c} if c else {}, _clean=True)

    def var(self, k: int) -> "MultiPoly":
        """The polynomial t_k."""
        if k < 0:
            raise ValueError("variable index must be >= 0")
        return MultiPoly(self, {((k, 1),): 1}, _clean=True)

    def t(self, k: int) -> "RationalFn":
        """t_k as an element of the rational function field."""
        return RationalFn(self.var(k), self.one(), _canonical=True)

    def ratfn(self, num, den=1) -> "RationalFn":
        return RationalFn(_as_poly(self, num), _as_poly(self, den))


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Return the shared :class:`PrimeField` for ``p``."""
    return PrimeField(p)


def _check_same(a, b):
    if a.field is not b.field and a.field != b.field:
        raise ModulusMismatch(f"cannot combine values over {a.field} and {b.field}")


def _as_poly(field: PrimeField, x) -> "MultiPoly":
    if isinstance(x, MultiPoly):
        if x.field != field:
            raise ModulusMismatch(f"cannot combine values over {field} and {x.field}")
        return x
    if isinstance(x, int):
        return field.const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a polynomial")


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """A sparse polynomial over F_p in the variables t_0, t_1, ...

    Instances are immutable; ``terms`` maps monomials to nonzero residues.
    """

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: PrimeField, terms: Union[Mapping, Iterable] = (), *, _clean=False):
        self.field = field
        self._hash = None
        if _clean:
            self._terms = terms
            return
        p = field.p
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            m = _normalize_monomial(m)
            acc[m] = (acc.get(m, 0) + c) % p
        self._terms = {m: c for m, c in acc.items() if c}

    # -- basic queries -----------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> int:
        return self._terms.get((), 0)

    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(mono_degree(m) for m in self._terms)

    def degree_in(self, k: int):
        if not self._terms:
            return NEG_INF
        return max(dict(m).get(k, 0) for m in self._terms)

    def variables(self) -> frozenset:
        return frozenset(i for m in self._terms for i, _ in m)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=mono_key)

    def leading_coeff(self) -> int:
        if not self._terms:
            return 0
        return self._terms[self.leading_monomial()]

    def sorted_terms(self):
        """Terms in descending monomial order."""
        return sorted(self._terms.items(), key=lambda mc: mono_key(mc[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            _check_same(self, other)
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(other, self, -1)

    def __neg__(self):
        p = self.field.p
        return MultiPoly(self.field, {m: p - c for m, c in self._terms.items()}, _clean=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative int")
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, RationalFn):
            return RationalFn(self, self.field.one(), _canonical=True) / other
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFn(self, other)

    def scale(self, c: int) -> "MultiPoly":
        p = self.field.p
        c %= p
        if c == 0:
            return self.field.zero()
        if c == 1:
            return self
        return MultiPoly(self.field, {m: v * c % p for m, v in self._terms.items()}, _clean=True)

    def mul_monomial(self, m: Monomial, c: int = 1) -> "MultiPoly":
        p = self.field.p
        c %= p
        if c == 0:
            return self.field.zero()
        return MultiPoly(
            self.field, {mono_mul(k, m): v * c % p for k, v in self._terms.items()}, _clean=True
        )

    def monic(self) -> "MultiPoly":
        if not self._terms:
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    def exact_div(self, other: "MultiPoly") -> Optional["MultiPoly"]:
        """Quotient ``self / other`` when the division is exact, else None."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        p = self.field.p
        if other.is_constant():
            return self.scale(self.field.inv(other.constant_value()))
        lm = other.leading_monomial()
        inv_lc = self.field.inv(other._terms[lm])
        rest = [(m, c) for m, c in other._terms.items() if m != lm]
        rem = dict(self._terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=mono_key)
            q = mono_div(m, lm)
            if q is None:
                return None
            c = rem.pop(m) * inv_lc % p
            quot[q] = c
            for om, oc in rest:
                k = mono_mul(q, om)
                v = (rem.get(k, 0) - c * oc) % p
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MultiPoly(self.field, quot, _clean=True)

    # -- calculus and Frobenius -------------------------------------------

    def partial(self, k: int) -> "MultiPoly":
        """Formal partial derivative with respect to t_k."""
        p = self.field.p
        out: dict = {}
        for m, c in self._terms.items():
            for pos, (i, e) in enumerate(m):
                if i != k:
                    continue
                v = c * e % p
                if v:
                    dm = m[:pos] + (((i, e - 1),) if e > 1 else ()) + m[pos + 1:]
                    out[dm] = (out.get(dm, 0) + v) % p
                break
        return MultiPoly(self.field, {m: c for m, c in out.items() if c}, _clean=True)

    def pth_root(self) -> Optional["MultiPoly"]:
        """The unique g with g**p == self, or None if self is not a p-th power.

        Frobenius is the identity on F_p, so only the exponents matter.
        """
        p = self.field.p
        out = {}
        for m, c in self._terms.items():
            if any(e % p for _, e in m):
                return None
            out[tuple((i, e // p) for i, e in m)] = c
        return MultiPoly(self.field, out, _clean=True)

    def decompose(self):
        """Split into ``[(coefficient, reduced monomial), ...]`` over the p-th powers.

        Every coefficient has all exponents divisible by p and every reduced
        monomial has exponents at most p - 1.  Entries are merged by reduced
        monomial and listed in descending monomial order.
        """
        p = self.field.p
        groups: dict = {}
        for m, c in self._terms.items():
            high = tuple((i, e - e % p) for i, e in m if e >= p)
            low = tuple((i, e % p) for i, e in m if e % p)
            groups.setdefault(low, {})[high] = c
        return [
            (MultiPoly(self.field, groups[r], _clean=True), r)
            for r in sorted(groups, key=mono_key, reverse=True)
        ]

    # -- comparison, hashing, printing -------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self._terms == self.field.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.p, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_str(m))
            else:
                parts.append(f"{c}*{mono_str(m)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self}, p={self.field.p})"


def _normalize_monomial(m) -> Monomial:
    if isinstance(m, Mapping):
        m = m.items()
    acc: dict = {}
    for i, e in m:
        if i < 0 or e < 0:
            raise ValueError("monomial indices and exponents must be nonnegative")
        if e:
            acc[i] = acc.get(i, 0) + e
    return tuple(sorted(acc.items()))


def _add(a: MultiPoly, b: MultiPoly, sign: int) -> MultiPoly:
    p = a.field.p
    out = dict(a._terms)
    for m, c in b._terms.items():
        v = (out.get(m, 0) + sign * c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return MultiPoly(a.field, out, _clean=True)


def _mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if not a._terms or not b._terms:
        return a.field.zero()
    p = a.field.p
    out: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            m = mono_mul(ma, mb)
            out[m] = (out.get(m, 0) + ca * cb) % p
    return MultiPoly(a.field, {m: c for m, c in out.items() if c}, _clean=True)


# ---------------------------------------------------------------------------
# GCD: recursive subresultant PRS over the lowest-index variable present
# ---------------------------------------------------------------------------


def gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor of two polynomials, not both zero."""
    _check_same(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    return _gcd(a, b).monic()


def _gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    # a, b nonzero; result is correct up to a nonzero scalar
    one = a.field.one()
    if a.is_constant() or b.is_constant():
        return one
    if len(a) == 1 or len(b) == 1:
        (m,) = (a if len(a) == 1 else b)._terms
        other = b if len(a) == 1 else a
        for om in other._terms:
            m = mono_gcd(m, om)
            if not m:
                return one
        return MultiPoly(a.field, {m: 1}, _clean=True)
    if a == b:
        return a
    va, vb = a.variables(), b.variables()
    # a variable missing from one side cannot occur in the gcd
    if va - vb:
        return _gcd_many(_coefficients_in(a, va - vb), b)
    if vb - va:
        return _gcd_many(_coefficients_in(b, vb - va), a)
    if len(va) == 1:
        (v,) = va
        return _from_dense(a.field, _euclid(_to_dense(a, v), _to_dense(b, v), a.field.p), v)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    if big.exact_div(small) is not None:
        return small
    v = min(va, key=lambda i: (min(a.degree_in(i), b.degree_in(i)), i))
    ua, ub = _to_univariate(a, v), _to_univariate(b, v)
    ca, cb = _content(ua), _content(ub)
    c = _gcd(ca, cb)
    ua = [x.exact_div(ca) for x in ua]
    ub = [x.exact_div(cb) for x in ub]
    g = _subresultant(ua, ub)
    g = [x.exact_div(_content(g)) for x in g]
    return c * _from_univariate(g, v)


def _coefficients_in(f: MultiPoly, variables) -> list:
    """Coefficients of ``f`` viewed as a polynomial in ``variables``."""
    buckets: dict = {}
    for m, c in f._terms.items():
        key = tuple(ie for ie in m if ie[0] in variables)
        rest = tuple(ie for ie in m if ie[0] not in variables)
        buckets.setdefault(key, {})[rest] = c
    return [MultiPoly(f.field, t, _clean=True) for t in buckets.values()]


def _gcd_many(polys, g: MultiPoly) -> MultiPoly:
    for f in sorted(polys, key=len):
        g = _gcd(g, f)
        if g.is_constant():
            break
    return g


def _to_dense(f: MultiPoly, v: int) -> list:
    out = [0] * (f.degree_in(v) + 1)
    for m, c in f._terms.items():
        out[m[0][1] if m else 0] = c
    return out


def _from_dense(field, coeffs, v: int) -> MultiPoly:
    return MultiPoly(field, {(((v, e),) if e else ()): c for e, c in enumerate(coeffs) if c}, _clean=True)


def _euclid(a: list, b: list, p: int) -> list:
    """Univariate Euclid over F_p on dense coefficient lists (low degree first)."""
    while b:
        inv = pow(b[-1], -1, p)
        a = a[:]
        while len(a) >= len(b):
            q = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[i + shift] = (a[i + shift] - q * x) % p
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    return a


def _to_univariate(f: MultiPoly, v: int):
    """Coefficient list of f viewed as a polynomial in t_v."""
    buckets: dict = {}
    for m, c in f._terms.items():
        e = 0
        rest = m
        for pos, (i, ex) in enumerate(m):
            if i == v:
                e = ex
                rest = m[:pos] + m[pos + 1:]
                break
        buckets.setdefault(e, {})[rest] = c
    deg = max(buckets)
    zero = f.field.zero()
    return [MultiPoly(f.field, buckets[e], _clean=True) if e in buckets else zero for e in range(deg + 1)]


def _from_univariate(coeffs, v: int) -> MultiPoly:
    field = coeffs[0].field
    out: dict = {}
    for e, c in enumerate(coeffs):
        vm = ((v, e),) if e else ()
        for m, x in c._terms.items():
            out[mono_mul(m, vm)] = x
    return MultiPoly(field, out, _clean=True)


def _content(coeffs) -> MultiPoly:
    g = None
    for c in coeffs:
        if c.is_zero():
            continue
        g = c if g is None else _gcd(g, c)
        if g.is_constant():
            return g.field.one()
    return g


def _udeg(u) -> int:
    return len(u) - 1


def _trim(u):
    while len(u) > 1 and u[-1].is_zero():
        u.pop()
    return u


def _prem(a, b):
    """Pseudo-remainder of univariate a by b (coefficients in a polynomial ring)."""
    n = _udeg(b)
    lc = b[-1]
    r = list(a)
    e = _udeg(a) - n + 1
    while not (len(r) == 1 and r[0].is_zero()) and _udeg(r) >= n:
        d = _udeg(r)
        c = r[-1]
        shifted = [r[i] * lc for i in range(len(r))]
        for i, bc in enumerate(b):
            shifted[i + d - n] = shifted[i + d - n] - c * bc
        r = _trim(shifted)
        e -= 1
    if e:
        f = lc**e
        r = [x * f for x in r]
    return r


def _subresultant(a, b):
    if _udeg(a) < _udeg(b):
        a, b = b, a
    one = a[0].field.one()
    g = h = one
    while True:
        delta = _udeg(a) - _udeg(b)
        r = _prem(a, b)
        if len(r) == 1 and r[0].is_zero():
            return b
        if _udeg(r) == 0:
            return [one]
        a = b
        div = g * h**delta
        b = [x.exact_div(div) for x in r]
        g = a[-1]
        if delta:
            h = (g**delta).exact_div(h ** (delta - 1))


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFn:
    """An element of F_p(t_0, t_1, ...) in canonical reduced form.

    The numerator and denominator are coprime and the denominator's leading
    coefficient is 1, so equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MultiPoly, den: Optional[MultiPoly] = None, *, _canonical=False):
        if den is None:
            den = num.field.one()
        if not _canonical:
            _check_same(num, den)
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = num.field.one()
            elif not den.is_constant():
                g = _gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            s = num.field.inv(den.leading_coeff())
            num, den = num.scale(s), den.scale(s)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def field(self) -> PrimeField:
        return self.num.field

    @classmethod
    def from_poly(cls, f: MultiPoly) -> "RationalFn":
        return cls(f, f.field.one(), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def variables(self) -> frozenset:
        return self.num.variables() | self.den.variables()

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            _check_same(self, other)
            return other
        if isinstance(other, MultiPoly):
            _check_same(self, other)
            return RationalFn.from_poly(other)
        if isinstance(other, int) and not isinstance(other, bool):
            return RationalFn.from_poly(self.field.const(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ratfn_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ratfn_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ratfn_add(other, -self)

    def __neg__(self):
        return RationalFn(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ratfn_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        s = self.field.inv(self.num.leading_coeff())
        return RationalFn(self.den.scale(s), self.num.scale(s), _canonical=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ratfn_mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ratfn_mul(other, self.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            return self.inverse() ** (-n)
        # powers of a reduced fraction stay reduced; leading coefficient of den stays 1
        return RationalFn(self.num**n, self.den**n, _canonical=True)

    def partial(self, k: int) -> "RationalFn":
        """Formal partial derivative with respect to t_k (quotient rule)."""
        dn = self.num.partial(k)
        dd = self.den.partial(k)
        if dd.is_zero():
            if dn.is_zero():
                return RationalFn(self.field.zero(), _canonical=True)
            return RationalFn(dn, self.den)
        return RationalFn(dn * self.den - self.num * dd, self.den * self.den)

    def pth_root(self) -> Optional["RationalFn"]:
        """The unique p-th root in the field, or None.

        Writes ``u/v == (u * v**(p-1)) / v**p`` and takes the polynomial root
        of the numerator.
        """
        p = self.field.p
        r = (self.num * self.den ** (p - 1)).pth_root()
        if r is None:
            return None
        return RationalFn(r, self.den)

    def is_pth_power(self) -> bool:
        """True iff the element lies in the subfield of p-th powers."""
        return self.pth_root() is not None

    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (MultiPoly, int)) and not isinstance(other, bool):
            return self.den.is_constant() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        d = str(self.den)
        (m,) = self.den.terms if len(self.den) == 1 else (None,)
        if m is None or len(m) != 1 or m[0][1] != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFn({self}, p={self.field.p})"


def _ratfn_add(a: RationalFn, b: RationalFn) -> RationalFn:
    if a.num.is_zero():
        return b
    if b.num.is_zero():
        return a
    if a.den.is_constant() and b.den.is_constant():
        return RationalFn(a.num + b.num, a.den, _canonical=True)
    if a.den == b.den:
        return RationalFn(a.num + b.num, a.den)
    g = _gcd(a.den, b.den)
    if g.is_constant():
        # coprime denominators: the cross sum is already reduced
        return RationalFn(a.num * b.den + b.num * a.den, a.den * b.den, _canonical=True)
    ad, bd = a.den.exact_div(g), b.den.exact_div(g)
    num = a.num * bd + b.num * ad
    return RationalFn(num, ad * b.den)


def _ratfn_mul(a: RationalFn, b: RationalFn) -> RationalFn:
    if a.num.is_zero() or b.num.is_zero():
        return RationalFn(a.field.zero(), _canonical=True)
    if a.den.is_constant() and b.den.is_constant():
        return RationalFn(a.num * b.num, a.den, _canonical=True)
    an, bd = a.num, b.den
    g1 = _gcd(an, bd)
    if not g1.is_constant():
        an, bd = an.exact_div(g1), bd.exact_div(g1)
    bn, ad = b.num, a.den
    g2 = _gcd(bn, ad)
    if not g2.is_constant():
        bn, ad = bn.exact_div(g2), ad.exact_div(g2)
    den = ad * bd
    s = a.field.inv(den.leading_coeff())
    return RationalFn((an * bn).scale(s), den.scale(s), _canonical=True)
