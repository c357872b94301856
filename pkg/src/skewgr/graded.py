"""Weighted gradings, leading forms and associated graded ideals in free algebras.

A word is a tuple of 0-based generator indices; generator ``i`` prints as
``x{i+1}``.  The weighted degree of a word is the sum of its letters'
weights.  Words are ordered by weighted degree, then length, then
lexicographically; inside one degree this is the column order of every
table.

Ideal membership in a free algebra is undecidable, so the graded ideal of
leading forms is computed from below: at degree ``d`` it is the space of
leading forms of elements of ``span{u f v : wdeg(u f v) <= d + slack}``.
Each degree carries a flag telling whether slack ``s`` gave nothing beyond
slack ``s - 1``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

from .field import NEG_INF, GF
from .linalg import SparseEchelon, rowspace_contains, rref


class CertificateError(ValueError):
    """A containment certificate does not reproduce the claimed generator."""


class StructureError(ValueError):
    """Structure constants are malformed or not associative."""


@functools.lru_cache(maxsize=None)
def _words(weights: tuple, d: int) -> tuple:
    if d < 0:
        return ()
    if d == 0:
        return ((),)
    out = []
    for i, w in enumerate(weights):
        for tail in _words(weights, d - w):
            out.append((i,) + tail)
    return tuple(sorted(out, key=lambda wd: (len(wd), wd)))


@functools.lru_cache(maxsize=None)
def _word_count(weights: tuple, d: int) -> int:
    if d < 0:
        return 0
    if d == 0:
        return 1
    return sum(_word_count(weights, d - w) for w in weights)


@dataclass(frozen=True)
class FreeContext:
    """The free algebra F_p<x1, ..., xn> graded by ``deg(x_i) = weights[i-1]``."""

    weights: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        GF(self.p)
        if not self.weights:
            raise ValueError("a free algebra needs at least one generator")
        if any(w < 1 for w in self.weights):
            raise ValueError("generator weights must be positive")
        if list(self.weights) != sorted(self.weights):
            raise ValueError("generator weights must be listed in nondecreasing order")

    @classmethod
    def standard(cls, n: int, p: int) -> "FreeContext":
        return cls((1,) * n, p)

    @property
    def n(self) -> int:
        return len(self.weights)

    def wdeg(self, word: tuple) -> int:
        w = self.weights
        return sum(w[i] for i in word)

    def words(self, d: int) -> tuple:
        """All words of weighted degree ``d`` in column order."""
        return _words(self.weights, d)

    def word_count(self, d: int) -> int:
        return _word_count(self.weights, d)

    def column_index(self, d: int) -> dict:
        return _column_index(self.weights, d)

    def gen(self, i: int) -> "NCPoly":
        """The generator ``x_i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} out of range 1..{self.n}")
        return NCPoly(self, {(i - 1,): 1})

    def word(self, w: Sequence[int]) -> "NCPoly":
        return NCPoly(self, {tuple(w): 1})

    def scalar(self, c: int) -> "NCPoly":
        return NCPoly(self, {(): c})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})


@functools.lru_cache(maxsize=None)
def _column_index(weights: tuple, d: int) -> dict:
    return {w: i for i, w in enumerate(_words(weights, d))}


def word_str(word: tuple) -> str:
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(f"x{word[i] + 1}" if run == 1 else f"x{word[i] + 1}^{run}")
        i = j
    return "*".join(parts)


class NCPoly:
    """A noncommutative polynomial: sparse map from words to nonzero residues."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: FreeContext, terms=None, *, _clean=False):
        self.ctx = ctx
        self._hash = None
        if _clean:
            self.terms = terms
            return
        p = ctx.p
        out: dict = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(not 0 <= i < ctx.n for i in w):
                raise ValueError(f"word {w} uses a generator outside 0..{ctx.n - 1}")
            out[w] = (out.get(w, 0) + c) % p
        self.terms = {w: c for w, c in out.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def wdeg(self):
        """Weighted degree; ``NEG_INF`` for zero."""
        if not self.terms:
            return NEG_INF
        return max(self.ctx.wdeg(w) for w in self.terms)

    def component(self, d: int) -> "NCPoly":
        """The homogeneous component of weighted degree ``d``."""
        wd = self.ctx.wdeg
        return NCPoly(self.ctx, {w: c for w, c in self.terms.items() if wd(w) == d}, _clean=True)

    def is_homogeneous(self) -> bool:
        wd = self.ctx.wdeg
        return len({wd(w) for w in self.terms}) <= 1

    def vector(self, d: int) -> list:
        """Coefficients of the degree-``d`` component over ``ctx.words(d)``."""
        idx = self.ctx.column_index(d)
        v = [0] * len(idx)
        for w, c in self.terms.items():
            j = idx.get(w)
            if j is not None:
                v[j] = c
        return v

    @classmethod
    def from_vector(cls, ctx: FreeContext, d: int, vec) -> "NCPoly":
        return cls(ctx, {w: c for w, c in zip(ctx.words(d), vec) if c % ctx.p})

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.ctx != self.ctx:
                raise ValueError(f"free algebra mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = (out.get(w, 0) + c) % p
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(self.ctx, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return NCPoly(self.ctx, {w: p - c for w, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                w = a + b
                out[w] = (out.get(w, 0) + ca * cb) % p
        return NCPoly(self.ctx, {w: c for w, c in out.items() if c}, _clean=True)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __truediv__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * GF(self.ctx.p).inv(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        out = self.ctx.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def sandwich(self, left: tuple, right: tuple) -> dict:
        """Terms of ``left * self * right`` for words ``left``, ``right``."""
        return {left + w + right: c for w, c in self.terms.items()}

    def sorted_terms(self):
        wd = self.ctx.wdeg
        return sorted(self.terms.items(), key=lambda wc: (-wd(wc[0]), len(wc[0]), wc[0]))

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self.ctx.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if not w:
                parts.append(str(c))
            elif c == 1:
                parts.append(word_str(w))
            else:
                parts.append(f"{c}*{word_str(w)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly({self}, weights={self.ctx.weights}, p={self.ctx.p})"


def leading_form(f: NCPoly) -> NCPoly:
    """The top weighted-degree homogeneous component of a nonzero ``f``."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no leading form")
    return f.component(f.wdeg())


# ---------------------------------------------------------------------------
# Associated graded ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedIdealTable:
    """Degreewise RREF bases of the graded ideal of leading forms, ``d <= cutoff``.

    ``rows[d]`` are tuples over ``context.words(d)``; ``pivots[d]`` their pivot
    columns.  ``stabilized[d]`` is True when the slack used added no rows at
    degree ``d`` compared to one less slack (always False at slack 0).
    """

    context: FreeContext
    cutoff: int
    slack: int
    rows: tuple
    pivots: tuple
    stabilized: tuple

    def rank(self, d: int) -> int:
        return len(self.rows[d])

    def ranks(self) -> tuple:
        return tuple(len(r) for r in self.rows)

    def basis(self, d: int) -> list:
        return [NCPoly.from_vector(self.context, d, r) for r in self.rows[d]]

    def contains(self, f: NCPoly) -> bool:
        """Whether homogeneous ``f`` of degree ``<= cutoff`` lies in the table."""
        if f.is_zero():
            return True
        if not f.is_homogeneous():
            raise ValueError("membership is only defined for homogeneous elements")
        d = f.wdeg()
        if d > self.cutoff:
            raise ValueError(f"degree {d} exceeds cutoff {self.cutoff}")
        return rowspace_contains(self.rows[d], self.pivots[d], f.vector(d), self.context.p)

    def subspace_of(self, other: "GradedIdealTable", d: int) -> bool:
        return all(
            rowspace_contains(other.rows[d], other.pivots[d], r, self.context.p) for r in self.rows[d]
        )

    def normal_words(self, d: int) -> tuple:
        """Words of degree ``d`` that are not pivots: a basis of the quotient."""
        piv = set(self.pivots[d])
        return tuple(w for j, w in enumerate(self.context.words(d)) if j not in piv)

    def reduce(self, f: NCPoly, d: int) -> list:
        """Coordinates of the degree-``d`` part of ``f`` in the quotient, over
        :meth:`normal_words`."""
        p = self.context.p
        v = f.vector(d)
        for row, c in zip(self.rows[d], self.pivots[d]):
            if v[c]:
                k = v[c]
                v = [(a - k * b) % p for a, b in zip(v, row)]
        piv = set(self.pivots[d])
        return [v[j] for j in range(len(v)) if j not in piv]

    def structure(self) -> "GradedStructure":
        """Structure constants of the quotient graded algebra up to the cutoff."""
        ctx = self.context
        bases = [self.normal_words(d) for d in range(self.cutoff + 1)]
        products = {}
        for i in range(self.cutoff + 1):
            for j in range(self.cutoff + 1 - i):
                products[(i, j)] = [
                    [self.reduce(ctx.word(a + b), i + j) for b in bases[j]] for a in bases[i]
                ]
        return GradedStructure(tuple(len(b) for b in bases), products, ctx.p)


def gr_ideal(
    ctx: FreeContext, gens: Sequence[NCPoly], cutoff: int, slack: Optional[int] = None
) -> GradedIdealTable:
    """Graded ideal of leading forms of the ideal generated by ``gens``, from below.

    ``slack`` defaults to ``cutoff``.
    """
    if slack is None:
        slack = cutoff
    if cutoff < 0 or slack < 0:
        raise ValueError("cutoff and slack must be nonnegative")
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.ctx != ctx:
            raise ValueError("generator belongs to a different free algebra")
    gens.sort(key=lambda g: (g.wdeg(), str(g)))
    p = ctx.p
    wdeg = ctx.wdeg

    @functools.lru_cache(maxsize=None)
    def key(w):
        return (-wdeg(w), len(w), w)

    ech = SparseEchelon(p, key)
    leads_by_degree: dict = {}
    rows: list = [()] * (cutoff + 1)
    pivots: list = [()] * (cutoff + 1)
    previous_rank: dict = {}

    for total in range(cutoff + slack + 1):
        for g in gens:
            e = g.wdeg()
            if e > total:
                continue
            for a in range(total - e + 1):
                for u in ctx.words(a):
                    for v in ctx.words(total - e - a):
                        lead = ech.add(g.sandwich(u, v))
                        if lead is not None:
                            leads_by_degree.setdefault(wdeg(lead), []).append(lead)
        d = total - slack
        if 0 <= d <= cutoff:
            vecs = [_component_vector(ctx, ech.rows[lead], d) for lead in leads_by_degree.get(d, [])]
            rows[d], pivots[d] = rref(vecs, ctx.word_count(d), p)
        d_prev = total - slack + 1
        if slack >= 1 and 0 <= d_prev <= cutoff:
            previous_rank[d_prev] = len(leads_by_degree.get(d_prev, []))

    stabilized = tuple(
        slack >= 1 and previous_rank.get(d) == len(rows[d]) for d in range(cutoff + 1)
    )
    return GradedIdealTable(ctx, cutoff, slack, tuple(rows), tuple(pivots), stabilized)


def _component_vector(ctx: FreeContext, row: dict, d: int) -> list:
    idx = ctx.column_index(d)
    v = [0] * len(idx)
    for w, c in row.items():
        j = idx.get(w)
        if j is not None:
            v[j] = c
    return v


@dataclass(frozen=True)
class FiltrationDims:
    """``dims[d]`` bounds ``dim F_d / F_{d-1}`` from above; exact where ``exact[d]``."""

    dims: tuple
    exact: tuple

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)

    def __getitem__(self, d):
        return self.dims[d]


def quotient_dims(table: GradedIdealTable) -> FiltrationDims:
    ctx = table.context
    dims = tuple(ctx.word_count(d) - table.rank(d) for d in range(table.cutoff + 1))
    return FiltrationDims(dims, table.stabilized)


# ---------------------------------------------------------------------------
# Generation of graded components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedStructure:
    """A graded algebra truncated at degree ``len(dims) - 1``.

    ``products[(i, j)][a][b]`` is the coordinate vector, in ``R_{i+j}``, of the
    product of basis element ``a`` of ``R_i`` with basis element ``b`` of ``R_j``.
    """

    dims: tuple
    products: dict
    p: int

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def multiply(self, i: int, u, j: int, v) -> list:
        p = self.p
        out = [0] * self.dims[i + j]
        table = self.products[(i, j)]
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                c = ua * vb
                for k, x in enumerate(table[a][b]):
                    if x:
                        out[k] = (out[k] + c * x) % p
        return out

    def validate(self) -> None:
        """Check shapes and associativity up to the top degree."""
        top = self.top
        for i in range(top + 1):
            for j in range(top + 1 - i):
                table = self.products.get((i, j))
                if table is None:
                    raise StructureError(f"missing products for degrees ({i}, {j})")
                if len(table) != self.dims[i] or any(len(r) != self.dims[j] for r in table):
                    raise StructureError(f"products ({i}, {j}) have the wrong shape")
                if any(len(vec) != self.dims[i + j] for r in table for vec in r):
                    raise StructureError(f"products ({i}, {j}) land in the wrong dimension")

        def unit(d, a):
            v = [0] * self.dims[d]
            v[a] = 1
            return v

        for i in range(top + 1):
            for j in range(top + 1 - i):
                for k in range(top + 1 - i - j):
                    for a in range(self.dims[i]):
                        for b in range(self.dims[j]):
                            ab = self.products[(i, j)][a][b]
                            for c in range(self.dims[k]):
                                left = self.multiply(i + j, ab, k, unit(k, c))
                                bc = self.products[(j, k)][b][c]
                                right = self.multiply(i, unit(i, a), j + k, bc)
                                if left != right:
                                    raise StructureError(
                                        f"not associative on degrees ({i}, {j}, {k}), basis ({a}, {b}, {c})"
                                    )


def free_algebra_structure(ctx: FreeContext, top: int) -> GradedStructure:
    return gr_ideal(ctx, [], top, 0).structure()


def polynomial_ring_structure(top: int, p: int) -> GradedStructure:
    """F_p[y] with ``deg y = 1``, truncated at ``top``."""
    dims = (1,) * (top + 1)
    products = {(i, j): [[[1]]] for i in range(top + 1) for j in range(top + 1 - i)}
    return GradedStructure(dims, products, p)


def generation_check(structure: GradedStructure, bound: int) -> tuple:
    """For each degree ``m``, whether ``R_m`` lies in the subalgebra generated by
    ``R_0 + ... + R_bound``."""
    structure.validate()
    p = structure.p
    top = structure.top
    generated = []  # RREF basis per degree
    for m in range(top + 1):
        dim = structure.dims[m]
        if m <= bound:
            generated.append(rref([[int(i == j) for j in range(dim)] for i in range(dim)], dim, p)[0])
            continue
        vecs = [
            structure.multiply(i, u, m - i, v)
            for i in range(1, m)
            for u in generated[i]
            for v in generated[m - i]
        ]
        basis = rref(vecs, dim, p)[0] if vecs else []
        # close under multiplication by the degree-0 part
        while True:
            more = list(basis)
            for z in generated[0]:
                for b in basis:
                    more.append(structure.multiply(0, z, m, b))
                    more.append(structure.multiply(m, b, 0, z))
            new = rref(more, dim, p)[0] if more else []
            if len(new) == len(basis):
                break
            basis = new
        generated.append(basis)
    return tuple(len(generated[m]) == structure.dims[m] for m in range(top + 1))


# ---------------------------------------------------------------------------
# Comparing graded ideals along a containment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    """Degreewise comparison of the graded ideals of ``I_1 <= I_2``.

    ``excess`` is how far the certificate's products overshoot the degree of
    the element they certify; the second table is computed with that much
    extra slack so that containment is guaranteed by construction.
    """

    ranks1: tuple
    ranks2: tuple
    contained: tuple
    strict: tuple
    excess: int
    stabilized1: tuple
    stabilized2: tuple

    @property
    def holds(self) -> bool:
        return all(self.contained)

    @property
    def strict_degrees(self) -> tuple:
        return tuple(d for d, s in enumerate(self.strict) if s)

    @property
    def certified_equal(self) -> bool:
        """Equal and stabilized at every degree (the conditional chain check)."""
        return (
            not any(self.strict)
            and self.holds
            and all(self.stabilized1)
            and all(self.stabilized2)
        )


def verify_certificate(ctx: FreeContext, gens1, gens2, certificate) -> int:
    """Check ``gens1[i] == sum(left * gens2[j] * right)`` for every entry.

    ``certificate[i]`` is a list of ``(left, j, right)`` with ``left`` and
    ``right`` NCPolys.  Returns the excess degree.
    """
    if len(certificate) != len(gens1):
        raise CertificateError("certificate needs one entry per generator of the smaller ideal")
    excess = 0
    for i, (f, terms) in enumerate(zip(gens1, certificate)):
        total = ctx.zero()
        for left, j, right in terms:
            if not 0 <= j < len(gens2):
                raise CertificateError(f"certificate for generator {i} refers to missing generator {j}")
            prod = left * gens2[j] * right
            total = total + prod
            if not prod.is_zero() and not f.is_zero():
                excess = max(excess, prod.wdeg() - f.wdeg())
        if total != f:
            raise CertificateError(f"certificate for generator {i} gives {total}, expected {f}")
    return excess


def find_certificate(ctx: FreeContext, f: NCPoly, gens: Sequence[NCPoly], extra: int = 0):
    """Express ``f`` as ``sum c * u * gens[j] * v`` using products of weighted
    degree at most ``wdeg(f) + extra``.  Returns a certificate entry or None."""
    if f.is_zero():
        return []
    p = ctx.p
    wdeg = ctx.wdeg

    def key(col):
        if col[0] == "w":
            w = col[1]
            return (0, -wdeg(w), len(w), w)
        return (1, col[1])

    ech = SparseEchelon(p, key)
    products = []
    bound = f.wdeg() + extra
    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        e = g.wdeg()
        for total in range(e, bound + 1):
            for a in range(total - e + 1):
                for u in ctx.words(a):
                    for v in ctx.words(total - e - a):
                        tag = len(products)
                        products.append((u, j, v))
                        row = {("w", w): c for w, c in g.sandwich(u, v).items()}
                        row[("t", tag)] = 1
                        row = ech.reduce(row)
                        if row and min(row, key=key)[0] == "w":
                            ech.add(row)
    rem = ech.reduce({("w", w): c for w, c in f.terms.items()})
    if any(col[0] == "w" for col in rem):
        return None
    terms = []
    for col, c in sorted(rem.items(), key=lambda kv: kv[0][1]):
        u, j, v = products[col[1]]
        terms.append((ctx.word(u) * ((-c) % p), j, ctx.word(v)))
    return terms


def chain_compare(
    ctx: FreeContext,
    gens1: Sequence[NCPoly],
    gens2: Sequence[NCPoly],
    certificate,
    cutoff: int,
    slack: Optional[int] = None,
) -> ChainReport:
    """Compare graded ideals along a certified containment ``(gens1) <= (gens2)``."""
    if slack is None:
        slack = cutoff
    excess = verify_certificate(ctx, gens1, gens2, certificate)
    t1 = gr_ideal(ctx, gens1, cutoff, slack)
    t2 = gr_ideal(ctx, gens2, cutoff, slack + excess)
    contained = tuple(t1.subspace_of(t2, d) for d in range(cutoff + 1))
    strict = tuple(c and t2.rank(d) > t1.rank(d) for d, c in enumerate(contained))
    return ChainReport(t1.ranks(), t2.ranks(), contained, strict, excess, t1.stabilized, t2.stabilized)


def is_subspace(ctx: FreeContext, small, big, d: int) -> bool:
    """Row-space containment of two lists of degree-``d`` vectors."""
    basis, piv = rref(big, ctx.word_count(d), ctx.p)
    return all(rowspace_contains(basis, piv, v, ctx.p) for v in small)

