"""Exact coefficient rings.

``QLaurent``
    Laurent polynomials in ``q`` with rational coefficients.
``GroupAlgElt``
    Finite sums ``sum c_lambda(q) e^lambda`` over a weight lattice of fixed rank.
``RatFun``
    Elements of the fraction field of the group algebra, backed by a sympy
    rational function field in variables ``x_0, ..., x_{r-1}, q`` where
    ``e^lambda`` is the (Laurent) monomial ``x^lambda``.

The affine root ``delta`` never appears as a lattice coordinate: ``e^delta`` is
written as ``q``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from sympy import QQ, symbols
from sympy.polys.fields import FracField
from sympy.polys.orderings import lex

from .errors import DatumMismatchError, DivisibilityError, DomainError, IntegralityError

Weight = tuple[int, ...]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    return Fraction(int(c.numerator), int(c.denominator))


# -- Laurent polynomials in q -------------------------------------------------
class QLaurent:
    """Laurent polynomial in ``q`` with rational coefficients.

    >>> q = QLaurent.q()
    >>> (1 - q) * (1 + q)
    QLaurent(1 - q^2)
    >>> (q ** -1 + 2).evaluate(Fraction(1, 2))
    Fraction(4, 1)
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> "QLaurent":
        return cls({0: c})

    @classmethod
    def q(cls, k: int = 1) -> "QLaurent":
        return cls({k: 1})

    @classmethod
    def monomial(cls, k: int, c=1) -> "QLaurent":
        return cls({k: c})

    @staticmethod
    def coerce(x) -> "QLaurent":
        if isinstance(x, QLaurent):
            return x
        if isinstance(x, (int, Fraction)):
            return QLaurent.const(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other):
        other = QLaurent.coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = QLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return QLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = QLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = QLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        out = QLaurent.const(1)
        for _ in range(n):
            out = out * self
        return out

    def unit_inverse(self) -> "QLaurent":
        if not self.is_unit():
            raise DivisibilityError(f"{self} is not a unit in Q[q, q^-1]", self)
        (e, c), = self.terms.items()
        return QLaurent({-e: 1 / c})

    def shift(self, k: int) -> "QLaurent":
        return QLaurent({e + k: c for e, c in self.terms.items()})

    def min_degree(self) -> int:
        return min(self.terms)

    def max_degree(self) -> int:
        return max(self.terms)

    def evaluate(self, value) -> Fraction:
        value = Fraction(value)
        if value == 0 and any(e < 0 for e in self.terms):
            raise DomainError("negative power of q at q = 0")
        return sum((c * value ** e for e, c in self.terms.items()), Fraction(0))

    def __repr__(self):
        return f"QLaurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mon = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mon and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c) + ("*" if mon else "")
            parts.append(coef + mon)
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def to_json(self) -> list[list[int]]:
        return [[e, self.terms[e].numerator, self.terms[e].denominator] for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, obj) -> "QLaurent":
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in obj})


ONE = QLaurent.const(1)


# -- group algebra ---------------------------------------------------------------
class GroupAlgElt:
    """Element of ``Q[q^{+-1}][X]`` for a weight lattice of rank ``rank``.

    >>> e = GroupAlgElt.monomial
    >>> (e((1,)) + e((-1,))) * (e((1,)) - e((-1,)))
    GroupAlgElt(e^(2,) - e^(-2,))
    """

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Sequence[int], object] | None = None):
        self.rank = int(rank)
        clean: dict[Weight, QLaurent] = {}
        if terms:
            for w, c in terms.items():
                w = tuple(w)
                if len(w) != self.rank:
                    raise DatumMismatchError(f"weight {w} does not have rank {self.rank}")
                c = QLaurent.coerce(c)
                if c:
                    clean[w] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "GroupAlgElt":
        obj = cls.__new__(cls)
        obj.rank = rank
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff=1) -> "GroupAlgElt":
        weight = tuple(int(x) for x in weight)
        return cls(len(weight), {weight: coeff})

    @classmethod
    def zero(cls, rank: int) -> "GroupAlgElt":
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> "GroupAlgElt":
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def scalar(cls, rank: int, c) -> "GroupAlgElt":
        return cls(rank, {(0,) * rank: c})

    def _coerce(self, other) -> "GroupAlgElt":
        if isinstance(other, GroupAlgElt):
            if other.rank != self.rank:
                raise DatumMismatchError("group algebra elements of different rank")
            return other
        c = QLaurent.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return GroupAlgElt.scalar(self.rank, c)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QLaurent)):
            other = GroupAlgElt.scalar(self.rank, other)
        return isinstance(other, GroupAlgElt) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return GroupAlgElt._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgElt._raw(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Weight, QLaurent] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                s = out.get(w)
                out[w] = c1 * c2 if s is None else s + c1 * c2
        return GroupAlgElt._raw(self.rank, {w: c for w, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers need exact_divide")
        out = GroupAlgElt.one(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def coefficient(self, weight: Sequence[int]) -> QLaurent:
        return self.terms.get(tuple(weight), QLaurent())

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())).is_unit()

    def map_weights(self, fn) -> "GroupAlgElt":
        """Apply ``fn(weight) -> (q_exponent, new_weight)`` to every monomial."""
        out: dict[Weight, QLaurent] = {}
        for w, c in self.terms.items():
            k, nw = fn(w)
            c = c.shift(k) if k else c
            s = out.get(nw)
            out[nw] = c if s is None else s + c
        return GroupAlgElt._raw(self.rank, {w: c for w, c in out.items() if c})

    def specialize(self, value) -> "GroupAlgElt":
        """Substitute a nonzero rational for ``q``."""
        value = Fraction(value)
        if value == 0:
            raise DomainError("q cannot be specialised to 0")
        return GroupAlgElt(self.rank, {w: c.evaluate(value) for w, c in self.terms.items()})

    def dimension(self) -> Fraction:
        """Sum of all coefficients at ``q = 1``: the Euler characteristic of a character."""
        return sum((c.evaluate(1) for c in self.terms.values()), Fraction(0))

    def __repr__(self):
        return f"GroupAlgElt({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, reverse=True):
            c = self.terms[w]
            if c == ONE:
                parts.append(f"e^{w}")
            elif c == -ONE:
                parts.append(f"-e^{w}")
            else:
                parts.append(f"({c})e^{w}")
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def to_json(self) -> dict:
        return {"terms": [{"wt": list(w), "q": self.terms[w].to_json()} for w in sorted(self.terms)]}

    @classmethod
    def from_json(cls, obj, rank: int | None = None) -> "GroupAlgElt":
        terms = obj["terms"]
        if rank is None:
            if not terms:
                raise DomainError("rank needed to read an empty element")
            rank = len(terms[0]["wt"])
        return cls(rank, {tuple(t["wt"]): QLaurent.from_json(t["q"]) for t in terms})


def weyl_act(w, f):
    """Action of a finite or extended affine Weyl element on ``f``.

    The finite part permutes weights; ``t_gamma`` scales ``e^mu`` by
    ``q^{-<gamma, mu>}`` for coroot translations and ``q^{<gamma, mu>}`` for
    central ones.  ``f`` may be a ``GroupAlgElt`` or a ``RatFun``.
    """
    from .weyl import ExtAffWeylElt, FiniteWeylElt

    if isinstance(w, FiniteWeylElt):
        fn = lambda mu: (0, w.act_weight(mu))
    elif isinstance(w, ExtAffWeylElt):
        fn = w.weight_action
    else:
        raise DomainError(f"cannot act by {type(w).__name__}")
    if isinstance(f, GroupAlgElt):
        return f.map_weights(fn)
    if isinstance(f, RatFun):
        return f.map_weights(fn)
    raise DomainError(f"cannot act on {type(f).__name__}")


# -- polynomial shifting helpers -------------------------------------------------------
@lru_cache(maxsize=None)
def rational_field(rank: int) -> FracField:
    """The field Q(x_0, ..., x_{rank-1}, q)."""
    names = [f"x{k}" for k in range(rank)] + ["q"]
    return FracField(symbols(names), QQ, lex)


def _to_poly(f: GroupAlgElt):
    """Return ``(P, shift)`` with ``f = x^{shift} P``, ``P`` a polynomial; shift includes q."""
    ring = rational_field(f.rank).ring
    if not f.terms:
        return ring.zero, (0,) * (f.rank + 1)
    mins = [min(w[k] for w in f.terms) for k in range(f.rank)]
    qmin = min(c.min_degree() for c in f.terms.values())
    data = {}
    for w, c in f.terms.items():
        base = tuple(a - m for a, m in zip(w, mins))
        for e, coef in c.terms.items():
            data[base + (e - qmin,)] = QQ(coef.numerator, coef.denominator)
    return ring.from_dict(data), tuple(mins) + (qmin,)


def _from_poly(p, shift: Sequence[int], rank: int) -> GroupAlgElt:
    out: dict[Weight, dict[int, Fraction]] = {}
    for mon, c in p.terms():
        w = tuple(a + s for a, s in zip(mon[:rank], shift[:rank]))
        out.setdefault(w, {})[mon[rank] + shift[rank]] = _frac(c)
    return GroupAlgElt(rank, {w: QLaurent(t) for w, t in out.items()})


def _monomial_content(p):
    """Componentwise minimum of exponents of a nonzero polynomial."""
    mons = p.monoms()
    return tuple(min(m[k] for m in mons) for k in range(len(mons[0])))


def _divide_binomial(a: GroupAlgElt, b: GroupAlgElt) -> GroupAlgElt:
    """Exact division by ``u0 e^l0 + u1 e^l1`` with unit coefficients, or raise."""
    (l0, u0), (l1, u1) = sorted(b.terms.items())
    alpha = tuple(y - x for x, y in zip(l0, l1))
    inv0 = u0.unit_inverse()
    r = u1 * inv0
    # divide by u0 e^l0, then solve (1 + r e^alpha) c = f one alpha-string at a time
    k = next(i for i, x in enumerate(alpha) if x)
    lines: dict[Weight, dict[int, QLaurent]] = {}
    for w, c in a.terms.items():
        w = tuple(x - y for x, y in zip(w, l0))
        t = w[k] // alpha[k]
        base = tuple(x - t * y for x, y in zip(w, alpha))
        lines.setdefault(base, {})[t] = c * inv0
    out: dict[Weight, QLaurent] = {}
    for base, seq in lines.items():
        lo, hi = min(seq), max(seq)
        prev = QLaurent()
        for t in range(lo, hi):
            prev = seq.get(t, QLaurent()) - r * prev
            if prev:
                out[tuple(x + t * y for x, y in zip(base, alpha))] = prev
        last = seq[hi] - r * prev
        if last:
            spot = tuple(x + hi * y + z for x, y, z in zip(base, alpha, l0))
            raise DivisibilityError("not divisible", GroupAlgElt(a.rank, {spot: last}))
    return GroupAlgElt._raw(a.rank, out)


def exact_divide(a: GroupAlgElt, b: GroupAlgElt) -> GroupAlgElt:
    """Return ``c`` with ``a = b c`` or raise ``DivisibilityError`` with a remainder.

    >>> e = GroupAlgElt.monomial
    >>> exact_divide(e((1,)) - e((3,)), 1 - e((2,)))
    GroupAlgElt(e^(1,))
    >>> exact_divide(1 - e((4,)), 1 - e((2,)))
    GroupAlgElt(e^(2,) + e^(0,))
    """
    b = a._coerce(b) if isinstance(a, GroupAlgElt) else b
    if b.is_zero():
        raise ZeroDivisionError("division by zero in the group algebra")
    if a.is_zero():
        return GroupAlgElt.zero(a.rank)
    if len(b.terms) == 1:
        (lb, cb), = b.terms.items()
        if cb.is_unit():
            inv = cb.unit_inverse()
            return GroupAlgElt._raw(a.rank, {tuple(x - y for x, y in zip(w, lb)): c * inv
                                             for w, c in a.terms.items()})
    if len(b.terms) == 2 and all(c.is_unit() for c in b.terms.values()):
        return _divide_binomial(a, b)
    return _divide_general(a, b)


def _divide_general(a: GroupAlgElt, b: GroupAlgElt) -> GroupAlgElt:
    pa, sa = _to_poly(a)
    pb, sb = _to_poly(b)
    content = _monomial_content(pb)
    if any(content):
        pb = pb.exquo(pb.ring.from_dict({content: QQ(1)}))
        sb = tuple(x + y for x, y in zip(sb, content))
    quo, rem = pa.div(pb)
    if rem:
        raise DivisibilityError("not divisible", _from_poly(rem, sa, a.rank))
    return _from_poly(quo, tuple(x - y for x, y in zip(sa, sb)), a.rank)


# -- fraction field ------------------------------------------------------------
class RatFun:
    """Element of the fraction field of the group algebra.

    >>> e = GroupAlgElt.monomial
    >>> x = RatFun.from_group(1 - e((2,)))
    >>> (x * x.inverse()).is_one()
    True
    """

    __slots__ = ("rank", "value", "_canon")

    def __init__(self, rank: int, value):
        self.rank = rank
        self.value = value
        self._canon = None

    @classmethod
    def field(cls, rank: int) -> FracField:
        return rational_field(rank)

    @classmethod
    def from_group(cls, f: GroupAlgElt) -> "RatFun":
        K = rational_field(f.rank)
        p, shift = _to_poly(f)
        num, den = K.ring.one, K.ring.one
        pos = tuple(max(s, 0) for s in shift)
        neg = tuple(max(-s, 0) for s in shift)
        if any(pos):
            num = K.ring.from_dict({pos: QQ(1)})
        if any(neg):
            den = K.ring.from_dict({neg: QQ(1)})
        return cls(f.rank, K.new(p * num, den))

    @classmethod
    def from_parts(cls, num: GroupAlgElt, den: GroupAlgElt) -> "RatFun":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls.from_group(num) / cls.from_group(den)

    @classmethod
    def const(cls, rank: int, c) -> "RatFun":
        return cls.from_group(GroupAlgElt.scalar(rank, c))

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff=1) -> "RatFun":
        return cls.from_group(GroupAlgElt.monomial(weight, coeff))

    @classmethod
    def zero(cls, rank: int) -> "RatFun":
        return cls(rank, rational_field(rank).zero)

    @classmethod
    def one(cls, rank: int) -> "RatFun":
        return cls(rank, rational_field(rank).one)

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.rank != self.rank:
                raise DatumMismatchError("rational functions of different rank")
            return other
        if isinstance(other, GroupAlgElt):
            if other.rank != self.rank:
                raise DatumMismatchError("rational functions of different rank")
            return RatFun.from_group(other)
        if isinstance(other, (int, Fraction, QLaurent)):
            return RatFun.const(self.rank, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.rank, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.rank, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.rank, other.value - self.value)

    def __neg__(self):
        return RatFun(self.rank, -self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.rank, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.value:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.rank, self.value / other.value)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self) -> "RatFun":
        return RatFun.one(self.rank) / self

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RatFun) else other
        if other is NotImplemented or not isinstance(other, RatFun):
            return False
        return self.rank == other.rank and self.value == other.value

    def __hash__(self):
        num, den = self.canonical()
        return hash((num, den))

    def __bool__(self):
        return bool(self.value)

    def is_zero(self) -> bool:
        return not self.value

    def is_one(self) -> bool:
        return self.value == self.value.field.one

    # -- canonical form ------------------------------------------------------
    def canonical(self) -> tuple[GroupAlgElt, GroupAlgElt]:
        """Reduced ``(num, den)`` with the ShortLex-least monomial of ``den`` equal to 1."""
        if self._canon is None:
            zero = (0,) * (self.rank + 1)
            num = _from_poly(self.value.numer, zero, self.rank)
            den = _from_poly(self.value.denom, zero, self.rank)
            mons = [(w, e, c) for w, ql in den.terms.items() for e, c in ql.terms.items()]
            w0, e0, c0 = min(mons, key=lambda m: (sum(m[0]) + m[1], m[0] + (m[1],)))
            unit = GroupAlgElt.monomial(w0, QLaurent.monomial(e0, c0))
            self._canon = (exact_divide(num, unit), exact_divide(den, unit))
        return self._canon

    @property
    def numerator(self) -> GroupAlgElt:
        return self.canonical()[0]

    @property
    def denominator(self) -> GroupAlgElt:
        return self.canonical()[1]

    def is_laurent(self) -> bool:
        return self.denominator.is_unit()

    def to_group(self) -> GroupAlgElt:
        """Convert to a Laurent polynomial or raise ``IntegralityError``."""
        num, den = self.canonical()
        if not den.is_unit():
            raise IntegralityError(f"denominator {den} is not a monomial")
        return exact_divide(num, den)

    def map_weights(self, fn) -> "RatFun":
        """Ring automorphism induced by ``fn(weight) -> (q_exponent, weight)``."""
        K = self.value.field
        zero = (0,) * (self.rank + 1)
        num = _from_poly(self.value.numer, zero, self.rank).map_weights(fn)
        den = _from_poly(self.value.denom, zero, self.rank).map_weights(fn)
        return RatFun.from_group(num) / RatFun.from_group(den)

    def specialize(self, value) -> "RatFun":
        num, den = self.canonical()
        d = den.specialize(value)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes at the specialised q")
        return RatFun.from_parts(num.specialize(value), d)

    def __repr__(self):
        num, den = self.canonical()
        if den == GroupAlgElt.one(self.rank):
            return f"RatFun({num})"
        return f"RatFun(({num}) / ({den}))"

    def to_json(self) -> dict:
        num, den = self.canonical()
        return {"num": num.to_json(), "den": den.to_json()}

    @classmethod
    def from_json(cls, obj, rank: int) -> "RatFun":
        return cls.from_parts(GroupAlgElt.from_json(obj["num"], rank),
                              GroupAlgElt.from_json(obj["den"], rank))
