"""The nil-DAHA inside the smash algebra ``Q(H, q) # W_ext``.

Elements are finite sums ``sum_w c_w (x) w`` with rational-function
coefficients and extended affine Weyl group elements ``w``.  The product is

    (c (x) w)(d (x) v) = c * w(d) (x) wv,

so relations among Demazure operators become equalities of normal forms.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coeffs import GroupAlgElt, QLaurent, RatFun, exact_divide, weyl_act
from .errors import ConfigurationError, DatumMismatchError, DivisibilityError, DomainError, IntegralityError
from .rootdata import RootDatum, Weight
from .weyl import (ExtAffWeylElt, FiniteWeylElt, affine_identity, affine_index_set, affine_simple,
                   coxeter_m, elements_up_to_length, finite_weyl_group, reduced_word_affine, translation)


class SmashElt:
    """Finite sum ``sum c_w (x) w``.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> d = gen_D(rd, 1)
    >>> d * d == d
    True
    """

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms: Mapping[ExtAffWeylElt, RatFun] | None = None):
        self.datum = datum
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def one(cls, datum: RootDatum) -> "SmashElt":
        return cls(datum, {affine_identity(datum): RatFun.one(datum.r_tot)})

    @classmethod
    def zero(cls, datum: RootDatum) -> "SmashElt":
        return cls(datum)

    @classmethod
    def coefficient(cls, datum: RootDatum, c) -> "SmashElt":
        """``c (x) 1`` for a ``RatFun``, ``GroupAlgElt`` or scalar ``c``."""
        return cls(datum, {affine_identity(datum): _as_ratfun(datum, c)})

    @classmethod
    def group_element(cls, w: ExtAffWeylElt) -> "SmashElt":
        return cls(w.datum, {w: RatFun.one(w.datum.r_tot)})

    def _coerce(self, other) -> "SmashElt":
        if isinstance(other, SmashElt):
            if other.datum != self.datum:
                raise DatumMismatchError("smash algebra elements over different root data")
            return other
        try:
            return SmashElt.coefficient(self.datum, other)
        except DomainError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return SmashElt(self.datum, out)

    __radd__ = __add__

    def __neg__(self):
        return SmashElt(self.datum, {w: -c for w, c in self.terms.items()})

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
        out: dict[ExtAffWeylElt, RatFun] = {}
        for w, c in self.terms.items():
            for v, d in other.terms.items():
                x = w * v
                term = c * (d if w.is_identity() else weyl_act(w, d))
                out[x] = out[x] + term if x in out else term
        return SmashElt(self.datum, out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        if not isinstance(other, SmashElt):
            other = self._coerce(other)
            if other is NotImplemented:
                return False
        diff = self - other
        return not diff.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def __repr__(self):
        parts = [f"[{c!r}] (x) {w.reduced_word or 'e'}" for w, c in self.terms.items()]
        return "SmashElt(" + " + ".join(parts) + ")" if parts else "SmashElt(0)"

    # -- polynomial representation ------------------------------------------
    def act(self, f) -> RatFun:
        """Action on the fraction field."""
        f = _as_ratfun(self.datum, f)
        total = RatFun.zero(self.datum.r_tot)
        for w, c in self.terms.items():
            total = total + c * weyl_act(w, f)
        return total


def _as_ratfun(datum: RootDatum, c) -> RatFun:
    if isinstance(c, RatFun):
        if c.rank != datum.r_tot:
            raise DatumMismatchError("coefficient rank does not match the datum")
        return c
    if isinstance(c, GroupAlgElt):
        if c.rank != datum.r_tot:
            raise DatumMismatchError("coefficient rank does not match the datum")
        return RatFun.from_group(c)
    if isinstance(c, (int, Fraction, QLaurent)):
        return RatFun.const(datum.r_tot, c)
    raise DomainError(f"cannot use {type(c).__name__} as a coefficient")


# -- generators ------------------------------------------------------------------
def e_alpha(datum: RootDatum, i: int) -> GroupAlgElt:
    """``e^{alpha_i}``; for ``i = 0`` this is ``q e^{-theta}``."""
    if i == 0:
        if not datum.is_simple:
            raise ConfigurationError("the affine node needs a single simple factor")
        theta = datum.highest_roots[0]
        return GroupAlgElt.monomial(tuple(-x for x in theta), QLaurent.q())
    if i not in datum.index_set:
        raise ConfigurationError(f"no node {i}")
    return GroupAlgElt.monomial(datum.alpha(i))


def gen_e(datum: RootDatum, lam: Sequence[int]) -> SmashElt:
    return SmashElt.coefficient(datum, GroupAlgElt.monomial(datum.check_weight(lam)))


def gen_D(datum: RootDatum, i: int) -> SmashElt:
    """``D_i = 1/(1 - e^{alpha_i}) (x) 1 - e^{alpha_i}/(1 - e^{alpha_i}) (x) s_i``."""
    if i not in affine_index_set(datum):
        raise ConfigurationError(f"no affine node {i}")
    ea = RatFun.from_group(e_alpha(datum, i))
    den = 1 - ea
    return SmashElt(datum, {
        affine_identity(datum): den.inverse(),
        affine_simple(datum, i): -ea / den,
    })


def gen_T(datum: RootDatum, gamma: Sequence[int]) -> SmashElt:
    """``T_gamma`` for a central cocharacter ``gamma``."""
    gamma = datum.check_coweight(gamma)
    if any(gamma[:datum.rank]):
        raise DomainError("T_gamma needs a central cocharacter")
    return SmashElt.group_element(translation(datum, gamma))


def gen(datum: RootDatum, kind: str, arg) -> SmashElt:
    """Dispatch on ``kind`` in ``{"e", "D", "T"}``."""
    table = {"e": gen_e, "D": gen_D, "T": gen_T}
    if kind not in table:
        raise ConfigurationError(f"unknown generator kind {kind!r}")
    return table[kind](datum, arg)


# -- D_w -------------------------------------------------------------------------
class _WordProducts:
    """Memo of products ``D_{i_1} ... D_{i_k}`` keyed by the word.

    Reads are lock free; inserts go through a lock.
    """

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def product(self, datum: RootDatum, word: tuple[int, ...]) -> SmashElt:
        key = (datum, word)
        hit = self._data.get(key)
        if hit is not None:
            return hit
        if not word:
            value = SmashElt.one(datum)
        else:
            value = self.product(datum, word[:-1]) * gen_D(datum, word[-1])
        with self._lock:
            self._data.setdefault(key, value)
        return self._data[key]


_WORDS = _WordProducts()


def d_word(datum: RootDatum, word: Iterable[int]) -> SmashElt:
    return _WORDS.product(datum, tuple(word))


def d_w(w: ExtAffWeylElt) -> SmashElt:
    """``D_w = T_gamma D_{i_1} ... D_{i_l}`` for ``w = t_gamma s_{i_1} ... s_{i_l}``."""
    word, gamma = reduced_word_affine(w)
    prod = d_word(w.datum, word)
    if any(gamma):
        prod = gen_T(w.datum, gamma) * prod
    return prod


def reduced_words(w: ExtAffWeylElt) -> list[tuple[int, ...]]:
    """Every reduced word of ``w`` (central translation part dropped)."""
    rd = w.datum
    if w.length == 0:
        return [()]
    out = []
    for i in w.left_descents():
        for rest in reduced_words(affine_simple(rd, i) * w):
            out.append((i,) + rest)
    return out


def check_dw_independence(datum: RootDatum, max_length: int) -> list[tuple[ExtAffWeylElt, bool]]:
    """For every element of length at most ``max_length`` compare D over all reduced words."""
    report = []
    for w in elements_up_to_length(datum, max_length):
        words = reduced_words(w)
        first = d_word(datum, words[0])
        report.append((w, all(d_word(datum, word) == first for word in words[1:])))
    return report


# -- polynomial representation ----------------------------------------------------
def apply_poly(a: SmashElt, f: GroupAlgElt) -> GroupAlgElt:
    """Action on a Laurent polynomial; the value must again be a Laurent polynomial."""
    value = a.act(f)
    try:
        return value.to_group()
    except IntegralityError as err:
        raise IntegralityError(f"operator value keeps a denominator: {value!r}") from err


def demazure(datum: RootDatum, i: int, f: GroupAlgElt) -> GroupAlgElt:
    """``D_i f = (f - e^{alpha_i} s_i f) / (1 - e^{alpha_i})`` by exact division.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> demazure(rd, 1, GroupAlgElt.monomial((-1,)))
    GroupAlgElt(e^(1,) + e^(-1,))
    """
    ea = e_alpha(datum, i)
    sf = weyl_act(affine_simple(datum, i), f)
    try:
        return exact_divide(f - ea * sf, 1 - ea)
    except DivisibilityError as err:
        raise IntegralityError(f"D_{i} produced a denominator") from err


def demazure_word(datum: RootDatum, word: Sequence[int], f: GroupAlgElt) -> GroupAlgElt:
    """Apply ``D_{i_1} ... D_{i_k}`` (rightmost letter first)."""
    for i in reversed(tuple(word)):
        f = demazure(datum, i, f)
    return f


def weyl_character(datum: RootDatum, lam: Sequence[int]) -> GroupAlgElt:
    """Character of the irreducible module of highest weight ``lam`` as ``D_{w_0} e^{w_0 lam}``.

    >>> from .rootdata import build_root_datum
    >>> weyl_character(build_root_datum("A2"), (1, 0))
    GroupAlgElt(e^(1, 0) + e^(0, -1) + e^(-1, 1))
    """
    lam = datum.check_weight(lam)
    if not datum.is_dominant(lam):
        raise DomainError(f"{lam} is not dominant")
    w0 = FiniteWeylElt.longest(datum)
    return demazure_word(datum, datum.longest_word(), GroupAlgElt.monomial(w0.act_weight(lam)))


def weyl_character_closed(datum: RootDatum, lam: Sequence[int]) -> GroupAlgElt:
    """Alternating-sum quotient ``sum sgn(w) e^{w(lam+rho)} / sum sgn(w) e^{w rho}``."""
    lam = datum.check_weight(lam)
    if not datum.is_dominant(lam):
        raise DomainError(f"{lam} is not dominant")
    r = datum.r_tot
    shifted = tuple(a + b for a, b in zip(lam, datum.rho))
    num = GroupAlgElt.zero(r)
    den = GroupAlgElt.zero(r)
    for w in finite_weyl_group(datum):
        sign = -1 if w.length % 2 else 1
        num = num + GroupAlgElt.monomial(w.act_weight(shifted), sign)
        den = den + GroupAlgElt.monomial(w.act_weight(datum.rho), sign)
    return exact_divide(num, den)


def d_w0_closed(datum: RootDatum) -> SmashElt:
    """``(sum_w w) (x) e^{-rho} / prod (e^{-alpha/2} - e^{alpha/2})`` as a smash element."""
    r = datum.r_tot
    den = GroupAlgElt.one(r)
    for a in datum.positive_roots:
        den = den * (1 - GroupAlgElt.monomial(a))
    # e^{-rho} / prod (e^{-a/2} - e^{a/2}) = 1 / prod (1 - e^{a})
    coeff = RatFun.from_group(GroupAlgElt.one(r)) / RatFun.from_group(den)
    total = SmashElt.zero(datum)
    for w in finite_weyl_group(datum):
        x = ExtAffWeylElt(w, datum.zero())
        total = total + SmashElt.group_element(x) * SmashElt.coefficient(datum, coeff)
    return total


# -- relation checks ----------------------------------------------------------------
def leibniz_check(datum: RootDatum, i: int, lam: Sequence[int]) -> bool:
    """``D_i e^lam = (e^lam - e^{s_i lam}) / (1 - e^{alpha_i}) + e^{s_i lam} D_i``."""
    lam = datum.check_weight(lam)
    mono = GroupAlgElt.monomial(lam)
    s_lam = weyl_act(affine_simple(datum, i), mono)
    lhs = gen_D(datum, i) * gen_e(datum, lam)
    quotient = RatFun.from_group(mono - s_lam) / RatFun.from_group(1 - e_alpha(datum, i))
    rhs = SmashElt.coefficient(datum, quotient) + SmashElt.coefficient(datum, s_lam) * gen_D(datum, i)
    return lhs == rhs


def _test_weights(datum: RootDatum) -> list[Weight]:
    out = [datum.zero()]
    for k in range(datum.r_tot):
        for s in (1, -1):
            out.append(tuple(s * (j == k) for j in range(datum.r_tot)))
    out.append(datum.rho)
    return out


def relation_suite(datum: RootDatum) -> list[dict]:
    """Check the defining relations of the nil-DAHA as smash-algebra identities.

    Returns one entry per checked identity: ``{"relation", "args", "ok"}``.
    The ``T`` relations are checked on a basis of central cocharacters, so they
    are vacuous when the central torus is trivial.
    """
    report = []
    weights = _test_weights(datum)
    nodes = affine_index_set(datum)

    def record(rel, args, ok):
        report.append({"relation": rel, "args": args, "ok": bool(ok)})

    for lam in weights[:3]:
        for mu in weights:
            lhs = gen_e(datum, tuple(a + b for a, b in zip(lam, mu)))
            record("e-product", {"lambda": list(lam), "mu": list(mu)},
                   lhs == gen_e(datum, lam) * gen_e(datum, mu))
    for i in nodes:
        d = gen_D(datum, i)
        record("D-idempotent", {"i": i}, d * d == d)
    for a_pos, i in enumerate(nodes):
        for j in nodes[a_pos + 1:]:
            m = coxeter_m(datum, i, j)
            if m is None:
                continue
            left = tuple((i, j)[k % 2] for k in range(m))
            right = tuple((j, i)[k % 2] for k in range(m))
            record("braid", {"i": i, "j": j, "m": m}, d_word(datum, left) == d_word(datum, right))
    for i in nodes:
        for lam in weights:
            record("D-e", {"i": i, "lambda": list(lam)}, _de_relation(datum, i, lam))
    central = [tuple(int(j == k) for j in range(datum.r_tot)) for k in range(datum.rank, datum.r_tot)]
    central += [tuple(-x for x in g) for g in central]
    for g in central:
        for h in central:
            record("T-commute", {"gamma": list(g), "gamma2": list(h)},
                   gen_T(datum, g) * gen_T(datum, h) == gen_T(datum, h) * gen_T(datum, g))
        for i in nodes:
            record("T-D", {"gamma": list(g), "i": i},
                   gen_T(datum, g) * gen_D(datum, i) == gen_D(datum, i) * gen_T(datum, g))
        for lam in weights:
            k = datum.pairing(g, lam)
            rhs = SmashElt.coefficient(datum, QLaurent.q(k)) * gen_e(datum, lam) * gen_T(datum, g)
            record("T-e", {"gamma": list(g), "lambda": list(lam)},
                   gen_T(datum, g) * gen_e(datum, lam) == rhs)
    return report


def _de_relation(datum: RootDatum, i: int, lam: Weight) -> bool:
    mono = GroupAlgElt.monomial(lam)
    s_lam = weyl_act(affine_simple(datum, i), mono)
    lhs = gen_D(datum, i) * gen_e(datum, lam) - SmashElt.coefficient(datum, s_lam) * gen_D(datum, i)
    rhs = RatFun.from_group(mono - s_lam) / RatFun.from_group(1 - e_alpha(datum, i))
    return lhs == SmashElt.coefficient(datum, rhs)
