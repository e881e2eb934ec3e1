"""Finite and extended affine Weyl groups.

A finite element is stored as two integer matrices: its action on weights and
its action on coweights (the inverse transpose).  An extended affine element
``u t_gamma`` is the pair ``(u, gamma)`` with the group law

    (u t_gamma)(v t_eta) = uv t_{v^{-1} gamma + eta}.

Affine indices run over ``0, 1, ..., rank``; the extra generator is
``s_0 = s_theta t_{-theta^vee}``, chosen so that ``s_theta s_0 = t_{-theta^vee}``.
"""

from __future__ import annotations

import threading
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ConfigurationError, DatumMismatchError, DomainError, UnstableError
from .rootdata import Coweight, RootDatum, Weight

Matrix = tuple[tuple[int, ...], ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n) if a[i][k]) for j in range(n))
        for i in range(n))


def _matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v) if x) for row in a)


def _transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class FiniteWeylElt:
    """Element of the finite Weyl group.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A2")
    >>> w = FiniteWeylElt.from_word(rd, (2, 1, 2))
    >>> w.reduced_word, w.length
    ((1, 2, 1), 3)
    """

    __slots__ = ("datum", "wt", "cwt", "__dict__")

    def __init__(self, datum: RootDatum, wt: Matrix, cwt: Matrix):
        self.datum = datum
        self.wt = wt
        self.cwt = cwt

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, datum: RootDatum) -> "FiniteWeylElt":
        e = _identity(datum.r_tot)
        return _intern(cls(datum, e, e))

    @classmethod
    def simple(cls, datum: RootDatum, i: int) -> "FiniteWeylElt":
        if i not in datum.index_set:
            raise ConfigurationError(f"no simple reflection with index {i}")
        n = datum.r_tot
        a = datum.simple_roots[i - 1]
        wt = tuple(tuple(int(k == l) - (a[k] if l == i - 1 else 0) for l in range(n))
                   for k in range(n))
        cwt = tuple(tuple(int(k == l) - (a[l] if k == i - 1 else 0) for l in range(n))
                    for k in range(n))
        return _intern(cls(datum, wt, cwt))

    @classmethod
    def from_word(cls, datum: RootDatum, word: Iterable[int]) -> "FiniteWeylElt":
        w = cls.identity(datum)
        for i in word:
            w = w * cls.simple(datum, i)
        return w

    @classmethod
    def reflection(cls, datum: RootDatum, root: Weight) -> "FiniteWeylElt":
        """The reflection ``s_alpha`` for a root ``alpha``."""
        co = datum.coroot_of(tuple(root))
        n = datum.r_tot
        wt = tuple(tuple(int(k == l) - root[k] * co[l] for l in range(n)) for k in range(n))
        cwt = tuple(tuple(int(k == l) - co[k] * root[l] for l in range(n)) for k in range(n))
        return _intern(cls(datum, wt, cwt))

    @classmethod
    def longest(cls, datum: RootDatum, J: Iterable[int] | None = None) -> "FiniteWeylElt":
        return cls.from_word(datum, datum.longest_word(J))

    # -- group structure ------------------------------------------------
    def __mul__(self, other: "FiniteWeylElt") -> "FiniteWeylElt":
        if not isinstance(other, FiniteWeylElt):
            return NotImplemented
        if other.datum != self.datum:
            raise DatumMismatchError("Weyl elements over different root data")
        key = (self.datum, self.wt, other.wt)
        hit = _PRODUCTS.get(key)
        if hit is None:
            hit = _intern(FiniteWeylElt(self.datum, _matmul(self.wt, other.wt), _matmul(self.cwt, other.cwt)))
            _PRODUCTS[key] = hit
        return hit

    def inverse(self) -> "FiniteWeylElt":
        return self._inverse

    @cached_property
    def _inverse(self) -> "FiniteWeylElt":
        return _intern(FiniteWeylElt(self.datum, _transpose(self.cwt), _transpose(self.wt)))

    @cached_property
    def flipped_roots(self) -> dict[int, tuple[Weight, int]]:
        """For each finite node ``i``: the positive root ``a`` with ``u(a) = +-alpha_i`` and the sign flag."""
        rd = self.datum
        out = {}
        for i in rd.index_set:
            a = self.inverse().act_weight(rd.alpha(i))
            out[i] = (a, 0) if rd.is_positive_root(a) else (tuple(-x for x in a), 1)
        return out

    def __eq__(self, other):
        return isinstance(other, FiniteWeylElt) and self.wt == other.wt and self.datum == other.datum

    def __hash__(self):
        return hash(self.wt)

    def __repr__(self):
        return f"FiniteWeylElt{self.reduced_word}"

    def is_identity(self) -> bool:
        return self.wt == _identity(self.datum.r_tot)

    # -- actions --------------------------------------------------------------
    def act_weight(self, lam: Sequence[int]) -> Weight:
        return _matvec(self.wt, lam)

    def act_coweight(self, beta: Sequence[int]) -> Coweight:
        return _matvec(self.cwt, beta)

    # -- combinatorics --------------------------------------------------------
    def sends_negative(self, root: Weight) -> bool:
        return self.datum.is_positive_root(tuple(-x for x in self.act_weight(root)))

    @cached_property
    def inversions(self) -> tuple[bool, ...]:
        """Which positive roots (in ``datum.positive_roots`` order) are sent negative."""
        return tuple(self.sends_negative(a) for a in self.datum.positive_roots)

    @cached_property
    def length(self) -> int:
        return sum(self.inversions)

    def left_descents(self) -> tuple[int, ...]:
        inv = self.inverse()
        return tuple(i for i in self.datum.index_set if inv.sends_negative(self.datum.alpha(i)))

    def right_descents(self) -> tuple[int, ...]:
        return tuple(i for i in self.datum.index_set if self.sends_negative(self.datum.alpha(i)))

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word, found by peeling smallest left descents."""
        word = []
        w = self
        while not w.is_identity():
            i = w.left_descents()[0]
            word.append(i)
            w = FiniteWeylElt.simple(self.datum, i) * w
        return tuple(word)

    def to_json(self) -> list[int]:
        return list(self.reduced_word)


# Equal elements share one instance, so cached combinatorics survive products.
# Both tables only grow to the size of the finite group.
_INTERNED: dict = {}
_PRODUCTS: dict = {}


def _intern(w: FiniteWeylElt) -> FiniteWeylElt:
    return _INTERNED.setdefault((w.datum, w.wt), w)


def finite_weyl_group(datum: RootDatum, J: Iterable[int] | None = None) -> list[FiniteWeylElt]:
    """All elements of the (parabolic) Weyl group, by breadth-first search."""
    idx = tuple(datum.index_set if J is None else sorted(J))
    e = FiniteWeylElt.identity(datum)
    seen = {e}
    order = [e]
    frontier = [e]
    gens = [FiniteWeylElt.simple(datum, i) for i in idx]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                x = w * s
                if x not in seen:
                    seen.add(x)
                    order.append(x)
                    nxt.append(x)
        frontier = nxt
    return order


def minimal_coset_representatives(datum: RootDatum, J: Iterable[int]) -> list[FiniteWeylElt]:
    """Minimal-length representatives of ``W / W_J`` (no right descent in J)."""
    Js = set(J)
    return [w for w in finite_weyl_group(datum)
            if not any(i in Js for i in w.right_descents())]


# -- extended affine elements ----------------------------------------------
class ExtAffWeylElt:
    """Element ``u t_gamma`` of the extended affine Weyl group.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> s0, s1 = affine_simple(rd, 0), affine_simple(rd, 1)
    >>> (s1 * s0) == translation(rd, (-1,))
    True
    >>> (s1 * s0).length, (s1 * s0).reduced_word
    (2, (1, 0))
    """

    __slots__ = ("u", "gamma", "__dict__")

    def __init__(self, u: FiniteWeylElt, gamma: Sequence[int]):
        self.u = u
        self.gamma = tuple(int(x) for x in gamma)
        if len(self.gamma) != u.datum.r_tot:
            raise DatumMismatchError("translation part has the wrong rank")

    @property
    def datum(self) -> RootDatum:
        return self.u.datum

    def __mul__(self, other: "ExtAffWeylElt") -> "ExtAffWeylElt":
        if not isinstance(other, ExtAffWeylElt):
            return NotImplemented
        if other.datum != self.datum:
            raise DatumMismatchError("affine Weyl elements over different root data")
        v = other.u
        moved = v.inverse().act_coweight(self.gamma)
        return ExtAffWeylElt(self.u * v, tuple(a + b for a, b in zip(moved, other.gamma)))

    def inverse(self) -> "ExtAffWeylElt":
        return ExtAffWeylElt(self.u.inverse(), tuple(-x for x in self.u.act_coweight(self.gamma)))

    def __eq__(self, other):
        return (isinstance(other, ExtAffWeylElt) and self.gamma == other.gamma
                and self.u == other.u)

    def __hash__(self):
        return hash((self.u.wt, self.gamma))

    def __repr__(self):
        return f"ExtAffWeylElt(u={self.u.reduced_word}, gamma={self.gamma})"

    def is_identity(self) -> bool:
        return self.u.is_identity() and not any(self.gamma)

    @property
    def central_part(self) -> tuple[int, ...]:
        return self.datum.central_part(self.gamma)

    @cached_property
    def length(self) -> int:
        """Iwahori-Matsumoto length; central translations have length zero."""
        gamma = self.gamma
        total = 0
        for a, inv in zip(self.datum.positive_roots, self.u.inversions):
            total += abs(sum(g * x for g, x in zip(gamma, a)) + inv)
        return total

    def weight_action(self, mu: Sequence[int]) -> tuple[int, Weight]:
        """``u t_gamma`` applied to ``e^mu`` returns ``(k, nu)`` meaning ``q^k e^nu``.

        Coroot translations scale by ``q^{-<gamma, mu>}``; central translations by
        ``q^{+<gamma, mu>}``.
        """
        rd = self.datum
        r = rd.rank
        k = (sum(g * m for g, m in zip(self.gamma[r:], mu[r:]))
             - sum(g * m for g, m in zip(self.gamma[:r], mu[:r])))
        return k, self.u.act_weight(mu)

    def finite_left_delta(self, i: int) -> int:
        """``l(s_i x) - l(x)`` for a finite node ``i``.

        Only the positive root sent to ``+-alpha_i`` by ``u`` changes its term in
        the length sum, so this costs one root instead of all of them.
        """
        a, chi = self.u.flipped_roots[i]
        p = sum(g * x for g, x in zip(self.gamma, a))
        return abs(p + 1 - chi) - abs(p + chi)

    def left_descents(self) -> tuple[int, ...]:
        rd = self.datum
        return tuple(i for i in affine_index_set(rd)
                     if (i == 0 and (affine_simple(rd, 0) * self).length < self.length)
                     or (i != 0 and self.finite_left_delta(i) < 0))

    def _some_left_descent(self) -> int:
        for i in self.datum.index_set:
            if self.finite_left_delta(i) < 0:
                return i
        # an element of positive length has a descent; with no finite one it is s_0
        return 0

    def right_descents(self) -> tuple[int, ...]:
        n = self.length
        return tuple(i for i in affine_index_set(self.datum)
                     if (self * affine_simple(self.datum, i)).length < n)

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        return reduced_word_affine(self)[0]

    def to_json(self) -> dict:
        return {"u": list(self.u.reduced_word), "gamma": list(self.gamma)}


def affine_index_set(datum: RootDatum) -> tuple[int, ...]:
    if not datum.is_simple:
        return datum.index_set
    return (0,) + datum.index_set


def translation(datum: RootDatum, gamma: Sequence[int]) -> ExtAffWeylElt:
    return ExtAffWeylElt(FiniteWeylElt.identity(datum), datum.check_coweight(gamma))


def finite_elt(w: FiniteWeylElt) -> ExtAffWeylElt:
    return ExtAffWeylElt(w, w.datum.zero())


def affine_identity(datum: RootDatum) -> ExtAffWeylElt:
    return translation(datum, datum.zero())


_S0_CACHE: dict = {}


def affine_simple(datum: RootDatum, i: int) -> ExtAffWeylElt:
    """Simple reflection ``s_i`` for ``i`` in the affine index set."""
    key = (datum, i)
    hit = _S0_CACHE.get(key)
    if hit is not None:
        return hit
    if i == 0:
        if not datum.is_simple:
            raise ConfigurationError("s_0 is only defined for a single simple factor")
        theta = datum.highest_roots[0]
        co = datum.highest_coroots[0]
        x = ExtAffWeylElt(FiniteWeylElt.reflection(datum, theta), tuple(-c for c in co))
    else:
        x = finite_elt(FiniteWeylElt.simple(datum, i))
    _S0_CACHE[key] = x
    return x


def from_affine_word(datum: RootDatum, word: Iterable[int],
                     gamma: Sequence[int] | None = None) -> ExtAffWeylElt:
    """Product ``s_{i_1} ... s_{i_k} t_gamma``; ``gamma`` defaults to zero."""
    x = affine_identity(datum)
    for i in word:
        if i not in affine_index_set(datum):
            raise ConfigurationError(f"index {i} is not an affine node")
        x = x * affine_simple(datum, i)
    if gamma is not None:
        x = x * translation(datum, gamma)
    return x


def reduced_word_affine(x: ExtAffWeylElt) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(word, gamma_c)`` with ``x = s_word t_{gamma_c}`` and ``gamma_c`` central.

    The word is built greedily from smallest left descents.
    """
    rd = x.datum
    word = []
    while True:
        if x.length == 0:
            break
        i = x.left_descents()[0]
        word.append(i)
        x = affine_simple(rd, i) * x
    if not x.u.is_identity() or any(x.gamma[:rd.rank]):
        raise DomainError("length-zero remainder is not a central translation")
    return tuple(word), x.gamma


def elements_up_to_length(datum: RootDatum, n: int) -> list[ExtAffWeylElt]:
    """All elements of the (non-extended) affine Weyl group of length at most ``n``."""
    e = affine_identity(datum)
    seen = {e}
    order = [e]
    frontier = [e]
    gens = [affine_simple(datum, i) for i in affine_index_set(datum)]
    for _ in range(n):
        nxt = []
        for w in frontier:
            for s in gens:
                y = w * s
                if y not in seen and y.length == w.length + 1:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    return order


def coxeter_m(datum: RootDatum, i: int, j: int) -> int | None:
    """Order of ``s_i s_j`` (``None`` for infinite)."""
    si, sj = affine_simple(datum, i), affine_simple(datum, j)
    p = si * sj
    x = p
    for m in range(1, 7):
        if x.is_identity():
            return m
        x = x * p
    return None


# -- orders -------------------------------------------------------------------
class _Memo:
    """Dictionary with serialized writes; reads go straight to the dict."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            self._data.setdefault(key, value)

    def __len__(self):
        return len(self._data)


_BRUHAT_MEMO = _Memo()


def bruhat_leq(w: ExtAffWeylElt, v: ExtAffWeylElt) -> bool:
    """Bruhat order ``w <= v``.

    Elements with different central translation parts are not comparable and
    raise ``DomainError``.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> s0, s1 = affine_simple(rd, 0), affine_simple(rd, 1)
    >>> bruhat_leq(s0, s1 * s0), bruhat_leq(s1 * s0, s0)
    (True, False)
    """
    if w.datum != v.datum:
        raise DatumMismatchError("Bruhat comparison across root data")
    if w.central_part != v.central_part:
        raise DomainError("elements lie in different components of the extended group")
    key = (w, v)
    hit = _BRUHAT_MEMO.get(key)
    if hit is not None:
        return hit
    rd = w.datum
    a, b = w, v
    # lifting property: for a left descent s of b, a <= b iff (sa or a) <= sb
    while True:
        if a.length > b.length:
            ans = False
            break
        if b.length == 0:
            ans = a == b
            break
        if a.length == b.length:
            ans = a == b
            break
        i = b._some_left_descent()
        s = affine_simple(rd, i)
        if i:
            delta = a.finite_left_delta(i)
            if delta < 0:
                n = a.length - 1
                a = s * a
                a.__dict__["length"] = n
        elif (s * a).length < a.length:
            a = s * a
        n = b.length - 1
        b = s * b
        b.__dict__["length"] = n
    _BRUHAT_MEMO.put(key, ans)
    return ans


def semi_infinite_leq(w: ExtAffWeylElt, v: ExtAffWeylElt, *, window: int = 40) -> bool:
    """Semi-infinite order: ``w t_beta <= v t_beta`` for deep antidominant ``beta``.

    ``beta = -N (2 rho^vee)`` for increasing ``N``; the answer is accepted once
    three consecutive ``N`` agree.  If no such run appears within ``window``
    steps an ``UnstableError`` is raised.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> semi_infinite_leq(affine_simple(rd, 1), affine_identity(rd))
    True
    """
    if w.datum != v.datum:
        raise DatumMismatchError("semi-infinite comparison across root data")
    if w.central_part != v.central_part:
        raise DomainError("elements lie in different components of the extended group")
    rd = w.datum
    two_rho = rd.two_rho_check
    start = 2 * (max(w.length, v.length) + 1)
    history = []
    for n in range(start, start + window):
        t = translation(rd, tuple(-n * x for x in two_rho))
        history.append(bruhat_leq(w * t, v * t))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return history[-1]
    raise UnstableError(f"semi-infinite comparison did not stabilise for N in [{start}, {start + window})")


def element_from_json(datum: RootDatum, obj: dict) -> ExtAffWeylElt:
    """Parse ``{"u": [finite word], "gamma": [...]}``; ``gamma`` defaults to zero."""
    u = FiniteWeylElt.from_word(datum, obj.get("u", []))
    gamma = obj.get("gamma")
    return ExtAffWeylElt(u, datum.zero() if gamma is None else datum.check_coweight(gamma))
