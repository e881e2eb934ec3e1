"""Equivariant K-groups of Levi flag varieties as Demazure modules.

For ``J`` a set of nodes, the flag variety of the Levi subgroup ``L_J`` has
Schubert classes ``[O(w)]`` for ``w`` in the parabolic subgroup ``W_J``.  A class
is a finite sum ``sum f_w [O(w)]`` with group-algebra coefficients.  The
Demazure operator ``D_i`` (``i`` in ``J``) acts by

    D_i (f [O(w)]) = (f - s_i f)/(1 - e^{alpha_i}) [O(w)] + s_i(f) D_i[O(w)],
    D_i [O(w)] = [O(s_i w)] if s_i w < w else [O(w)].

Line bundle classes are built from the point class and remember how they were
built (``LineBundleCombo``), which is what the Levi restriction map uses.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .coeffs import GroupAlgElt, exact_divide, weyl_act
from .errors import ConfigurationError, DatumMismatchError, DomainError, UnsupportedClassError
from .nildaha import demazure, e_alpha
from .rootdata import RootDatum, Weight
from .weyl import FiniteWeylElt, finite_weyl_group


class LineBundleCombo:
    """Formal sum ``sum_lambda g_lambda [O(lambda)]`` with group-algebra coefficients."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Weight, GroupAlgElt] | None = None):
        self.rank = rank
        self.terms = {tuple(l): g for l, g in (terms or {}).items() if not g.is_zero()}

    def __add__(self, other: "LineBundleCombo") -> "LineBundleCombo":
        out = dict(self.terms)
        for l, g in other.terms.items():
            out[l] = out[l] + g if l in out else g
        return LineBundleCombo(self.rank, out)

    def scale(self, f: GroupAlgElt) -> "LineBundleCombo":
        return LineBundleCombo(self.rank, {l: f * g for l, g in self.terms.items()})

    def map_coefficients(self, fn) -> "LineBundleCombo":
        return LineBundleCombo(self.rank, {l: fn(g) for l, g in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LineBundleCombo) and self.terms == other.terms

    def __repr__(self):
        return "LineBundleCombo(" + ", ".join(f"{l}: {g}" for l, g in self.terms.items()) + ")"


class FlagKElt:
    """Element of the K-group of the flag variety of ``L_J``.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> s1 = FiniteWeylElt.simple(rd, 1)
    >>> x = FlagKElt.schubert(rd, {1}, s1)
    >>> demazure_act(1, x) == FlagKElt.schubert(rd, {1}, FiniteWeylElt.identity(rd))
    True
    """

    __slots__ = ("datum", "J", "terms", "presentation")

    def __init__(self, datum: RootDatum, J: Iterable[int], terms: Mapping[FiniteWeylElt, GroupAlgElt] | None = None,
                 presentation: LineBundleCombo | None = None):
        self.datum = datum
        self.J = frozenset(J)
        bad = [j for j in self.J if j not in datum.index_set]
        if bad:
            raise ConfigurationError(f"nodes {bad} are not in the index set")
        self.terms = {w: f for w, f in (terms or {}).items() if not f.is_zero()}
        for w in self.terms:
            if any(i not in self.J for i in w.reduced_word):
                raise DomainError(f"{w} is not in the parabolic subgroup of {sorted(self.J)}")
        self.presentation = presentation

    @classmethod
    def schubert(cls, datum: RootDatum, J: Iterable[int], w: FiniteWeylElt, coeff: GroupAlgElt | None = None):
        if coeff is None:
            coeff = GroupAlgElt.one(datum.r_tot)
        return cls(datum, J, {w: coeff})

    @classmethod
    def structure_sheaf(cls, datum: RootDatum, J: Iterable[int]) -> "FlagKElt":
        """``[O]`` of the whole flag variety: the class of the identity."""
        x = cls.schubert(datum, J, FiniteWeylElt.identity(datum))
        x.presentation = LineBundleCombo(datum.r_tot, {datum.zero(): GroupAlgElt.one(datum.r_tot)})
        return x

    @classmethod
    def point(cls, datum: RootDatum, J: Iterable[int]) -> "FlagKElt":
        """Class of the point, the Schubert variety of the longest element of ``W_J``."""
        return cls.schubert(datum, J, FiniteWeylElt.longest(datum, J))

    def basis(self) -> list[FiniteWeylElt]:
        return finite_weyl_group(self.datum, self.J)

    def _check(self, other: "FlagKElt"):
        if other.datum != self.datum or other.J != self.J:
            raise DatumMismatchError("flag classes on different flag varieties")

    def __add__(self, other: "FlagKElt") -> "FlagKElt":
        self._check(other)
        out = dict(self.terms)
        for w, f in other.terms.items():
            out[w] = out[w] + f if w in out else f
        pres = None
        if self.presentation is not None and other.presentation is not None:
            pres = self.presentation + other.presentation
        return FlagKElt(self.datum, self.J, out, pres)

    def __neg__(self):
        pres = None if self.presentation is None else self.presentation.scale(
            GroupAlgElt.scalar(self.datum.r_tot, -1))
        return FlagKElt(self.datum, self.J, {w: -f for w, f in self.terms.items()}, pres)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f: GroupAlgElt) -> "FlagKElt":
        """Twist by a character: multiply every coefficient by ``f``."""
        pres = None if self.presentation is None else self.presentation.scale(f)
        return FlagKElt(self.datum, self.J, {w: f * g for w, g in self.terms.items()}, pres)

    def __eq__(self, other):
        return (isinstance(other, FlagKElt) and self.datum == other.datum and self.J == other.J
                and self.terms == other.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def character(self) -> GroupAlgElt:
        """Equivariant Euler characteristic; every Schubert structure sheaf has character 1."""
        total = GroupAlgElt.zero(self.datum.r_tot)
        for f in self.terms.values():
            total = total + f
        return total

    def __repr__(self):
        inner = ", ".join(f"{w.reduced_word}: {f}" for w, f in self.terms.items())
        return f"FlagKElt(J={sorted(self.J)}, {{{inner}}})"

    def to_json(self) -> dict:
        rows = sorted(((list(w.reduced_word), f.to_json()) for w, f in self.terms.items()),
                      key=lambda r: (len(r[0]), r[0]))
        return {"J": sorted(self.J), "classes": [{"w": w, "coeff": f} for w, f in rows]}


def demazure_act(i: int, x: FlagKElt) -> FlagKElt:
    """``D_i`` on a flag class, for ``i`` in ``J``."""
    if i not in x.J:
        raise DomainError(f"D_{i} does not act on the flag variety of {sorted(x.J)}")
    rd = x.datum
    s = FiniteWeylElt.simple(rd, i)
    ea = e_alpha(rd, i)
    out: dict[FiniteWeylElt, GroupAlgElt] = {}

    def add(w, f):
        if w in out:
            out[w] = out[w] + f
        else:
            out[w] = f

    for w, f in x.terms.items():
        sf = weyl_act(s, f)
        add(w, exact_divide(f - sf, 1 - ea))
        sw = s * w
        add(sw if sw.length < w.length else w, sf)
    pres = None
    if x.presentation is not None:
        # line bundle classes are D_i-invariant, so D_i acts on the coefficients alone
        pres = x.presentation.map_coefficients(lambda g: demazure(rd, i, g))
    return FlagKElt(rd, x.J, out, pres)


def demazure_word_act(word: Sequence[int], x: FlagKElt) -> FlagKElt:
    for i in reversed(tuple(word)):
        x = demazure_act(i, x)
    return x


def line_bundle_global(datum: RootDatum, lam: Sequence[int], J: Iterable[int]) -> FlagKElt:
    """``[O(lam)] = D_{w_0^J}(e^{w_0^J lam} [pt])`` on the flag variety of ``L_J``.

    >>> from .rootdata import build_root_datum
    >>> line_bundle_global(build_root_datum("A1"), (1,), {1}).character()
    GroupAlgElt(e^(1,) + e^(-1,))
    """
    lam = datum.check_weight(lam)
    J = frozenset(J)
    w0 = FiniteWeylElt.longest(datum, J)
    pt = FlagKElt.point(datum, J).scale(GroupAlgElt.monomial(w0.act_weight(lam)))
    x = demazure_word_act(datum.longest_word(J), pt)
    x.presentation = LineBundleCombo(datum.r_tot, {lam: GroupAlgElt.one(datum.r_tot)})
    return x


def evaluate_presentation(datum: RootDatum, J: Iterable[int], combo: LineBundleCombo) -> FlagKElt:
    """Schubert expansion of ``sum g_lambda [O(lambda)]`` on the flag variety of ``L_J``."""
    total = FlagKElt(datum, J, {}, LineBundleCombo(datum.r_tot))
    for lam, g in combo.terms.items():
        total = total + line_bundle_global(datum, lam, J).scale(g)
    return total


def levi_restrict(x: FlagKElt, J_sub: Iterable[int]) -> FlagKElt:
    """Send ``sum g [O(lambda)]`` on ``L_J`` to ``sum g [O(lambda)]`` on ``L_{J'}``.

    Only classes carrying a line-bundle presentation are supported.
    """
    J_sub = frozenset(J_sub)
    if not J_sub <= x.J:
        raise DomainError(f"{sorted(J_sub)} is not a subset of {sorted(x.J)}")
    if x.presentation is None:
        raise UnsupportedClassError("class is not in the span of line bundle classes")
    return evaluate_presentation(x.datum, J_sub, x.presentation)


def flag_from_json(datum: RootDatum, obj: dict) -> FlagKElt:
    J = obj["J"]
    terms = {FiniteWeylElt.from_word(datum, c["w"]): GroupAlgElt.from_json(c["coeff"], datum.r_tot)
             for c in obj["classes"]}
    return FlagKElt(datum, J, terms)
