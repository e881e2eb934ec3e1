"""Quantized Heisenberg algebra of a torus.

Elements are finite sums ``sum c(q) e^lambda t_gamma`` in the normal form with
weights to the left of translations.  Multiplication uses

    (e^lambda t_gamma)(e^mu t_eta) = q^{<gamma, mu>} e^{lambda+mu} t_{gamma+eta}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coeffs import QLaurent
from .errors import DatumMismatchError, DomainError
from .rootdata import RootDatum

Key = tuple[tuple[int, ...], tuple[int, ...]]


class HeisElt:
    """Element of the quantized Heisenberg algebra.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> t, e = HeisElt.t(rd, (1,)), HeisElt.e(rd, (1,))
    >>> t * e
    HeisElt(q e^(1,) t^(1,))
    """

    __slots__ = ("datum", "terms", "_hash")

    def __init__(self, datum: RootDatum, terms: Mapping[Key, object] | None = None):
        self.datum = datum
        clean: dict[Key, QLaurent] = {}
        for (lam, gamma), c in (terms or {}).items():
            lam, gamma = tuple(lam), tuple(gamma)
            if len(lam) != datum.r_tot or len(gamma) != datum.r_tot:
                raise DatumMismatchError("monomial has the wrong rank")
            c = QLaurent.coerce(c)
            if c:
                clean[(lam, gamma)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, datum, terms):
        obj = cls.__new__(cls)
        obj.datum = datum
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, datum: RootDatum, lam: Sequence[int], gamma: Sequence[int], coeff=1) -> "HeisElt":
        return cls(datum, {(datum.check_weight(lam), datum.check_coweight(gamma)): coeff})

    @classmethod
    def e(cls, datum: RootDatum, lam: Sequence[int], coeff=1) -> "HeisElt":
        return cls.monomial(datum, lam, datum.zero(), coeff)

    @classmethod
    def t(cls, datum: RootDatum, gamma: Sequence[int], coeff=1) -> "HeisElt":
        return cls.monomial(datum, datum.zero(), gamma, coeff)

    @classmethod
    def one(cls, datum: RootDatum) -> "HeisElt":
        return cls.monomial(datum, datum.zero(), datum.zero())

    @classmethod
    def zero(cls, datum: RootDatum) -> "HeisElt":
        return cls(datum)

    @classmethod
    def scalar(cls, datum: RootDatum, c) -> "HeisElt":
        return cls.monomial(datum, datum.zero(), datum.zero(), c)

    def _coerce(self, other) -> "HeisElt":
        if isinstance(other, HeisElt):
            if other.datum != self.datum:
                raise DatumMismatchError("Heisenberg elements over different root data")
            return other
        c = QLaurent.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return HeisElt.scalar(self.datum, c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HeisElt._raw(self.datum, out)

    __radd__ = __add__

    def __neg__(self):
        return HeisElt._raw(self.datum, {k: -c for k, c in self.terms.items()})

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
        out: dict[Key, QLaurent] = {}
        for (l1, g1), c1 in self.terms.items():
            for (l2, g2), c2 in other.terms.items():
                k = sum(a * b for a, b in zip(g1, l2))
                key = (tuple(a + b for a, b in zip(l1, l2)), tuple(a + b for a, b in zip(g1, g2)))
                c = (c1 * c2).shift(k)
                out[key] = out[key] + c if key in out else c
        return HeisElt._raw(self.datum, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int) -> "HeisElt":
        if n < 0:
            raise DomainError("negative powers are not in the algebra")
        out = HeisElt.one(self.datum)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HeisElt):
            other = self._coerce(other)
            if other is NotImplemented:
                return False
        return self.datum == other.datum and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # -- structure -------------------------------------------------------------
    def t_support(self) -> frozenset:
        return frozenset(g for _, g in self.terms)

    def weight_support(self) -> frozenset:
        return frozenset(l for l, _ in self.terms)

    def t_degree(self, i: int) -> int | None:
        """Largest ``<gamma, varpi_i>`` over the support (``None`` for zero)."""
        vals = [self.datum.pairing(g, self.datum.varpi(i)) for _, g in self.terms]
        return max(vals) if vals else None

    def weight_blocks(self) -> dict[tuple[int, ...], dict[tuple[int, ...], QLaurent]]:
        """Group the terms by weight: ``{lambda: {gamma: c}}``."""
        out: dict = {}
        for (l, g), c in self.terms.items():
            out.setdefault(l, {})[g] = c
        return out

    def conjugate_by_t(self, gamma: Sequence[int]) -> "HeisElt":
        """``t_gamma a t_{-gamma}``: scales ``e^lambda t_eta`` by ``q^{<gamma, lambda>}``."""
        gamma = self.datum.check_coweight(gamma)
        return HeisElt._raw(self.datum, {
            (l, g): c.shift(self.datum.pairing(gamma, l)) for (l, g), c in self.terms.items()})

    def q_specialize(self, value) -> "SpecializedHeisElt":
        value = Fraction(value)
        if value == 0:
            raise DomainError("q cannot be specialised to 0")
        return SpecializedHeisElt(self.datum, value,
                                  {k: c.evaluate(value) for k, c in self.terms.items()})

    # -- display and JSON --------------------------------------------------------
    def __repr__(self):
        return f"HeisElt({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (l, g) in sorted(self.terms):
            c = self.terms[(l, g)]
            mon = f"e^{l}" + ("" if not any(g) else f" t^{g}")
            if c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            elif c.is_unit() and next(iter(c.terms.values())) in (1, -1):
                (ex, co), = c.terms.items()
                qs = "q" if ex == 1 else f"q^{ex}"
                parts.append(("-" if co < 0 else "") + f"{qs} {mon}")
            else:
                parts.append(f"({c}) {mon}")
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def to_json(self) -> dict:
        rows = sorted(self.terms)
        return {"terms": [{"wt": list(l), "t": list(g), "q": self.terms[(l, g)].to_json()} for l, g in rows]}

    @classmethod
    def from_json(cls, datum: RootDatum, obj) -> "HeisElt":
        return cls(datum, {(tuple(t["wt"]), tuple(t["t"])): QLaurent.from_json(t["q"]) for t in obj["terms"]})


class SpecializedHeisElt:
    """Heisenberg element at a fixed nonzero rational value of ``q``."""

    __slots__ = ("datum", "value", "terms")

    def __init__(self, datum: RootDatum, value: Fraction, terms: Mapping[Key, Fraction]):
        self.datum = datum
        self.value = Fraction(value)
        self.terms = {k: Fraction(c) for k, c in terms.items() if c}

    def _check(self, other):
        if not isinstance(other, SpecializedHeisElt) or other.datum != self.datum or other.value != self.value:
            raise DatumMismatchError("specialised elements over different data or q values")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SpecializedHeisElt(self.datum, self.value, out)

    def __neg__(self):
        return SpecializedHeisElt(self.datum, self.value, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out: dict[Key, Fraction] = {}
        for (l1, g1), c1 in self.terms.items():
            for (l2, g2), c2 in other.terms.items():
                k = sum(a * b for a, b in zip(g1, l2))
                key = (tuple(a + b for a, b in zip(l1, l2)), tuple(a + b for a, b in zip(g1, g2)))
                out[key] = out.get(key, 0) + c1 * c2 * self.value ** k
        return SpecializedHeisElt(self.datum, self.value, out)

    def __eq__(self, other):
        return (isinstance(other, SpecializedHeisElt) and self.datum == other.datum
                and self.value == other.value and self.terms == other.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        inner = " + ".join(f"{c} e^{l} t^{g}" for (l, g), c in sorted(self.terms.items()))
        return f"SpecializedHeisElt(q={self.value}: {inner or 0})"

    def to_json(self) -> dict:
        return {"q_value": [self.value.numerator, self.value.denominator],
                "terms": [{"wt": list(l), "t": list(g), "c": [c.numerator, c.denominator]}
                          for (l, g), c in sorted(self.terms.items())]}
