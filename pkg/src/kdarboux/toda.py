"""The SL(n) relativistic Toda Hamiltonian in Darboux coordinates.

The Hamiltonian is the image of the character of the dual vector
representation:

    H_n = phi_1 + sum_{i=1}^{n-2} xi_i phi_{i+1} + xi_{n-1},

an element of the Heisenberg algebra of type ``A_{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .darboux import Token, char, format_word, image, levi_specialize, phi, xi
from .errors import ConfigurationError
from .heisenberg import HeisElt
from .nildaha import weyl_character
from .rootdata import RootDatum, build_root_datum
from .coeffs import GroupAlgElt


@dataclass(frozen=True)
class TodaHamiltonian:
    n: int
    datum: RootDatum
    value: HeisElt
    words: tuple[tuple[Token, ...], ...]

    def describe(self) -> list[str]:
        return [format_word(w) for w in self.words]


def toda_words(n: int) -> tuple[tuple[Token, ...], ...]:
    words = [(phi(1),)] if n > 1 else []
    for i in range(1, n):
        # varpi_n = 0, so the last term has no phi factor
        words.append((xi(i), phi(i + 1)) if i + 1 < n else (xi(i),))
    return tuple(words)


def toda_datum(n: int) -> RootDatum:
    if not 2 <= n <= 8:
        raise ConfigurationError(f"n must lie in [2, 8], got {n}")
    return build_root_datum([("A", n - 1)])


def toda_ch_v(n: int) -> TodaHamiltonian:
    """Toda Hamiltonian for SL(n).

    >>> toda_ch_v(2).value
    HeisElt(e^(-1,) + e^(1,) - q e^(1,) t^(1,))
    """
    rd = toda_datum(n)
    words = toda_words(n)
    value = HeisElt.zero(rd)
    for w in words:
        value = value + image(rd, w)
    return TodaHamiltonian(n, rd, value, words)


def toda_restrict(n: int, J: Iterable[int]) -> HeisElt:
    """Levi specialization of the Hamiltonian to ``J``."""
    return levi_specialize(toda_ch_v(n).value, J)


def toda_rebuild(n: int, J: Iterable[int]) -> HeisElt:
    """The Hamiltonian rebuilt from level-``J`` tokens: ``xi_i`` for ``i`` outside ``J``
    becomes the character ``e^{varpi_i}``."""
    rd = toda_datum(n)
    J = frozenset(J)
    value = HeisElt.zero(rd)
    for word in toda_words(n):
        new = tuple(char(rd.varpi(t.arg)) if t.kind == "xi" and t.arg not in J else t for t in word)
        value = value + image(rd, new, J)
    return value


def classical_limit(n: int) -> GroupAlgElt:
    """All translations killed and ``q = 1``: a plain character."""
    rd = toda_datum(n)
    limit = toda_restrict(n, ()).q_specialize(1)
    out = {}
    for (lam, gamma), c in limit.terms.items():
        out[lam] = out.get(lam, 0) + c
    return GroupAlgElt(rd.r_tot, out)


def classical_limit_check(n: int) -> bool:
    """Does the classical limit equal the character of the dual vector representation?

    >>> classical_limit_check(3)
    True
    """
    rd = toda_datum(n)
    return classical_limit(n) == weyl_character(rd, rd.varpi(n - 1))
