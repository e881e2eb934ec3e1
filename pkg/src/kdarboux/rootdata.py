"""Root data of reductive groups ``[G, G] x H'`` with simply connected derived group.

Coordinates
-----------
A weight is an integer tuple of length ``r_tot = rank + central_rank``: the
first ``rank`` entries are coefficients on the fundamental weights, the rest
are coordinates on the characters of the central torus.  A coweight uses the
simple coroots for the first ``rank`` entries and the cocharacters of the
central torus for the rest.  The two bases are dual, so the pairing of a
coweight with a weight is the plain dot product.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import ConfigurationError, DatumMismatchError

Weight = tuple[int, ...]
Coweight = tuple[int, ...]

# number of positive roots, used to cross-check the closure
_POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
}


def cartan_matrix(letter: str, n: int) -> list[list[int]]:
    """Cartan matrix ``A[i][j] = <alpha_i^vee, alpha_j>`` in Bourbaki numbering.

    >>> cartan_matrix("B", 2)
    [[2, -1], [-2, 2]]
    >>> cartan_matrix("G", 2)
    [[2, -3], [-1, 2]]
    """
    letter = letter.upper()
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "G": n == 2,
    }
    if not valid.get(letter, False):
        raise ConfigurationError(f"unsupported Dynkin type {letter}{n}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if letter == "G":
        return [[2, -3], [-1, 2]]
    chain = n - 1 if letter != "D" else n - 2
    for i in range(chain):
        a[i][i + 1] = a[i + 1][i] = -1
    if letter == "B":
        a[n - 1][n - 2] = -2
    elif letter == "C":
        a[n - 2][n - 1] = -2
    elif letter == "D":
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return a


def parse_family(spec: str | Sequence) -> tuple[tuple[str, int], ...]:
    """Accept ``"A2"``, ``"A2xA1"``, ``"A,2"`` or a sequence of pairs."""
    if isinstance(spec, str):
        parts = [p.strip() for p in re.split(r"[x*]", spec.strip())]
        if not all(parts):
            raise ConfigurationError(f"cannot parse Dynkin family {spec!r}")
        out = []
        for p in parts:
            m = re.fullmatch(r"([A-Za-z])\s*,?\s*(\d+)", p)
            if not m:
                raise ConfigurationError(f"cannot parse Dynkin factor {p!r}")
            out.append((m.group(1).upper(), int(m.group(2))))
        return tuple(out)
    return tuple((str(t).upper(), int(n)) for t, n in spec)


def _solve(matrix: Sequence[Sequence[int]], rhs: Sequence) -> list[Fraction]:
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


class HullResult(NamedTuple):
    member: bool
    starred: bool  # member of the hull but not of the orbit itself


class RootDatum:
    """Immutable root datum of ``[G, G] x H'``.

    >>> rd = build_root_datum([("A", 2)])
    >>> len(rd.positive_roots)
    3
    >>> rd.highest_roots[0]
    (1, 1)
    """

    def __init__(self, family: Sequence[tuple[str, int]], central_rank: int = 0):
        family = parse_family(family)
        if central_rank < 0:
            raise ConfigurationError("central rank must be nonnegative")
        blocks = [cartan_matrix(t, n) for t, n in family]
        rank = sum(n for _, n in family)
        self.family = family
        self.central_rank = int(central_rank)
        self.rank = rank
        self.r_tot = rank + self.central_rank
        cartan = [[0] * rank for _ in range(rank)]
        factor_of = []
        off = 0
        for k, b in enumerate(blocks):
            for i, row in enumerate(b):
                cartan[off + i][off:off + len(b)] = row
                factor_of.append(k)
            off += len(b)
        self.cartan = tuple(tuple(r) for r in cartan)
        self.factor_of = tuple(factor_of)
        self.index_set = tuple(range(1, rank + 1))
        self._build_roots()
        self._check()

    # -- construction -------------------------------------------------
    def _pad(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(v) + (0,) * self.central_rank

    def _build_roots(self):
        r, a = self.rank, self.cartan
        # symmetrizer d_i with d_i a_ij = d_j a_ji, smallest entry 1 per factor
        d = [None] * r
        for start in range(r):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack, comp = [start], [start]
            while stack:
                i = stack.pop()
                for j in range(r):
                    if a[i][j] != 0 and d[j] is None:
                        d[j] = d[i] * a[i][j] / a[j][i]
                        stack.append(j)
                        comp.append(j)
            low = min(d[i] for i in comp)
            for i in comp:
                d[i] /= low
        self.symmetrizer = tuple(d)

        # closure by root strings, in simple-root coordinates
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for c in layer:
                for i in range(r):
                    p = 0
                    while tuple(x - (p + 1) * (k == i) for k, x in enumerate(c)) in roots:
                        p += 1
                    pair = sum(a[i][j] * c[j] for j in range(r))
                    if p - pair > 0:
                        up = tuple(x + (k == i) for k, x in enumerate(c))
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            layer = nxt
        coords = sorted(roots, key=lambda c: (sum(c), [-x for x in c]))
        self.positive_root_coords = tuple(coords)
        self.simple_roots = tuple(
            self._pad(a[j][i] for j in range(r)) for i in range(r))
        self.simple_coroots = tuple(self._pad(s) for s in simple)
        self.fundamental_weights = self.simple_coroots  # same coordinate vectors, dual meaning
        self.positive_roots = tuple(self.root_from_coords(c) for c in coords)
        self.positive_coroots = tuple(self._coroot(c) for c in coords)
        self._root_index = {rt: k for k, rt in enumerate(self.positive_roots)}
        self.rho = self._pad([1] * r)
        self.two_rho_check = tuple(
            sum(cr[k] for cr in self.positive_coroots) for k in range(self.r_tot))

        highest, highest_co = [], []
        for f in range(len(self.family)):
            members = [c for c in coords if any(c[i] for i in range(r) if self.factor_of[i] == f)]
            top = max(members, key=sum)
            highest.append(self.root_from_coords(top))
            highest_co.append(self._coroot(top))
        self.highest_roots = tuple(highest)
        self.highest_coroots = tuple(highest_co)

    def _coroot(self, c: Sequence[int]) -> Coweight:
        r, a, d = self.rank, self.cartan, self.symmetrizer
        # (alpha, alpha)/2 in units where (alpha_i, alpha_i)/2 = d_i
        norm = sum(c[i] * c[j] * d[i] * a[i][j] for i in range(r) for j in range(r)) / 2
        co = [c[j] * d[j] / norm for j in range(r)]
        if any(x.denominator != 1 for x in co):
            raise ConfigurationError("non-integral coroot; bad Cartan data")
        return self._pad(int(x) for x in co)

    def _check(self):
        expected = sum(_POSITIVE_ROOT_COUNT[t](n) for t, n in self.family)
        if len(self.positive_roots) != expected:
            raise ConfigurationError(
                f"root closure produced {len(self.positive_roots)} roots, expected {expected}")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.pairing(self.simple_coroots[i], self.fundamental_weights[j]) != (i == j):
                    raise ConfigurationError("fundamental weights are not dual to coroots")
                if self.pairing(self.simple_coroots[i], self.simple_roots[j]) != self.cartan[i][j]:
                    raise ConfigurationError("simple roots disagree with the Cartan matrix")
        half = [Fraction(sum(rt[k] for rt in self.positive_roots), 2) for k in range(self.r_tot)]
        if tuple(half) != self.rho:
            raise ConfigurationError("rho is not the half sum of positive roots")

    # -- basic queries ------------------------------------------------
    def __repr__(self):
        fam = "x".join(f"{t}{n}" for t, n in self.family) or "T"
        return f"RootDatum({fam}, central={self.central_rank})"

    def __eq__(self, other):
        return (isinstance(other, RootDatum) and self.family == other.family
                and self.central_rank == other.central_rank)

    def __hash__(self):
        return hash((self.family, self.central_rank))

    @property
    def label(self) -> str:
        fam = "x".join(f"{t}{n}" for t, n in self.family)
        return fam + (f"+T{self.central_rank}" if self.central_rank else "")

    @property
    def is_simple(self) -> bool:
        return len(self.family) == 1

    def check_weight(self, v: Sequence[int]) -> Weight:
        v = tuple(int(x) for x in v)
        if len(v) != self.r_tot:
            raise DatumMismatchError(f"expected {self.r_tot} coordinates, got {len(v)}")
        return v

    check_coweight = check_weight

    def pairing(self, beta: Sequence[int], lam: Sequence[int]) -> int:
        """Integer pairing of a coweight with a weight.

        >>> rd = build_root_datum("A1")
        >>> rd.pairing(rd.simple_coroots[0], rd.simple_roots[0])
        2
        """
        if len(beta) != self.r_tot or len(lam) != self.r_tot:
            raise DatumMismatchError("rank mismatch in pairing")
        return sum(b * x for b, x in zip(beta, lam))

    def alpha(self, i: int) -> Weight:
        return self.simple_roots[i - 1]

    def alpha_check(self, i: int) -> Coweight:
        return self.simple_coroots[i - 1]

    def varpi(self, i: int) -> Weight:
        return self.fundamental_weights[i - 1]

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.r_tot

    def root_from_coords(self, c: Sequence[int]) -> Weight:
        r = self.rank
        return self._pad(sum(self.cartan[i][j] * c[j] for j in range(r)) for i in range(r))

    def root_coordinates(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Rational coordinates of the semisimple part of ``lam`` on the simple roots."""
        if self.rank == 0:
            return ()
        return tuple(_solve(self.cartan, lam[:self.rank]))

    def coroot_of(self, root: Weight) -> Coweight:
        """Coroot of a (positive or negative) root."""
        if root in self._root_index:
            return self.positive_coroots[self._root_index[root]]
        neg = tuple(-x for x in root)
        return tuple(-x for x in self.positive_coroots[self._root_index[neg]])

    def is_positive_root(self, v: Weight) -> bool:
        return v in self._root_index

    def is_root(self, v: Weight) -> bool:
        return v in self._root_index or tuple(-x for x in v) in self._root_index

    def is_dominant(self, lam: Sequence[int], J: Iterable[int] | None = None) -> bool:
        idx = self.index_set if J is None else J
        return all(lam[i - 1] >= 0 for i in idx)

    def central_part(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(v[self.rank:])

    def semisimple_part(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(v[:self.rank]) + (0,) * self.central_rank

    # -- Weyl group on weights, without group elements --------------------
    def reflect_weight(self, i: int, lam: Weight) -> Weight:
        k = lam[i - 1]
        a = self.simple_roots[i - 1]
        return tuple(x - k * y for x, y in zip(lam, a))

    def reflect_coweight(self, i: int, beta: Coweight) -> Coweight:
        k = self.pairing(beta, self.simple_roots[i - 1])
        return tuple(x - k * (j == i - 1) for j, x in enumerate(beta))

    def dominant_representative(self, lam: Weight, J: Iterable[int] | None = None) -> Weight:
        idx = tuple(self.index_set if J is None else sorted(J))
        lam = tuple(lam)
        while True:
            for i in idx:
                if lam[i - 1] < 0:
                    lam = self.reflect_weight(i, lam)
                    break
            else:
                return lam

    def weyl_orbit(self, lam: Weight, J: Iterable[int] | None = None) -> frozenset[Weight]:
        idx = tuple(self.index_set if J is None else sorted(J))
        seen = {tuple(lam)}
        todo = [tuple(lam)]
        while todo:
            mu = todo.pop()
            for i in idx:
                nu = self.reflect_weight(i, mu)
                if nu not in seen:
                    seen.add(nu)
                    todo.append(nu)
        return frozenset(seen)

    def longest_word(self, J: Iterable[int] | None = None) -> tuple[int, ...]:
        """A reduced word of the longest element of ``W^J`` (the parabolic subgroup).

        >>> build_root_datum("A2").longest_word()
        (1, 2, 1)
        """
        idx = tuple(self.index_set if J is None else sorted(J))
        lam = self.rho
        applied = []
        while True:
            for i in idx:
                if lam[i - 1] > 0:
                    lam = self.reflect_weight(i, lam)
                    applied.append(i)
                    break
            else:
                break
        # s_{i_k} ... s_{i_1} rho is J-antidominant, so the reversed list is reduced
        return tuple(reversed(applied))

    # -- invariant form, used for multiplicity oracles ------------------
    @cached_property
    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix of a W-invariant form on weights in fundamental-weight coordinates."""
        r = self.rank
        # columns of A^{-T} D
        gram = [[Fraction(0)] * self.r_tot for _ in range(self.r_tot)]
        at = [[self.cartan[j][i] for j in range(r)] for i in range(r)]
        for j in range(r):
            col = _solve(at, [self.symmetrizer[i] * (i == j) for i in range(r)])
            for i in range(r):
                gram[i][j] = col[i]
        for k in range(r, self.r_tot):
            gram[k][k] = Fraction(1)
        return tuple(tuple(row) for row in gram)

    def inner(self, lam: Sequence, mu: Sequence) -> Fraction:
        g = self.weight_gram
        return sum((lam[i] * g[i][j] * mu[j] for i in range(self.r_tot) for j in range(self.r_tot)
                    if lam[i] and mu[j]), Fraction(0))

    # -- Levi data ----------------------------------------------------------
    def levi(self, J: Iterable[int]) -> "LeviSpec":
        return LeviSpec(self, frozenset(J))

    def levi_positive_roots(self, J: Iterable[int]) -> tuple[Weight, ...]:
        Js = set(J)
        return tuple(rt for rt, c in zip(self.positive_roots, self.positive_root_coords)
                     if all(c[i - 1] == 0 for i in self.index_set if i not in Js))

    # -- serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        return {"family": [[t, n] for t, n in self.family], "central": self.central_rank}


@dataclass(frozen=True)
class LeviSpec:
    """A subset ``J`` of the Dynkin nodes with the data it induces."""

    datum: RootDatum
    J: frozenset

    def __post_init__(self):
        bad = [j for j in self.J if j not in self.datum.index_set]
        if bad:
            raise ConfigurationError(f"Levi nodes {bad} not in the index set")

    @property
    def complement(self) -> frozenset:
        return frozenset(self.datum.index_set) - self.J

    def in_coroot_cone(self, gamma: Coweight) -> bool:
        """Is ``gamma`` in the nonnegative span of the coroots indexed by J?"""
        rd = self.datum
        return (all(x == 0 for x in rd.central_part(gamma))
                and all(gamma[i - 1] >= 0 if i in self.J else gamma[i - 1] == 0
                        for i in rd.index_set))

    def strictly_antidominant(self, beta: Coweight) -> bool:
        """``beta`` in X_*^-(J): negative on every simple root of J."""
        return all(self.datum.pairing(beta, self.datum.alpha(j)) < 0 for j in self.J)

    def antidominant(self, beta: Coweight) -> bool:
        """``beta`` in X_*^<=(J)."""
        return all(self.datum.pairing(beta, self.datum.alpha(j)) <= 0 for j in self.J)

    def character_lattice_basis(self) -> tuple[Weight, ...]:
        """Fundamental weights outside J: the characters of the parabolic."""
        return tuple(self.datum.varpi(i) for i in sorted(self.complement))

    @property
    def longest_word(self) -> tuple[int, ...]:
        return self.datum.longest_word(self.J)


def build_root_datum(family, central_rank: int = 0) -> RootDatum:
    """Build a root datum; ``family`` like ``"A2"`` or ``[("B", 2)]``.

    >>> rd = build_root_datum("A1")
    >>> rd.positive_roots, rd.highest_roots, rd.rho
    (((2,),), ((2,),), (1,))
    """
    return RootDatum(family, central_rank)


def hull_membership(datum: RootDatum, lam: Sequence, mu: Sequence) -> HullResult:
    """Is ``mu`` in the convex hull of the Weyl orbit of ``lam``?

    Both arguments may have rational entries.  ``starred`` reports membership
    in the hull with the orbit itself removed.

    >>> rd = build_root_datum("A1")
    >>> hull_membership(rd, (2,), (0,))
    HullResult(member=True, starred=True)
    >>> hull_membership(rd, (1,), (1,))
    HullResult(member=True, starred=False)
    """
    lam = tuple(Fraction(x) for x in lam)
    mu = tuple(Fraction(x) for x in mu)
    if len(lam) != datum.r_tot or len(mu) != datum.r_tot:
        raise DatumMismatchError("rank mismatch in hull_membership")
    if datum.central_part(lam) != datum.central_part(mu):
        return HullResult(False, False)
    lp = datum.dominant_representative(lam)
    mp = datum.dominant_representative(mu)
    # dominant mu lies in conv(W lam) iff lam_+ - mu_+ is a nonnegative combination of simple roots
    diff = tuple(a - b for a, b in zip(lp, mp))
    member = all(c >= 0 for c in datum.root_coordinates(diff))
    return HullResult(member, member and lp != mp)


def weight_to_json(v: Sequence[int]) -> dict:
    return {"wt": [int(x) for x in v]}


def coweight_to_json(v: Sequence[int]) -> dict:
    return {"cwt": [int(x) for x in v]}


def weight_from_json(obj) -> Weight:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return tuple(int(x) for x in obj["wt"])


def coweight_from_json(obj) -> Coweight:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return tuple(int(x) for x in obj["cwt"])
