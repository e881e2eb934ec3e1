"""Darboux coordinates inside the quantized Heisenberg algebra.

Generators and their images:

    phi(i)    -> e^{-varpi_i}
    xi(i)     -> (1 - t_{alpha_i^vee}) e^{varpi_i}
    trans(g)  -> t_g
    char(l)   -> e^l
    scalar(c) -> c

A level is a subset ``J`` of the nodes.  The level-``J`` generators are all
``phi(i)``, ``xi(j)`` for ``j`` in ``J``, characters ``e^{+-varpi_i}`` for ``i``
outside ``J`` and central characters, and all translations.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .coeffs import GroupAlgElt, QLaurent, RatFun, rational_field
from .errors import BoundError, ConfigurationError, DomainError, IntegralityError
from .heisenberg import HeisElt
from .rootdata import RootDatum


@dataclass(frozen=True)
class Token:
    kind: str  # phi, xi, trans, char, scalar
    arg: object

    def __str__(self):
        if self.kind in ("phi", "xi"):
            return f"{self.kind}{self.arg}"
        if self.kind == "trans":
            return "t:" + ",".join(map(str, self.arg))
        if self.kind == "char":
            return "char:" + ",".join(map(str, self.arg))
        return f"scalar:{self.arg}"


def phi(i: int) -> Token:
    return Token("phi", int(i))


def xi(i: int) -> Token:
    return Token("xi", int(i))


def trans(gamma: Sequence[int]) -> Token:
    return Token("trans", tuple(int(x) for x in gamma))


def char(lam: Sequence[int]) -> Token:
    return Token("char", tuple(int(x) for x in lam))


def scalar(c) -> Token:
    return Token("scalar", QLaurent.coerce(c))


_TOKEN_RE = re.compile(r"(phi|xi)(\d+)$|(t|char):(-?\d+(?:,-?\d+)*)$|q(?:\^(-?\d+))?$|(-?\d+(?:/\d+)?)$")


def parse_word(text: str) -> list[Token]:
    """Parse ``"xi1 phi2 t:1,0 char:0,1 q^2 3/2"`` into tokens.

    >>> [str(t) for t in parse_word("xi1 phi2 t:1,-1")]
    ['xi1', 'phi2', 't:1,-1']
    """
    out = []
    for piece in text.split():
        m = _TOKEN_RE.match(piece)
        if not m:
            raise ConfigurationError(f"cannot parse token {piece!r}")
        if m.group(1):
            out.append(Token(m.group(1), int(m.group(2))))
        elif m.group(3):
            vec = tuple(int(x) for x in m.group(4).split(","))
            out.append(trans(vec) if m.group(3) == "t" else char(vec))
        elif m.group(6):
            out.append(scalar(Fraction(m.group(6))))
        else:
            out.append(scalar(QLaurent.q(int(m.group(5) or 1))))
    return out


def format_word(word: Iterable[Token]) -> str:
    return " ".join(str(t) for t in word)


def _level(datum: RootDatum, level) -> frozenset:
    J = frozenset(datum.index_set if level is None else level)
    if not J <= set(datum.index_set):
        raise ConfigurationError(f"level {sorted(J)} is not a set of nodes")
    return J


def validate_token(datum: RootDatum, token: Token, level=None) -> None:
    """Raise ``ConfigurationError`` unless ``token`` is a level generator."""
    J = _level(datum, level)
    if token.kind == "phi":
        if token.arg not in datum.index_set:
            raise ConfigurationError(f"phi{token.arg}: no such node")
    elif token.kind == "xi":
        if token.arg not in J:
            raise ConfigurationError(f"xi{token.arg} is not a generator at level {sorted(J)}")
    elif token.kind == "trans":
        datum.check_coweight(token.arg)
    elif token.kind == "char":
        lam = datum.check_weight(token.arg)
        if any(lam[j - 1] for j in J):
            raise ConfigurationError(f"char{lam} is not a character at level {sorted(J)}")
    elif token.kind != "scalar":
        raise ConfigurationError(f"unknown token kind {token.kind!r}")


def token_image(datum: RootDatum, token: Token, level=None) -> HeisElt:
    validate_token(datum, token, level)
    if token.kind == "phi":
        return HeisElt.e(datum, tuple(-x for x in datum.varpi(token.arg)))
    if token.kind == "xi":
        i = token.arg
        return (HeisElt.one(datum) - HeisElt.t(datum, datum.alpha_check(i))) * HeisElt.e(datum, datum.varpi(i))
    if token.kind == "trans":
        return HeisElt.t(datum, token.arg)
    if token.kind == "char":
        return HeisElt.e(datum, token.arg)
    return HeisElt.scalar(datum, token.arg)


def image(datum: RootDatum, word: Sequence[Token] | str, level=None) -> HeisElt:
    """Product of the token images, left to right.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> image(rd, "phi1 xi1")
    HeisElt(e^(0,) - q e^(0,) t^(1,))
    """
    if isinstance(word, str):
        word = parse_word(word)
    out = HeisElt.one(datum)
    for token in word:
        out = out * token_image(datum, token, level)
    return out


def h_image(datum: RootDatum, i: int) -> HeisElt:
    """Image of ``h_i``, defined through ``phi_i = e^{-varpi_i}(1 - h_i)``."""
    return HeisElt.one(datum) - HeisElt.e(datum, datum.varpi(i)) * token_image(datum, phi(i))


# -- relations -------------------------------------------------------------------------
def check_relations(datum: RootDatum) -> list[dict]:
    """Commutation identities among the generator images, one report entry each."""
    report = []

    def record(name, args, lhs, rhs):
        ok = lhs == rhs
        entry = {"relation": name, "args": args, "ok": ok}
        if not ok:
            entry["witness"] = (lhs - rhs).to_json()
        report.append(entry)

    one = HeisElt.one(datum)
    P = {i: token_image(datum, phi(i)) for i in datum.index_set}
    X = {i: token_image(datum, xi(i)) for i in datum.index_set}
    for i in datum.index_set:
        t = HeisElt.t(datum, datum.alpha_check(i))
        record("xi*phi", {"i": i}, X[i] * P[i], one - t)
        record("phi*xi", {"i": i}, P[i] * X[i], one - t * QLaurent.q())
        for j in datum.index_set:
            if j == i:
                continue
            record("xi*xi", {"i": i, "j": j}, X[i] * X[j], X[j] * X[i])
            record("xi*phi", {"i": i, "j": j}, X[i] * P[j], P[j] * X[i])
            record("phi*phi", {"i": i, "j": j}, P[i] * P[j], P[j] * P[i])
    unit = [tuple(int(a == k) for a in range(datum.r_tot)) for k in range(datum.r_tot)]
    gammas = unit + [tuple(-x for x in g) for g in unit]
    central = [tuple(int(a == k) for a in range(datum.r_tot)) for k in range(datum.rank, datum.r_tot)]
    central += [tuple(-x for x in c) for c in central]
    for g in gammas:
        tg = HeisElt.t(datum, g)
        for i in datum.index_set:
            k = datum.pairing(g, datum.varpi(i))
            record("t*phi", {"gamma": list(g), "i": i}, tg * P[i], P[i] * tg * QLaurent.q(-k))
            record("t*xi", {"gamma": list(g), "i": i}, tg * X[i], X[i] * tg * QLaurent.q(k))
        for lam in central:
            e = HeisElt.e(datum, lam)
            record("t*char", {"gamma": list(g), "lambda": list(lam)},
                   tg * e, e * tg * QLaurent.q(datum.pairing(g, lam)))
    for lam in central:
        e = HeisElt.e(datum, lam)
        for i in datum.index_set:
            record("char*phi", {"lambda": list(lam), "i": i}, e * P[i], P[i] * e)
            record("char*xi", {"lambda": list(lam), "i": i}, e * X[i], X[i] * e)
    return report


# -- the monomial family ----------------------------------------------------------------
def c_basis_word(datum: RootDatum, lam: Sequence[int], gamma: Sequence[int], level=None) -> list[Token]:
    """Word of the family element indexed by ``(lam, gamma)`` at a level.

    Characters first, then ``xi_i^{-m_i}`` for ``m_i < 0``, then ``phi_i^{m_i}`` for
    ``m_i > 0`` (``i`` in the level, ``m_i = <alpha_i^vee, lam>``), then ``t_gamma``.
    """
    J = _level(datum, level)
    lam = datum.check_weight(lam)
    gamma = datum.check_coweight(gamma)
    rest = tuple(0 if (k + 1) in J and k < datum.rank else -x for k, x in enumerate(lam))
    word: list[Token] = []
    if any(rest):
        word.append(char(rest))
    for i in sorted(J):
        if lam[i - 1] < 0:
            word += [xi(i)] * (-lam[i - 1])
    for i in sorted(J):
        if lam[i - 1] > 0:
            word += [phi(i)] * lam[i - 1]
    if any(gamma):
        word.append(trans(gamma))
    return word


def c_basis_element(datum: RootDatum, lam: Sequence[int], gamma: Sequence[int], level=None) -> HeisElt:
    """Image of the family element ``(lam, gamma)``; it has the single weight ``-lam``.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> c_basis_element(rd, (-1,), (0,))
    HeisElt(e^(1,) - q e^(1,) t^(1,))
    """
    return image(datum, c_basis_word(datum, lam, gamma, level), level)


def _block_polynomial(datum: RootDatum, lam, level) -> dict[tuple[int, ...], QLaurent]:
    """``P`` with ``c(lam, 0) = e^{-lam} P(t)``."""
    elt = c_basis_element(datum, lam, datum.zero(), level)
    blocks = elt.weight_blocks()
    (weight, poly), = blocks.items()
    return poly


# -- exact linear algebra over Q(q) -----------------------------------------------------
def _qfield():
    return rational_field(0)


def _to_field(c: QLaurent):
    return RatFun.from_group(GroupAlgElt(0, {(): c})).value


def _from_field(x) -> QLaurent:
    g = RatFun(0, x).to_group()
    return g.coefficient(())


def solve_linear(rows: list[list], rhs: list, zero, one=None):
    """Solve ``A x = b`` exactly over a field by Gauss-Jordan elimination.

    Entries are field elements supporting ``+ - * /`` and truth testing.
    Returns ``(solution, None)`` with free variables set to zero, or
    ``(None, row_index)`` naming an inconsistent equation.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    n_rows = len(m)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((k for k in range(r, n_rows) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p if x else x for x in m[r]]
        for k in range(n_rows):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y if y else x for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    for k in range(r, n_rows):
        if m[k][n_cols]:
            return None, k
    x = [zero] * n_cols
    for k, c in enumerate(pivots):
        x[c] = m[k][n_cols]
    return x, None


@dataclass
class Decomposition:
    """Result of ``membership_decompose``.

    ``coefficients`` maps ``(lam, gamma)`` to the coefficient of the family
    element; when ``feasible`` is false, ``obstruction`` names the weight block
    that admits no solution inside the box.
    """

    feasible: bool
    coefficients: dict = field(default_factory=dict)
    level: tuple = ()
    box: int = 0
    obstruction: dict | None = None

    def to_json(self) -> dict:
        out = {"feasible": self.feasible, "level": list(self.level), "box": self.box}
        if self.feasible:
            out["coefficients"] = [{"lambda": list(l), "gamma": list(g), "q": c.to_json()}
                                   for (l, g), c in sorted(self.coefficients.items())]
        else:
            out["obstruction"] = self.obstruction
        return out


def _in_box(v, radius):
    return all(abs(x) <= radius for x in v)


def membership_decompose(target: HeisElt, level=None, box: int = 4) -> Decomposition:
    """Express ``target`` in the level family ``{c(lam, gamma)}`` restricted to a box.

    The family element ``c(lam, gamma)`` has weight ``-lam`` and equals
    ``e^{-lam} P_lam(t) t_gamma``, so each weight block is an independent
    linear system in the unknowns ``x_gamma``.  Candidates for ``gamma`` are cut
    down to the Newton bounding box of ``target_block / P_lam``.  The system is
    solved exactly over ``Q(q)``.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> d = membership_decompose(image(rd, "xi1") + image(rd, "phi1"))
    >>> sorted((l, g, str(c)) for (l, g), c in d.coefficients.items())
    [((-1,), (0,), '1'), ((1,), (0,), '1')]
    """
    datum = target.datum
    J = _level(datum, level)
    if box < 1:
        raise BoundError("box radius must be at least 1 to hold the generator images")
    for lam, gamma in target.terms:
        if not (_in_box(lam, box) and _in_box(gamma, box)):
            raise BoundError(f"target monomial e^{lam} t^{gamma} lies outside the box of radius {box}")
    K = _qfield()
    coeffs: dict = {}
    for weight, block in sorted(target.weight_blocks().items()):
        lam = tuple(-x for x in weight)
        P = _block_polynomial(datum, lam, J)
        n = datum.r_tot
        lo, hi = [], []
        for k in range(n):
            f_lo = min(g[k] for g in block)
            f_hi = max(g[k] for g in block)
            p_lo = min(g[k] for g in P)
            p_hi = max(g[k] for g in P)
            lo.append(max(-box, f_lo - p_lo))
            hi.append(min(box, f_hi - p_hi))
        if any(a > b for a, b in zip(lo, hi)):
            return Decomposition(False, {}, tuple(sorted(J)), box, {
                "weight": list(weight), "reason": "no translation in the box matches the block's extent"})
        candidates = list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))
        eqs = set(block)
        for g in candidates:
            for p in P:
                eqs.add(tuple(x + y for x, y in zip(g, p)))
        eqs = sorted(eqs)
        index = {eta: r for r, eta in enumerate(eqs)}
        rows = [[K.zero] * len(candidates) for _ in eqs]
        for c, g in enumerate(candidates):
            for p, val in P.items():
                rows[index[tuple(x + y for x, y in zip(g, p))]][c] = _to_field(val)
        rhs = [_to_field(block[eta]) if eta in block else K.zero for eta in eqs]
        sol, bad = solve_linear(rows, rhs, K.zero)
        if sol is None:
            return Decomposition(False, {}, tuple(sorted(J)), box, {
                "weight": list(weight), "reason": "inconsistent linear system",
                "equation_t": list(eqs[bad])})
        for g, x in zip(candidates, sol):
            if x:
                try:
                    coeffs[(lam, g)] = _from_field(x)
                except IntegralityError as err:  # pragma: no cover - excluded by unit extreme coefficients
                    raise DomainError(f"non-Laurent coefficient {x} for {(lam, g)}") from err
    result = Decomposition(True, coeffs, tuple(sorted(J)), box)
    if recombine(datum, result) != target:
        raise DomainError("decomposition does not recombine to the target")
    return result


def recombine(datum: RootDatum, decomposition: Decomposition) -> HeisElt:
    """``sum x (lam, gamma) c(lam, gamma)`` from a feasible decomposition."""
    total = HeisElt.zero(datum)
    for (lam, gamma), c in decomposition.coefficients.items():
        total = total + c_basis_element(datum, lam, gamma, decomposition.level) * c
    return total


# -- rank certificate for the monomial family ------------------------------------------
_PRIME = 2 ** 31 - 1


def _mod_value(c: QLaurent, qv: int, p: int) -> int:
    total = 0
    for e, a in c.terms.items():
        num = a.numerator % p
        den = pow(a.denominator, -1, p)
        total += num * den * pow(qv, e, p)
    return total % p


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    m = mat.copy() % p
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        nz = np.nonzero(m[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), -1, p)
        m[rank] = (m[rank] * inv) % p
        others = np.nonzero(m[:, c])[0]
        for k in others:
            if k != rank:
                m[k] = (m[k] - int(m[k, c]) * m[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def family_rank_report(datum: RootDatum, lam_radius: int = 3, gamma_radius: int = 2,
                     q_value: int = 7919, prime: int = _PRIME) -> list[dict]:
    """Rank of the family ``{c(lam, gamma)}`` on a grid, one entry per weight block.

    Blocks of different weight are independent automatically, so the family
    has full rank iff every block matrix (columns ``gamma``, rows ``t``-monomials)
    does.  Ranks are computed after substituting ``q = q_value`` modulo a prime;
    full rank there certifies full rank over ``Q(q)``.
    """
    report = []
    gammas = list(product(range(-gamma_radius, gamma_radius + 1), repeat=datum.r_tot))
    for m in product(range(-lam_radius, lam_radius + 1), repeat=datum.rank):
        lam = tuple(m) + (0,) * datum.central_rank
        P = _block_polynomial(datum, lam, None)
        rows = sorted({tuple(x + y for x, y in zip(g, p)) for g in gammas for p in P})
        index = {eta: r for r, eta in enumerate(rows)}
        mat = np.zeros((len(rows), len(gammas)), dtype=np.int64)
        for c, g in enumerate(gammas):
            for p, val in P.items():
                mat[index[tuple(x + y for x, y in zip(g, p))], c] = _mod_value(val, q_value, prime)
        rank = _rank_mod_p(mat, prime)
        report.append({"lambda": list(lam), "columns": len(gammas), "rank": rank,
                       "ok": rank == len(gammas)})
    return report


# -- Levi chains ------------------------------------------------------------------------
def level_generators(datum: RootDatum, level) -> list[Token]:
    J = _level(datum, level)
    gens = [phi(i) for i in datum.index_set]
    gens += [xi(j) for j in sorted(J)]
    n = datum.r_tot
    for i in datum.index_set:
        if i not in J:
            gens += [char(datum.varpi(i)), char(tuple(-x for x in datum.varpi(i)))]
    for k in range(datum.rank, n):
        unit = tuple(int(a == k) for a in range(n))
        gens += [char(unit), char(tuple(-x for x in unit)), trans(unit), trans(tuple(-x for x in unit))]
    for i in datum.index_set:
        co = datum.alpha_check(i)
        gens += [trans(co), trans(tuple(-x for x in co))]
    return gens


def random_word(datum: RootDatum, level, degree: int, rng: random.Random) -> list[Token]:
    gens = level_generators(datum, level)
    return [rng.choice(gens) for _ in range(rng.randint(1, degree))]


def levi_chain_check(datum: RootDatum, J: Iterable[int], J_sub: Iterable[int], samples: int = 20,
                     degree: int = 3, box: int = 6, seed: int = 0) -> dict:
    """Decompose random level-``J`` products at level ``J_sub``."""
    J, J_sub = frozenset(J), frozenset(J_sub)
    if not J_sub <= J:
        raise ConfigurationError(f"{sorted(J_sub)} is not contained in {sorted(J)}")
    rng = random.Random(seed)
    entries = []
    for _ in range(samples):
        word = random_word(datum, J, degree, rng)
        target = image(datum, word, J)
        try:
            dec = membership_decompose(target, J_sub, box)
            entry = {"word": format_word(word), "ok": dec.feasible}
            if not dec.feasible:
                entry["obstruction"] = dec.obstruction
        except BoundError as err:
            entry = {"word": format_word(word), "ok": False, "error": str(err)}
        entries.append(entry)
    return {"from": sorted(J), "to": sorted(J_sub), "seed": seed, "samples": entries,
            "ok": all(e["ok"] for e in entries)}


# -- Levi specialization ----------------------------------------------------------------
def is_admissible(a: HeisElt) -> bool:
    rd = a.datum
    return all(all(x >= 0 for x in g[:rd.rank]) and not any(g[rd.rank:]) for g in a.t_support())


def levi_specialize(a: HeisElt, J: Iterable[int]) -> HeisElt:
    """Drop monomials whose translation involves ``alpha_i^vee`` with ``i`` outside ``J``.

    Defined on elements whose translations lie in the nonnegative coroot cone.

    >>> from .rootdata import build_root_datum
    >>> rd = build_root_datum("A1")
    >>> levi_specialize(image(rd, "xi1"), set())
    HeisElt(e^(1,))
    """
    rd = a.datum
    J = _level(rd, J)
    if not is_admissible(a):
        raise DomainError("translation support is not in the nonnegative coroot cone")
    return HeisElt(rd, {(l, g): c for (l, g), c in a.terms.items()
                        if all(g[i - 1] == 0 for i in rd.index_set if i not in J)})


def random_admissible(datum: RootDatum, rng: random.Random, terms: int = 3, radius: int = 2) -> HeisElt:
    out = HeisElt.zero(datum)
    for _ in range(terms):
        lam = tuple(rng.randint(-radius, radius) for _ in range(datum.r_tot))
        gamma = tuple(rng.randint(0, radius) for _ in range(datum.rank)) + (0,) * datum.central_rank
        c = QLaurent({rng.randint(-2, 2): rng.randint(-3, 3)})
        out = out + HeisElt.monomial(datum, lam, gamma, c)
    return out
