"""The imaginary-root Heisenberg algebra in its loop presentation.

Provides the structure constants and their exact inverse matrix, the primed
change of variables on the negative generators, symbolic verification of the
decoupled canonical relations, and the single-copy oscillator algebra with
optional level specialization gamma = q^level.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .cartan import CartanData, IndexOutOfRange
from .linalg import SingularMatrix, invert
from .qscalar import ONE, Scalar, qint, s_power
from .termalg import (
    FLAVOR_A,
    FLAVOR_H,
    FLAVOR_HP,
    AlgebraElement,
    GenId,
    RelationTable,
    commutator,
    h_gen,
)

__all__ = [
    "StructureConvention", "HeisenbergAlgebra", "ZeroK", "ZeroLevel",
    "SingularMatrix", "structure_constant", "structure_matrix",
    "inverse_structure_matrix", "primed_generator", "relation_table",
    "oscillator_table", "verify_canonical_relations", "RelationCheck",
    "single_heisenberg_table", "central_bracket", "gamma_bracket",
    "report_to_json",
]


class ZeroK(ValueError):
    pass


class ZeroLevel(ValueError):
    pass


class StructureConvention(str, Enum):
    """Normalization of the commutator denominator for non-simply-laced nodes.

    QJ_BRACKET divides by the bracket of d_j in base q_j; PLAIN_Q divides by
    the bracket of d_j in base q.  The two agree whenever d_j = 1 and both
    yield an invertible structure matrix.
    """

    QJ_BRACKET = "paper"
    PLAIN_Q = "drinfeld"


@dataclass(frozen=True)
class HeisenbergAlgebra:
    cartan: CartanData
    convention: StructureConvention = StructureConvention.QJ_BRACKET
    level: int | None = None

    def __post_init__(self):
        if self.level == 0:
            raise ZeroLevel("level must be nonzero when specialized")


@lru_cache(maxsize=None)
def _gamma_bracket_cached(k: int, level: int | None):
    if level is None:
        inv = ONE / (s_power(2) - s_power(-2))
        return {2 * k: inv, -2 * k: -inv}
    return {0: qint(k * level)}


def gamma_bracket(k: int, level: int | None):
    """(gamma^k - gamma^(-k)) / (q - q^(-1)) as a central element."""
    return dict(_gamma_bracket_cached(k, level))


@lru_cache(maxsize=None)
def structure_constant(alg: HeisenbergAlgebra, i: int, j: int, k: int) -> Scalar:
    """The pairing coefficient of [h_{ik}, h_{j,-k}] under the active convention."""
    if k == 0:
        raise ZeroK("degree k must be nonzero")
    n = alg.cartan.rank
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange(f"node index out of range: ({i}, {j})")
    di = alg.cartan.d[i]
    dj = alg.cartan.d[j]
    aij = alg.cartan.gcm[i][j]
    num = qint(k * aij, di)
    if alg.convention is StructureConvention.QJ_BRACKET:
        den = qint(dj, dj) * k
    else:
        den = qint(dj, 1) * k
    return num / den


def structure_matrix(alg: HeisenbergAlgebra, k: int):
    n = alg.cartan.rank
    return [[structure_constant(alg, i, j, k) for j in range(1, n + 1)]
            for i in range(1, n + 1)]


def inverse_structure_matrix(alg: HeisenbergAlgebra, k: int):
    """Exact inverse of the structure matrix; SingularMatrix signals a fault."""
    return invert(structure_matrix(alg, k))


def primed_generator(alg: HeisenbergAlgebra, j: int, k: int) -> AlgebraElement:
    """The primed negative generator as a combination of unprimed ones."""
    if k < 1:
        raise ValueError("k must be >= 1")
    b = inverse_structure_matrix(alg, k)
    out = AlgebraElement.zero()
    for m in range(1, alg.cartan.rank + 1):
        out = out + AlgebraElement.from_word((h_gen(m, -k),), b[m - 1][j - 1])
    return out


def _loop_key(g: GenId):
    return (0 if g.degree < 0 else 1, g.node, g.degree)


def relation_table(alg: HeisenbergAlgebra) -> RelationTable:
    """The defining presentation on the unprimed generators.

    The bracket is evaluated with the positive-degree generator on the left
    and extended by antisymmetry; only opposite degrees pair.
    """

    def comm(a: GenId, b: GenId):
        if a.flavor != FLAVOR_H or b.flavor != FLAVOR_H:
            raise ValueError(f"unexpected generators {a!r}, {b!r} in loop presentation")
        if a.degree + b.degree != 0:
            return {}
        if a.degree > 0:
            c = structure_constant(alg, a.node, b.node, a.degree)
            return {g: c * v for g, v in gamma_bracket(a.degree, alg.level).items()}
        c = structure_constant(alg, b.node, a.node, b.degree)
        return {g: -(c * v) for g, v in gamma_bracket(b.degree, alg.level).items()}

    return RelationTable("loop", _loop_key, comm)


def _osc_key(g: GenId):
    return (0 if g.degree < 0 else 1, g.node, g.degree)


def oscillator_table(level: int | None = None) -> RelationTable:
    """The decoupled presentation on {h positive, h' negative}."""
    if level == 0:
        raise ZeroLevel("level must be nonzero when specialized")

    def comm(a: GenId, b: GenId):
        fa, fb = a.flavor, b.flavor
        if fa == FLAVOR_H and a.degree < 0 or fb == FLAVOR_H and b.degree < 0:
            raise ValueError("unprimed negative generator in the decoupled presentation")
        if fa == FLAVOR_HP and a.degree > 0 or fb == FLAVOR_HP and b.degree > 0:
            raise ValueError("primed positive generator in the decoupled presentation")
        if fa == fb:
            return {}
        if fa == FLAVOR_H and fb == FLAVOR_HP:
            if a.node == b.node and a.degree + b.degree == 0:
                return gamma_bracket(a.degree, level)
            return {}
        if fa == FLAVOR_HP and fb == FLAVOR_H:
            if a.node == b.node and a.degree + b.degree == 0:
                return {g: -v for g, v in gamma_bracket(b.degree, level).items()}
            return {}
        return {}

    return RelationTable("oscillator", _osc_key, comm)


@dataclass(frozen=True)
class RelationCheck:
    relation_id: str
    lhs: AlgebraElement
    rhs: AlgebraElement
    residue: AlgebraElement

    @property
    def passed(self):
        return self.residue.is_zero

    def to_json(self):
        return {
            "relation-id": self.relation_id,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "residue": str(self.residue),
            "pass": self.passed,
        }


def report_to_json(checks):
    return [c.to_json() for c in checks]


def verify_canonical_relations(alg: HeisenbergAlgebra, max_k: int):
    """Check the decoupled relations symbolically through the defining presentation.

    Primed generators are expanded by the change of variables and all
    commutators are computed in the unprimed presentation, so a pass is an
    honest derivation, not a restatement of the decoupled table.
    """
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    table = relation_table(alg)
    n = alg.cartan.rank
    primed = {(j, l): primed_generator(alg, j, l)
              for j in range(1, n + 1) for l in range(1, max_k + 1)}
    checks = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, max_k + 1):
                for l in range(1, max_k + 1):
                    hik = AlgebraElement.from_gen(h_gen(i, k))
                    lhs = commutator(hik, primed[(j, l)], table)
                    if i == j and k == l:
                        rhs = AlgebraElement({((), g): v
                                              for g, v in gamma_bracket(k, alg.level).items()})
                    else:
                        rhs = AlgebraElement.zero()
                    checks.append(RelationCheck(
                        f"pairing[i={i},j={j},k={k},l={l}]", lhs, rhs, lhs - rhs))
                    pos = commutator(hik, AlgebraElement.from_gen(h_gen(j, l)), table)
                    checks.append(RelationCheck(
                        f"pos-commute[i={i},j={j},k={k},l={l}]",
                        pos, AlgebraElement.zero(), pos))
                    neg = commutator(primed[(i, k)], primed[(j, l)], table)
                    checks.append(RelationCheck(
                        f"neg-commute[i={i},j={j},k={k},l={l}]",
                        neg, AlgebraElement.zero(), neg))
    return checks


@lru_cache(maxsize=None)
def _central_bracket_cached(k: int, level: int | None):
    factor = qint(2 * k) / k
    return {g: factor * v for g, v in _gamma_bracket_cached(k, level).items()}


def central_bracket(k: int, level: int | None):
    """The central value of [a_k, a_{-k}] in the single-copy algebra."""
    return dict(_central_bracket_cached(k, level))


def _single_key(g: GenId):
    return (0 if g.degree < 0 else 1, 0, g.degree)


def _single_table_unchecked(level: int | None) -> RelationTable:
    def comm(a: GenId, b: GenId):
        if a.flavor != FLAVOR_A or b.flavor != FLAVOR_A:
            raise ValueError(f"unexpected generators {a!r}, {b!r} in single-copy presentation")
        if a.degree + b.degree != 0:
            return {}
        return central_bracket(a.degree, level)

    return RelationTable("single", _single_key, comm)


def single_heisenberg_table(level: int | None = None) -> RelationTable:
    """Relations of the single-copy oscillator family a_k, optionally at gamma = q^level."""
    if level == 0:
        raise ZeroLevel("level must be nonzero when specialized")
    return _single_table_unchecked(level)
