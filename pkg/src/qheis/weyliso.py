"""The countably-infinite-rank Weyl algebra and its identification with the
level-specialized Heisenberg algebra.

The map substitutes generator-by-generator (positive loop generators become
scaled derivations, primed negative ones become multiplication operators),
so it is exact in every degree; verification recomputes each decoupled
relation on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanData
from .heisenberg import (
    HeisenbergAlgebra,
    RelationCheck,
    StructureConvention,
    ZeroLevel,
    gamma_bracket,
    oscillator_table,
    primed_generator,
    relation_table,
)
from .qscalar import ONE, qint
from .termalg import (
    FLAVOR_D,
    FLAVOR_H,
    FLAVOR_HP,
    FLAVOR_X,
    AlgebraElement,
    GenId,
    RelationTable,
    commutator,
    d_gen,
    h_gen,
    hp_gen,
    reduce_element,
    x_gen,
)

__all__ = [
    "UnspecializedGamma", "ZeroLevel", "WeylAlgebra", "WeylIsomorphism",
    "weyl_relation_table", "to_weyl", "from_weyl", "verify_weyl_iso",
]


class UnspecializedGamma(ValueError):
    pass


def _weyl_key(g: GenId):
    return (0 if g.flavor == FLAVOR_X else 1, g.node, g.degree)


def weyl_relation_table() -> RelationTable:
    """[D_{ik}, X_{ik}] = 1; all other generator pairs commute."""

    def comm(a: GenId, b: GenId):
        fa, fb = a.flavor, b.flavor
        if fa not in (FLAVOR_X, FLAVOR_D) or fb not in (FLAVOR_X, FLAVOR_D):
            raise ValueError(f"unexpected generators {a!r}, {b!r} in Weyl presentation")
        if fa == fb or a.node != b.node or a.degree != b.degree:
            return {}
        if fa == FLAVOR_D:
            return {0: ONE}
        return {0: -ONE}

    return RelationTable("weyl", _weyl_key, comm)


@dataclass(frozen=True)
class WeylAlgebra:
    """The Weyl algebra on one canonical pair per (node, positive degree)."""

    nodes: int

    @property
    def table(self):
        return weyl_relation_table()


def to_weyl(x: AlgebraElement, level: int) -> AlgebraElement:
    """Substitute h_{ik} -> [k*level]_q D_{ik}, h'_{i,-k} -> X_{ik} and normal-order.

    The input must be written in the decoupled basis with gamma already
    specialized to q^level.
    """
    if level == 0:
        raise ZeroLevel("level must be nonzero")
    pending = {}
    for (word, g), coeff in x.items():
        if g != 0:
            raise UnspecializedGamma("gamma is still formal; specialize it first")
        new = []
        for gen in word:
            if gen.flavor == FLAVOR_H and gen.degree > 0:
                coeff = coeff * qint(gen.degree * level)
                new.append(d_gen(gen.node, gen.degree))
            elif gen.flavor == FLAVOR_HP and gen.degree < 0:
                new.append(x_gen(gen.node, -gen.degree))
            else:
                raise ValueError(f"generator {gen!r} is not in the decoupled basis")
        key = ((tuple(new)), 0)
        prev = pending.get(key)
        pending[key] = coeff if prev is None else prev + coeff
    return reduce_element(AlgebraElement(pending), weyl_relation_table())


def from_weyl(y: AlgebraElement, level: int) -> AlgebraElement:
    """Substitute D_{ik} -> h_{ik} / [k*level]_q, X_{ik} -> h'_{i,-k} and normal-order."""
    if level == 0:
        raise ZeroLevel("level must be nonzero")
    pending = {}
    for (word, g), coeff in y.items():
        new = []
        for gen in word:
            if gen.flavor == FLAVOR_D:
                coeff = coeff / qint(gen.degree * level)
                new.append(h_gen(gen.node, gen.degree))
            elif gen.flavor == FLAVOR_X:
                new.append(hp_gen(gen.node, -gen.degree))
            else:
                raise ValueError(f"generator {gen!r} is not a Weyl generator")
        key = ((tuple(new)), g)
        prev = pending.get(key)
        pending[key] = coeff if prev is None else prev + coeff
    return reduce_element(AlgebraElement(pending), oscillator_table(level))


@dataclass(frozen=True)
class WeylIsomorphism:
    """The level-specialized identification, packaged with its inverse."""

    level: int

    def __post_init__(self):
        if self.level == 0:
            raise ZeroLevel("level must be nonzero")

    def image(self, x):
        return to_weyl(x, self.level)

    def inverse_image(self, y):
        return from_weyl(y, self.level)


def verify_weyl_iso(cartan: CartanData, level: int, max_k: int,
                    convention: StructureConvention = StructureConvention.QJ_BRACKET):
    """Recompute every decoupled relation on the Heisenberg side (through the
    structure-matrix inverse, at gamma = q^level) and on the Weyl side, and
    compare them against the expected bracket value."""
    if level == 0:
        raise ZeroLevel("level must be nonzero")
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    alg = HeisenbergAlgebra(cartan, convention, level)
    loop = relation_table(alg)
    weyl = weyl_relation_table()
    n = cartan.rank
    primed = {(j, l): primed_generator(alg, j, l)
              for j in range(1, n + 1) for l in range(1, max_k + 1)}
    checks = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, max_k + 1):
                for l in range(1, max_k + 1):
                    hik = AlgebraElement.from_gen(h_gen(i, k))
                    dik = AlgebraElement.from_word((d_gen(i, k),), qint(k * level))
                    xjl = AlgebraElement.from_gen(x_gen(j, l))
                    heis_side = commutator(hik, primed[(j, l)], loop)
                    weyl_side = commutator(dik, xjl, weyl)
                    if i == j and k == l:
                        expected = AlgebraElement.from_scalar(gamma_bracket(k, level)[0])
                    else:
                        expected = AlgebraElement.zero()
                    residue = (heis_side - expected) + (weyl_side - expected)
                    checks.append(RelationCheck(
                        f"weyl-pairing[i={i},j={j},k={k},l={l}]",
                        heis_side, weyl_side, residue))
                    dd = commutator(dik, AlgebraElement.from_word((d_gen(j, l),),
                                                                  qint(l * level)), weyl)
                    checks.append(RelationCheck(
                        f"weyl-pos-commute[i={i},j={j},k={k},l={l}]",
                        dd, AlgebraElement.zero(), dd))
                    xx = commutator(AlgebraElement.from_gen(x_gen(i, k)), xjl, weyl)
                    checks.append(RelationCheck(
                        f"weyl-neg-commute[i={i},j={j},k={k},l={l}]",
                        xx, AlgebraElement.zero(), xx))
    return checks
