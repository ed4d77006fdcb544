"""Linear combinations of generator words with oscillator-type normal ordering.

The rewriting engine handles any presentation in which the commutator of two
generators is central: a Scalar coefficient times an integer power of the
central element gamma^(1/2).  Each out-of-order adjacent pair (a, b) rewrites
to (b, a) plus the central commutator times the shorter word; every swap
either lowers the inversion count or shortens the word, so reduction
terminates, and centrality of all brackets makes the normal form independent
of the reduction strategy.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .qscalar import ONE, Scalar, parse_scalar, s_power

FLAVOR_H = "h"     # loop generator, nonzero degree
FLAVOR_HP = "h'"   # primed loop generator (change of variables on the negative side)
FLAVOR_A = "a"     # single-copy oscillator generator, nonzero degree
FLAVOR_X = "X"     # Weyl multiplication operator, degree >= 1
FLAVOR_D = "D"     # Weyl derivation operator, degree >= 1

_HEISENBERG = (FLAVOR_H, FLAVOR_HP, FLAVOR_A)
_WEYL = (FLAVOR_X, FLAVOR_D)


@dataclass(frozen=True)
class GenId:
    """A generator: flavor tag, node index, and integer degree."""

    flavor: str
    node: int
    degree: int

    def __post_init__(self):
        if self.flavor in _HEISENBERG:
            if self.degree == 0:
                raise ValueError(f"degree must be nonzero for {self.flavor!r}")
            if self.flavor == FLAVOR_A:
                if self.node != 0:
                    raise ValueError("single-copy generators use node 0")
            elif self.node < 1:
                raise ValueError("node index must be >= 1")
        elif self.flavor in _WEYL:
            if self.degree < 1:
                raise ValueError(f"degree must be >= 1 for {self.flavor!r}")
            if self.node < 1:
                raise ValueError("node index must be >= 1")
        else:
            raise ValueError(f"unknown flavor {self.flavor!r}")

    @property
    def grading_degree(self):
        """Degree in the Z-grading: X lowers, D raises, the rest carry their own degree."""
        if self.flavor == FLAVOR_X:
            return -self.degree
        return self.degree

    def render(self):
        if self.flavor == FLAVOR_A:
            return f"a[{self.degree}]"
        return f"{self.flavor}[{self.node},{self.degree}]"


def h_gen(node, degree):
    return GenId(FLAVOR_H, node, degree)


def hp_gen(node, degree):
    return GenId(FLAVOR_HP, node, degree)


def a_gen(degree):
    return GenId(FLAVOR_A, 0, degree)


def x_gen(node, degree):
    return GenId(FLAVOR_X, node, degree)


def d_gen(node, degree):
    return GenId(FLAVOR_D, node, degree)


@dataclass(frozen=True)
class RelationTable:
    """A presentation with central commutators and a total order on generators.

    central_commutator(a, b) returns {gamma_half_exponent: Scalar} for
    [a, b] = ab - ba; it must be antisymmetric.  sort_key defines the normal
    order: a word is normal iff its keys are nondecreasing.
    """

    name: str
    sort_key: Callable
    central_commutator: Callable


def total_degree(word):
    return sum(g.grading_degree for g in word)


class AlgebraElement:
    """A finite linear combination of (word, gamma-half-power) with Scalar coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        out = {}
        for key, coeff in (terms or {}).items():
            if not isinstance(coeff, Scalar):
                coeff = Scalar._coerce(coeff)
            if coeff is None:
                raise TypeError("coefficients must be Scalars")
            if not coeff.is_zero:
                word, g = key
                out[(tuple(word), g)] = coeff
        self._terms = out

    @staticmethod
    def zero():
        return AlgebraElement()

    @staticmethod
    def one():
        return AlgebraElement({((), 0): ONE})

    @staticmethod
    def from_scalar(c, gamma_half_exp=0):
        return AlgebraElement({((), gamma_half_exp): c})

    @staticmethod
    def from_word(word, coeff=ONE, gamma_half_exp=0):
        return AlgebraElement({(tuple(word), gamma_half_exp): coeff})

    @staticmethod
    def from_gen(gen):
        return AlgebraElement.from_word((gen,))

    def items(self):
        return self._terms.items()

    def coefficient(self, word, gamma_half_exp=0):
        from .qscalar import ZERO

        return self._terms.get((tuple(word), gamma_half_exp), ZERO)

    @property
    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            v = out.get(key)
            v = coeff if v is None else v + coeff
            if v.is_zero:
                out.pop(key, None)
            else:
                out[key] = v
        res = AlgebraElement()
        res._terms = out
        return res

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        res = AlgebraElement()
        res._terms = {k: -c for k, c in self._terms.items()}
        return res

    def scale(self, c):
        c = Scalar._coerce(c)
        if c.is_zero:
            return AlgebraElement.zero()
        res = AlgebraElement()
        res._terms = {k: v * c for k, v in self._terms.items()}
        return res

    def gamma_shift(self, half_exp):
        res = AlgebraElement()
        res._terms = {(w, g + half_exp): c for (w, g), c in self._terms.items()}
        return res

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return f"AlgebraElement({self})"


def _term_sort_key(item):
    (word, g), _ = item
    return (len(word), tuple((t.flavor, t.node, t.degree) for t in word), g)


def _gamma_str(g):
    if g % 2 == 0:
        return f"gamma^{{{g // 2}}}"
    return f"gamma^{{{g}/2}}"


def render_element(x: AlgebraElement) -> str:
    """Canonical plain-text rendering; parse_element inverts it."""
    if x.is_zero:
        return "0"
    parts = []
    for (word, g), coeff in sorted(x.items(), key=_term_sort_key):
        bits = [f"({coeff})"]
        if g != 0:
            bits.append(_gamma_str(g))
        if word:
            bits.append(" ".join(t.render() for t in word))
        parts.append(" * ".join(bits))
    return " + ".join(parts)


_GEN_RE = re.compile(r"(h'|h|a|X|D)\[(-?\d+)(?:,(-?\d+))?\]")
_GAMMA_RE = re.compile(r"gamma\^\{(-?\d+)(?:/2)?\}")


def _split_top_level(text, sep=" + "):
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        c = text[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


def parse_element(text: str) -> AlgebraElement:
    """Inverse of render_element on canonical output."""
    text = text.strip()
    if text == "0":
        return AlgebraElement.zero()
    terms = {}
    for part in _split_top_level(text):
        part = part.strip()
        assert part.startswith("("), f"malformed term {part!r}"
        depth = 0
        for i, c in enumerate(part):
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
                if depth == 0:
                    break
        coeff = parse_scalar(part[1:i])
        rest = part[i + 1:]
        if rest.startswith(" * "):
            rest = rest[3:]
        g = 0
        word = []
        for piece in rest.split(" * "):
            piece = piece.strip()
            if not piece:
                continue
            m = _GAMMA_RE.fullmatch(piece)
            if m:
                raw = int(m.group(1))
                g = raw if piece.endswith("/2}") else 2 * raw
                continue
            for gm in piece.split():
                m = _GEN_RE.fullmatch(gm)
                assert m, f"malformed generator token {gm!r}"
                flavor, x1, x2 = m.group(1), int(m.group(2)), m.group(3)
                if flavor == FLAVOR_A:
                    word.append(a_gen(x1))
                else:
                    word.append(GenId(flavor, x1, int(x2)))
        key = (tuple(word), g)
        terms[key] = terms.get(key, Scalar._coerce(0)) + coeff
    return AlgebraElement(terms)


def _find_descent(word, key, strategy):
    rng = range(len(word) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    elif strategy != "leftmost":
        raise ValueError(f"unknown strategy {strategy!r}")
    for i in rng:
        if key(word[i]) > key(word[i + 1]):
            return i
    return None


def _bump(acc, key, coeff):
    v = acc.get(key)
    v = coeff if v is None else v + coeff
    if v.is_zero:
        acc.pop(key, None)
    else:
        acc[key] = v


def _reduce(pending, table, strategy):
    key = table.sort_key
    done = {}
    while pending:
        (word, g), coeff = pending.popitem()
        if coeff.is_zero:
            continue
        i = _find_descent(word, key, strategy)
        if i is None:
            _bump(done, (word, g), coeff)
            continue
        a, b = word[i], word[i + 1]
        swapped = word[:i] + (b, a) + word[i + 2:]
        _bump(pending, (swapped, g), coeff)
        shorter = word[:i] + word[i + 2:]
        for dg, c in table.central_commutator(a, b).items():
            if not c.is_zero:
                _bump(pending, (shorter, g + dg), coeff * c)
    out = AlgebraElement()
    out._terms = {k: v for k, v in done.items() if not v.is_zero}
    return out


def normal_order(word, table: RelationTable, strategy="leftmost") -> AlgebraElement:
    """The unique normal form of a generator word under the given presentation."""
    return _reduce({(tuple(word), 0): ONE}, table, strategy)


def reduce_element(x: AlgebraElement, table: RelationTable, strategy="leftmost") -> AlgebraElement:
    return _reduce(dict(x.items()), table, strategy)


def multiply(x: AlgebraElement, y: AlgebraElement, table: RelationTable,
             strategy="leftmost") -> AlgebraElement:
    """Bilinear extension of word concatenation followed by normal ordering."""
    pending = {}
    for (w1, g1), c1 in x.items():
        for (w2, g2), c2 in y.items():
            _bump(pending, (w1 + w2, g1 + g2), c1 * c2)
    return _reduce(pending, table, strategy)


def commutator(x: AlgebraElement, y: AlgebraElement, table: RelationTable) -> AlgebraElement:
    """xy - yx in normal form."""
    return multiply(x, y, table) - multiply(y, x, table)


def specialize_gamma(x: AlgebraElement, level: int) -> AlgebraElement:
    """Substitute gamma = q^level, folding gamma powers into the coefficients."""
    terms = {}
    for (word, g), coeff in x.items():
        _bump(terms, (word, 0), coeff * s_power(g * level))
    res = AlgebraElement()
    res._terms = terms
    return res
