"""Imaginary Verma-type modules over the single-copy oscillator algebra.

A sign signature phi picks, for every positive index, which of a_{+i}, a_{-i}
annihilates the highest vector; the module is spanned by monomials in the
opposite (lowering) generators.  Everything here is computed on an explicit
truncation (bounded index, bounded exponent) with honest truncation errors,
and the infinite/finite verdicts come from the analytic criterion on the
signature, never from growth curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .heisenberg import _single_table_unchecked, central_bracket
from .linalg import det
from .qscalar import ONE, ZERO, Scalar
from .termalg import (
    AlgebraElement,
    GenId,
    RelationTable,
    a_gen,
    reduce_element,
)

__all__ = [
    "PhiSignature", "Truncation", "VermaModule", "build_module",
    "Verdict", "GradedDimReport", "IrreducibilityReport",
    "TruncationExceeded", "EmptyComponent", "partition_count",
]


class TruncationExceeded(ValueError):
    pass


class EmptyComponent(ValueError):
    pass


_SIGN_CHARS = {"+": 1, "-": -1}


@dataclass(frozen=True)
class PhiSignature:
    """An eventually periodic sign function on the positive integers."""

    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        for v in self.prefix + self.period:
            if v not in (1, -1):
                raise ValueError("signs must be +1 or -1")

    @classmethod
    def parse(cls, text: str) -> "PhiSignature":
        """Parse "<prefix>:<period>" with +/- characters; no colon means constant."""
        if ":" in text:
            pre, per = text.split(":", 1)
        else:
            pre, per = "", text
        try:
            prefix = tuple(_SIGN_CHARS[c] for c in pre)
            period = tuple(_SIGN_CHARS[c] for c in per)
        except KeyError as exc:
            raise ValueError(f"bad sign character in {text!r}") from exc
        return cls(prefix, period)

    def render(self) -> str:
        pre = "".join("+" if v > 0 else "-" for v in self.prefix)
        per = "".join("+" if v > 0 else "-" for v in self.period)
        return f"{pre}:{per}" if pre else per

    def __call__(self, i: int) -> int:
        if i < 1:
            raise ValueError("the signature is defined on positive indices")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.period[(i - len(self.prefix) - 1) % len(self.period)]

    def is_constant(self) -> bool:
        return len(set(self.prefix) | set(self.period)) == 1

    def constant_sign(self):
        assert self.is_constant()
        return self.period[0]

    def constant_on_window(self, n: int) -> bool:
        return len({self(i) for i in range(1, n + 1)}) <= 1


@dataclass(frozen=True)
class Truncation:
    max_index: int
    max_exponent: int

    def __post_init__(self):
        if self.max_index < 1 or self.max_exponent < 1:
            raise ValueError("truncation bounds must be >= 1")


@dataclass(frozen=True)
class Verdict:
    kind: str  # FINITE | INFINITE | UNKNOWN_AT_TRUNCATION
    value: int | None = None

    def render(self) -> str:
        if self.kind == "FINITE":
            return f"FINITE({self.value})"
        return self.kind


@dataclass(frozen=True)
class GradedDimReport:
    degree: int
    truncated_dim: int
    verdict: Verdict
    max_index: int
    max_exponent: int

    def to_json(self):
        return {"n": self.degree, "dim": self.truncated_dim,
                "verdict": self.verdict.render()}


@dataclass(frozen=True)
class IrreducibilityReport:
    verdict: str
    witness_degree: int | None
    pairing_scalars: tuple
    gram_dets: tuple

    def to_json(self):
        return {
            "verdict": self.verdict,
            "witness_degree": self.witness_degree,
            "pairing_scalars": [{"k": k, "value": str(c), "nonzero": not c.is_zero}
                                for k, c in self.pairing_scalars],
            "gram": [{"n": n, "det": str(d), "nonzero": not d.is_zero}
                     for n, d in self.gram_dets],
        }


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of partitions of n (unbounded parts and multiplicities)."""
    if n < 0:
        return 0
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for m in range(part, n + 1):
            table[m] += table[m - part]
    return table[n]


class VermaModule:
    """A truncated imaginary Verma-type module for one oscillator family."""

    def __init__(self, phi: PhiSignature, level: int, truncation: Truncation):
        self.phi = phi
        self.level = level
        self.truncation = truncation
        self._table = self._build_table()
        self._counts = None
        self._pair_cache = {}

    # -- presentation ------------------------------------------------

    def lowering_degree(self, i: int) -> int:
        """Signed degree of the lowering generator at index i."""
        return -i if self.phi(i) > 0 else i

    def _is_lowering(self, gen: GenId) -> bool:
        return gen.degree == self.lowering_degree(abs(gen.degree))

    def _build_table(self) -> RelationTable:
        base = _single_table_unchecked(self.level)

        def key(g):
            return (0 if self._is_lowering(g) else 1, g.degree)

        return RelationTable("verma", key, base.central_commutator)

    @property
    def table(self) -> RelationTable:
        return self._table

    # -- basis -------------------------------------------------------

    def monomial_word(self, exps) -> tuple:
        gens = []
        for i, e in enumerate(exps, start=1):
            if e:
                gens.extend([a_gen(self.lowering_degree(i))] * e)
        gens.sort(key=self._table.sort_key)
        return tuple(gens)

    def raising_word(self, exps) -> tuple:
        gens = []
        for i, e in enumerate(exps, start=1):
            if e:
                gens.extend([a_gen(-self.lowering_degree(i))] * e)
        gens.sort(key=self._table.sort_key)
        return tuple(gens)

    def basis_component(self, n: int):
        """Exponent vectors of total degree n, in lexicographic order."""
        N, E = self.truncation.max_index, self.truncation.max_exponent
        degs = [self.lowering_degree(i) for i in range(1, N + 1)]
        lo = [0] * (N + 1)
        hi = [0] * (N + 1)
        for i in range(N - 1, -1, -1):
            lo[i] = lo[i + 1] + min(0, E * degs[i])
            hi[i] = hi[i + 1] + max(0, E * degs[i])
        out = []
        vec = [0] * N

        def rec(idx, residual):
            if residual < lo[idx] or residual > hi[idx]:
                return
            if idx == N:
                if residual == 0:
                    out.append(tuple(vec))
                return
            for e in range(E + 1):
                vec[idx] = e
                rec(idx + 1, residual - e * degs[idx])
            vec[idx] = 0

        rec(0, n)
        return out

    # -- generator action ---------------------------------------------

    def _project(self, element: AlgebraElement):
        """Apply a normal-ordered element to the highest vector, in the basis."""
        N, E = self.truncation.max_index, self.truncation.max_exponent
        out = {}
        for (word, g), coeff in element.items():
            assert g == 0
            if any(not self._is_lowering(t) for t in word):
                continue  # a raising factor reaches the highest vector
            exps = [0] * N
            for t in word:
                i = abs(t.degree)
                if i > N:
                    raise TruncationExceeded(f"index {i} exceeds bound {N}")
                exps[i - 1] += 1
            if any(e > E for e in exps):
                raise TruncationExceeded(f"exponent bound {E} exceeded")
            key = tuple(exps)
            prev = out.get(key)
            val = coeff if prev is None else prev + coeff
            if val.is_zero:
                out.pop(key, None)
            else:
                out[key] = val
        return out

    def act(self, j: int, exps):
        """Left action of a_j on a basis monomial, as {exponent vector: Scalar}."""
        if j == 0:
            raise ValueError("generator degree must be nonzero")
        word = (a_gen(j),) + self.monomial_word(exps)
        return self._project(reduce_element(AlgebraElement.from_word(word), self._table))

    # -- graded dimensions ---------------------------------------------

    def _degree_counts(self):
        if self._counts is None:
            N, E = self.truncation.max_index, self.truncation.max_exponent
            counts = {0: 1}
            for i in range(1, N + 1):
                deg = self.lowering_degree(i)
                new = {}
                for m, c in counts.items():
                    for e in range(E + 1):
                        key = m + e * deg
                        new[key] = new.get(key, 0) + c
                counts = new
            self._counts = counts
        return self._counts

    def truncated_dim(self, n: int) -> int:
        return self._degree_counts().get(n, 0)

    def graded_dim(self, n: int) -> GradedDimReport:
        N = self.truncation.max_index
        count = self.truncated_dim(n)
        if not self.phi.constant_on_window(N):
            verdict = Verdict("INFINITE")
        elif self.phi.is_constant():
            side = -self.phi.constant_sign()  # sign of occupied degrees
            if n == 0:
                verdict = Verdict("FINITE", 1)
            elif n * side < 0:
                verdict = Verdict("FINITE", 0)
            else:
                verdict = Verdict("FINITE", partition_count(abs(n)))
        else:
            verdict = Verdict("UNKNOWN_AT_TRUNCATION")
        return GradedDimReport(n, count, verdict,
                               self.truncation.max_index, self.truncation.max_exponent)

    # -- contravariant pairing ------------------------------------------

    def _vacuum_coefficient(self, word) -> Scalar:
        reduced = reduce_element(AlgebraElement.from_word(word), self._table)
        total = ZERO
        for (w, g), coeff in reduced.items():
            assert g == 0
            if not w:
                total = total + coeff
            # nonempty surviving words hit other basis vectors; raising-led
            # words die on the highest vector
        return total

    def _index_pair(self, i: int, e: int, f: int) -> Scalar:
        key = (i, e, f)
        if key not in self._pair_cache:
            word = (a_gen(-self.lowering_degree(i)),) * e \
                + (a_gen(self.lowering_degree(i)),) * f
            self._pair_cache[key] = self._vacuum_coefficient(word)
        return self._pair_cache[key]

    def vacuum_pairing(self, u_exps, w_exps) -> Scalar:
        """<u v, w v>: the coefficient of the highest vector in sigma(u) w v.

        Generators of distinct indices commute and only pair within an index,
        so the coefficient factors; each single-index factor is computed by
        the rewriting engine and cached.
        """
        out = ONE
        for i, (e, f) in enumerate(zip(u_exps, w_exps), start=1):
            if e == 0 and f == 0:
                continue
            factor = self._index_pair(i, e, f)
            if factor.is_zero:
                return ZERO
            out = out * factor
        return out

    def vacuum_pairing_unfactored(self, u_exps, w_exps) -> Scalar:
        """Single full-word reduction; slower reference route for cross-checks."""
        word = self.raising_word(u_exps) + self.monomial_word(w_exps)
        return self._vacuum_coefficient(word)

    def gram_matrix(self, n: int):
        basis = self.basis_component(n)
        if not basis:
            raise EmptyComponent(f"no basis monomials in degree {n}")
        return [[self.vacuum_pairing(u, w) for w in basis] for u in basis]

    def sigma(self, element: AlgebraElement) -> AlgebraElement:
        """The anti-involution a_i -> a_{-i} (reverses words, fixes gamma powers)."""
        pending = {}
        for (word, g), coeff in element.items():
            flipped = tuple(a_gen(-t.degree) for t in reversed(word))
            key = (flipped, g)
            prev = pending.get(key)
            pending[key] = coeff if prev is None else prev + coeff
        return reduce_element(AlgebraElement(pending), self._table)

    # -- irreducibility at truncation -------------------------------------

    def _witness_scan_order(self):
        N = self.truncation.max_index
        for m in range(1, N + 1):
            yield -m
            yield m
        yield 0

    def irreducible_at_truncation(self) -> IrreducibilityReport:
        N = self.truncation.max_index
        pairing = tuple((k, central_bracket(k, self.level)[0]) for k in range(1, N + 1))
        dets = {}
        witness = None
        for n in self._witness_scan_order():
            if not self.basis_component(n):
                continue
            d = det(self.gram_matrix(n))
            dets[n] = d
            if d.is_zero and witness is None:
                witness = n
        ok = witness is None and all(not c.is_zero for _, c in pairing)
        verdict = "IRREDUCIBLE-CONSISTENT" if ok else "REDUCIBLE"
        ordered = tuple(sorted(dets.items()))
        return IrreducibilityReport(verdict, witness, pairing, ordered)

    # -- reporting ---------------------------------------------------------

    def report(self, degrees=None) -> dict:
        if degrees is None:
            N = self.truncation.max_index
            degrees = range(-N, N + 1)
        irr = self.irreducible_at_truncation()
        return {
            "phi": {"prefix": "".join("+" if v > 0 else "-" for v in self.phi.prefix),
                    "period": "".join("+" if v > 0 else "-" for v in self.phi.period)},
            "level": self.level,
            "truncation": {"max_index": self.truncation.max_index,
                           "max_exponent": self.truncation.max_exponent},
            "degrees": [self.graded_dim(n).to_json() for n in degrees],
            "gram": [{"n": n, "det": str(d), "nonzero": not d.is_zero}
                     for n, d in irr.gram_dets],
            "verdict": irr.verdict,
            "witness_degree": irr.witness_degree,
        }


def build_module(phi: PhiSignature, level: int, truncation: Truncation) -> VermaModule:
    """Construct the truncated module; any integer level is allowed here."""
    return VermaModule(phi, level, truncation)
