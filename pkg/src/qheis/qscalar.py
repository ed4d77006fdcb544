"""Exact arithmetic in the field of rational functions of s = q^(1/2).

A Scalar is a quotient of Laurent polynomials in s with rational
coefficients, kept in canonical form: numerator and denominator share no
polynomial factor, and the denominator is an ordinary polynomial with
nonzero constant term and leading coefficient 1.  Equality of canonical
forms is structural, so ``==`` decides equality in the field.

Quantum integers, factorials and binomials are built on top, together with
the specialization q -> 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtOne(ArithmeticError):
    pass


class UndefinedFactorial(ValueError):
    pass


# Laurent polynomials in s are plain {exponent: Fraction} dicts; zero
# coefficients are never stored.

def _trim(p):
    return {e: c for e, c in p.items() if c}


def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, Fraction(0)) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


def _pmul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e, Fraction(0)) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _pshift(p, k):
    if k == 0:
        return dict(p)
    return {e + k: c for e, c in p.items()}


def _pdivmod(num, den):
    # ordinary polynomials (min exponent >= 0), den nonzero
    num = dict(num)
    quo = {}
    dtop = max(den)
    lead = den[dtop]
    while num and max(num) >= dtop:
        e = max(num)
        c = num[e] / lead
        quo[e - dtop] = quo.get(e - dtop, Fraction(0)) + c
        for de, dc in den.items():
            ne = e - dtop + de
            v = num.get(ne, Fraction(0)) - c * dc
            if v:
                num[ne] = v
            else:
                num.pop(ne, None)
    return _trim(quo), _trim(num)


def _int_primitive(p):
    # integer multiple of p with coprime coefficients (content stripped)
    from math import gcd as _gcd

    scale = 1
    for c in p.values():
        scale = scale * c.denominator // _gcd(scale, c.denominator)
    ints = {e: int(c * scale) for e, c in p.items()}
    content = 0
    for c in ints.values():
        content = _gcd(content, c)
    return {e: c // content for e, c in ints.items()}


def _int_pseudo_rem(a, b):
    # primitive pseudo-remainder sequence step over the integers
    from math import gcd as _gcd

    dtop = max(b)
    lead = b[dtop]
    r = dict(a)
    while r and max(r) >= dtop:
        e = max(r)
        c = r[e]
        new = {ee: cc * lead for ee, cc in r.items()}
        for de, dc in b.items():
            ne = e - dtop + de
            v = new.get(ne, 0) - c * dc
            if v:
                new[ne] = v
            else:
                new.pop(ne, None)
        content = 0
        for cc in new.values():
            content = _gcd(content, cc)
        r = {ee: cc // content for ee, cc in new.items()} if content else {}
    return r


def _pgcd(a, b):
    # monic gcd of ordinary polynomials; {} only if both are zero
    a, b = _trim(a), _trim(b)
    if not a or not b:
        p = a or b
        if not p:
            return {}
        lead = p[max(p)]
        return {e: c / lead for e, c in p.items()}
    A = _int_primitive(a)
    B = _int_primitive(b)
    if max(A) < max(B):
        A, B = B, A
    while B:
        A, B = B, _int_pseudo_rem(A, B)
    lead = Fraction(A[max(A)])
    return {e: Fraction(c) / lead for e, c in A.items()}


def _pdiv_exact(a, b):
    q, r = _pdivmod(a, b)
    assert not r, "inexact polynomial division"
    return q


def _canonical(num, den, reduced=False):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return {}, {0: Fraction(1)}
    dmin = min(den)
    if dmin:
        num = _pshift(num, -dmin)
        den = _pshift(den, -dmin)
    val = min(num)
    flat = _pshift(num, -val) if val else dict(num)
    if not reduced:
        g = _pgcd(flat, den)
        if max(g) > 0:
            flat = _pdiv_exact(flat, g)
            den = _pdiv_exact(den, g)
    lead = den[max(den)]
    if lead != 1:
        flat = {e: c / lead for e, c in flat.items()}
        den = {e: c / lead for e, c in den.items()}
    return (_pshift(flat, val) if val else flat), den


def _poly_str(p):
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p.items(), reverse=True):
        mag = -c if c < 0 else c
        if e == 0:
            body = f"{mag}"
        else:
            sym = "s" if e == 1 else f"s^{e}"
            body = sym if mag == 1 else f"{mag}*{sym}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


class Scalar:
    """An exact rational function of s = q^(1/2), always canonical."""

    __slots__ = ("_num", "_den", "_key")

    def __init__(self, num, den=None):
        if den is None:
            den = {0: Fraction(1)}
        num = _trim({e: Fraction(c) for e, c in num.items()})
        den = _trim({e: Fraction(c) for e, c in den.items()})
        self._num, self._den = _canonical(num, den)
        self._key = (
            tuple(sorted(self._num.items())),
            tuple(sorted(self._den.items())),
        )

    @classmethod
    def _reduced(cls, num, den):
        # fast path for numerator/denominator pairs already known coprime
        out = cls.__new__(cls)
        out._num, out._den = _canonical(num, den, reduced=True)
        out._key = (
            tuple(sorted(out._num.items())),
            tuple(sorted(out._den.items())),
        )
        return out

    @property
    def num_terms(self):
        return dict(self._num)

    @property
    def den_terms(self):
        return dict(self._den)

    @property
    def is_zero(self):
        return not self._num

    @property
    def is_laurent(self):
        return self._den == {0: Fraction(1)}

    def bar(self):
        """The image under s -> s^(-1)."""
        return Scalar({-e: c for e, c in self._num.items()},
                      {-e: c for e, c in self._den.items()})

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar({0: Fraction(x)})
        return None

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is None:
            return NotImplemented
        d1, d2 = self._den, other._den
        if max(d1) == 0 and max(d2) == 0:
            return Scalar._reduced(_padd(self._num, other._num), {0: Fraction(1)})
        g = _pgcd(d1, d2)
        if max(g) == 0:
            num = _padd(_pmul(self._num, d2), _pmul(other._num, d1))
            return Scalar._reduced(num, _pmul(d1, d2))
        d1g = _pdiv_exact(d1, g)
        d2g = _pdiv_exact(d2, g)
        num = _padd(_pmul(self._num, d2g), _pmul(other._num, d1g))
        den = _pmul(d1, d2g)
        if num:
            val = min(num)
            flat = _pshift(num, -val) if val else num
            h = _pgcd(flat, g)
            if max(h) > 0:
                num = _pshift(_pdiv_exact(flat, h), val)
                den = _pdiv_exact(den, h)
        return Scalar._reduced(num, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        # cross-cancel so the product of the cleared parts is already coprime
        v1 = min(self._num)
        f1 = _pshift(self._num, -v1) if v1 else dict(self._num)
        v2 = min(other._num)
        f2 = _pshift(other._num, -v2) if v2 else dict(other._num)
        d1, d2 = self._den, other._den
        if max(d2) > 0:
            g = _pgcd(f1, d2)
            if max(g) > 0:
                f1 = _pdiv_exact(f1, g)
                d2 = _pdiv_exact(d2, g)
        if max(d1) > 0:
            g = _pgcd(f2, d1)
            if max(g) > 0:
                f2 = _pdiv_exact(f2, g)
                d1 = _pdiv_exact(d1, g)
        return Scalar._reduced(_pshift(_pmul(f1, f2), v1 + v2), _pmul(d1, d2))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by zero scalar")
        if self.is_zero:
            return ZERO
        v1 = min(self._num)
        f1 = _pshift(self._num, -v1) if v1 else dict(self._num)
        v2 = min(other._num)
        f2 = _pshift(other._num, -v2) if v2 else dict(other._num)
        d1, d2 = self._den, other._den
        g = _pgcd(f1, f2)
        if max(g) > 0:
            f1 = _pdiv_exact(f1, g)
            f2 = _pdiv_exact(f2, g)
        if max(d1) > 0 and max(d2) > 0:
            g = _pgcd(d1, d2)
            if max(g) > 0:
                d1 = _pdiv_exact(d1, g)
                d2 = _pdiv_exact(d2, g)
        return Scalar._reduced(_pshift(_pmul(f1, d2), v1 - v2), _pmul(d1, f2))

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        out = Scalar.__new__(Scalar)
        out._num = _pneg(self._num)
        out._den = self._den
        out._key = (tuple(sorted(out._num.items())), self._key[1])
        return out

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = Scalar._coerce(other)
        if other is None:
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        return _poly_str(self._num) + " / " + _poly_str(self._den)

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar({})
ONE = Scalar({0: 1})


def s_power(e: int) -> Scalar:
    """s^e, the basic Laurent monomial."""
    return Scalar({e: 1})


def q_power(e: int) -> Scalar:
    """q^e = s^(2e)."""
    return Scalar({2 * e: 1})


@lru_cache(maxsize=None)
def qint(n: int, d: int = 1) -> Scalar:
    """The quantum integer [n] in base q^d: (q^(dn) - q^(-dn)) / (q^d - q^(-d))."""
    if d < 1:
        raise ValueError("base exponent d must be a positive integer")
    return (s_power(2 * d * n) - s_power(-2 * d * n)) / (s_power(2 * d) - s_power(-2 * d))


@lru_cache(maxsize=None)
def qfactorial(n: int, d: int = 1) -> Scalar:
    """[n]! in base q^d."""
    if n < 0:
        raise UndefinedFactorial(f"factorial of negative argument {n}")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k, d)
    return out


def qbinom(r: int, s_idx: int, d: int = 1) -> Scalar:
    """The bracket [r]! / ([s]! [r-s+1]!) in base q^d, exactly as printed.

    Note the denominator uses [r-s+1]!, not the usual [r-s]!.
    """
    for a in (r, s_idx, r - s_idx + 1):
        if a < 0:
            raise UndefinedFactorial(f"factorial of negative argument {a}")
    return qfactorial(r, d) / (qfactorial(s_idx, d) * qfactorial(r - s_idx + 1, d))


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Field arithmetic dispatch: op is one of add|sub|mul|div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def specialize_q1(a: Scalar) -> Fraction:
    """Evaluate at s = 1 after cancellation; raises PoleAtOne on a true pole."""
    dv = sum(a._den.values(), Fraction(0))
    if dv == 0:
        raise PoleAtOne(f"denominator of {a} vanishes at q = 1")
    return sum(a._num.values(), Fraction(0)) / dv


def _parse_term(tok):
    sign = 1
    if tok.startswith("-"):
        sign = -1
        tok = tok[1:]
    if "*" in tok:
        cs, ss = tok.split("*")
    elif tok.startswith("s"):
        cs, ss = "1", tok
    else:
        cs, ss = tok, None
    c = Fraction(cs) * sign
    if ss is None:
        e = 0
    elif ss == "s":
        e = 1
    else:
        e = int(ss[2:])
    return e, c


def _parse_poly(text):
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    for tok in text.replace(" - ", " + -").split(" + "):
        e, c = _parse_term(tok.strip())
        out[e] = out.get(e, Fraction(0)) + c
    return out


def parse_scalar(text: str) -> Scalar:
    """Inverse of str(): parses the canonical "num / den" rendering."""
    numpart, denpart = text.rsplit(" / ", 1)
    return Scalar(_parse_poly(numpart), _parse_poly(denpart))
