"""Exact arithmetic in the field Q(s) of rational functions in one symbol s.

The deformation parameter is q = s^2; keeping the square root s around lets
every scalar in the package (including the q^(1/2) prefactors of the symmetry
action) stay a rational function with integer coefficients.  A Coefficient is
stored as a reduced fraction num/den of dense integer polynomials in s; the
canonical form (coprime parts, primitive denominator with positive leading
coefficient, zero = 0/1) makes equality and zero-testing plain tuple
comparison, which is the backbone of every verification suite here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd, isqrt


class PoleError(ZeroDivisionError):
    """Raised when a coefficient is evaluated at a zero of its denominator."""


# ---------------------------------------------------------------------------
# dense integer polynomials: tuples of coefficients, ascending degree,
# no trailing zeros; () is the zero polynomial
# ---------------------------------------------------------------------------

def _trim(cs) -> tuple:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _pcontent(a) -> int:
    g = 0
    for c in a:
        g = _int_gcd(g, abs(c))
    return g


def _pvaluation(a) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    return 0


def _nonzero_terms(a) -> int:
    return sum(1 for c in a if c)


def _fmod(a, b):
    """Remainder of a by b over Q; both lists of Fractions, b nonzero."""
    a = list(a)
    db = len(b) - 1
    lb = b[db]
    while len(a) - 1 >= db:
        da = len(a) - 1
        if a[da] == 0:
            a.pop()
            continue
        f = a[da] / lb
        for k in range(db + 1):
            a[da - db + k] -= f * b[k]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _pgcd(a, b):
    """Primitive gcd in Z[s] with positive leading coefficient."""
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fb:
        fa, fb = fb, _fmod(fa, fb)
    if not fa:
        return ()
    lcm = 1
    for c in fa:
        lcm = lcm * c.denominator // _int_gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fa]
    cont = _pcontent(ints)
    ints = [c // cont for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _pdivexact(a, g):
    """Exact quotient a/g in Z[s]; g must divide a."""
    if not a:
        return ()
    fa = [Fraction(c) for c in a]
    dg = len(g) - 1
    lg = g[dg]
    out = [Fraction(0)] * (len(a) - dg)
    while len(fa) - 1 >= dg:
        da = len(fa) - 1
        f = fa[da] / lg
        out[da - dg] = f
        for k in range(dg + 1):
            fa[da - dg + k] -= f * g[k]
        fa.pop()
        while fa and fa[-1] == 0:
            fa.pop()
    if any(fa):
        raise ArithmeticError("inexact polynomial division")
    return _trim([int(c) for c in out])


def _peval(a, x: Fraction) -> Fraction:
    val = Fraction(0)
    for c in reversed(a):
        val = val * x + c
    return val


def _peval_even(a, qval: Fraction) -> Fraction:
    """Evaluate a polynomial in s with only even powers at s^2 = qval."""
    val = Fraction(0)
    power = Fraction(1)
    for k in range(0, len(a), 2):
        val += a[k] * power
        power *= qval
    return val


def _is_even_poly(a) -> bool:
    return all(c == 0 for c in a[1::2])


# ---------------------------------------------------------------------------
# the field Q(s)
# ---------------------------------------------------------------------------

class Coefficient:
    """Element of Q(s) in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _trim(num)
        den = _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (1,)
            return
        v = min(_pvaluation(num), _pvaluation(den))
        if v:
            num, den = num[v:], den[v:]
        if _nonzero_terms(num) > 1 and _nonzero_terms(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, den = _pdivexact(num, g), _pdivexact(den, g)
        c = _int_gcd(_pcontent(num), _pcontent(den))
        if c > 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        self.num, self.den = num, den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(k: int) -> "Coefficient":
        return Coefficient((k,))

    @staticmethod
    def from_fraction(f) -> "Coefficient":
        f = Fraction(f)
        return Coefficient((f.numerator,), (f.denominator,))

    @staticmethod
    def s_power(e: int) -> "Coefficient":
        """s^e for any integer e."""
        if e >= 0:
            return Coefficient((0,) * e + (1,))
        return Coefficient((1,), (0,) * (-e) + (1,))

    @staticmethod
    def q_power(e: int) -> "Coefficient":
        """q^e = s^(2e) for any integer e."""
        return Coefficient.s_power(2 * e)

    # -- field operations --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Coefficient):
            return other
        if isinstance(other, int):
            return Coefficient((other,))
        if isinstance(other, Fraction):
            return Coefficient.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Coefficient(_padd(self.num, o.num), self.den)
        return Coefficient(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        out = object.__new__(Coefficient)
        out.num, out.den = _pneg(self.num), self.den
        return out

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Coefficient(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero coefficient")
        return Coefficient(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (ONE / self) ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- predicates and evaluation -----------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def depends_only_on_q(self) -> bool:
        """True when the value is a rational function of q = s^2 alone."""
        return _is_even_poly(self.num) and _is_even_poly(self.den)

    def evaluate(self, point: "RationalPoint") -> Fraction:
        """Exact value at the given specialization point."""
        if self.depends_only_on_q():
            nv = _peval_even(self.num, point.q)
            dv = _peval_even(self.den, point.q)
        elif point.s is not None:
            nv = _peval(self.num, point.s)
            dv = _peval(self.den, point.s)
        else:
            raise ValueError(
                "coefficient involves odd powers of s and q^(1/2) is "
                "irrational at q = %s" % point.q
            )
        if dv == 0:
            raise PoleError("pole at q = %s" % point.q)
        return nv / dv

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        ns = _poly_str(self.num)
        if self.den == (1,):
            return _wrap(ns, _nonzero_terms(self.num) > 1)
        ds = _poly_str(self.den)
        return "%s/%s" % (
            _wrap(ns, _nonzero_terms(self.num) > 1),
            _wrap(ds, _den_needs_parens(self.den)),
        )

    def __repr__(self):
        return "Coefficient(%s)" % self


def _q_term_str(c: int, e: int) -> str:
    if e == 0:
        return str(c)
    if e % 2 == 0:
        p = e // 2
        qs = "q" if p == 1 else "q^%d" % p
    else:
        qs = "q^(%d/2)" % e
    if c == 1:
        return qs
    if c == -1:
        return "-" + qs
    return "%d%s" % (c, qs)


def _poly_str(p) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in enumerate(p):
        if not c:
            continue
        t = _q_term_str(c, e)
        if parts and not t.startswith("-"):
            parts.append("+" + t)
        else:
            parts.append(t)
    return "".join(parts)


def _wrap(text: str, needed: bool) -> str:
    return "(%s)" % text if needed else text


def _den_needs_parens(den) -> bool:
    if _nonzero_terms(den) > 1:
        return True
    # a lone c*s^e is a single grammar atom only when c == 1 or e == 0
    e = _pvaluation(den)
    return den[e] != 1 and e != 0


ZERO = Coefficient(())
ONE = Coefficient((1,))


def integer(k: int) -> Coefficient:
    return Coefficient.from_int(k)


def qpow(e: int) -> Coefficient:
    return Coefficient.q_power(e)


def spow(e: int) -> Coefficient:
    return Coefficient.s_power(e)


def _exact_sqrt(f: Fraction):
    rn, rd = isqrt(f.numerator), isqrt(f.denominator)
    if rn * rn == f.numerator and rd * rd == f.denominator:
        return Fraction(rn, rd)
    return None


class RationalPoint:
    """Specialization point for the deformation parameter.

    The point is given through q, an exact rational in (0, 1); the square
    root s is kept alongside whenever q is a perfect square of a rational,
    which is what evaluation of odd powers of s needs.
    """

    __slots__ = ("q", "s")

    def __init__(self, q):
        q = Fraction(q)
        if not (0 < q < 1):
            raise ValueError("q must lie strictly between 0 and 1, got %s" % q)
        self.q = q
        self.s = _exact_sqrt(q)

    @classmethod
    def from_s(cls, s) -> "RationalPoint":
        s = Fraction(s)
        if not (0 < s < 1):
            raise ValueError("s must lie strictly between 0 and 1, got %s" % s)
        return cls(s * s)

    def __repr__(self):
        return "RationalPoint(q=%s)" % self.q

    def __eq__(self, other):
        return isinstance(other, RationalPoint) and self.q == other.q

    def __hash__(self):
        return hash(self.q)


def parse_coefficient(text: str) -> Coefficient:
    """Parse a coefficient string such as ``-q/(1-q^4)`` or ``q^(1/2)``."""
    from .cli import parse_scalar  # deferred: cli builds the shared grammar

    return parse_scalar(text)
