"""Rational functions in the Novikov variable ``T``.

Integer offsets make every ``T``-exponent integral, so the Novikov field is
modelled by ``Q(T)``.  Polynomials in ``T`` are tuples of ``Fraction``
coefficients listed from the constant term upwards with no trailing zeros.
"""

from fractions import Fraction
from numbers import Rational

_ZERO = ()
_ONE = (Fraction(1),)


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        s = a[0]
        return tuple(s * x for x in b)
    if len(b) == 1:
        s = b[0]
        return tuple(x * s for x in a)
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) <= db:
        return _ZERO, tuple(rem)
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        quot[k] = c
        if c:
            for j in range(db + 1):
                rem[k + j] -= c * b[j]
    return _trim(quot), _trim(rem[:db])


def _pmonic(a):
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(x / lead for x in a)


def _pgcd(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a) if a else _ZERO


def _is_monomial(a):
    return all(not x for x in a[:-1])


def _render_poly(a, var="T"):
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class NovikovScalar:
    """An element ``num(T)/den(T)`` of ``Q(T)`` in lowest terms, ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=_ZERO, den=_ONE, *, _normalized=False):
        if _normalized:
            self.num, self.den = num, den
        else:
            num = _trim(Fraction(x) for x in num)
            den = _trim(Fraction(x) for x in den)
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                num, den = _ZERO, _ONE
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = tuple(x / lead for x in num)
                    den = tuple(x / lead for x in den)
            self.num, self.den = num, den
        self._hash = None

    @classmethod
    def coerce(cls, x):
        if isinstance(x, NovikovScalar):
            return x
        if isinstance(x, Rational):
            x = Fraction(x)
            return cls((x,) if x else _ZERO, _ONE, _normalized=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to NovikovScalar")

    @classmethod
    def T(cls, k=1):
        """The monomial ``T**k`` for any integer ``k``."""
        k = int(k)
        if k >= 0:
            return cls((Fraction(0),) * k + _ONE, _ONE, _normalized=True)
        return cls(_ONE, (Fraction(0),) * (-k) + _ONE, _normalized=True)

    @classmethod
    def from_polynomial(cls, coeffs):
        """Build from a coefficient list, constant term first."""
        return cls(coeffs, _ONE)

    # predicates
    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.den == _ONE and self.num == _ONE

    def is_polynomial(self):
        return self.den == _ONE

    def is_constant(self):
        return self.den == _ONE and len(self.num) <= 1

    def constant(self):
        """The value as a ``Fraction``; only valid for constants."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, NovikovScalar):
            try:
                other = NovikovScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == _ONE:
                num = _padd(self.num, other.num)
                return NovikovScalar(num, _ONE, _normalized=True) if num else ZERO
            return NovikovScalar(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return NovikovScalar(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return NovikovScalar(_pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, NovikovScalar):
            try:
                other = NovikovScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return NovikovScalar.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, NovikovScalar):
            try:
                other = NovikovScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den == _ONE and other.den == _ONE:
            return NovikovScalar(_pmul(self.num, other.num), _ONE, _normalized=True)
        if len(self.num) == 1 and self.den == _ONE:
            return NovikovScalar(tuple(self.num[0] * x for x in other.num), other.den,
                                 _normalized=True)
        if len(other.num) == 1 and other.den == _ONE:
            return NovikovScalar(tuple(x * other.num[0] for x in self.num), self.den,
                                 _normalized=True)
        # cross-cancel before multiplying to keep degrees down
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        a, d = self.num, other.den
        if len(g1) > 1:
            a, d = _pdivmod(a, g1)[0], _pdivmod(d, g1)[0]
        b, c = other.num, self.den
        if len(g2) > 1:
            b, c = _pdivmod(b, g2)[0], _pdivmod(c, g2)[0]
        num = _pmul(a, b)
        den = _pmul(c, d)
        lead = den[-1]
        if lead != 1:
            num = tuple(x / lead for x in num)
            den = tuple(x / lead for x in den)
        return NovikovScalar(num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        lead = self.num[-1]
        return NovikovScalar(tuple(x / lead for x in self.den),
                             tuple(x / lead for x in self.num), _normalized=True)

    def __truediv__(self, other):
        if not isinstance(other, NovikovScalar):
            try:
                other = NovikovScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return NovikovScalar.coerce(other) * self.inverse()

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison and hashing
    def __eq__(self, other):
        if not isinstance(other, NovikovScalar):
            try:
                other = NovikovScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def evaluate(self, t):
        """Value at a rational ``T = t`` (raises on a pole)."""
        t = Fraction(t)

        def ev(c):
            acc = Fraction(0)
            for x in reversed(c):
                acc = acc * t + x
            return acc

        d = ev(self.den)
        if not d:
            raise ZeroDivisionError(f"pole at T = {t}")
        return ev(self.num) / d

    def needs_parens(self):
        """True when the rendering is a sum and must be bracketed as a factor."""
        if self.den != _ONE:
            return True
        return sum(1 for x in self.num if x) > 1

    def __str__(self):
        if self.den == _ONE:
            return _render_poly(self.num)
        num = _render_poly(self.num)
        if sum(1 for x in self.num if x) > 1:
            num = f"({num})"
        den = _render_poly(self.den)
        if not _is_monomial(self.den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"NovikovScalar({self})"


ZERO = NovikovScalar(_ZERO, _ONE, _normalized=True)
ONE = NovikovScalar(_ONE, _ONE, _normalized=True)
T = NovikovScalar.T(1)

