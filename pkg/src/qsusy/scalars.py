"""Exact coefficient arithmetic: Gaussian rationals and rational functions in s.

The coefficient field for the whole engine is Q(i)(s), rational functions in
one variable s with Gaussian-rational coefficients.  s**2 plays the role of
the deformation parameter q, so half-integer q-powers (needed by R-matrices)
stay inside the field.  Every Scalar is kept gcd-reduced with a monic
denominator whose constant term is nonzero; equality of canonical forms is
plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction


class PoleError(ArithmeticError):
    """Raised when a Scalar is evaluated at a zero of its denominator."""


class GRat:
    """Gaussian rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _grat(other)
        return GRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _grat(other)
        return GRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _grat(other) - self

    def __mul__(self, other):
        other = _grat(other)
        return GRat(self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _grat(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GRat((self.re * other.re + self.im * other.im) / n,
                    (self.im * other.re - self.re * other.im) / n)

    def __rtruediv__(self, other):
        return _grat(other) / self

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GRat(other)
        if not isinstance(other, GRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conj(self):
        return GRat(self.re, -self.im)

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return GRat(1) / self ** (-k)
        out = GRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "%s*i" % self.im
        return "(%s%s%s*i)" % (self.re, "+" if self.im > 0 else "-", abs(self.im))


def _grat(x):
    if isinstance(x, GRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GRat(x)
    raise TypeError("cannot coerce %r to GRat" % (x,))


_G0 = GRat(0)
_G1 = GRat(1)


# ---------------------------------------------------------------------------
# dense polynomial helpers over GRat (index = degree, no trailing zeros)

def _ptrim(p):
    while p and not p[-1]:
        p.pop()
    return p

def _padd(a, b):
    n = max(len(a), len(b))
    out = [_G0] * n
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _ptrim(out)

def _pmul(a, b):
    if not a or not b:
        return []
    out = [_G0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return _ptrim(out)

def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [_G0] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            a[k + i] = a[k + i] - c * cb
        _ptrim(a)
    return _ptrim(q), a

def _pgcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        lc = a[-1]
        a = [c / lc for c in a]
    return a


def _to_dense(d, shift):
    """Laurent dict -> (dense list, min exponent) after subtracting shift."""
    if not d:
        return []
    lo = min(d)
    out = [_G0] * (max(d) - shift + 1)
    for e, c in d.items():
        out[e - shift] = c
    return out

def _to_dict(p, shift):
    return {i + shift: c for i, c in enumerate(p) if c}


class Scalar:
    """Canonical rational function in s over the Gaussian rationals.

    num is a Laurent dict {exponent: GRat}; den is an ordinary monic
    polynomial dict with nonzero constant term and gcd(num, den) = 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = {0: _G1}
        if _canonical:
            self.num = num
            self.den = den
        else:
            self.num, self.den = _normalize(num, den)
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return _S_ZERO

    @staticmethod
    def one():
        return _S_ONE

    @staticmethod
    def i():
        return _S_I

    @staticmethod
    def of(x):
        """Coerce an int, Fraction or GRat into a constant Scalar."""
        c = _grat(x)
        if not c:
            return _S_ZERO
        return Scalar({0: c}, None, _canonical=True)

    @staticmethod
    def s_power(k):
        return Scalar({int(k): _G1}, None, _canonical=True)

    @staticmethod
    def q_power(k):
        return Scalar({2 * int(k): _G1}, None, _canonical=True)

    # -- ring/field operations ----------------------------------------------

    def __add__(self, other):
        other = _scalar(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            num = dict(self.num)
            for e, c in other.num.items():
                v = num.get(e, _G0) + c
                if v:
                    num[e] = v
                elif e in num:
                    del num[e]
            if self.den == _DEN1 :
                return Scalar(num, None, _canonical=True) if num else _S_ZERO
            return Scalar(num, self.den)
        num = _dadd(_dmul(self.num, other.den), _dmul(other.num, self.den))
        return Scalar(num, _dmul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_scalar(other))

    def __rsub__(self, other):
        return _scalar(other) + (-self)

    def __neg__(self):
        return Scalar({e: -c for e, c in self.num.items()}, self.den, _canonical=True)

    def __mul__(self, other):
        other = _scalar(other)
        if not self.num or not other.num:
            return _S_ZERO
        num = _dmul(self.num, other.num)
        if self.den == _DEN1 and other.den == _DEN1:
            return Scalar(num, None, _canonical=True)
        return Scalar(num, _dmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _scalar(other)
        if not other.num:
            raise ZeroDivisionError("division by zero Scalar")
        if not self.num:
            return _S_ZERO
        return Scalar(_dmul(self.num, other.den), _dmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _scalar(other) / self

    def inv(self):
        return _S_ONE / self

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inv() ** (-k)
        out, base = _S_ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GRat)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.items())),
                               tuple(sorted(self.den.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == {0: _G1} and self.den == _DEN1

    def conj(self):
        """Complex conjugation i -> -i (s kept real)."""
        return Scalar({e: c.conj() for e, c in self.num.items()},
                      {e: c.conj() for e, c in self.den.items()})

    def real_imag(self):
        """Split into (re, im) with self = re + i*im, both i-free Scalars."""
        re = Scalar({e: GRat(c.re) for e, c in self.num.items() if c.re},
                    dict(self.den))
        im = Scalar({e: GRat(c.im) for e, c in self.num.items() if c.im},
                    dict(self.den))
        return re, im

    # -- evaluation ----------------------------------------------------------

    def eval_at_s(self, point):
        """Exact substitution s = point (Fraction or GRat); GRat result."""
        point = _grat(point)
        den = _horner(self.den, point)
        if not den:
            raise PoleError("pole at s = %r: denominator %s vanishes"
                            % (point, _dstr(self.den)))
        if not self.num:
            return GRat(0)
        lo = min(self.num)
        if lo < 0 and not point:
            raise PoleError("pole at s = 0: numerator has s^%d" % lo)
        num = _horner({e - lo: c for e, c in self.num.items()}, point)
        if lo:
            num = num * point ** lo if lo > 0 else num / point ** (-lo)
        return num / den

    def eval_at_q(self, qval):
        """Exact substitution q = s**2 = qval; returns QNum a + b*sqrt(q)."""
        qval = Fraction(qval)
        if qval == 0:
            raise PoleError("q = 0 is outside the Laurent domain")
        num = _qsplit(self.num, qval)
        den = _qsplit(self.den, qval)
        return QNum(num[0], num[1], qval) / QNum(den[0], den[1], qval)

    def classical_limit(self):
        """Value at s = 1 (q = 1); PoleError on a genuine pole."""
        return self.eval_at_s(1)

    # -- printing -------------------------------------------------------------

    def __repr__(self):
        if not self.num:
            return "0"
        num = _dstr(self.num)
        if self.den == _DEN1:
            return num
        den = _dstr(self.den)
        if len(self.num) > 1:
            num = "(%s)" % num
        if len(self.den) > 1:
            den = "(%s)" % den
        return "%s/%s" % (num, den)


def _scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, GRat)):
        return Scalar.of(x)
    raise TypeError("cannot coerce %r to Scalar" % (x,))


def _dadd(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, _G0) + c
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out

def _dmul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e, _G0) + ca * cb
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def _normalize(num, den):
    num = {e: _grat(c) for e, c in num.items() if _grat(c)}
    den = {e: _grat(c) for e, c in den.items() if _grat(c)}
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, dict(_DEN1)
    dlo = min(den)
    num = {e - dlo: c for e, c in num.items()}
    den = {e - dlo: c for e, c in den.items()}
    nlo = min(num)
    npoly = _to_dense(num, nlo)
    dpoly = _to_dense(den, 0)
    if len(dpoly) > 1:
        g = _pgcd(npoly, dpoly)
        if len(g) > 1:
            npoly = _pdivmod(npoly, g)[0]
            dpoly = _pdivmod(dpoly, g)[0]
    lc = dpoly[-1]
    if lc != _G1:
        npoly = [c / lc for c in npoly]
        dpoly = [c / lc for c in dpoly]
    return _to_dict(npoly, nlo), _to_dict(dpoly, 0)


def _horner(d, point):
    # exponents are small, direct power sum is fine
    acc = GRat(0)
    for e, c in d.items():
        acc = acc + c * (point ** e if e >= 0 else GRat(1) / point ** (-e))
    return acc


def _qsplit(d, qval):
    """Split Laurent dict by parity of s-exponent at q = qval.

    Returns (a, b) with value = a + b*sqrt(q); exponent 2k -> q^k,
    exponent 2k+1 -> q^k * sqrt(q).
    """
    a = GRat(0)
    b = GRat(0)
    for e, c in d.items():
        k, r = divmod(e, 2)
        term = c * (GRat(qval) ** k if k >= 0 else GRat(1) / GRat(qval) ** (-k))
        if r == 0:
            a = a + term
        else:
            b = b + term
    return a, b


def _fsqrt(f):
    """Exact Fraction square root, or None."""
    f = Fraction(f)
    if f < 0:
        return None
    pn = _isqrt_exact(f.numerator)
    pd = _isqrt_exact(f.denominator)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)

def _isqrt_exact(n):
    import math
    r = math.isqrt(n)
    return r if r * r == n else None


def _dstr(d):
    parts = []
    even = all(e % 2 == 0 for e in d)
    var = "q" if even else "s"
    for e in sorted(d, reverse=True):
        c = d[e]
        ex = e // 2 if even else e
        if ex == 0:
            parts.append(repr(c))
        else:
            head = "" if c == _G1 else ("-" if c == GRat(-1) else repr(c) + "*")
            parts.append("%s%s^%d" % (head, var, ex) if ex != 1 else "%s%s" % (head, var))
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


class QNum:
    """Element a + b*sqrt(q) of Q(i)(sqrt(q)) for a fixed rational q.

    Drop-in numeric specialization of Scalar: same arithmetic protocol, used
    by the --q-value fast path.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        self.a = _grat(a)
        self.b = _grat(b)
        self.q = Fraction(q)
        if self.b:
            sq = _fsqrt(self.q)
            if sq is not None:
                self.a = self.a + GRat(sq) * self.b
                self.b = _G0

    def _check(self, other):
        if isinstance(other, QNum):
            if other.q != self.q:
                raise ValueError("mixing QNum fields with different q")
            return other
        return QNum(_grat(other), 0, self.q)

    def __add__(self, other):
        other = self._check(other)
        return QNum(self.a + other.a, self.b + other.b, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return QNum(self.a - other.a, self.b - other.b, self.q)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return QNum(-self.a, -self.b, self.q)

    def __mul__(self, other):
        other = self._check(other)
        return QNum(self.a * other.a + GRat(self.q) * self.b * other.b,
                    self.a * other.b + self.b * other.a, self.q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        n = other.a * other.a - GRat(self.q) * other.b * other.b
        if not n:
            if not other.a and not other.b:
                raise ZeroDivisionError("division by zero QNum")
            # conjugate norm vanishes: q is a rational square and the
            # divisor collapses to a plain Gaussian rational
            sq = _fsqrt(self.q)
            if sq is None:  # pragma: no cover - n = 0 forces q square
                raise ZeroDivisionError("division by zero QNum")
            d = other.a + GRat(sq) * other.b
            if not d:
                raise ZeroDivisionError("division by zero QNum")
            return QNum(self.a / d, self.b / d, self.q)
        return QNum((self.a * other.a - GRat(self.q) * self.b * other.b) / n,
                    (self.b * other.a - self.a * other.b) / n, self.q)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return QNum(1, 0, self.q) / self ** (-k)
        out = QNum(1, 0, self.q)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GRat)):
            other = QNum(_grat(other), 0, self.q)
        if not isinstance(other, QNum):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.q == other.q

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_zero(self):
        return not self

    def conj(self):
        return QNum(self.a.conj(), self.b.conj(), self.q)

    def __repr__(self):
        if not self.b:
            return repr(self.a)
        return "(%r + %r*sqrt(%s))" % (self.a, self.b, self.q)


class GRatField:
    """Field adapter for plain Gaussian rationals (classical-limit work)."""

    name = "grat"

    def zero(self):
        return _G0

    def one(self):
        return _G1

    def i(self):
        return GRat(0, 1)

    def of(self, x):
        return _grat(x)


class SymbolicField:
    """Field adapter producing symbolic Scalars (the default)."""

    name = "symbolic"

    def zero(self):
        return _S_ZERO

    def one(self):
        return _S_ONE

    def i(self):
        return _S_I

    def of(self, x):
        return Scalar.of(x)

    def s_power(self, k):
        return Scalar.s_power(k)

    def q_power(self, k):
        return Scalar.q_power(k)


class NumericField:
    """Field adapter evaluating everything at a fixed rational q > 0."""

    def __init__(self, q):
        self.q = Fraction(q)
        if self.q <= 0:
            raise ValueError("q must be a positive rational")
        self.name = "q=%s" % self.q

    def zero(self):
        return QNum(0, 0, self.q)

    def one(self):
        return QNum(1, 0, self.q)

    def i(self):
        return QNum(GRat(0, 1), 0, self.q)

    def of(self, x):
        return QNum(_grat(x), 0, self.q)

    def s_power(self, k):
        k = int(k)
        a, b = _qsplit({k: _G1}, self.q)
        return QNum(a, b, self.q)

    def q_power(self, k):
        return self.s_power(2 * int(k))


_DEN1 = {0: _G1}
_S_ZERO = Scalar({}, None, _canonical=True)
_S_ONE = Scalar({0: _G1}, None, _canonical=True)
_S_I = Scalar({0: GRat(0, 1)}, None, _canonical=True)

SYMBOLIC = SymbolicField()

# frequently used values
S = Scalar.s_power(1)
Q = Scalar.q_power(1)
I_UNIT = _S_I


def scalar_ops(a, b, op):
    """Field operation dispatch: op in {'add', 'mul', 'div'}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % (op,))


def eval_or_limit(a, mode, point=None):
    """mode 'eval_at' substitutes s = point; 'classical_limit' takes s -> 1."""
    if mode == "eval_at":
        return a.eval_at_s(point)
    if mode == "classical_limit":
        return a.classical_limit()
    raise ValueError("unknown mode %r" % (mode,))
