"""Exact truncated power series in q with rational coefficients.

Exponents may be fractional: a series fixes a positive integer denominator D
and stores coefficients on the grid (1/D)*Z>=0.  A series either carries a
finite truncation order (coefficients at exponents >= the order are unknown)
or is an exact polynomial (``trunc is None``).  All arithmetic is exact, and
the truncation order of every result is the largest order justified by the
operands: min of the truncs for addition, min(trunc_a + ord_b, trunc_b +
ord_a) for multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class ZeroConstantTerm(ArithmeticError):
    """Raised when inverting a series whose constant term vanishes."""


def _to_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class QSeries:
    __slots__ = ("denom", "trunc", "coeffs")

    def __init__(self, coeffs=None, trunc=None, denom: int = 1):
        if denom < 1:
            raise ValueError("denom must be a positive integer")
        t = None if trunc is None else _to_frac(trunc)
        cleaned: dict[int, Fraction] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = _to_frac(c)
                if c == 0:
                    continue
                if k < 0:
                    raise ValueError("negative exponent %r" % (Fraction(k, denom),))
                if t is not None and Fraction(k, denom) >= t:
                    continue
                cleaned[k] = c
        self.denom = denom
        self.trunc = t
        self.coeffs = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, trunc=None, denom: int = 1) -> "QSeries":
        return cls({}, trunc, denom)

    @classmethod
    def one(cls, trunc=None) -> "QSeries":
        return cls({0: Fraction(1)}, trunc)

    @classmethod
    def q_power(cls, e, trunc=None) -> "QSeries":
        """The monomial q^e; e may be a Fraction."""
        e = _to_frac(e)
        return cls({e.numerator: Fraction(1)}, trunc, e.denominator)

    @classmethod
    def from_terms(cls, pairs, trunc=None) -> "QSeries":
        """Build from (exponent, coefficient) pairs; exponents may be Fractions."""
        d = 1
        fpairs = []
        for e, c in pairs:
            e = _to_frac(e)
            fpairs.append((e, _to_frac(c)))
            d = lcm(d, e.denominator)
        coeffs: dict[int, Fraction] = {}
        for e, c in fpairs:
            k = int(e * d)
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
        return cls(coeffs, trunc, d)

    # -- basic structure ---------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def order(self):
        """Lowest exponent with nonzero coefficient, or None for the zero series."""
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.denom)

    def coefficient(self, e) -> Fraction:
        """Coefficient of q^e.  Raises for exponents at or above the truncation."""
        e = _to_frac(e)
        if self.trunc is not None and e >= self.trunc:
            raise ValueError("coefficient of q^%s is unknown (trunc %s)" % (e, self.trunc))
        k = e * self.denom
        if k.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(k), Fraction(0))

    __getitem__ = coefficient

    def terms(self):
        """Sorted (exponent, coefficient) pairs."""
        d = self.denom
        return [(Fraction(k, d), c) for k, c in sorted(self.coeffs.items())]

    def reduce_denom(self) -> "QSeries":
        """Shrink the exponent denominator to the minimal grid."""
        if self.denom == 1:
            return self
        g = self.denom
        for k in self.coeffs:
            g = gcd(g, k)
            if g == 1:
                return self
        return QSeries({k // g: c for k, c in self.coeffs.items()}, self.trunc,
                       self.denom // g)

    # -- arithmetic --------------------------------------------------------

    def _with_denom(self, d: int) -> dict[int, Fraction]:
        f = d // self.denom
        if f == 1:
            return self.coeffs
        return {k * f: c for k, c in self.coeffs.items()}

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.from_terms([(0, other)])
        d = lcm(self.denom, other.denom)
        t = _min_trunc(self.trunc, other.trunc)
        out = dict(self._with_denom(d))
        for k, c in other._with_denom(d).items():
            out[k] = out.get(k, Fraction(0)) + c
        return QSeries(out, t, d)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({k: -c for k, c in self.coeffs.items()}, self.trunc, self.denom)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QSeries) else QSeries.from_terms([(0, -_to_frac(other))]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            c = _to_frac(other)
            if c == 0:
                return QSeries({}, self.trunc, self.denom)
            return QSeries({k: v * c for k, v in self.coeffs.items()}, self.trunc, self.denom)
        if (self.trunc is None and not self.coeffs) or \
                (other.trunc is None and not other.coeffs):
            return QSeries()  # an exact zero factor forces an exact zero product
        d = lcm(self.denom, other.denom)
        t = _mul_trunc(self, other)
        bound = None if t is None else t * d
        a = sorted(self._with_denom(d).items())
        b = sorted(other._with_denom(d).items())
        if len(b) < len(a):
            a, b = b, a
        out: dict[int, Fraction] = {}
        bmin = b[0][0] if b else 0
        for ka, ca in a:
            if bound is not None and ka + bmin >= bound:
                break
            for kb, cb in b:
                k = ka + kb
                if bound is not None and k >= bound:
                    break
                out[k] = out.get(k, Fraction(0)) + ca * cb
        return QSeries(out, t, d)

    __rmul__ = __mul__

    def shift(self, e) -> "QSeries":
        """Multiply by q^e (e >= 0); the truncation order grows by e."""
        e = _to_frac(e)
        if e < 0:
            raise ValueError("negative shift")
        d = lcm(self.denom, e.denominator)
        ke = int(e * d)
        t = None if self.trunc is None else self.trunc + e
        return QSeries({k + ke: c for k, c in self._with_denom(d).items()}, t, d)

    def truncate(self, n) -> "QSeries":
        return QSeries(self.coeffs, _min_trunc(self.trunc, _to_frac(n)), self.denom)

    def inverse(self, trunc=None) -> "QSeries":
        """Multiplicative inverse mod q^trunc (defaults to this series' trunc)."""
        t = _min_trunc(self.trunc, None if trunc is None else _to_frac(trunc))
        if t is None:
            if set(self.coeffs) <= {0}:
                c0 = self.coeffs.get(0, Fraction(0))
                if c0 == 0:
                    raise ZeroConstantTerm("constant term is zero")
                return QSeries({0: 1 / c0})
            raise ValueError("an exact non-constant polynomial needs an explicit trunc")
        c0 = self.coeffs.get(0, Fraction(0))
        if c0 == 0:
            raise ZeroConstantTerm("constant term is zero")
        d = self.denom
        n = -(-t.numerator * d // t.denominator)  # ceil(t*d): number of known grid slots
        a = self.coeffs
        akeys = sorted(k for k in a if 0 < k < n)
        inv: dict[int, Fraction] = {0: 1 / c0}
        for k in range(1, n):
            s = Fraction(0)
            for j in akeys:
                if j > k:
                    break
                bk = inv.get(k - j)
                if bk is not None:
                    s += a[j] * bk
            if s:
                inv[k] = -s / c0
        return QSeries(inv, t, d)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self.reduce_denom(), other.reduce_denom()
        return a.trunc == b.trunc and a.denom == b.denom and a.coeffs == b.coeffs

    def __hash__(self):
        a = self.reduce_denom()
        return hash((a.trunc, a.denom, tuple(sorted(a.coeffs.items()))))

    def agreement(self, other: "QSeries"):
        """Compare up to min(trunc); return (order, first_mismatch_exponent).

        order is the truncation up to which the comparison was performed
        (None if both series are exact polynomials).  first_mismatch_exponent
        is None when the series agree on the whole compared range.
        """
        t = _min_trunc(self.trunc, other.trunc)
        d = lcm(self.denom, other.denom)
        a = self._with_denom(d)
        b = other._with_denom(d)
        bound = None if t is None else t * d
        diffs = []
        for k in set(a) | set(b):
            if bound is not None and k >= bound:
                continue
            if a.get(k, 0) != b.get(k, 0):
                diffs.append(k)
        first = Fraction(min(diffs), d) if diffs else None
        return t, first

    def equal_mod(self, other: "QSeries", n=None) -> bool:
        """True iff the series agree coefficientwise below q^n (or below min trunc)."""
        lhs, rhs = self, other
        if n is not None:
            lhs, rhs = lhs.truncate(n), rhs.truncate(n)
        t, first = lhs.agreement(rhs)
        return first is None

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "denom": self.denom,
            "trunc": None if self.trunc is None else _frac_str(self.trunc),
            "coeffs": [[_frac_str(Fraction(k, self.denom)), _frac_str(c)]
                       for k, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "QSeries":
        trunc = None if d["trunc"] is None else Fraction(d["trunc"])
        s = cls.from_terms([(Fraction(e), Fraction(c)) for e, c in d["coeffs"]], trunc)
        want = int(d["denom"])
        if want % s.denom == 0 and want != s.denom:
            f = want // s.denom
            s = QSeries({k * f: c for k, c in s.coeffs.items()}, s.trunc, want)
        return s

    def __repr__(self):
        parts = []
        for e, c in self.terms()[:12]:
            parts.append(f"{c}*q^{e}" if e else f"{c}")
        if len(self.coeffs) > 12:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.trunc is None else f" + O(q^{self.trunc})"
        return f"QSeries({body}{tail})"


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _mul_trunc(a: QSeries, b: QSeries):
    oa, ob = a.order(), b.order()
    ta = None if a.trunc is None else a.trunc + (ob if ob is not None else 0)
    tb = None if b.trunc is None else b.trunc + (oa if oa is not None else 0)
    # a zero truncated series is known to vanish below its trunc only
    if oa is None and a.trunc is not None:
        tb = None
    if ob is None and b.trunc is not None:
        ta = None
    t = _min_trunc(ta, tb)
    if t is None and (a.trunc is not None or b.trunc is not None):
        # zero truncated operand: the product is zero as far as anyone knows
        t = _min_trunc(a.trunc, b.trunc)
        if oa is not None:
            t = t + oa if t is not None else None
        if ob is not None:
            t = t + ob if t is not None else None
    return t


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# -- q-combinatorial primitives -------------------------------------------


def series_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def series_inverse(a: QSeries, trunc=None) -> QSeries:
    return a.inverse(trunc)


@lru_cache(maxsize=None)
def _poch_coeffs(n: int) -> tuple:
    """Integer coefficient list of (q)_n = prod_{j<=n} (1-q^j)."""
    coeffs = [1]
    for j in range(1, n + 1):
        nxt = coeffs + [0] * j
        for i, c in enumerate(coeffs):
            nxt[i + j] -= c
        coeffs = nxt
    return tuple(coeffs)


def pochhammer(n: int, trunc=None) -> QSeries:
    """The exact polynomial (q)_n = (1-q)(1-q^2)...(1-q^n)."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    coeffs = {i: Fraction(c) for i, c in enumerate(_poch_coeffs(n)) if c}
    return QSeries(coeffs, trunc)


def pochhammer_inf(trunc) -> QSeries:
    """(q)_infinity mod q^trunc; factors (1-q^j) with j >= trunc are invisible."""
    t = _to_frac(trunc)
    out = QSeries.one(t)
    j = 1
    while j < t:
        out = out * QSeries({0: Fraction(1), j: Fraction(-1)}, t)
        j += 1
    return out


def inv_pochhammer(n: int, trunc) -> QSeries:
    """1/(q)_n mod q^trunc."""
    return pochhammer(n).inverse(trunc)


@lru_cache(maxsize=None)
def _qbinom_coeffs(m: int, n: int) -> tuple:
    """Integer coefficients of the Gaussian binomial [m choose n]_q.

    Computed as the exact quotient (q)_m / ((q)_n (q)_{m-n}), one factor at a
    time: multiply by (1-q^{m-n+j}) then divide by (1-q^j); each intermediate
    quotient is again a Gaussian binomial, so every division is exact.
    """
    if n < 0 or n > m:
        return ()
    b = [1]
    for j in range(1, n + 1):
        s = m - n + j
        f = b + [0] * s
        for i, c in enumerate(b):
            f[i + s] -= c
        g = [0] * (len(f) - j)
        for i in range(len(g)):
            g[i] = f[i] + (g[i - j] if i >= j else 0)
        for i in range(len(g), len(f)):
            if f[i] != (-g[i - j] if 0 <= i - j < len(g) else 0):
                raise ArithmeticError("inexact division in q-binomial")
        b = g
    return tuple(b)


@lru_cache(maxsize=None)
def q_binomial(m: int, n: int) -> QSeries:
    """Gaussian binomial coefficient as an exact polynomial; zero out of range."""
    coeffs = {i: Fraction(c) for i, c in enumerate(_qbinom_coeffs(m, n)) if c}
    return QSeries(coeffs)
