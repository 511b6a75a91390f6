"""Exact arithmetic in cyclotomic fields Q[zeta_n].

An element of order ``n`` is stored over the power basis 1, z, ..., z^(phi(n)-1)
with z = exp(2 pi i / n), reduced modulo the n-th cyclotomic polynomial, so
two elements of the same order are equal iff their stored vectors agree.
Numerators are Python ints sharing one positive denominator.

>>> z5 = CycNumber.root(1, 5)
>>> z5 + z5**2 + z5**3 + z5**4 == -1
True
>>> s2 = CycNumber.root(1, 8) + CycNumber.root(-1, 8)
>>> s2 * s2 == 2
True
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import divisors, factorint

from .errors import NotCoprime, OrderMismatch

Rational = Fraction


def prime_factors(n):
    """Prime factorisation as a dict {p: k}."""
    return factorint(n)


def _poly_divexact(num, den):
    # den is monic; coefficient lists are low degree first
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, lowest degree first."""
    rad = 1
    for p in prime_factors(n):
        rad *= p
    if rad != n:
        # Phi_n(x) = Phi_rad(x^(n/rad))
        step = n // rad
        base = cyclotomic_polynomial(rad)
        poly = [0] * ((len(base) - 1) * step + 1)
        for i, c in enumerate(base):
            poly[i * step] = c
        return tuple(poly)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def totient(n):
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n):
    """z^j reduced mod Phi_n for 0 <= j < n, as sparse ((index, coeff), ...)."""
    phi = totient(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for j in range(n):
        rows.append(tuple((i, c) for i, c in enumerate(cur) if c))
        # multiply by z, folding z^phi = -(Phi_n - z^phi)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return rows


def _canonical(n, acc, den):
    """Build a CycNumber from an unreduced length-n numerator vector over ``den``."""
    phi = totient(n)
    out = acc[:phi]
    if len(out) < phi:
        out.extend([0] * (phi - len(out)))
    tail = acc[phi:n]
    if any(tail):
        table = _power_table(n)
        for j, c in enumerate(tail, phi):
            if c:
                for i, t in table[j]:
                    out[i] += c * t
    g = gcd(den, *out)
    if g != 1:
        out = [x // g for x in out]
        den //= g
    obj = CycNumber.__new__(CycNumber)
    obj.order = n
    obj._num = tuple(out)
    obj._den = den
    obj._hash = None
    return obj


class CycNumber:
    """Immutable element of Q[zeta_order]."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order, coeffs=None):
        """``coeffs`` maps exponents (taken mod ``order``) to rationals; a
        sequence is read as coefficients of z^0, z^1, ..."""
        if order < 1:
            raise ValueError("order must be positive")
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs or ())
        items = [(i % order, Fraction(c)) for i, c in items if c]
        den = lcm(1, *(c.denominator for _, c in items))
        acc = [0] * order
        for i, c in items:
            acc[i] += c.numerator * (den // c.denominator)
        other = _canonical(order, acc, den)
        self.order = order
        self._num = other._num
        self._den = other._den
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def root(cls, k, n):
        """zeta_n ** k."""
        acc = [0] * n
        acc[k % n] = 1
        return _canonical(n, acc, 1)

    @classmethod
    def root_of_unity(cls, e):
        """exp(2 pi i e) for a rational e."""
        e = Fraction(e)
        return cls.root(e.numerator, e.denominator)

    @classmethod
    def rational(cls, q, order=1):
        q = Fraction(q)
        acc = [0] * order
        acc[0] = q.numerator
        return _canonical(order, acc, q.denominator)

    @classmethod
    def zero(cls, order=1):
        return cls.rational(0, order)

    @classmethod
    def one(cls, order=1):
        return cls.rational(1, order)

    # -- accessors --------------------------------------------------------

    @property
    def coeffs(self):
        """Canonical coefficients of z^0 .. z^(order-1) as Fractions."""
        out = [Fraction(x, self._den) for x in self._num]
        return out + [Fraction(0)] * (self.order - len(out))

    def key(self):
        """Hashable canonical form; equal keys iff equal values at the same order."""
        return (self.order, self._num, self._den)

    def is_zero(self):
        return not any(self._num)

    def is_rational(self):
        return not any(self._num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def to_complex(self):
        """Floating-point value with zeta_n = exp(2 pi i / n); display only."""
        n = self.order
        total = sum(c * cmath.exp(2j * cmath.pi * i / n) for i, c in enumerate(self._num) if c)
        return complex(total) / self._den

    # -- field operations -------------------------------------------------

    def embed(self, m):
        """The same element written with order ``m`` (a multiple of order)."""
        n = self.order
        if m % n:
            raise OrderMismatch(f"order {n} does not divide {m}")
        if m == n:
            return self
        step = m // n
        acc = [0] * m
        for i, c in enumerate(self._num):
            if c:
                acc[i * step] = c
        return _canonical(m, acc, self._den)

    def _lift(self, other):
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(other)
        if other.order == self.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            a, b = self._lift(other)
        except TypeError:
            return NotImplemented
        n = a.order
        da, db = a._den, b._den
        if da == db:
            acc = [x + y for x, y in zip(a._num, b._num)]
            den = da
        else:
            acc = [x * db + y * da for x, y in zip(a._num, b._num)]
            den = da * db
        acc.extend([0] * (n - len(acc)))
        return _canonical(n, acc, den)

    __radd__ = __add__

    def __neg__(self):
        acc = [-x for x in self._num] + [0] * (self.order - len(self._num))
        return _canonical(self.order, acc, self._den)

    def __sub__(self, other):
        try:
            a, b = self._lift(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            acc = [x * q.numerator for x in self._num] + [0] * (self.order - len(self._num))
            return _canonical(self.order, acc, self._den * q.denominator)
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._lift(other)
        n = a.order
        acc = [0] * n
        bnz = [(j, y) for j, y in enumerate(b._num) if y]
        for i, x in enumerate(a._num):
            if x:
                for j, y in bnz:
                    k = i + j
                    if k >= n:
                        k -= n
                    acc[k] += x * y
        return _canonical(n, acc, a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, CycNumber):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_root(self, k, m):
        """self * zeta_m**k, by shifting exponents (no general multiplication)."""
        n = lcm(self.order, m)
        step = n // self.order
        shift = (k * (n // m)) % n
        acc = [0] * n
        for i, c in enumerate(self._num):
            if c:
                acc[(i * step + shift) % n] = c
        return _canonical(n, acc, self._den)

    def mul_phase(self, e):
        """self * exp(2 pi i e) for a rational e."""
        e = Fraction(e)
        return self.mul_root(e.numerator, e.denominator)

    def frobenius(self, l):
        """Galois automorphism zeta_n -> zeta_n**l."""
        n = self.order
        if gcd(l, n) != 1:
            raise NotCoprime(f"gcd({l}, {n}) != 1")
        acc = [0] * n
        for i, c in enumerate(self._num):
            if c:
                acc[(i * l) % n] += c
        return _canonical(n, acc, self._den)

    def conjugate(self):
        return self.frobenius(self.order - 1)

    def inverse(self):
        """Multiplicative inverse through the product of the other Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        a = self.minimal()
        n = a.order
        if a.is_rational():
            return CycNumber.rational(1 / a.to_fraction(), self.order)
        cofactor = CycNumber.one(n)
        for l in range(2, n):
            if gcd(l, n) == 1:
                cofactor = cofactor * a.frobenius(l)
        norm = (a * cofactor).to_fraction()
        return (cofactor * (1 / norm)).embed(self.order)

    # -- subfields --------------------------------------------------------

    def is_in_subfield(self, m):
        """True iff every Frobenius map with l = 1 (mod m) fixes self."""
        n = self.order
        if n % m:
            raise OrderMismatch(f"{m} does not divide order {n}")
        return all(self.frobenius(l) == self for l in range(1, n, m) if gcd(l, n) == 1)

    def _drop_prime(self, p):
        # Trace-average from order n down to n/p; equals self when self lies in the subfield.
        n = self.order
        m = n // p
        acc = [0] * m
        if m % p == 0:
            for i, c in enumerate(self._num):
                if c and i % p == 0:
                    acc[i // p] += c
            return _canonical(m, acc, self._den)
        alpha = pow(p, -1, m) if m > 1 else 0
        beta = pow(m, -1, p)
        for i, c in enumerate(self._num):
            if c:
                u = (i * alpha) % m
                if (i * beta) % p == 0:
                    acc[u] += c * (p - 1)
                else:
                    acc[u] -= c
        return _canonical(m, acc, self._den * (p - 1))

    def restrict(self, m):
        """Rewrite with order ``m``; raises OrderMismatch if self is not in Q[zeta_m]."""
        n = self.order
        if m == n:
            return self
        big = lcm(n, m)
        a = self.embed(big)
        cur = a
        for p, k in prime_factors(big // m).items():
            for _ in range(k):
                cur = cur._drop_prime(p)
        if cur.embed(big) != a:
            raise OrderMismatch(f"element is not in Q[zeta_{m}]")
        return cur

    def minimal(self):
        """The same element at the smallest order whose field contains it."""
        cur = self
        changed = True
        while changed:
            changed = False
            for p in prime_factors(cur.order):
                cand = cur._drop_prime(p)
                if cand.embed(cur.order) == cur:
                    cur = cand
                    changed = True
                    break
        return cur

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        if self.order == other.order:
            return self._den == other._den and self._num == other._num
        a, b = self._lift(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        if self._hash is None:
            m = self.minimal()
            self._hash = hash((m.order, m._num, m._den))
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self._num):
            if c:
                q = Fraction(c, self._den)
                terms.append(f"{q}" if i == 0 else f"{q}*z{self.order}^{i}")
        return " + ".join(terms) if terms else "0"

    # -- serialisation ------------------------------------------------------

    def to_json(self):
        return {
            "order": self.order,
            "coeffs": [[i, q.numerator, q.denominator] for i, q in enumerate(self.coeffs) if q],
        }

    @classmethod
    def from_json(cls, obj):
        order = int(obj["order"])
        coeffs = {}
        for i, num, den in obj["coeffs"]:
            coeffs[int(i)] = coeffs.get(int(i), 0) + Fraction(int(num), int(den))
        return cls(order, coeffs)


def frobenius(a, l):
    return a.frobenius(l)


def embed(a, m):
    return a.embed(m)


def is_in_subfield(a, m):
    return a.is_in_subfield(m)


def to_complex(a):
    return a.to_complex()


I = CycNumber.root(1, 4)


def sqrt_int(n):
    """Positive square root of a positive integer, built from Gauss sums."""
    if n < 1:
        raise ValueError("n must be positive")
    outside, inside = 1, 1
    for p, k in prime_factors(n).items():
        outside *= p ** (k // 2)
        if k % 2:
            inside *= p
    result = CycNumber.rational(outside)
    for p in prime_factors(inside):
        if p == 2:
            root = CycNumber.root(1, 8) + CycNumber.root(-1, 8)
        else:
            acc = {}
            for a in range(p):
                acc[(a * a) % p] = acc.get((a * a) % p, 0) + 1
            gauss = CycNumber(p, acc)
            # sum of z_p^(a^2) is sqrt(p) for p = 1 (mod 4) and i*sqrt(p) otherwise
            root = gauss if p % 4 == 1 else gauss * CycNumber.root(3, 4)
        result = result * root
    return result


def sin_pi(k, m):
    """sin(pi k / m) = (z_2m^k - z_2m^-k) / (2i)."""
    two_m = 2 * m
    diff = CycNumber(two_m, {k % two_m: 1}) - CycNumber(two_m, {(-k) % two_m: 1})
    return diff.mul_root(3, 4) * Fraction(1, 2)
