"""SL2(Z) and SL2(Z/N): generator words, the representation D, lifting, tau_l."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import matrix as mx
from .errors import NotCoprime, NotUnimodular


@dataclass(frozen=True)
class SL2ZMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodular(f"det of {self.rows()} is not 1")

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o):
        return SL2ZMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        result = SL2ZMatrix(1, 0, 0, 1)
        for _ in range(abs(k)):
            result = result @ base
        return result

    def inverse(self):
        return SL2ZMatrix(self.d, -self.b, -self.c, self.a)

    def reduce(self, N):
        """mu_N: the image in SL2(Z/N)."""
        return SL2NMatrix(N, self.a, self.b, self.c, self.d)


S_GEN = SL2ZMatrix(0, -1, 1, 0)
T_GEN = SL2ZMatrix(1, 1, 0, 1)
IDENTITY = SL2ZMatrix(1, 0, 0, 1)


def t_power(k):
    return SL2ZMatrix(1, k, 0, 1)


@dataclass(frozen=True)
class SL2NMatrix:
    modulus: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        N = self.modulus
        if N < 1:
            raise ValueError("modulus must be positive")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % N)
        if (self.a * self.d - self.b * self.c - 1) % N:
            raise NotUnimodular(f"det of {self.entries()} is not 1 mod {N}")

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o):
        if o.modulus != self.modulus:
            raise ValueError("moduli differ")
        return SL2NMatrix(self.modulus, self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self):
        return SL2NMatrix(self.modulus, self.d, -self.b, -self.c, self.a)

    def __str__(self):
        return f"(({self.a},{self.b}),({self.c},{self.d})) mod {self.modulus}"


def mu(m, N):
    return m.reduce(N)


# -- words ----------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWord:
    """Product of tokens ('S', 1) and ('T', k), read left to right."""

    tokens: tuple

    def to_matrix(self):
        result = IDENTITY
        for name, k in self.tokens:
            result = result @ (S_GEN if name == "S" else t_power(k))
        return result

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join("S" if name == "S" else f"T^{k}" for name, k in self.tokens) or "1"


def decompose(m):
    """Write m as a word in s and t by Euclidean reduction of the bottom row."""
    tokens = []
    a, b, c, d = m.a, m.b, m.c, m.d
    while c != 0:
        # m = t^k m', m' = s m'' with m'' = s^-1 m' = ((c, d), (-a', -b'))
        k = a // c
        a, b = a - k * c, b - k * d
        if k:
            tokens.append(("T", k))
        tokens.append(("S", 1))
        a, b, c, d = c, d, -a, -b
    # now m'' = +-((1, b), (0, 1))
    if a == -1:
        tokens.extend([("S", 1), ("S", 1)])
        b = -b
    if b:
        tokens.append(("T", b))
    word = GeneratorWord(tuple(tokens))
    if word.to_matrix() != m:
        raise AssertionError(f"decomposition of {m} failed")
    return word


def evaluate_word(md, word):
    """The matrix of ``word`` with s -> S and t -> T."""
    result = mx.identity(md.size, md.field_order)
    S = md.s_matrix
    T = md.t_diagonal
    for name, k in word.tokens:
        if name == "S":
            result = mx.matmul(result, S)
        else:
            result = (T ** k).right_apply(result)
    return result


def rep(md, m):
    """Representation matrix M of m in SL2(Z)."""
    if isinstance(m, GeneratorWord):
        return evaluate_word(md, m)
    return evaluate_word(md, decompose(m))


# -- SL2(Z/N) -------------------------------------------------------------


def lift(m):
    """Deterministic integral lift of m in SL2(Z/N)."""
    N = m.modulus
    if N == 1:
        return IDENTITY
    if m.c == 0 and m.d in (1, N - 1):
        e = 1 if m.d == 1 else -1
        return SL2ZMatrix(e, m.b if e == 1 else m.b - N, 0, e)
    c = m.c if m.c else N
    d = m.d
    while gcd(c, d) != 1:
        d += N
    # Bezout: a0 d - b0 c = 1
    g, x, y = _egcd(d, c)
    a0, b0 = x, -y
    assert a0 * d - b0 * c == 1
    # (a - a0, b - b0) = j (c, d) mod N with j = -(a - a0) b0 + (b - b0) a0
    j = (-(m.a - a0) * b0 + (m.b - b0) * a0) % N
    out = SL2ZMatrix(a0 + j * c, b0 + j * d, c, d)
    if out.reduce(N) != m:
        raise AssertionError(f"lift of {m} failed")
    return out


def _egcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def tau(m, l):
    """(a, b; c, d) -> (a, l b; lhat c, d)."""
    N = m.modulus
    if gcd(l, N) != 1:
        raise NotCoprime(f"gcd({l}, {N}) != 1")
    lhat = pow(l, -1, N) if N > 1 else 0
    return SL2NMatrix(N, m.a, l * m.b, lhat * m.c, m.d)


def check_gal2(md, m, l):
    """sigma_l(D(m)) == D(tau_l(m)), both sides evaluated on canonical lifts."""
    from .galois import galois_exponent

    N = md.conductor
    if gcd(l, N) != 1:
        raise NotCoprime(f"gcd({l}, {N}) != 1")
    lhs = mx.frobenius(rep(md, lift(m)), galois_exponent(l, N, md.field_order))
    rhs = rep(md, lift(tau(m, l)))
    return lhs == rhs


def sl2_order(N):
    """|SL2(Z/N)| = N^3 prod_{p | N} (1 - p^-2)."""
    from .cyclotomic import prime_factors

    out = N ** 3
    for p in prime_factors(N):
        out = out // (p * p) * (p * p - 1)
    return out
