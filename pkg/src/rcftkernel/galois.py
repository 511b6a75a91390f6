"""Galois action sigma_l on S and T, and the monomial matrices G_l."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import matrix as mx
from .errors import NotCoprime, NotMonomial


@dataclass(frozen=True)
class MonomialMatrix:
    """(G)_p^q = signs[q] * delta(p, perm[q])."""

    perm: tuple
    signs: tuple

    @classmethod
    def identity(cls, size):
        return cls(tuple(range(size)), (1,) * size)

    def __matmul__(self, other):
        # (G_a G_b)_p^q = eps_a(pi_b q) eps_b(q) delta(p, pi_a pi_b q)
        perm = tuple(self.perm[other.perm[q]] for q in range(len(self.perm)))
        signs = tuple(self.signs[other.perm[q]] * other.signs[q] for q in range(len(self.perm)))
        return MonomialMatrix(perm, signs)

    def inverse(self):
        size = len(self.perm)
        perm = [0] * size
        signs = [0] * size
        for q, p in enumerate(self.perm):
            perm[p] = q
            signs[p] = self.signs[q]
        return MonomialMatrix(tuple(perm), tuple(signs))

    def transpose(self):
        return self.inverse()

    def is_diagonal(self):
        return all(p == q for q, p in enumerate(self.perm))

    def to_matrix(self, order=1):
        size = len(self.perm)
        rows = [[0] * size for _ in range(size)]
        for q, p in enumerate(self.perm):
            rows[p][q] = self.signs[q]
        return mx.from_ints(rows, order)

    def cycles(self):
        """Cycle notation of the permutation, fixed points included."""
        seen = set()
        parts = []
        for start in range(len(self.perm)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.perm[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.perm[nxt]
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts)


def galois_exponent(l, N, order):
    """A representative of l mod N that is coprime to ``order``.

    Only meaningful when the values acted on lie in Q[zeta_N]; then sigma_l
    does not depend on the representative.
    """
    if gcd(l, N) != 1:
        raise NotCoprime(f"gcd({l}, {N}) != 1")
    l %= N
    if N == 1:
        l = 1
    while gcd(l, order) != 1:
        l += N
    return l


def sigma_on_matrix(M, l):
    """Entrywise Frobenius sigma_l."""
    for row in M:
        for x in row:
            if gcd(l, x.order) != 1:
                raise NotCoprime(f"gcd({l}, {x.order}) != 1")
    return mx.frobenius(M, l)


def sigma_s(md, l):
    N = md.conductor
    return mx.frobenius(md.s_matrix, galois_exponent(l, N, md.field_order))


def extract_g(md, l):
    """The monomial G_l with sigma_l(S) = S G_l, found by matching columns."""
    S = md.s_matrix
    size = md.size
    target = sigma_s(md, l)
    cols = list(zip(*S))
    neg_cols = [tuple(-x for x in col) for col in cols]
    perm, signs = [], []
    for q, col in enumerate(zip(*target)):
        hits = [(qq, 1) for qq in range(size) if cols[qq] == col]
        hits += [(qq, -1) for qq in range(size) if neg_cols[qq] == col]
        if len(hits) != 1:
            raise NotMonomial(f"column {q} of sigma_{l}(S) matches {len(hits)} signed columns of S")
        perm.append(hits[0][0])
        signs.append(hits[0][1])
    if sorted(perm) != list(range(size)):
        raise NotMonomial(f"sigma_{l}(S) S^-1 is not a permutation")
    return MonomialMatrix(tuple(perm), tuple(signs))


def g_via_closed_form(md, l):
    """S^-1 T^l S T^lhat S T^l with lhat = l^-1 mod N, evaluated exactly."""
    N = md.conductor
    if gcd(l, N) != 1:
        raise NotCoprime(f"gcd({l}, {N}) != 1")
    lhat = pow(l, -1, N) if N > 1 else 1
    S = md.s_matrix
    T = md.t_diagonal
    out = (T ** l).right_apply(md.s_inverse)
    out = mx.matmul(out, S)
    out = (T ** lhat).right_apply(out)
    out = mx.matmul(out, S)
    return (T ** l).right_apply(out)


def gtcom_witness(md, l, g=None):
    """First p with t_{pi_l p} != l^2 t_p (mod 1), or None."""
    g = g or extract_g(md, l)
    t = md.t_exponents
    for p in range(md.size):
        if (t[g.perm[p]] - l * l * t[p]) % 1:
            return p
    return None


def check_gtcom(md, l):
    """G_l^-1 T G_l == T^(l^2)."""
    return gtcom_witness(md, l) is None


def units(N):
    return [l for l in range(1, max(N, 2)) if gcd(l, N) == 1] if N > 1 else [1]


def conductor_fixed_field_check(md):
    """S lies in Q[zeta_N], and (when there is room) some sigma_l with l != 1 mod N moves S."""
    N = md.conductor
    for row in md.s_matrix:
        for x in row:
            big = x.order * N // gcd(x.order, N)
            if not x.embed(big).is_in_subfield(N):
                return False
    movers = [l for l in units(N) if l % N != 1 % N]
    if not movers:
        return True
    return any(sigma_s(md, l) != md.s_matrix for l in movers)
