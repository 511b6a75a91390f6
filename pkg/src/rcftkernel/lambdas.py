"""Lambda(r) = T^-r M T^-r* and the diagonal corrections Z_l(r)."""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import matrix as mx
from .errors import NotCoprime, NotDiagonal
from .galois import extract_g, galois_exponent, units
from .matrix import PhaseDiagonal
from .modular_data import charge_conjugation
from .sl2 import SL2ZMatrix, rep


def r_star(r):
    """x/n where r = k/n and k x - n y = 1, with 0 <= x < n."""
    r = Fraction(r)
    k, n = r.numerator, r.denominator
    return Fraction(pow(k, -1, n) if n > 1 else 0, n)


def bezout_matrix(r, shift=0):
    """((k, y), (n, x)) with k x - n y = 1; ``shift`` moves x by shift * n."""
    r = Fraction(r)
    k, n = r.numerator, r.denominator
    x = (pow(k, -1, n) if n > 1 else 0) + shift * n
    y, rem = divmod(k * x - 1, n)
    assert rem == 0
    return SL2ZMatrix(k, y, n, x)


@dataclass(frozen=True)
class LambdaMatrix:
    r: Fraction
    entries: tuple


def working_order(md, r):
    N = md.conductor
    return lcm(N, Fraction(r).denominator * N, md.field_order)


def lambda_matrix(md, r, shift=0):
    """Lambda(r) on the pinned branch; ``shift`` selects another Bezout solution."""
    r = Fraction(r)
    m = bezout_matrix(r, shift)
    rs = Fraction(m.d, m.c)
    M = rep(md, m)
    t = md.t_exponents
    order = working_order(md, r)
    out = tuple(tuple(x.mul_phase(-r * t[p] - rs * t[q]).embed(order) for q, x in enumerate(row))
                for p, row in enumerate(M))
    return LambdaMatrix(r, out)


def lambda_one_over_n(md, n):
    """T^-1/n S^-1 T^-n S T^-1/n."""
    tn = md.t_power(Fraction(-1, n))
    out = (md.t_diagonal ** -n).right_apply(md.s_inverse)
    out = mx.matmul(out, md.s_matrix)
    out = tn.left_apply(tn.right_apply(out))
    return LambdaMatrix(Fraction(1, n), mx.at_order(out, working_order(md, Fraction(1, n))))


def _matching_phase(x, y, order):
    """e in (1/order)Z with x == y * exp(2 pi i e), or None; y must be nonzero."""
    ratio = x.to_complex() / y.to_complex()
    k = round(cmath.phase(ratio) * order / (2 * cmath.pi)) % order
    e = Fraction(k, order)
    return e if y.mul_phase(e) == x else None


class ZCache:
    """Memoised Lambda matrices, G_l and Z_l(r) for one model."""

    def __init__(self, md):
        self.md = md
        self._lam = {}
        self._g = {}
        self._z = {}

    def lam(self, r):
        r = Fraction(r) % 1
        if r not in self._lam:
            self._lam[r] = lambda_matrix(self.md, r).entries
        return self._lam[r]

    def g(self, l):
        N = self.md.conductor
        key = l % N
        if key not in self._g:
            self._g[key] = extract_g(self.md, l)
        return self._g[key]

    def z(self, l, r):
        """Z_l(r), solved from sigma_l(Lambda(r*)) = Lambda(l r*) G_l Z_l(r)."""
        md = self.md
        r = Fraction(r) % 1
        n = r.denominator
        N = md.conductor
        if gcd(l, N * n) != 1:
            raise NotCoprime(f"gcd({l}, {N * n}) != 1")
        key = (l % (N * n), r)
        if key in self._z:
            return self._z[key]
        rs = r_star(r)
        order = working_order(md, rs)
        lexp = galois_exponent(l, N * n, order)
        lhs = mx.frobenius(self.lam(rs), lexp)
        g = self.g(l)
        base = self.lam(l * rs)
        # (Lambda G)_p^q = eps(q) Lambda_p^{pi q}
        exps = []
        for q in range(md.size):
            col = [base[p][g.perm[q]] * g.signs[q] for p in range(md.size)]
            p0 = next(p for p in range(md.size) if not col[p].is_zero())
            e = _matching_phase(lhs[p0][q], col[p0], 2 * order)
            if e is None or any(col[p].mul_phase(e) != lhs[p][q] for p in range(md.size)):
                raise NotDiagonal(f"Z_{l}({r}) column {q} is not a phase multiple")
            exps.append(e)
        z = PhaseDiagonal(tuple(exps))
        self._z[key] = z
        return z


def extract_z(md, l, r, cache=None):
    return (cache or ZCache(md)).z(l, r)


# -- identity checks ------------------------------------------------------


def check_zmult(cache, l, r, n):
    """Z_l(r)^n == Z_l(n r) for n coprime to den(r)."""
    return cache.z(l, r) ** n == cache.z(l, n * r)


def check_zadd(cache, l, r1, r2):
    """Z_l(r1) Z_l(r2) == Z_l(r1 + r2)."""
    return cache.z(l, r1) * cache.z(l, r2) == cache.z(l, r1 + r2)


def check_zcoc(cache, l, m, r):
    """G_l^-1 Z_m(lhat r) G_l == Z_lm(r) Z_l(r)^-m."""
    n = Fraction(r).denominator
    lhat = pow(l, -1, n) if n > 1 else 1
    lhs = cache.z(m, lhat * r).permuted(cache.g(l).perm)
    rhs = cache.z(l * m, r) * cache.z(l, r) ** (-m)
    return lhs == rhs


def check_gtcom1(cache, l, r):
    """G_l^-1 T^r G_l == T^(l^2 r) Z_l(r)^l."""
    md = cache.md
    lhs = md.t_power(r).permuted(cache.g(l).perm)
    rhs = md.t_power(l * l * Fraction(r)) * cache.z(l, r) ** l
    return lhs == rhs


def check_lambda_transpose(cache, r):
    """Lambda(r*)_p^q == Lambda(r)_q^p."""
    return cache.lam(r_star(r)) == mx.transpose(cache.lam(r))


def check_lambda_conjugate(cache, r):
    """Lambda(-r)_p^q == conj(Lambda(r)_{pbar}^q)."""
    lam = cache.lam(r)
    cc = charge_conjugation(cache.md)
    return cache.lam(-Fraction(r)) == tuple(tuple(x.conjugate() for x in lam[cc[p]]) for p in range(len(lam)))


def check_lambda_bezout(md, r):
    return lambda_matrix(md, r).entries == lambda_matrix(md, r, shift=1).entries == \
        lambda_matrix(md, r, shift=-2).entries


def sample_rationals(max_den):
    return [Fraction(k, n) for n in range(1, max_den + 1) for k in range(n) if gcd(k, n) == 1]


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: object = None

    def record(self, ok, witness):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = witness

    @property
    def ok(self):
        return self.failed == 0


def lemma_suite(md, max_l=None, max_den=8, max_pairs=None):
    """Run the Lambda/Z identities over bounded sweeps; returns SuiteResults by name."""
    N = md.conductor
    max_l = max_l or min(N, 100)
    cache = ZCache(md)
    ls = [l for l in units(N) if l <= max_l]
    rs = sample_rationals(max_den)
    names = ["lambda-zero", "lambda-periodic", "lambda-one-over-N", "lambda-one-over-n",
             "lambda-bezout", "lambda-transpose", "lambda-conjugate", "z-trivial",
             "zmult", "zadd", "zcoc", "gtcom1", "z-order"]
    res = {name: SuiteResult(name) for name in names}

    res["lambda-zero"].record(lambda_matrix(md, 0).entries == mx.at_order(md.s_matrix, working_order(md, 0)), 0)
    res["lambda-one-over-N"].record(
        lambda_matrix(md, Fraction(1, N)).entries
        == md.t_power(Fraction(-2, N)).to_matrix(working_order(md, Fraction(1, N))), N)
    for r in rs:
        res["lambda-periodic"].record(lambda_matrix(md, r + 1).entries == cache.lam(r), r)
        res["lambda-bezout"].record(check_lambda_bezout(md, r), r)
        res["lambda-transpose"].record(check_lambda_transpose(cache, r), r)
        res["lambda-conjugate"].record(check_lambda_conjugate(cache, r), r)
    for n in range(1, max(max_den, 12) + 1):
        res["lambda-one-over-n"].record(lambda_one_over_n(md, n).entries == cache.lam(Fraction(1, n)), n)

    pairs = 0
    for r in rs:
        n = r.denominator
        lr = [l for l in ls if gcd(l, n) == 1]
        for l in lr:
            z = cache.z(l, r)
            res["z-order"].record(n % z.order() == 0, (l, r))
            res["gtcom1"].record(check_gtcom1(cache, l, r), (l, r))
            if r == 0:
                res["z-trivial"].record(z.is_identity(), (l, r))
            res["z-trivial"].record(cache.z(l, r + 1) == z, (l, r + 1))
            for k in range(2, n):
                if gcd(k, n) == 1:
                    res["zmult"].record(check_zmult(cache, l, r, k), (l, r, k))
            for r2 in rs:
                if gcd(l, r2.denominator) == 1 and r2.denominator <= max_den:
                    res["zadd"].record(check_zadd(cache, l, r, r2), (l, r, r2))
            for m in lr:
                if max_pairs is not None and pairs >= max_pairs:
                    break
                pairs += 1
                res["zcoc"].record(check_zcoc(cache, l, m, r), (l, m, r))
    return res
