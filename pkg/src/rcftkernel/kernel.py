"""Kernel of the modular representation: membership, enumeration mod N, structure."""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, lcm

from sympy import divisors, isprime, reduced_totient

from . import groups
from .errors import BudgetExceeded
from .galois import extract_g, galois_exponent, units
from .modular_data import n_zero
from .sl2 import SL2NMatrix, sl2_order

DEFAULT_BUDGET = 10 ** 7
THREADS_ENV = "RCFT_KERNEL_THREADS"

IMPOSSIBLE = None


class KernelCriterion:
    """Precomputed form of sigma_d(S) T^b = T^c S for every unit d mod N.

    For each (p, q) with S_pq != 0 we store k with sigma_d(S)_pq = zeta_N^k S_pq;
    the criterion then reads k + b T_q = c T_p (mod N), with T_p = N t_p.  A unit d
    for which some ratio is not an N-th root of unity admits no kernel element.
    """

    def __init__(self, md):
        self.md = md
        self.N = N = md.conductor
        self.t = md.t_integers
        S = md.s_matrix
        size = md.size
        order = lcm(md.field_order, N)
        rotations = {}
        for p in range(size):
            for q in range(size):
                x = S[p][q]
                if not x.is_zero():
                    rotations[p, q] = {x.mul_root(k, N).key(): k for k in range(N)}
        self.constraints = {}
        for d in units(N):
            sd = [[x.frobenius(galois_exponent(d, N, md.field_order)) for x in row] for row in S]
            cons = []
            for (p, q), table in rotations.items():
                k = table.get(sd[p][q].embed(order).key())
                if k is None:
                    cons = IMPOSSIBLE
                    break
                cons.append((self.t[p], self.t[q], k))
            self.constraints[d % N] = cons

    def holds(self, b, c, d):
        """Criterion for a residue triple with d a unit mod N."""
        cons = self.constraints[d % self.N]
        if cons is IMPOSSIBLE:
            return False
        N = self.N
        return all((k + b * tq - c * tp) % N == 0 for tp, tq, k in cons)

    def contains(self, m):
        """Membership of m (SL2ZMatrix or SL2NMatrix) in the kernel image."""
        N = self.N
        if N == 1:
            return True
        a, b, c, d = (m.a % N, m.b % N, m.c % N, m.d % N)
        if gcd(d, N) != 1:
            k = next(k for k in range(1, N + 1) if gcd(d + k * c, N) == 1)
            # t^-k m t^k has the same kernel membership
            a, b, d = a - k * c, b - k * k * c + k * (a - d), d + k * c
        return self.holds(b, c, d)


def criterion(md):
    cached = md.__dict__.get("_kernel_criterion")
    if cached is None:
        cached = KernelCriterion(md)
        md.__dict__["_kernel_criterion"] = cached
    return cached


def is_in_kernel(md, m):
    return criterion(md).contains(m)


# -- enumeration ----------------------------------------------------------


def _solve_linear(alpha, beta, N):
    """Solutions of alpha x = beta (mod N) as (x0, modulus) or None."""
    g = gcd(alpha, N)
    if beta % g:
        return None
    M = N // g
    if M == 1:
        return 0, 1
    return (beta // g) * pow(alpha // g, -1, M) % M, M


def _unit_rows(N, t, constraints, c_values):
    """Kernel elements (a, b, c, d) with d a unit, for the given bottom-left entries."""
    out = []
    for c in c_values:
        for d, cons in constraints.items():
            if cons is IMPOSSIBLE:
                continue
            x0, M = 0, 1
            for tp, tq, k in cons:
                # b = x0 + M y:  tq M y = c tp - k - tq x0  (mod N)
                sol = _solve_linear(tq * M, c * tp - k - tq * x0, N)
                if sol is None:
                    break
                y0, My = sol
                x0, M = (x0 + M * y0) % N, M * My
            else:
                dinv = pow(d, -1, N)
                for b in range(x0, N, M):
                    out.append(((1 + b * c) * dinv % N, b, c, d))
    return out


def _brute_rows(N, crit_state, c_values):
    t, constraints = crit_state
    out = []
    for c in c_values:
        for d in range(N):
            if gcd(gcd(c, d), N) != 1:
                continue
            for a, b in _top_rows(N, c, d):
                cc, dd, aa, bb = c, d, a, b
                if gcd(dd, N) != 1:
                    k = next(k for k in range(1, N + 1) if gcd(dd + k * cc, N) == 1)
                    aa, bb, dd = aa - k * cc, bb - k * k * cc + k * (aa - dd), dd + k * cc
                cons = constraints[dd % N]
                if cons is not IMPOSSIBLE and all((k + bb * tq - cc * tp) % N == 0 for tp, tq, k in cons):
                    out.append((a, b, c, d))
    return out


def _top_rows(N, c, d):
    """All (a, b) mod N with a d - b c = 1."""
    from .sl2 import _egcd

    cc = c if c else N
    dd = d
    while gcd(cc, dd) != 1:
        dd += N
    _, x, y = _egcd(dd, cc)
    a0, b0 = x % N, -y % N
    return [((a0 + j * c) % N, (b0 + j * d) % N) for j in range(N)]


def _threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _parallel(fn, N, payload, threads):
    cs = list(range(N))
    if threads <= 1 or N < 8:
        return fn(N, *payload, cs)
    chunks = [cs[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(fn, [N] * threads, *([p] * threads for p in payload), chunks)
    return [x for part in parts for x in part]


def kernel_elements(md, budget=DEFAULT_BUDGET, brute=False, threads=None):
    """mu_N(K) as a set of (a, b, c, d) tuples mod N."""
    N = md.conductor
    required = sl2_order(N)
    if required > budget:
        raise BudgetExceeded(required, budget)
    if N == 1:
        return {(0, 0, 0, 0)}
    crit = criterion(md)
    threads = threads or _threads()
    if brute:
        found = _parallel(_brute_rows, N, ((crit.t, crit.constraints),), threads)
        return set(found)
    unit_part = _parallel(_unit_rows, N, (crit.t, crit.constraints), threads)
    # every kernel element is a t-conjugate of one whose d is a unit
    out = set()
    for a, b, c, d in unit_part:
        for k in range(N):
            out.add(((a + k * c) % N, (b + k * (d - a) - k * k * c) % N, c, (d - k * c) % N))
    return out


def _mul(N):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % N, (a * f + b * h) % N, (c * e + d * g) % N, (c * f + d * h) % N)
    return mul


def _inv(N):
    def inv(x):
        a, b, c, d = x
        return (d % N, -b % N, -c % N, a % N)
    return inv


@dataclass
class KernelReport:
    modulus: int
    order: int
    center_order: int
    center_structure: list
    derived_order: int
    derived_exponent: int
    derived_structure: list | None
    generators: list
    timing: float = field(default=0.0, compare=False)

    @property
    def index(self):
        return self.order


def kernel_image(md, budget=DEFAULT_BUDGET, brute=False, threads=None):
    start = time.perf_counter()
    N = md.conductor
    elements = kernel_elements(md, budget, brute=brute, threads=threads)
    mul, inv = _mul(N), _inv(N)
    ident = (1 % N, 0, 0, 1 % N)
    if ident not in elements or not groups.is_closed(elements, mul):
        raise AssertionError("kernel image is not a subgroup")
    cen = groups.center(elements, mul)
    der = groups.derived_subgroup(elements, mul, inv, ident)
    der_abelian = groups.is_abelian(der, mul)
    gens = groups.greedy_generators(elements, mul, ident)
    return KernelReport(
        modulus=N,
        order=len(elements),
        center_order=len(cen),
        center_structure=groups.abelian_invariants(cen, mul, ident),
        derived_order=len(der),
        derived_exponent=groups.exponent(der, mul, ident),
        derived_structure=groups.abelian_invariants(der, mul, ident) if der_abelian else None,
        generators=[SL2NMatrix(N, *g) for g in gens],
        timing=time.perf_counter() - start,
    )


# -- consequences of the criterion ------------------------------------------


def kernel_consequences(md, m):
    """The four congruences implied by kernel membership (m with d a unit mod N)."""
    N = md.conductor
    N0 = n_zero(md)
    b, c, d = m.b % N, m.c % N, m.d % N
    g = extract_g(md, d)
    t0 = md.t_exponents[0]
    sign_exp = 0 if g.signs[0] == 1 else 1
    phase = (t0 * (c - b)) % 1
    return {
        "g-squared": (g @ g).perm == tuple(range(md.size)) and set((g @ g).signs) == {1}
        and pow(d, 4, N) == 1 % N,
        "b-c-mod-N0": (b - (1 - d * d)) % N0 == 0 and (c - (1 - d * d)) % N0 == 0,
        "vacuum-sign": phase * 2 == sign_exp and (2 * c - 2 * b) % N == 0,
        "2c-mod-N0": (2 * c) % N0 == 0,
    }


def unit_conjugate(m, N):
    """t^-k m t^k for the least k >= 0 making d a unit mod N."""
    a, b, c, d = (m.a % N, m.b % N, m.c % N, m.d % N)
    k = next(k for k in range(0, N + 1) if gcd(d + k * c, N) == 1)
    return SL2NMatrix(N, a - k * c, b - k * k * c + k * (a - d), c, d + k * c)


# -- conductor bound ----------------------------------------------------------


def carmichael(n):
    """Exponent of the unit group (Z/n)*."""
    return int(reduced_totient(n))


def conductor_bound_naive(r):
    """Largest N with lambda(N) dividing 2 lcm(1..r)."""
    target = 2 * lcm(*range(1, r + 1))
    bound = 1
    # p can only divide N when lambda(p) = p - 1 divides the target
    for d in divisors(target):
        p = d + 1
        if not isprime(p):
            continue
        k = 1
        while target % carmichael(p ** (k + 1)) == 0:
            k += 1
        bound *= p ** k
    return bound


def divides_bound(N, r):
    """N | conductor_bound_naive(r), decided via lambda(N) | 2 lcm(1..r) without building the bound."""
    return (2 * lcm(*range(1, r + 1))) % carmichael(N) == 0
