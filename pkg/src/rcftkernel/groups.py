"""Brute-force structure of small finite groups given as sets of hashable elements."""
from __future__ import annotations

from collections import deque

from .cyclotomic import prime_factors


def closure(gens, mul, identity):
    """Subgroup generated by ``gens`` (finite group, so products suffice)."""
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_closed(elements, mul):
    return all(mul(x, y) in elements for x in elements for y in elements)


def element_order(x, mul, identity):
    k, y = 1, x
    while y != identity:
        y = mul(y, x)
        k += 1
    return k


def exponent(elements, mul, identity):
    from math import lcm

    return lcm(1, *(element_order(x, mul, identity) for x in elements))


def center(elements, mul):
    elements = list(elements)
    return {z for z in elements if all(mul(z, x) == mul(x, z) for x in elements)}


def derived_subgroup(elements, mul, inv, identity):
    elements = list(elements)
    comms = {mul(mul(inv(x), inv(y)), mul(x, y)) for x in elements for y in elements}
    return closure(sorted(comms), mul, identity)


def is_abelian(elements, mul):
    elements = list(elements)
    return all(mul(x, y) == mul(y, x) for i, x in enumerate(elements) for y in elements[i:])


def abelian_invariants(elements, mul, identity):
    """Elementary divisors (prime powers, ascending) of a finite abelian group."""
    orders = [element_order(x, mul, identity) for x in elements]
    out = []
    for p in sorted(prime_factors(len(orders))):
        # c[k] = log_p #{x : x^(p^k) = 1}
        counts = [0]
        k = 1
        while True:
            size = sum(1 for o in orders if (p ** k) % o == 0)
            logs = _log(size, p)
            counts.append(logs)
            if size == p ** prime_factors(len(orders))[p]:
                break
            k += 1
        # number of cyclic factors of order >= p^k is counts[k] - counts[k-1]
        at_least = [counts[k] - counts[k - 1] for k in range(1, len(counts))] + [0]
        for k in range(1, len(at_least)):
            out.extend([p ** k] * (at_least[k - 1] - at_least[k]))
    return sorted(out)


def _log(x, p):
    k = 0
    while x > 1:
        assert x % p == 0
        x //= p
        k += 1
    return k


def greedy_generators(elements, mul, identity, key=None):
    """Small generating set: repeatedly add the element whose inclusion grows the
    generated subgroup most (ties broken by ``key`` order)."""
    target = set(elements)
    ordered = sorted(target, key=key)
    gens = []
    current = {identity}
    while current != target:
        best, best_size, best_group = None, -1, None
        for x in ordered:
            if x in current:
                continue
            grp = closure(gens + [x], mul, identity)
            if len(grp) > best_size:
                best, best_size, best_group = x, len(grp), grp
        gens.append(best)
        current = best_group
    return gens
