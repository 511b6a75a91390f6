"""Square matrices over cyclotomic fields, stored as tuples of row tuples."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclotomic import CycNumber


def identity(size, order=1):
    one, zero = CycNumber.one(order), CycNumber.zero(order)
    return tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size))


def from_ints(rows, order=1):
    return tuple(tuple(CycNumber.rational(x, order) for x in row) for row in rows)


def matmul(A, B):
    cols = list(zip(*B))
    out = []
    for row in A:
        nz = [(k, x) for k, x in enumerate(row) if not x.is_zero()]
        new_row = []
        for col in cols:
            acc = None
            for k, x in nz:
                y = col[k]
                if y.is_zero():
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            new_row.append(acc if acc is not None else CycNumber.zero(row[0].order))
        out.append(tuple(new_row))
    return tuple(out)


def matprod(*mats):
    result = mats[0]
    for m in mats[1:]:
        result = matmul(result, m)
    return result


def transpose(A):
    return tuple(zip(*A))


def entrywise(f, A):
    return tuple(tuple(f(x) for x in row) for row in A)


def conjugate(A):
    return entrywise(CycNumber.conjugate, A)


def adjoint(A):
    """Conjugate transpose; the inverse of a unitary matrix."""
    return transpose(conjugate(A))


def frobenius(A, l):
    return entrywise(lambda x: x.frobenius(l), A)


def neg(A):
    return entrywise(CycNumber.__neg__, A)


def at_order(A, m):
    """Rewrite every entry with cyclotomic order m (embed or restrict)."""
    def conv(x):
        if m % x.order == 0:
            return x.embed(m)
        return x.restrict(m)
    return entrywise(conv, A)


def common_order(A):
    return lcm(*(x.order for row in A for x in row))


def is_identity(A):
    return all((x == (1 if i == j else 0)) for i, row in enumerate(A) for j, x in enumerate(row))


def to_complex(A):
    return [[x.to_complex() for x in row] for row in A]


def _mod1(e):
    return Fraction(e) - (Fraction(e).numerator // Fraction(e).denominator)


@dataclass(frozen=True)
class PhaseDiagonal:
    """Diagonal unitary diag(exp(2 pi i e_p)) with exponents e_p kept in [0, 1)."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(_mod1(e) for e in self.exponents))

    @classmethod
    def identity(cls, size):
        return cls((0,) * size)

    def __len__(self):
        return len(self.exponents)

    def __mul__(self, other):
        return PhaseDiagonal(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k):
        return PhaseDiagonal(tuple(k * e for e in self.exponents))

    def inverse(self):
        return self ** -1

    def order(self):
        return lcm(1, *(e.denominator for e in self.exponents))

    def is_identity(self):
        return not any(self.exponents)

    def permuted(self, perm):
        """diag(e_{perm[q]})_q, i.e. G^-1 D G for a monomial G with permutation perm."""
        return PhaseDiagonal(tuple(self.exponents[perm[q]] for q in range(len(perm))))

    def left_apply(self, A):
        """self @ A (row p scaled by exp(2 pi i e_p))."""
        return tuple(tuple(x.mul_phase(e) for x in row) for e, row in zip(self.exponents, A))

    def right_apply(self, A):
        """A @ self (column q scaled by exp(2 pi i e_q))."""
        return tuple(tuple(x.mul_phase(e) for x, e in zip(row, self.exponents)) for row in A)

    def to_matrix(self, order=None):
        order = order or self.order()
        zero = CycNumber.zero(order)
        rows = []
        for i, e in enumerate(self.exponents):
            root = CycNumber.root_of_unity(e).embed(order)
            rows.append(tuple(root if j == i else zero for j in range(len(self))))
        return tuple(rows)
