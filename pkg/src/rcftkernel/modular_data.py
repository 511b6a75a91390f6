"""Modular data (S, T) of a rational CFT: construction, validation, fusion, file I/O."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from pathlib import Path

from . import matrix as mx
from .cyclotomic import CycNumber, sin_pi, sqrt_int
from .errors import AxiomViolation, InvalidKacData, NonIntegerFusion, SchemaError
from .matrix import PhaseDiagonal

FILE_VERSION = 1


@dataclass(frozen=True)
class PrimaryLabel:
    index: int
    name: str


@dataclass(frozen=True)
class ModularData:
    """S matrix over Q[zeta_field_order] and T = diag(exp(2 pi i t_p)).

    Index 0 is the vacuum.  ``t_exponents`` are Fractions in [0, 1).
    """

    labels: tuple
    s_matrix: tuple
    t_exponents: tuple
    central_charge: Fraction
    field_order: int

    @property
    def size(self):
        return len(self.labels)

    @cached_property
    def conductor(self):
        return lcm(1, *(t.denominator for t in self.t_exponents))

    @cached_property
    def t_integers(self):
        """N * t_p as integers, N the order of T."""
        N = self.conductor
        return tuple(int(t * N) for t in self.t_exponents)

    @cached_property
    def t_diagonal(self):
        return PhaseDiagonal(self.t_exponents)

    @cached_property
    def s_inverse(self):
        return mx.adjoint(self.s_matrix)

    def t_power(self, r):
        """T**r on the pinned branch exp(2 pi i r t_p); r may be rational."""
        return PhaseDiagonal(tuple(r * t for t in self.t_exponents))

    def t_matrix(self, k=1):
        return self.t_power(k).to_matrix(lcm(self.field_order, self.conductor))


# -- construction ---------------------------------------------------------


def kac_table(p, q):
    """Kac labels of M(p, q), one per class (r, s) ~ (p-r, q-s), vacuum first."""
    reps = set()
    for r in range(1, p):
        for s in range(1, q):
            reps.add(min((r, s), (p - r, q - s)))
    return sorted(reps)


def kac_weight(p, q, r, s):
    return Fraction((q * r - p * s) ** 2 - (q - p) ** 2, 4 * p * q)


def minimal_central_charge(p, q):
    return 1 - Fraction(6 * (q - p) ** 2, p * q)


def _check_kac(p, q):
    if p > q:
        p, q = q, p
    if p < 2 or q < 2 or p == q or gcd(p, q) != 1:
        raise InvalidKacData(f"M({p},{q}) needs coprime p, q >= 2")
    return p, q


def minimal_model_spectrum(p, q):
    """(labels, conformal weights, central charge) without building S."""
    p, q = _check_kac(p, q)
    labels = kac_table(p, q)
    return labels, [kac_weight(p, q, r, s) for r, s in labels], minimal_central_charge(p, q)


def t_exponents_from_weights(weights, c):
    return tuple((h - Fraction(c) / 24) % 1 for h in weights)


def minimal_model(p, q, validate=True):
    """Modular data of the Virasoro minimal model M(p, q)."""
    p, q = _check_kac(p, q)
    labels, weights, c = minimal_model_spectrum(p, q)
    t_exps = t_exponents_from_weights(weights, c)
    big = 8 * p * q
    pref = sqrt_int(2 * p * q) * Fraction(2, p * q)
    sines = {}

    def sine(k, m):
        key = (k % (2 * m), m)
        if key not in sines:
            sines[key] = sin_pi(k, m).embed(big)
        return sines[key]

    rows = []
    for r, s in labels:
        row = []
        for rho, sig in labels:
            entry = pref * sine(q * r * rho, p) * sine(p * s * sig, q)
            row.append(-entry if (1 + s * rho + r * sig) % 2 else entry)
        rows.append(tuple(row))
    N = lcm(1, *(t.denominator for t in t_exps))
    s_matrix = mx.at_order(tuple(rows), N)
    md = ModularData(
        labels=tuple(PrimaryLabel(i, f"({r},{s})") for i, (r, s) in enumerate(labels)),
        s_matrix=s_matrix,
        t_exponents=t_exps,
        central_charge=c,
        field_order=N,
    )
    if validate:
        validate_modular_data(md)
    return md



# -- derived integers -------------------------------------------------------


def order_of_t(md):
    """N, the order of T (the conductor)."""
    return md.conductor


def n_zero(md):
    """N0, the lcm of denominators of t_p - t_0, i.e. of the weights mod 1."""
    t0 = md.t_exponents[0]
    return lcm(1, *(((t - t0) % 1).denominator for t in md.t_exponents))


def ratio_e(md):
    N, N0 = order_of_t(md), n_zero(md)
    assert N % N0 == 0
    return N // N0


# -- axioms ---------------------------------------------------------------


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    witness: object = None


def _first_mismatch(A, B):
    for i, (ra, rb) in enumerate(zip(A, B)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return (i, j)
    return None


def charge_conjugation(md, s_squared=None):
    """The permutation p -> conj(p) read off S**2."""
    sq = s_squared if s_squared is not None else mx.matmul(md.s_matrix, md.s_matrix)
    perm = []
    for p, row in enumerate(sq):
        hits = [q for q, x in enumerate(row) if not x.is_zero()]
        if len(hits) != 1 or row[hits[0]] != 1:
            raise AxiomViolation("charge-conjugation", (p,), "row of S^2 is not a unit vector")
        perm.append(hits[0])
    perm = tuple(perm)
    for p, q in enumerate(perm):
        if perm[q] != p:
            raise AxiomViolation("charge-conjugation", (p,), "S^2 is not an involution")
    if perm[0] != 0:
        raise AxiomViolation("charge-conjugation", (0,), "vacuum is not self-conjugate")
    return perm


def check_axioms(md, include_fusion=True):
    """Evaluate every modular-data axiom exactly; never raises on failure."""
    S = md.s_matrix
    size = md.size
    out = []

    bad = [(p, q) for p in range(size) for q in range(p + 1, size) if S[p][q] != S[q][p]]
    out.append(AxiomCheck("symmetry", not bad, bad[0] if bad else None))

    ssd = mx.matmul(S, md.s_inverse)
    bad = _first_mismatch(ssd, mx.identity(size))
    out.append(AxiomCheck("unitarity", bad is None, bad))

    sq = mx.matmul(S, S)
    try:
        perm = charge_conjugation(md, sq)
        out.append(AxiomCheck("charge-conjugation", True))
    except AxiomViolation as exc:
        perm = None
        out.append(AxiomCheck("charge-conjugation", False, exc.witness))

    T, Tinv = md.t_diagonal, md.t_diagonal.inverse()
    lhs = mx.matmul(T.right_apply(S), S)
    rhs = Tinv.right_apply(Tinv.left_apply(S))
    bad = _first_mismatch(lhs, rhs)
    out.append(AxiomCheck("modular-relation", bad is None, bad))

    bad = _first_mismatch(mx.matmul(sq, sq), mx.identity(size))
    out.append(AxiomCheck("s-fourth-power", bad is None, bad))

    ok = (md.t_exponents[0] + md.central_charge / 24) % 1 == 0
    out.append(AxiomCheck("vacuum-phase", ok, None if ok else (0,)))

    if include_fusion and perm is not None and bad is None:
        try:
            fusion(md)
            out.append(AxiomCheck("fusion-integrality", True))
        except NonIntegerFusion as exc:
            out.append(AxiomCheck("fusion-integrality", False, exc.witness))
        except AxiomViolation as exc:
            out.append(AxiomCheck("fusion-integrality", False, exc.witness))
    elif include_fusion:
        out.append(AxiomCheck("fusion-integrality", False, "skipped: earlier axiom failed"))
    return out


def validate_modular_data(md, include_fusion=True):
    for check in check_axioms(md, include_fusion):
        if not check.ok:
            raise AxiomViolation(check.name, check.witness)
    return md


# -- fusion ---------------------------------------------------------------


@dataclass(frozen=True)
class FusionTable:
    coefficients: tuple

    def __getitem__(self, key):
        p, q, r = key
        return self.coefficients[p][q][r]

    @property
    def size(self):
        return len(self.coefficients)


def fusion(md):
    """Verlinde numbers N_pqr = sum_s S_ps S_qs S_rs / S_0s, checked to be in Z>=0."""
    S = md.s_matrix
    size = md.size
    inv0 = []
    for s in range(size):
        if S[0][s].is_zero():
            raise AxiomViolation("vacuum-row", (0, s), "S_0s vanishes")
        inv0.append(S[0][s].inverse())
    scaled = [[S[p][s] * inv0[s] for s in range(size)] for p in range(size)]
    coeffs = [[[None] * size for _ in range(size)] for _ in range(size)]
    for q in range(size):
        for r in range(q, size):
            pair = [S[q][s] * S[r][s] for s in range(size)]
            for p in range(r + 1):
                total = CycNumber.zero(md.field_order)
                for s in range(size):
                    total = total + scaled[p][s] * pair[s]
                if not total.is_rational():
                    raise NonIntegerFusion((p, q, r), total)
                value = total.to_fraction()
                if value.denominator != 1 or value < 0:
                    raise NonIntegerFusion((p, q, r), value)
                value = int(value)
                for a, b, c in {(p, q, r), (p, r, q), (q, p, r), (q, r, p), (r, p, q), (r, q, p)}:
                    coeffs[a][b][c] = value
    return FusionTable(tuple(tuple(tuple(row) for row in plane) for plane in coeffs))


# -- file format ----------------------------------------------------------


def to_json(md):
    return {
        "version": FILE_VERSION,
        "labels": [label.name for label in md.labels],
        "central_charge": [md.central_charge.numerator, md.central_charge.denominator],
        "t_exponents": [[t.numerator, t.denominator] for t in md.t_exponents],
        "field_order": md.field_order,
        "s_matrix": [[x.to_json() for x in row] for row in md.s_matrix],
    }


def _fraction(obj, what):
    try:
        num, den = obj
        num, den = int(num), int(den)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{what}: expected [num, den], got {obj!r}") from exc
    if den == 0:
        raise SchemaError(f"{what}: zero denominator")
    return Fraction(num, den)


def from_json(obj, validate=True):
    if not isinstance(obj, dict):
        raise SchemaError("modular-data file must be a JSON object")
    for key in ("version", "labels", "central_charge", "t_exponents", "field_order", "s_matrix"):
        if key not in obj:
            raise SchemaError(f"missing key {key!r}")
    if obj["version"] != FILE_VERSION:
        raise SchemaError(f"unsupported version {obj['version']!r}")
    names = obj["labels"]
    size = len(names)
    if size == 0:
        raise SchemaError("no primaries")
    t_exps = tuple(_fraction(t, f"t_exponents[{i}]") for i, t in enumerate(obj["t_exponents"]))
    if len(t_exps) != size:
        raise SchemaError("t_exponents length does not match labels")
    if any(not 0 <= t < 1 for t in t_exps):
        raise SchemaError("t_exponents must lie in [0, 1)")
    c = _fraction(obj["central_charge"], "central_charge")
    order = obj["field_order"]
    if not isinstance(order, int) or order < 1:
        raise SchemaError("field_order must be a positive integer")
    rows = obj["s_matrix"]
    if len(rows) != size or any(len(row) != size for row in rows):
        raise SchemaError("s_matrix must be square of size len(labels)")
    try:
        s_matrix = tuple(tuple(CycNumber.from_json(x) for x in row) for row in rows)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad s_matrix entry: {exc}") from exc
    if any(order % x.order for row in s_matrix for x in row):
        raise SchemaError("s_matrix entry order does not divide field_order")
    s_matrix = mx.at_order(s_matrix, order)
    md = ModularData(
        labels=tuple(PrimaryLabel(i, str(name)) for i, name in enumerate(names)),
        s_matrix=s_matrix,
        t_exponents=t_exps,
        central_charge=c,
        field_order=order,
    )
    if validate:
        validate_modular_data(md)
    return md


def save(md, path):
    Path(path).write_text(json.dumps(to_json(md), indent=1) + "\n")


def load(path, validate=True):
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return from_json(obj, validate=validate)


def spectrum_invariants(p, q):
    """(N, N0, e, c) for M(p, q) straight from the Kac spectrum; no S matrix needed."""
    _, weights, c = minimal_model_spectrum(p, q)
    t = t_exponents_from_weights(weights, c)
    N = lcm(1, *(x.denominator for x in t))
    N0 = lcm(1, *(Fraction(w).denominator for w in weights))
    return N, N0, N // N0, c
