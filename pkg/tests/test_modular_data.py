import json
from fractions import Fraction
from math import gcd

import pytest

from rcftkernel import matrix as mx
from rcftkernel.cyclotomic import CycNumber
from rcftkernel.errors import AxiomViolation, InvalidKacData, SchemaError
from rcftkernel.modular_data import (
    charge_conjugation, check_axioms, from_json, fusion, kac_table, load, minimal_model,
    minimal_model_spectrum, n_zero, order_of_t, ratio_e, save, spectrum_invariants, to_json,
)


def test_lee_yang_spectrum(lee_yang):
    _, weights, c = minimal_model_spectrum(2, 5)
    assert sorted(weights) == [Fraction(-1, 5), 0]
    assert c == Fraction(-22, 5)
    assert lee_yang.size == 2


def test_ising_spectrum(ising):
    _, weights, c = minimal_model_spectrum(3, 4)
    assert sorted(weights) == [0, Fraction(1, 16), Fraction(1, 2)]
    assert c == Fraction(1, 2)
    assert ising.size == 3


def test_ising_s_matrix_exact(ising):
    h = CycNumber.rational(Fraction(1, 2))
    r = CycNumber.root(1, 8) + CycNumber.root(-1, 8)
    expected = ((h, r * h, h), (r * h, 0, -r * h), (h, -r * h, h))
    assert ising.s_matrix == expected


def test_vacuum_first_and_kac_count():
    for p, q in [(2, 5), (3, 4), (3, 8), (4, 5)]:
        labels = kac_table(p, q)
        assert labels[0] == (1, 1)
        assert len(labels) == (p - 1) * (q - 1) // 2


@pytest.mark.parametrize("p,q", [(2, 4), (1, 5), (3, 3), (4, 6)])
def test_invalid_kac(p, q):
    with pytest.raises(InvalidKacData):
        minimal_model(p, q)


def test_swapped_arguments_give_same_model():
    assert minimal_model(5, 2) == minimal_model(2, 5)


@pytest.mark.parametrize("pq,N,N0,e", [((2, 5), 60, 5, 12), ((3, 4), 48, 16, 3), ((2, 7), 42, 7, 6)])
def test_conductor_data(pq, N, N0, e):
    md = minimal_model(*pq)
    assert (order_of_t(md), n_zero(md), ratio_e(md)) == (N, N0, e)
    assert spectrum_invariants(*pq)[:3] == (N, N0, e)


def test_charge_conjugation_trivial(lee_yang, ising):
    assert charge_conjugation(lee_yang) == (0, 1)
    assert charge_conjugation(ising) == (0, 1, 2)


@pytest.mark.parametrize("pq", [(2, 5), (3, 4), (2, 7), (3, 5), (3, 8), (2, 9)])
def test_axioms_hold(pq):
    checks = check_axioms(minimal_model(*pq, validate=False))
    assert [c.name for c in checks if not c.ok] == []
    assert {c.name for c in checks} >= {"symmetry", "unitarity", "modular-relation", "fusion-integrality"}


def test_fusion_examples(lee_yang, ising):
    assert fusion(lee_yang)[1, 1, 1] == 1
    f = fusion(ising)
    assert f[1, 1, 2] == 1
    assert f[1, 1, 1] == 0
    assert f[1, 1, 0] == 1
    for md in (lee_yang, ising):
        f = fusion(md)
        assert [f[0, 0, r] for r in range(md.size)] == [1] + [0] * (md.size - 1)


def test_fusion_symmetric_and_associative():
    md = minimal_model(3, 5)
    f = fusion(md)
    n = md.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert f[a, b, c] == f[b, a, c] == f[c, b, a]
                for d in range(n):
                    lhs = sum(f[a, b, x] * f[x, c, d] for x in range(n))
                    rhs = sum(f[b, c, x] * f[a, x, d] for x in range(n))
                    assert lhs == rhs


def test_round_trip(tmp_path, ising):
    path = tmp_path / "ising.json"
    save(ising, path)
    again = load(path)
    assert again == ising
    save(again, tmp_path / "again.json")
    assert (tmp_path / "again.json").read_bytes() == path.read_bytes()


def test_non_symmetric_s_rejected(ising):
    obj = to_json(ising)
    obj["s_matrix"][0][1] = CycNumber.rational(Fraction(1, 3)).to_json()
    with pytest.raises(AxiomViolation) as info:
        from_json(obj)
    assert info.value.axiom == "symmetry"
    assert info.value.witness == (0, 1)


def test_zero_denominator_rejected(ising):
    obj = to_json(ising)
    obj["t_exponents"][1] = [1, 0]
    with pytest.raises(SchemaError):
        from_json(obj)


@pytest.mark.parametrize("mutate", [
    lambda o: o.pop("labels"),
    lambda o: o.update(version=99),
    lambda o: o.update(field_order=7),
    lambda o: o["t_exponents"].pop(),
    lambda o: o.update(t_exponents=[[3, 2]] * 3),
])
def test_schema_errors(ising, mutate):
    obj = json.loads(json.dumps(to_json(ising)))
    mutate(obj)
    with pytest.raises(SchemaError):
        from_json(obj)


def test_corrupted_t_fails_axioms(lee_yang):
    obj = to_json(lee_yang)
    obj["t_exponents"][1] = [58, 60]
    with pytest.raises(AxiomViolation):
        from_json(obj)
    md = from_json(obj, validate=False)
    bad = [c.name for c in check_axioms(md) if not c.ok]
    assert "modular-relation" in bad


def test_s_unitary_and_s_squared_is_permutation():
    md = minimal_model(2, 9)
    S = md.s_matrix
    assert mx.is_identity(mx.matmul(S, md.s_inverse))
    sq = mx.matmul(S, S)
    perm = charge_conjugation(md)
    for p in range(md.size):
        for q in range(md.size):
            assert sq[p][q] == (1 if perm[p] == q else 0)


def test_single_primary_toy():
    obj = {"version": 1, "labels": ["1"], "central_charge": [0, 1], "t_exponents": [[0, 1]],
           "field_order": 1, "s_matrix": [[{"order": 1, "coeffs": [[0, 1, 1]]}]]}
    md = from_json(obj)
    assert md.conductor == 1 and n_zero(md) == 1


def test_closed_forms_small():
    for p, q in [(2, 5), (2, 7), (3, 5), (3, 7), (4, 5), (5, 6)]:
        N, N0, e, c = spectrum_invariants(p, q)
        if p == 2:
            assert N0 == q
        elif p == 3:
            assert N0 == 4 * q
        else:
            assert N0 == 4 * p * q
            assert e == 6 // gcd(6, p * q)
