import itertools
import random

import pytest

from qutritnf.clifford import (
    ALL_P,
    GATE_LABELS,
    H_SET,
    P_IDENTITY,
    CliffordElem,
    PElem,
    SL2Z3,
    SL_H,
    SL_S,
    all_clifford_elems,
    all_sl2,
    appleby_matrix,
    classify_hp,
    classify_op,
    dump_tables,
    hp_matrix,
    lookup_tp,
    p_matrix,
    p_mul,
    p_past_hprime,
    p_past_t,
    sl2_word,
    word_to_sl2,
)
from qutritnf.exactmat import PHASED_IDENTITY, canonical_key, gate_matrix, phase_between, projective_eq


def test_sl2_has_24_elements():
    assert len(all_sl2()) == 24


def test_sl2_rejects_bad_determinant():
    with pytest.raises(ValueError):
        SL2Z3(1, 1, 1, 1)


@pytest.mark.parametrize("f", all_sl2())
def test_sl2_word_roundtrip(f):
    assert word_to_sl2(sl2_word(f)) == f


def test_sl2_generators():
    assert SL_S @ SL_S @ SL_S == word_to_sl2("")
    assert (SL_H @ SL_H) @ (SL_H @ SL_H) == word_to_sl2("")
    assert all(f @ f.inverse() == word_to_sl2("") for f in all_sl2())


def test_clifford_group_has_216_projective_elements():
    keys = {canonical_key(appleby_matrix(e)) for e in all_clifford_elems()}
    assert len(keys) == 216


def test_appleby_matrices_are_unitary():
    assert all(appleby_matrix(e).is_unitary() for e in all_clifford_elems())


def test_composition_law():
    elems = all_clifford_elems()
    rng = random.Random(7)
    for _ in range(400):
        a, b = rng.choice(elems), rng.choice(elems)
        projective_eq(appleby_matrix(a) @ appleby_matrix(b), appleby_matrix(a @ b))


@pytest.mark.parametrize("token", sorted(GATE_LABELS))
def test_gate_labels(token):
    projective_eq(gate_matrix(token), appleby_matrix(GATE_LABELS[token]))


def test_p_and_h_sizes():
    assert len(ALL_P) == 54
    assert len(set(canonical_key(p_matrix(p)) for p in ALL_P)) == 54
    assert len(H_SET) == 4


def test_coset_decomposition_covers_clifford_group():
    seen = set()
    for h in H_SET:
        for p in ALL_P:
            seen.add(canonical_key(hp_matrix(h, p)))
    assert len(seen) == 216


def test_p_is_a_subgroup():
    keys = {canonical_key(p_matrix(p)) for p in ALL_P}
    for p, q in itertools.product(ALL_P[::5], ALL_P):
        assert canonical_key(p_matrix(p) @ p_matrix(q)) in keys


@pytest.mark.parametrize("e", all_clifford_elems()[::9])
def test_classify_exact(e):
    op = appleby_matrix(e)
    h, p, u = classify_op(op)
    assert op == hp_matrix(h, p).times(u)
    assert classify_hp(e) == (h, p)


def test_classify_rejects_non_clifford():
    with pytest.raises(KeyError):
        classify_op(gate_matrix("T"))


def test_rewrite_tables_exact():
    t = gate_matrix("T")
    for p in ALL_P:
        for i in range(3):
            i2, p2, u = p_past_hprime(p, i)
            assert p_matrix(p) @ gate_matrix(f"H{i}'") == (gate_matrix(f"H{i2}'") @ p_matrix(p2)).times(u)
        for a in (1, 2):
            a2, p2, u = p_past_t(p, a)
            # V swaps T and T^2; S, X, Z keep the power
            assert a2 == (a if p.v == 0 else 3 - a)
            assert p_matrix(p) @ t ** a == (t ** a2 @ p_matrix(p2)).times(u)
        r, u = p_mul(p, p)
        assert p_matrix(p) @ p_matrix(p) == p_matrix(r).times(u)


def test_lookup_tp():
    t = gate_matrix("T")
    assert lookup_tp(PHASED_IDENTITY)[:2] == (0, P_IDENTITY)
    a, p, u = lookup_tp(t @ t @ gate_matrix("X"))
    assert (a, p) == (2, PElem(0, 0, 1, 0))
    assert lookup_tp(gate_matrix("H0'")) is None


def test_pelem_tokens():
    assert PElem(1, 2, 1, 2).tokens() == ["V", "S2", "X", "Z2"]
    assert str(P_IDENTITY) == "1"


def test_dump_tables_shape():
    d = dump_tables()
    assert len(d["classify_hp"]) == 216
    assert len(d["p_past_hprime"]) == 54 * 3
    assert len(d["p_past_t"]) == 54 * 2


def test_appleby_label_of_identity():
    assert appleby_matrix(CliffordElem()) == PHASED_IDENTITY
    assert phase_between(appleby_matrix(GATE_LABELS["X"]), gate_matrix("X")) is not None
