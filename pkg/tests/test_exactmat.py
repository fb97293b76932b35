import json

import pytest
from hypothesis import given

from oracles import (
    OMEGA,
    XI,
    close,
    cmatmul,
    cdagger,
    cscale,
    float_gate,
    float_string,
    gate_strings,
    op_value,
    proj_phase,
)
from qutritnf.cyclotomic import CHI, CycInt, RingElem
from qutritnf.exactmat import (
    ALL_ONES,
    GATE_TOKENS,
    IDENTITY,
    LIFT_SYMMETRIC,
    MINUS_ONE,
    OMEGA as PH_OMEGA,
    ONE,
    PHASED_IDENTITY,
    NotEqual,
    Phase,
    PhasedOp,
    UMat,
    canonical_key,
    gate_matrix,
    parity_matrix,
    phase_between,
    projective_eq,
    projective_rep,
    residues,
)
from qutritnf.normalform import string_to_matrix

EYE = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("token", GATE_TOKENS)
def test_gates_are_unitary(token):
    g = gate_matrix(token)
    assert g.is_unitary()
    f = op_value(g)
    assert close(cmatmul(f, cdagger(f)), EYE)


@pytest.mark.parametrize("token", ["H", "S", "T", "X", "Z", "V"])
def test_gates_match_float_definitions(token):
    assert close(op_value(gate_matrix(token)), float_gate(token))


def test_hadamard_exact_form():
    h = gate_matrix("H")
    assert h.i_pow == 1
    assert h.denom_exp() == 3
    assert gate_matrix("H") ** 4 == PHASED_IDENTITY
    assert gate_matrix("H") ** 2 == gate_matrix("V")


def test_hprime_has_no_i():
    for i in range(3):
        g = gate_matrix(f"H{i}'")
        assert g.i_pow == 0
        assert g.denom_exp() == 3


def test_unknown_token():
    with pytest.raises(KeyError):
        gate_matrix("Q")


def test_phase_group():
    assert Phase(4, 9) == ONE
    assert MINUS_ONE * MINUS_ONE == ONE
    assert PH_OMEGA * PH_OMEGA * PH_OMEGA == ONE
    for t in range(4):
        for j in range(9):
            u = Phase(t, j)
            assert u * u.inverse() == ONE


def test_phase_str():
    assert str(ONE) == "1"
    assert str(PH_OMEGA) == "xi^3"


@given(gate_strings, gate_strings)
def test_matmul_matches_float(a, b):
    x, y = string_to_matrix(a), string_to_matrix(b)
    assert close(op_value(x @ y), cmatmul(op_value(x), op_value(y)), 1e-6)
    assert close(op_value(x), float_string(a), 1e-6)


@given(gate_strings)
def test_dagger_is_inverse(a):
    x = string_to_matrix(a)
    assert x @ x.dagger() == PHASED_IDENTITY
    assert x.is_unitary()


@given(gate_strings)
def test_json_roundtrip(a):
    x = string_to_matrix(a)
    text = json.dumps(x.to_json())
    assert PhasedOp.from_json(json.loads(text)) == x


def test_from_json_validation():
    good = PHASED_IDENTITY.to_json()
    with pytest.raises(ValueError):
        PhasedOp.from_json({**good, "ring": "Z[i]"})
    with pytest.raises(ValueError):
        PhasedOp.from_json({**good, "entries": good["entries"][:2]})
    with pytest.raises(ValueError):
        PhasedOp.from_json([1, 2, 3])


def test_umat_needs_3x3():
    with pytest.raises(ValueError):
        UMat([[1, 0], [0, 1]])


@given(gate_strings)
def test_phase_between_all_36_phases(a):
    x = string_to_matrix(a)
    for t in range(4):
        for j in range(9):
            u = Phase(t, j)
            assert phase_between(x.times(u), x) == u
            assert projective_rep(x.times(u)) == projective_rep(x)
            assert canonical_key(x.times(u)) == canonical_key(x)


@given(gate_strings)
def test_phase_between_matches_float(a):
    x = string_to_matrix(a)
    y = x.times(Phase(1, 4))
    u = proj_phase(op_value(y), op_value(x))
    assert abs(u - 1j * XI ** 4) < 1e-7


def test_projective_eq_rejects():
    with pytest.raises(NotEqual):
        projective_eq(gate_matrix("S"), gate_matrix("S") ** 2)
    assert canonical_key(gate_matrix("S")) != canonical_key(gate_matrix("Z"))


def test_t_cubed_is_omega_z_squared():
    t, z = gate_matrix("T"), gate_matrix("Z")
    assert projective_eq(t ** 3, z ** 2) == PH_OMEGA
    assert close(op_value(t ** 3), cscale(OMEGA, op_value(z ** 2)))


def test_denom_exp_of_integral_matrices():
    assert IDENTITY.denom_exp() == 0
    assert gate_matrix("T").denom_exp() == 0


def test_parity_matrix_hprime():
    assert parity_matrix(gate_matrix("H0'")) == ALL_ONES


def test_integral_scaled_rejects_small_k():
    with pytest.raises(ValueError):
        gate_matrix("H0'").mat.integral_scaled(2)


def test_residues_reconstruct_matrix():
    # chi^k M - sum_j M_(j) chi^j is divisible by chi^depth, entry by entry
    m = string_to_matrix("HSHTSHSHT2")
    k, depth = m.denom_exp(), 8
    res = residues(m, depth)
    scaled = m.mat.integral_scaled(k)
    for r in range(3):
        for c in range(3):
            rest = CycInt(scaled[3 * r + c])
            for j in range(depth):
                rest = rest - res[j][r][c] * CHI ** j
            for _ in range(depth):
                rest = rest.chi_divide()


def test_lifts_agree_to_depth_six():
    for s in ("HSHT", "SHSHT2", "HSHTSSHSHT"):
        m = string_to_matrix(s)
        assert residues(m, 6) == residues(m, 6, LIFT_SYMMETRIC)


def test_umat_is_immutable():
    with pytest.raises(AttributeError):
        IDENTITY.three_exp = 3
    with pytest.raises(AttributeError):
        PHASED_IDENTITY.i_pow = 1


def test_ring_element_entries():
    h = gate_matrix("H0'").mat
    assert isinstance(h[0, 0], RingElem)
    assert h[0, 0].denom_exp_chi() <= 3
