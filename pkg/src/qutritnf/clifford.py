"""The single-qutrit Clifford group (216 elements up to phase).

Two views of the same group live here:

* Appleby labels D_(x,z) V_F with (x, z) in Z_3^2 and F in SL(2, Z_3), which
  compose by (chi1, F1)(chi2, F2) = (chi1 + F1 chi2, F1 F2) up to phase.
* The coset decomposition C = h p with h in {1, H0', H1', H2'} and p in the
  54-element subgroup generated by V_{-1}, S, X.  The normalizer and the
  synthesis lookup only need this second view; the rewrite tables are built
  lazily from exact matrices and carry the exact unit of every rewrite.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache

from .exactmat import (
    PHASED_IDENTITY,
    UMat,
    Phase,
    PhasedOp,
    _hadamard_core,
    gate_matrix,
    phase_between,
    projective_rep,
)
from .cyclotomic import XI_POW, ZERO6, _mul

INV2 = 2  # 2^-1 in Z_3


@dataclass(frozen=True)
class SL2Z3:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, getattr(self, f) % 3)
        if (self.a * self.d - self.b * self.c) % 3 != 1:
            raise ValueError(f"determinant of {self} is not 1 mod 3")

    def __matmul__(self, o: SL2Z3) -> SL2Z3:
        return SL2Z3(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                     self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> SL2Z3:
        return SL2Z3(self.d, -self.b, -self.c, self.a)

    def apply(self, x: int, z: int):
        return (self.a * x + self.b * z) % 3, (self.c * x + self.d * z) % 3


SL_I = SL2Z3(1, 0, 0, 1)
SL_S = SL2Z3(1, 0, 1, 1)
SL_H = SL2Z3(0, -1, 1, 0)
SL_MINUS = SL2Z3(-1, 0, 0, -1)


def sl2_mul(f: SL2Z3, g: SL2Z3) -> SL2Z3:
    return f @ g


def all_sl2():
    out = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            out.append(SL2Z3(a, b, c, d))
    return out


def sl2_word(f: SL2Z3) -> tuple:
    """Write f as a word in S^ and H^ (letters 'S', 'H', leftmost factor first)."""
    inv = {1: 1, 2: 2}
    if f.b:
        n = f.b
        q = (f.a + 1) * inv[f.b] % 3
        m = (f.d + 1) * inv[f.b] % 3
        return ("S",) * m + ("H",) + ("S",) * n + ("H",) + ("S",) * q
    n = f.d
    m = inv[f.d] * (1 - f.b) % 3
    q = (f.c + 1) * inv[f.d] % 3
    return ("H",) + ("S",) * m + ("H",) + ("S",) * n + ("H",) + ("S",) * q


def word_to_sl2(word) -> SL2Z3:
    out = SL_I
    for w in word:
        out = out @ (SL_S if w == "S" else SL_H)
    return out


@dataclass(frozen=True)
class CliffordElem:
    """D_(x,z) V_F, up to phase."""

    x: int = 0
    z: int = 0
    f: SL2Z3 = SL_I

    def __post_init__(self):
        object.__setattr__(self, "x", self.x % 3)
        object.__setattr__(self, "z", self.z % 3)

    def __matmul__(self, o: CliffordElem) -> CliffordElem:
        return clifford_compose(self, o)


def clifford_compose(e1: CliffordElem, e2: CliffordElem) -> CliffordElem:
    fx, fz = e1.f.apply(e2.x, e2.z)
    return CliffordElem(e1.x + fx, e1.z + fz, e1.f @ e2.f)


def all_clifford_elems():
    return [CliffordElem(x, z, f) for x in range(3) for z in range(3) for f in all_sl2()]


def _w(j):
    return XI_POW[(3 * j) % 9]


def _v_matrix(f: SL2Z3) -> PhasedOp:
    a, b, c, d = f.a, f.b, f.c, f.d
    nums = [ZERO6] * 9
    if b:
        binv = b  # 1 and 2 are self-inverse mod 3
        for j in range(3):
            for k in range(3):
                nums[3 * j + k] = _w(INV2 * binv * (a * k * k - 2 * j * k + d * j * j))
        # 1/sqrt(3) = i / (1 + 2w); reuse the exact Hadamard normalisation
        core = _hadamard_core()
        scale = core.nums[0]
        return PhasedOp(UMat._raw(tuple(_mul(n, scale) for n in nums), core.three_exp), 1)
    for k in range(3):
        nums[3 * (a * k % 3) + k] = _w(INV2 * a * c * k * k)
    return PhasedOp(UMat._raw(tuple(nums), 0))


def _d_matrix(x: int, z: int) -> PhasedOp:
    X, Z = gate_matrix("X"), gate_matrix("Z")
    op = (X ** x) @ (Z ** z)
    return op.times(Phase(0, 3 * INV2 * x * z))


def appleby_matrix(e: CliffordElem) -> PhasedOp:
    """Exact matrix of D_(x,z) V_F."""
    return _d_matrix(e.x, e.z) @ _v_matrix(e.f)


# Appleby labels of the gate tokens
GATE_LABELS = {
    "H": CliffordElem(0, 0, SL_H),
    "S": CliffordElem(0, INV2, SL_S),
    "X": CliffordElem(1, 0, SL_I),
    "Z": CliffordElem(0, 1, SL_I),
    "V": CliffordElem(0, 0, SL_MINUS),
}


def _label_of_word(word) -> CliffordElem:
    out = CliffordElem()
    for t in word:
        out = out @ GATE_LABELS[t]
    return out


GATE_LABELS["A"] = _label_of_word("HSSHSSH")
for _m in range(3):
    GATE_LABELS[f"H{_m}'"] = _label_of_word("S" * _m + "HSH")


# --- the P subgroup and the coset representatives ---------------------------

@dataclass(frozen=True, order=True)
class PElem:
    """V_{-1}^v S^s X^x Z^z."""

    v: int = 0
    s: int = 0
    x: int = 0
    z: int = 0

    def __post_init__(self):
        object.__setattr__(self, "v", self.v % 2)
        for f in ("s", "x", "z"):
            object.__setattr__(self, f, getattr(self, f) % 3)

    def tokens(self):
        out = []
        if self.v:
            out.append("V")
        for name, e in (("S", self.s), ("X", self.x), ("Z", self.z)):
            if e:
                out.append(name if e == 1 else name + "2")
        return out

    def gates(self):
        return ["V"] * self.v + ["S"] * self.s + ["X"] * self.x + ["Z"] * self.z

    def label(self) -> CliffordElem:
        return _label_of_word(self.gates())

    def __str__(self):
        return " ".join(self.tokens()) or "1"


P_IDENTITY = PElem()
P_Z2 = PElem(0, 0, 0, 2)
ALL_P = tuple(PElem(v, s, x, z) for v in range(2) for s in range(3)
              for x in range(3) for z in range(3))
H_PRIME = (0, 1, 2)
H_SET = (None, 0, 1, 2)  # None stands for the identity coset representative


@cache
def p_matrix(p: PElem) -> PhasedOp:
    op = PHASED_IDENTITY
    for t in p.gates():
        op = op @ gate_matrix(t)
    return op


def h_matrix(h) -> PhasedOp:
    return PHASED_IDENTITY if h is None else gate_matrix(f"H{h}'")


@cache
def hp_matrix(h, p: PElem) -> PhasedOp:
    return h_matrix(h) @ p_matrix(p)


@cache
def _hp_table():
    table = {}
    for h in H_SET:
        for p in ALL_P:
            key = projective_rep(hp_matrix(h, p))
            if key in table:
                raise AssertionError("coset decomposition is not unique")
            table[key] = (h, p)
    return table


def classify_op(op: PhasedOp):
    """(h, p, u) with op == u * h p exactly; KeyError if op is not Clifford."""
    h, p = _hp_table()[projective_rep(op)]
    u = phase_between(op, hp_matrix(h, p))
    assert u is not None
    return h, p, u


def classify_hp(e: CliffordElem):
    """The unique (h, p) with e ~ h p; h is None for the identity coset."""
    h, p, _ = classify_op(appleby_matrix(e))
    return h, p


@cache
def p_past_hprime(p: PElem, i: int):
    """p H'_i == u H'_i2 p2; returns (i2, p2, u)."""
    h, p2, u = classify_op(p_matrix(p) @ gate_matrix(f"H{i}'"))
    assert h is not None
    return h, p2, u


@cache
def _tp_table():
    table = {}
    t = gate_matrix("T")
    for a in range(3):
        for p in ALL_P:
            table[projective_rep((t ** a) @ p_matrix(p))] = (a, p)
    return table


@cache
def tp_matrix(a: int, p: PElem) -> PhasedOp:
    return (gate_matrix("T") ** a) @ p_matrix(p)


def lookup_tp(op: PhasedOp):
    """(a, p, u) with op == u * T^a p exactly, or None if op is not of that shape."""
    hit = _tp_table().get(projective_rep(op))
    if hit is None:
        return None
    a, p = hit
    u = phase_between(op, tp_matrix(a, p))
    return a, p, u


@cache
def p_past_t(p: PElem, a: int):
    """p T^a == u T^a2 p2; returns (a2, p2, u)."""
    a2, p2, u = lookup_tp(p_matrix(p) @ (gate_matrix("T") ** a))
    return a2, p2, u


@cache
def p_mul(p: PElem, q: PElem):
    """p q == u r; returns (r, u)."""
    h, r, u = classify_op(p_matrix(p) @ p_matrix(q))
    assert h is None
    return r, u


@cache
def hp_times_gate(h, p: PElem, token: str):
    """h p g == u h2 p2 for a Clifford gate token g; returns (h2, p2, u)."""
    return classify_op(hp_matrix(h, p) @ gate_matrix(token))


def dump_tables() -> dict:
    """The rewrite tables as plain JSON data (phases as [i_pow, xi_pow])."""
    def pj(p):
        return [p.v, p.s, p.x, p.z]

    classify = []
    for e in all_clifford_elems():
        h, p = classify_hp(e)
        classify.append({"x": e.x, "z": e.z, "f": [e.f.a, e.f.b, e.f.c, e.f.d],
                         "h": h, "p": pj(p)})
    past_h = []
    past_t = []
    for p in ALL_P:
        for i in H_PRIME:
            i2, p2, u = p_past_hprime(p, i)
            past_h.append({"p": pj(p), "h": i, "h_out": i2, "p_out": pj(p2),
                           "phase": [u.i_pow, u.xi_pow]})
        for a in (1, 2):
            a2, p2, u = p_past_t(p, a)
            past_t.append({"p": pj(p), "t": a, "t_out": a2, "p_out": pj(p2),
                           "phase": [u.i_pow, u.xi_pow]})
    return {"classify_hp": classify, "p_past_hprime": past_h, "p_past_t": past_t}
