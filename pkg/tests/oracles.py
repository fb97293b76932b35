"""Independent reference computations used by the tests.

Everything here avoids the package's own ring arithmetic: complex floats for
embeddings, plain integer polynomial division for chi-divisibility.
"""
import cmath
import json
from pathlib import Path

from hypothesis import strategies as st

from qutritnf.exactmat import PhasedOp

DATA = Path(__file__).parent / "data"
XI = cmath.exp(2j * cmath.pi / 9)
OMEGA = XI ** 3
TOL = 1e-9


def load_matrix(name: str) -> PhasedOp:
    return PhasedOp.from_json(json.loads((DATA / name).read_text()))


def cyc_value(c) -> complex:
    return sum(x * XI ** j for j, x in enumerate(c))


def op_value(op):
    """Complex 3x3 embedding of a PhasedOp, as nested lists."""
    m = op.mat
    scale = (1j ** op.i_pow) / 3 ** m.three_exp
    return [[cyc_value(m.nums[3 * r + c]) * scale for c in range(3)] for r in range(3)]


def cmatmul(a, b):
    return [[sum(a[r][k] * b[k][c] for k in range(3)) for c in range(3)] for r in range(3)]


def cdagger(a):
    return [[a[c][r].conjugate() for c in range(3)] for r in range(3)]


def close(a, b, tol=TOL) -> bool:
    return all(abs(a[r][c] - b[r][c]) < tol for r in range(3) for c in range(3))


def cscale(s, a):
    return [[s * x for x in row] for row in a]


def float_gate(token: str):
    """Textbook gate matrices built from complex numbers."""
    w = OMEGA
    diag = lambda a, b, c: [[a, 0, 0], [0, b, 0], [0, 0, c]]
    if token == "H":
        return [[w ** (r * c) / 3 ** 0.5 for c in range(3)] for r in range(3)]
    if token == "S":
        return diag(1, w, 1)
    if token == "Z":
        return diag(1, w, w * w)
    if token == "T":
        return diag(XI, 1, XI ** 8)
    if token == "X":
        return [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    if token == "V":
        return [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    raise KeyError(token)


def float_string(tokens):
    out = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
    for t in tokens:
        out = cmatmul(out, float_gate(t))
    return out


def proj_phase(a, b):
    """The complex u with a = u b, or None."""
    for r in range(3):
        for c in range(3):
            if abs(b[r][c]) > 1e-6:
                u = a[r][c] / b[r][c]
                return u if close(a, cscale(u, b), 1e-7) else None
    return None


def poly_mod_chi_power(c, n: int) -> bool:
    """Is sum c_j x^j divisible by (x - 1)^n in Z[x]/(Phi_9)?

    Each step adds the multiple of Phi_9 = 1 + x^3 + x^6 that makes the
    polynomial vanish at 1, then divides by x - 1 synthetically.
    """
    phi9 = [1, 0, 0, 1, 0, 0, 1]
    poly = list(c)
    for _ in range(n):
        s = sum(poly)
        if s % 3:
            return False
        t = -s // 3
        p = [x + t * y for x, y in zip(poly + [0], phi9)]
        q = [0] * 6
        carry = 0
        for j in range(6, 0, -1):
            carry += p[j]
            q[j - 1] = carry
        assert p[0] + carry == 0
        poly = q
    return True


def brute_denom_exp(c, e: int) -> int:
    """Least k with chi^k * c / 3^e integral, by direct divisibility tests."""
    if e == 0 or not any(c):
        return 0
    for v in range(6 * e, -1, -1):
        if poly_mod_chi_power(c, v):
            return 6 * e - v
    return 6 * e


coeffs = st.lists(st.integers(-20, 20), min_size=6, max_size=6).map(tuple)
gate_strings = st.lists(st.sampled_from(["H", "S", "T", "X", "Z"]), max_size=30)
