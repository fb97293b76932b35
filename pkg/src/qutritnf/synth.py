"""Exact synthesis: recover the normal form of a ring unitary, or reject it.

For a group element with H'-count h >= 1 the least denominator exponent is
k = h + 2 (and k = 0 when h = 0).  Left-multiplying by (T^n H'_i)^-1 for the
correct leading syllable lowers k by one; every other choice does not.  Peeling
syllables until k = 0 leaves T^a p with p in P, which a 162-entry table
resolves.  A matrix that is not in the group fails at some step.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .clifford import H_PRIME, lookup_tp
from .cyclotomic import _add, _chi_val, _mul_xi_pow
from .exactmat import (
    ALL_ONES,
    LIFT_DEFAULT,
    Phase,
    PhasedOp,
    UMat,
    gate_matrix,
    parity_matrix,
    residues,
)
from .normalform import NormalForm, nf_to_op


class AmbiguousPeel(RuntimeError):
    """More than one syllable lowers the denominator exponent."""


class PeelFailed(ValueError):
    """No syllable lowers the denominator exponent."""


NOT_UNITARY = "NotUnitary"
BAD_DENOM_EXP = "BadDenomExp"
PEEL_FAILED = "PeelFailed"
LOOKUP_FAILED = "LookupFailed"
PARITY_FAILED = "ParityFailed"


@dataclass(frozen=True)
class Member:
    nf: NormalForm
    unit: Phase
    denom_exp: int
    peels: tuple = ()

    @property
    def is_member(self):
        return True


@dataclass(frozen=True)
class NotInGroup:
    reason: str
    denom_exp: int | None = None
    step: int | None = None

    @property
    def is_member(self):
        return False


def hcount_from_k(k: int) -> int:
    """H'-count implied by a least denominator exponent; ValueError for k = 1, 2."""
    if k == 0:
        return 0
    if k >= 3:
        return k - 2
    raise ValueError(f"no group element has denominator exponent {k}")


def _as_mat(m) -> UMat:
    return m.mat if isinstance(m, PhasedOp) else m


def _is_scaled_permutation(pm) -> bool:
    vals = set()
    for r in range(3):
        nz = [c for c in range(3) if pm[r][c]]
        if len(nz) != 1:
            return False
        vals.add(pm[r][nz[0]])
    cols = {c for r in range(3) for c in range(3) if pm[r][c]}
    return len(cols) == 3 and len(vals) == 1


def parity_prefilter(m) -> bool:
    """Necessary parity condition on P_k(M), up to column permutation and a
    global factor 2 in Z_3 (the parity image of an overall -1)."""
    m = _as_mat(m)
    k = m.denom_exp()
    pm = parity_matrix(m, k)
    if k == 0:
        return _is_scaled_permutation(pm)
    if k < 3:
        return False
    return pm == ALL_ONES or pm == ((2, 2, 2),) * 3


# (T^n H'_i)^-1 = H'_i^dagger T^-n = H^dagger S^dagger H^dagger S^-i T^-n, and
# H^dagger is a unit times conj(F) / (1 + 2w) with F_rj = w^(rj).  Since
# (1 + 2w)^2 = -3, each candidate is a unit times conj(F) S^dagger conj(F) D M / 3
# with D diagonal, so the reducing test needs only w-shifts and additions.

def _w1(a):
    return (-a[3], -a[4], -a[5], a[0] - a[3], a[1] - a[4], a[2] - a[5])


def _w2(a):
    return _w1(_w1(a))


def _reduces(nums, e: int, n: int, i: int, k: int) -> bool:
    """True if d((T^n H'_i)^-1 M) < k for M = nums / 3^e.

    Works one column at a time and stops at the first entry that keeps d.
    """
    need = 6 * (e + 1) - k + 1  # chi-valuation every entry must reach
    u0, u1 = -n, -3 * i  # D = S^-i T^-n = diag(xi^-n, w^-i, xi^n)
    for c in range(3):
        a = _mul_xi_pow(nums[c], u0)
        b = _mul_xi_pow(nums[3 + c], u1)
        d = _mul_xi_pow(nums[6 + c], n)
        # conj(F), then S^dagger = diag(1, w^2, 1), then conj(F) again
        y0 = _add(_add(a, b), d)
        y1 = _w2(_add(_add(a, _w2(b)), _w1(d)))
        y2 = _add(_add(a, _w1(b)), _w2(d))
        for x in (_add(_add(y0, y1), y2), _add(_add(y0, _w2(y1)), _w1(y2)),
                  _add(_add(y0, _w1(y1)), _w2(y2))):
            if _chi_val(x, need) < need:
                return False
    return True


_CANDIDATES = [(n, i) for n in range(3) for i in H_PRIME]


@cache
def syllable_inverse(n: int, i: int) -> PhasedOp:
    """(T^n H'_i)^-1 exactly."""
    return ((gate_matrix("T") ** n) @ gate_matrix(f"H{i}'")).dagger()


def peel(m):
    """Find the unique leading syllable T^n H'_i of m.

    Returns (n, i, m') with m = T^n H'_i m' and d(m') < d(m).  Raises
    PeelFailed when no candidate lowers d, AmbiguousPeel when several do.
    """
    mat = _as_mat(m)
    k = mat.denom_exp()
    hits = [(n, i) for n, i in _CANDIDATES if _reduces(mat.nums, mat.three_exp, n, i, k)]
    if not hits:
        raise PeelFailed(f"no syllable lowers the denominator exponent {k}")
    if len(hits) > 1:
        raise AmbiguousPeel(f"{len(hits)} syllables lower the denominator exponent {k}")
    n, i = hits[0]
    if isinstance(m, PhasedOp):
        return n, i, syllable_inverse(n, i) @ m
    return n, i, (syllable_inverse(n, i) @ PhasedOp(m)).mat


def exact_synthesize(m, prefilter: bool = False, check_unitary: bool = True):
    """Member(nf, unit) with nf_to_op(nf) == m exactly, or NotInGroup(reason).

    check_unitary=False skips the up-front unitarity test so the peeling loop
    itself certifies non-membership; the final reconstruction check still
    guarantees that a Member is never reported for a non-member.
    """
    op = m if isinstance(m, PhasedOp) else PhasedOp(m)
    k0 = k = op.denom_exp()
    if check_unitary and not op.is_unitary():
        return NotInGroup(NOT_UNITARY, k)
    if k in (1, 2):
        return NotInGroup(BAD_DENOM_EXP, k)
    if prefilter and not parity_prefilter(op):
        return NotInGroup(PARITY_FAILED, k)
    peels = []
    cur = op
    while k >= 3:
        try:
            n, i, cur = peel(cur)
        except PeelFailed:
            return NotInGroup(PEEL_FAILED, k0, len(peels))
        peels.append((n, i))
        k = cur.denom_exp()
    if k != 0:
        return NotInGroup(LOOKUP_FAILED, k0, len(peels))
    hit = lookup_tp(cur)
    if hit is None:
        return NotInGroup(LOOKUP_FAILED, k0, len(peels))
    a, p, unit = hit
    # peel j contributes T^{n_j} H'_{i_j}; a zero T power after the first peel
    # would put two H' syllables side by side, which no group element needs
    if any(n == 0 for n, _ in peels[1:]):
        step = next(j for j, (n, _) in enumerate(peels) if j and n == 0)
        return NotInGroup(PEEL_FAILED, k0, step)
    lead = peels[0][0] if peels else a
    hs = [i for _, i in peels]
    ts = [n for n, _ in peels[1:]] + [a]
    if peels:
        body = list(zip(hs, ts))
        tail_h = None
        if body[-1][1] == 0:
            tail_h = body.pop()[0]
        nf = NormalForm(lead, tuple(body), tail_h, p, unit)
    else:
        nf = NormalForm(lead, (), None, p, unit)
    if nf_to_op(nf) != op:
        if not check_unitary:
            return NotInGroup(LOOKUP_FAILED, k0, len(peels))
        raise AssertionError("reconstruction does not reproduce the input")
    return Member(nf, unit, k0, tuple(peels))


def satisfies_P1_P4(m, lift=LIFT_DEFAULT) -> bool:
    """The four residue conditions preserved by left multiplication with H'_i T^n."""
    m = _as_mat(m)
    if m.denom_exp() < 3:
        return False
    r0, r1, r2, r3 = residues(m, 4, lift)
    if r0 != ALL_ONES:
        return False
    row = r1[0]
    if any(r != row for r in r1) or sorted(row) != [0, 1, 2]:
        return False
    shift = (r2[1][0] - r2[0][0]) % 3
    for c in range(3):
        if (r2[1][c] - r2[0][c]) % 3 != shift or (r2[0][c] - r2[2][c]) % 3 != shift:
            return False
    sums = {sum(r3[r][c] for r in range(3)) % 3 for c in range(3)}
    return len(sums) == 1


def synth_report(nf: NormalForm, denom_exp: int) -> dict:
    """The JSON report shared by synthesis and normalization."""
    return {
        "t_count": nf.t_count,
        "h_count": nf.h_count,
        "denom_exp": denom_exp,
        "phase": nf.phase.to_json(),
        "syllables": nf.syllables(),
    }
