"""3x3 matrices over Z[xi, 1/3] and the qutrit gate constants.

A UMat keeps a single power-of-3 denominator shared by all nine entries; the
numerators are raw coefficient 6-tuples (see cyclotomic).  The Hadamard gate
has entries omega^(jk)/sqrt(3), and sqrt(3) is not in Q(xi); but
sqrt(-3) = 1 + 2 omega is, so H = i * F / (1 + 2 omega).  PhasedOp carries that
formal factor of i as a flag.  Every even-H product has the flag cleared.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .cyclotomic import (
    ONE6,
    XI_POW,
    ZERO6,
    RingElem,
    _add,
    _chi_div,
    _conj,
    _div3,
    _divisible_by_3,
    _mul,
    _mul_xi_pow,
    _neg,
    _parity,
    _scale,
    _sub,
    entry_denom_exp,
)

RING_TAG = "Z[zeta9,1/3]"

LIFT_DEFAULT = (0, 1, 2)
LIFT_SYMMETRIC = (0, 1, -1)

ALL_ONES = ((1, 1, 1), (1, 1, 1), (1, 1, 1))


class NotEqual(ValueError):
    """Two operators are not equal up to any allowed phase."""


@dataclass(frozen=True, order=True)
class Phase:
    """The unit i^i_pow * xi^xi_pow; 36 values, with -1 = i^2."""

    i_pow: int = 0
    xi_pow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "i_pow", self.i_pow % 4)
        object.__setattr__(self, "xi_pow", self.xi_pow % 9)

    def __mul__(self, other: Phase) -> Phase:
        return Phase(self.i_pow + other.i_pow, self.xi_pow + other.xi_pow)

    def inverse(self) -> Phase:
        return Phase(-self.i_pow, -self.xi_pow)

    def __str__(self):
        sign = "-" if self.i_pow >= 2 else ""
        parts = []
        if self.i_pow % 2:
            parts.append("i")
        if self.xi_pow:
            parts.append("xi" if self.xi_pow == 1 else f"xi^{self.xi_pow}")
        return sign + ("*".join(parts) if parts else "1")

    def to_json(self) -> dict:
        return {"i_pow": self.i_pow, "xi_pow": self.xi_pow}


ONE = Phase()
OMEGA = Phase(0, 3)
XI = Phase(0, 1)
MINUS_ONE = Phase(2, 0)


def _reduce(nums, e):
    while e > 0 and all(_divisible_by_3(c) for c in nums):
        nums = tuple(_div3(c) for c in nums)
        e -= 1
    if e and all(c == ZERO6 for c in nums):
        e = 0
    return nums, e


class UMat:
    """A 3x3 matrix over Z[xi, 1/3] stored as nine numerators over 3^three_exp."""

    __slots__ = ("nums", "three_exp", "_hash")

    def __init__(self, entries):
        """entries: 3x3 nested sequence of RingElem / CycInt / int."""
        rows = [[x if isinstance(x, RingElem) else RingElem(x) for x in row] for row in entries]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("UMat needs a 3x3 array")
        flat = [x for row in rows for x in row]
        e = max(x.three_exp for x in flat)
        nums = tuple(_scale(x.num.c, 3 ** (e - x.three_exp)) for x in flat)
        self._set(*_reduce(nums, e))

    def _set(self, nums, e):
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "three_exp", e)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("UMat is immutable")

    @classmethod
    def _raw(cls, nums, e, reduce=True):
        obj = object.__new__(cls)
        if reduce:
            nums, e = _reduce(nums, e)
        obj._set(nums, e)
        return obj

    @classmethod
    def identity(cls) -> UMat:
        return IDENTITY

    @property
    def entries(self):
        return tuple(
            tuple(RingElem(self.nums[3 * r + c], self.three_exp) for c in range(3))
            for r in range(3)
        )

    def __getitem__(self, rc) -> RingElem:
        r, c = rc
        return RingElem(self.nums[3 * r + c], self.three_exp)

    def __eq__(self, other):
        if not isinstance(other, UMat):
            return NotImplemented
        return self.three_exp == other.three_exp and self.nums == other.nums

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nums, self.three_exp)))
        return self._hash

    def __repr__(self):
        return f"UMat(three_exp={self.three_exp}, nums={self.nums})"

    def __str__(self):
        rows = []
        for r in range(3):
            rows.append("  ".join(str(self[r, c]) for c in range(3)))
        return "\n".join(rows)

    def __matmul__(self, other: UMat) -> UMat:
        a, b = self.nums, other.nums
        out = []
        for r in range(3):
            a0, a1, a2 = a[3 * r], a[3 * r + 1], a[3 * r + 2]
            for c in range(3):
                out.append(_add(_add(_mul(a0, b[c]), _mul(a1, b[3 + c])), _mul(a2, b[6 + c])))
        return UMat._raw(tuple(out), self.three_exp + other.three_exp)

    def __neg__(self) -> UMat:
        return UMat._raw(tuple(_neg(c) for c in self.nums), self.three_exp, reduce=False)

    def times_xi(self, j: int, negate: bool = False) -> UMat:
        """Scalar multiple (+/-) xi^j * self."""
        nums = tuple(_mul_xi_pow(c, j) for c in self.nums)
        if negate:
            nums = tuple(_neg(c) for c in nums)
        return UMat._raw(nums, self.three_exp, reduce=False)

    def scale_rows(self, units) -> UMat:
        """diag(xi^u0, xi^u1, xi^u2) * self."""
        nums = tuple(_mul_xi_pow(self.nums[i], units[i // 3]) for i in range(9))
        return UMat._raw(nums, self.three_exp, reduce=False)

    def dagger(self) -> UMat:
        n = self.nums
        return UMat._raw(tuple(_conj(n[3 * c + r]) for r in range(3) for c in range(3)),
                         self.three_exp, reduce=False)

    def is_unitary(self) -> bool:
        return self @ self.dagger() == IDENTITY

    def denom_exp(self) -> int:
        return max(entry_denom_exp(c, self.three_exp) for c in self.nums)

    def integral_scaled(self, k: int):
        """Numerators of chi^k * self; raises ValueError if k is too small."""
        chik = ONE6
        for _ in range(k):
            chik = _mul(chik, (1, -1, 0, 0, 0, 0))
        d = 3 ** self.three_exp
        out = []
        for c in self.nums:
            p = _mul(c, chik)
            if any(x % d for x in p):
                raise ValueError(f"chi^{k} * M is not integral")
            out.append(tuple(x // d for x in p))
        return tuple(out)

    def to_json_entries(self):
        return [[self[r, c].to_json() for c in range(3)] for r in range(3)]


IDENTITY = UMat._raw((ONE6, ZERO6, ZERO6, ZERO6, ONE6, ZERO6, ZERO6, ZERO6, ONE6), 0)


class PhasedOp:
    """i^i_pow * mat, with i_pow kept in {0, 1}."""

    __slots__ = ("i_pow", "mat")

    def __init__(self, mat: UMat, i_pow: int = 0):
        i_pow %= 4
        if i_pow >= 2:
            mat = -mat
            i_pow -= 2
        object.__setattr__(self, "i_pow", i_pow)
        object.__setattr__(self, "mat", mat)

    def __setattr__(self, name, value):
        raise AttributeError("PhasedOp is immutable")

    def __eq__(self, other):
        if not isinstance(other, PhasedOp):
            return NotImplemented
        return self.i_pow == other.i_pow and self.mat == other.mat

    def __hash__(self):
        return hash((self.i_pow, self.mat))

    def __repr__(self):
        return f"PhasedOp(i_pow={self.i_pow}, {self.mat!r})"

    def __matmul__(self, other: PhasedOp) -> PhasedOp:
        return PhasedOp(self.mat @ other.mat, self.i_pow + other.i_pow)

    def dagger(self) -> PhasedOp:
        return PhasedOp(self.mat.dagger(), -self.i_pow)

    inverse = dagger

    def __pow__(self, n: int) -> PhasedOp:
        base = self if n >= 0 else self.dagger()
        out = PHASED_IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def times(self, u: Phase) -> PhasedOp:
        mat = self.mat.times_xi(u.xi_pow) if u.xi_pow else self.mat
        return PhasedOp(mat, self.i_pow + u.i_pow)

    def is_unitary(self) -> bool:
        return self.mat.is_unitary()

    def denom_exp(self) -> int:
        return self.mat.denom_exp()

    def to_json(self) -> dict:
        return {"ring": RING_TAG, "i_pow": self.i_pow, "entries": self.mat.to_json_entries()}

    @classmethod
    def from_json(cls, obj) -> PhasedOp:
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ValueError("matrix JSON needs an 'entries' field")
        ring = obj.get("ring", RING_TAG)
        if ring != RING_TAG:
            raise ValueError(f"unsupported ring {ring!r}")
        rows = obj["entries"]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("matrix must be 3x3")
        mat = UMat([[RingElem.from_json(e) for e in row] for row in rows])
        return cls(mat, int(obj.get("i_pow", 0)))


PHASED_IDENTITY = PhasedOp(IDENTITY)


def mat_mul(a: PhasedOp, b: PhasedOp) -> PhasedOp:
    return a @ b


def mat_denom_exp(m) -> int:
    """Least k such that chi^k * m is integral (max over the entries)."""
    if isinstance(m, PhasedOp):
        m = m.mat
    return m.denom_exp()


# --- gate constants ---------------------------------------------------------

def _w(j):
    return XI_POW[(3 * j) % 9]


def _diag(a, b, c):
    return UMat._raw((a, ZERO6, ZERO6, ZERO6, b, ZERO6, ZERO6, ZERO6, c), 0)


def _perm(images):
    """Permutation matrix sending |k> to |images[k]>."""
    nums = [ZERO6] * 9
    for k, j in enumerate(images):
        nums[3 * j + k] = ONE6
    return UMat._raw(tuple(nums), 0)


def _hadamard_core():
    # F / (1 + 2w) = -F (1 + 2w) / 3, since (1 + 2w)^2 = -3
    s = _neg((1, 0, 0, 2, 0, 0))
    return UMat._raw(tuple(_mul(_w(j * k), s) for j in range(3) for k in range(3)), 1)


GATE_TOKENS = ("H", "S", "T", "X", "Z", "V", "A", "H0'", "H1'", "H2'")


@cache
def gate_matrix(token: str) -> PhasedOp:
    """Exact matrix of a gate token."""
    if token == "H":
        return PhasedOp(_hadamard_core(), 1)
    if token == "S":
        return PhasedOp(_diag(ONE6, _w(1), ONE6))
    if token == "Z":
        return PhasedOp(_diag(ONE6, _w(1), _w(2)))
    if token == "X":
        return PhasedOp(_perm((1, 2, 0)))
    if token == "T":
        return PhasedOp(_diag(XI_POW[1], ONE6, XI_POW[8]))
    if token == "V":
        return PhasedOp(_perm((0, 2, 1)))
    if token == "A":
        h, s = gate_matrix("H"), gate_matrix("S")
        return h @ s @ s @ h @ s @ s @ h
    if token in ("H0'", "H1'", "H2'"):
        m = int(token[1])
        h, s = gate_matrix("H"), gate_matrix("S")
        return (s ** m) @ h @ s @ h
    raise KeyError(f"unknown gate token {token!r}")


# --- parity, residues -------------------------------------------------------

def parity_matrix(m, k: int | None = None):
    """P_k(M) = P(chi^k M) entrywise; k defaults to d(M)."""
    if isinstance(m, PhasedOp):
        m = m.mat
    if k is None:
        k = m.denom_exp()
    nums = m.integral_scaled(k)
    return tuple(tuple(_parity(nums[3 * r + c]) for c in range(3)) for r in range(3))


def residues(m, depth: int, lift=LIFT_DEFAULT):
    """The chi-adic digit matrices M_(0), ..., M_(depth-1) of M.

    M = chi^-k (M_(0) + M_(1) chi + M_(2) chi^2 + ...) with k = d(M); each digit
    is read off with the parity map after subtracting lift(previous digit).
    """
    if isinstance(m, PhasedOp):
        m = m.mat
    k = m.denom_exp()
    cur = list(m.integral_scaled(k))
    out = []
    for _ in range(depth):
        digits = tuple(_parity(c) for c in cur)
        out.append(tuple(digits[3 * r: 3 * r + 3] for r in range(3)))
        nxt = []
        for c, d in zip(cur, digits):
            q = _chi_div(_sub(c, (lift[d], 0, 0, 0, 0, 0)))
            assert q is not None
            nxt.append(q)
        cur = nxt
    return out


# --- projective comparison --------------------------------------------------

_SIGNED_XI = tuple((neg, j) for neg in (False, True) for j in range(9))


def _first_nonzero(mat: UMat) -> int:
    for idx, c in enumerate(mat.nums):
        if c != ZERO6:
            return idx
    raise ValueError("zero matrix has no projective class")


def phase_between(a: PhasedOp, b: PhasedOp):
    """The unit u with a == u * b, or None."""
    A, B = a.mat, b.mat
    if A.three_exp != B.three_exp:
        return None
    idx = _first_nonzero(B)
    target, src = A.nums[idx], B.nums[idx]
    for neg, j in _SIGNED_XI:
        c = _mul_xi_pow(src, j)
        if neg:
            c = _neg(c)
        if c == target:
            break
    else:
        return None
    if B.times_xi(j, negate=neg) != A:
        return None
    return Phase(a.i_pow - b.i_pow + (2 if neg else 0), j)


def projective_eq(a: PhasedOp, b: PhasedOp) -> Phase:
    """Return u with a == u * b over the 36 phases i^t xi^j; raise NotEqual otherwise."""
    u = phase_between(a, b)
    if u is None:
        raise NotEqual("operators differ by more than a phase")
    return u


def projective_rep(m) -> tuple:
    """Hashable representative of the projective class of m.

    The phase is fixed so that the first nonzero numerator is least among its
    18 multiples by +/- xi^j; the factor i never enters (it is itself a phase).
    """
    if isinstance(m, PhasedOp):
        m = m.mat
    idx = _first_nonzero(m)
    src = m.nums[idx]
    best = None
    for neg, j in _SIGNED_XI:
        c = _mul_xi_pow(src, j)
        if neg:
            c = _neg(c)
        if best is None or c < best[0]:
            best = (c, neg, j)
    _, neg, j = best
    return (m.three_exp,) + m.times_xi(j, negate=neg).nums


def canonical_key(m) -> bytes:
    return repr(projective_rep(m)).encode()
