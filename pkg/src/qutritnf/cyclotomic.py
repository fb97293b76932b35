"""Exact arithmetic in Z[xi] and Z[xi, 1/3], xi = exp(2 pi i / 9).

Elements of Z[xi] are stored as six integer coefficients on the power basis
1, xi, ..., xi^5 and kept reduced with xi^6 = -1 - xi^3 (the ninth cyclotomic
polynomial).  chi = 1 - xi generates the unique prime above 3; 3 is chi^6 times
a unit, which is what makes chi-adic denominator exponents well defined.

The module-level helpers that work on bare 6-tuples are the fast path used by
the matrix code; CycInt and RingElem wrap them for everything else.
"""
from __future__ import annotations

import re

ZERO6 = (0, 0, 0, 0, 0, 0)
ONE6 = (1, 0, 0, 0, 0, 0)


class NotDivisible(ArithmeticError):
    """Raised when an element of Z[xi] is not a multiple of chi = 1 - xi."""


# --- raw 6-tuple arithmetic -------------------------------------------------

def _add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4], a[5] + b[5])


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4], a[5] - b[5])


def _neg(a):
    return (-a[0], -a[1], -a[2], -a[3], -a[4], -a[5])


def _scale(a, n):
    return (a[0] * n, a[1] * n, a[2] * n, a[3] * n, a[4] * n, a[5] * n)


def _mul(a, b):
    a0, a1, a2, a3, a4, a5 = a
    b0, b1, b2, b3, b4, b5 = b
    c0 = a0 * b0
    c1 = a0 * b1 + a1 * b0
    c2 = a0 * b2 + a1 * b1 + a2 * b0
    c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
    c4 = a0 * b4 + a1 * b3 + a2 * b2 + a3 * b1 + a4 * b0
    c5 = a0 * b5 + a1 * b4 + a2 * b3 + a3 * b2 + a4 * b1 + a5 * b0
    c6 = a1 * b5 + a2 * b4 + a3 * b3 + a4 * b2 + a5 * b1
    c7 = a2 * b5 + a3 * b4 + a4 * b3 + a5 * b2
    c8 = a3 * b5 + a4 * b4 + a5 * b3
    c9 = a4 * b5 + a5 * b4
    c10 = a5 * b5
    # xi^6 = -1 - xi^3, xi^9 = 1
    return (c0 - c6 + c9, c1 - c7 + c10, c2 - c8, c3 - c6, c4 - c7, c5 - c8)


def _mul_xi(a):
    a0, a1, a2, a3, a4, a5 = a
    return (-a5, a0, a1, a2 - a5, a3, a4)


def _mul_xi_pow(a, j):
    for _ in range(j % 9):
        a = _mul_xi(a)
    return a


XI_POW = tuple(_mul_xi_pow(ONE6, j) for j in range(9))


def _conj(a):
    out = (a[0], 0, 0, 0, 0, 0)
    for j in range(1, 6):
        if a[j]:
            out = _add(out, _scale(XI_POW[9 - j], a[j]))
    return out


def _parity(a):
    return (a[0] + a[1] + a[2] + a[3] + a[4] + a[5]) % 3


def _chi_div(a):
    """Exact quotient a / (1 - xi), or None when parity(a) != 0."""
    s = a[0] + a[1] + a[2] + a[3] + a[4] + a[5]
    if s % 3:
        return None
    t = s // 3
    # a - t*(1 + x^3 + x^6) vanishes at x = 1; divide by (x - 1) synthetically
    b5 = -t
    b4 = a[5] + b5
    b3 = a[4] + b4
    b2 = a[3] - t + b3
    b1 = a[2] + b2
    b0 = a[1] + b1
    assert a[0] - t + b0 == 0
    return (-b0, -b1, -b2, -b3, -b4, -b5)


def _chi_val(a, cap):
    """chi-adic valuation of a, saturating at cap (also returned for zero)."""
    v = 0
    # 3 = unit * chi^6, so a factor 3 is six steps at once
    while v + 6 <= cap and a != ZERO6 and _divisible_by_3(a):
        a = _div3(a)
        v += 6
    while v < cap:
        q = _chi_div(a)
        if q is None:
            break
        a = q
        v += 1
    return v


def _divisible_by_3(a):
    return not (a[0] % 3 or a[1] % 3 or a[2] % 3 or a[3] % 3 or a[4] % 3 or a[5] % 3)


def _div3(a):
    return (a[0] // 3, a[1] // 3, a[2] // 3, a[3] // 3, a[4] // 3, a[5] // 3)


def _format(a):
    terms = [str(a[0])]
    for j in range(1, 6):
        terms.append(f"{a[j]}*x" if j == 1 else f"{a[j]}*x^{j}")
    return " + ".join(terms)


_TERM = re.compile(r"^\s*([+-]?\s*\d+)\s*(?:\*\s*x(?:\s*\^\s*(\d+))?)?\s*$")


def _parse(text):
    coeffs = [0] * 6
    # split on '+' that separates terms; negative literals keep their sign
    for part in re.split(r"\+(?=\s*[-\d])", text):
        if not part.strip():
            continue
        m = _TERM.match(part)
        if not m:
            raise ValueError(f"bad cyclotomic term: {part!r}")
        coef = int(m.group(1).replace(" ", ""))
        if "x" not in part:
            power = 0
        else:
            power = int(m.group(2)) if m.group(2) else 1
        if power > 5:
            raise ValueError(f"power x^{power} out of range 0..5")
        coeffs[power] += coef
    return tuple(coeffs)


# --- public types -----------------------------------------------------------

class CycInt:
    """An element of Z[xi]: c[0] + c[1] xi + ... + c[5] xi^5."""

    __slots__ = ("c",)

    def __init__(self, *coeffs):
        if len(coeffs) == 1 and not isinstance(coeffs[0], int):
            coeffs = tuple(coeffs[0])
        if len(coeffs) > 6:
            raise ValueError("CycInt takes at most six coefficients")
        c = tuple(int(x) for x in coeffs) + (0,) * (6 - len(coeffs))
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("CycInt is immutable")

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        object.__setattr__(obj, "c", c)
        return obj

    @classmethod
    def xi(cls, j=1):
        return cls._raw(XI_POW[j % 9])

    @classmethod
    def omega(cls, j=1):
        return cls._raw(XI_POW[(3 * j) % 9])

    def __repr__(self):
        return f"CycInt{self.c}"

    def __str__(self):
        return _format(self.c)

    @classmethod
    def from_text(cls, text: str) -> CycInt:
        return cls._raw(_parse(text))

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return self.c != ZERO6

    def _coerce(self, other):
        if isinstance(other, CycInt):
            return other.c
        if isinstance(other, int):
            return (other, 0, 0, 0, 0, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt._raw(_add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt._raw(_sub(self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt._raw(_sub(o, self.c))

    def __neg__(self):
        return CycInt._raw(_neg(self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt._raw(_mul(self.c, o))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycInt:
        if n < 0:
            raise ValueError("negative powers are not defined in Z[xi]")
        out, base = ONE6, self.c
        while n:
            if n & 1:
                out = _mul(out, base)
            base = _mul(base, base)
            n >>= 1
        return CycInt._raw(out)

    def conj(self) -> CycInt:
        return CycInt._raw(_conj(self.c))

    def parity(self) -> int:
        return _parity(self.c)

    def chi_divide(self) -> CycInt:
        q = _chi_div(self.c)
        if q is None:
            raise NotDivisible(f"{self} is not divisible by 1 - xi")
        return CycInt._raw(q)


CHI = CycInt(1, -1)


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def cyc_conj(a: CycInt) -> CycInt:
    return a.conj()


def parity(a) -> int:
    """The parity map Z[xi] -> Z_3 (sum of coefficients mod 3); kernel is (chi)."""
    if isinstance(a, RingElem):
        if a.three_exp:
            raise ValueError("parity is only defined on Z[xi]")
        a = a.num
    return a.parity()


def chi_divide(a: CycInt) -> CycInt:
    return a.chi_divide()


class RingElem:
    """num / 3^three_exp with num in Z[xi]; normalized so 3 does not divide num
    unless three_exp is 0."""

    __slots__ = ("num", "three_exp")

    def __init__(self, num=0, three_exp: int = 0):
        if isinstance(num, int):
            c = (num, 0, 0, 0, 0, 0)
        elif isinstance(num, CycInt):
            c = num.c
        else:
            c = tuple(int(x) for x in num)
            if len(c) != 6:
                raise ValueError("expected six coefficients")
        if three_exp < 0:
            c = _scale(c, 3 ** -three_exp)
            three_exp = 0
        c, three_exp = _reduce3(c, three_exp)
        object.__setattr__(self, "num", CycInt._raw(c))
        object.__setattr__(self, "three_exp", three_exp)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    def __repr__(self):
        return f"RingElem({self.num.c}, {self.three_exp})"

    def __str__(self):
        return f"({self.num})/3^{self.three_exp}"

    @classmethod
    def from_text(cls, text: str) -> RingElem:
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*3\s*\^\s*(\d+)", text, re.S)
        if m:
            return cls(_parse(m.group(1)), int(m.group(2)))
        return cls(_parse(text), 0)

    def to_json(self) -> dict:
        return {"c": [str(x) for x in self.num.c], "p3": self.three_exp}

    @classmethod
    def from_json(cls, obj) -> RingElem:
        coeffs = obj["c"]
        if len(coeffs) != 6:
            raise ValueError("entry needs exactly six coefficients")
        p3 = int(obj.get("p3", 0))
        if p3 < 0:
            raise ValueError("p3 must be non-negative")
        return cls(tuple(int(x) for x in coeffs), p3)

    def __eq__(self, other):
        if isinstance(other, (int, CycInt)):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.three_exp == other.three_exp and self.num.c == other.num.c

    def __hash__(self):
        return hash((self.num.c, self.three_exp))

    def __bool__(self):
        return bool(self.num)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RingElem):
            return other
        if isinstance(other, (int, CycInt)):
            return RingElem(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = max(self.three_exp, o.three_exp)
        a = _scale(self.num.c, 3 ** (e - self.three_exp))
        b = _scale(o.num.c, 3 ** (e - o.three_exp))
        return RingElem(_add(a, b), e)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(_neg(self.num.c), self.three_exp)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElem(_mul(self.num.c, o.num.c), self.three_exp + o.three_exp)

    __rmul__ = __mul__

    def conj(self) -> RingElem:
        return RingElem(_conj(self.num.c), self.three_exp)

    def is_integral(self) -> bool:
        return self.three_exp == 0

    def denom_exp_chi(self) -> int:
        return denom_exp_chi(self)


def _reduce3(c, e):
    if c == ZERO6:
        return c, 0
    while e > 0 and _divisible_by_3(c):
        c = _div3(c)
        e -= 1
    return c, e


def entry_denom_exp(c, e) -> int:
    """Least k with chi^k * (c / 3^e) integral, for a raw coefficient tuple."""
    if e == 0 or c == ZERO6:
        return 0
    cap = 6 * e
    return cap - _chi_val(c, cap)


def denom_exp_chi(y: RingElem) -> int:
    """Least k >= 0 with chi^k * y in Z[xi]; zero has exponent 0."""
    return entry_denom_exp(y.num.c, y.three_exp)
