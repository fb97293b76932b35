"""Gate strings and the T-optimal normal form

    (T | T2 | e) ((H0' | H1' | H2') (T | T2))* (e | H0' | H1' | H2') P

where P = (e | V)(e | S | S2)(e | X | X2)(e | Z | Z2).

Strings are read in matrix-product order: the leftmost token is applied last.
normalize() consumes a string left to right, keeping the prefix in normal form.
A Clifford token just updates the trailing coset pair (h, p); a T pushes p
through to the right (P T = T P) and either opens a new T slot after a
trailing H', or merges with the previous slot, where T^3 = omega Z^2 falls
back into P.  Every rewrite carries its exact unit, so the accumulated phase
is exact and not just projective.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache

from .clifford import (
    P_IDENTITY,
    P_Z2,
    PElem,
    hp_times_gate,
    p_matrix,
    p_mul,
    p_past_t,
)
from .exactmat import (
    ONE,
    OMEGA,
    PHASED_IDENTITY,
    GATE_TOKENS,
    Phase,
    PhasedOp,
    gate_matrix,
)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_SUPERSCRIPT = {"²": "2", "³": "3"}
_PRIMES = "'′"


def parse(text: str) -> list:
    """Tokenize a gate string such as "HSH T2 H1'" into single-gate tokens.

    Tokens: H S T X Z V A H0' H1' H2', each optionally followed by an exponent
    2 (or 3, for T).  Case and whitespace are ignored.
    """
    chars = [(i, _SUPERSCRIPT.get(ch, ch).upper()) for i, ch in enumerate(text)
             if not ch.isspace()]
    out = []
    k = 0
    while k < len(chars):
        pos, ch = chars[k]
        if ch not in "HSTXZVA":
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        token = ch
        k += 1
        if (ch == "H" and k + 1 < len(chars) and chars[k][1] in "012"
                and chars[k + 1][1] in _PRIMES):
            token = f"H{chars[k][1]}'"
            k += 2
        power = 1
        if k < len(chars) and chars[k][1].isdigit():
            epos, digit = chars[k]
            if digit == "2" or (digit == "3" and token == "T"):
                power = int(digit)
                k += 1
            else:
                raise ParseError(f"bad exponent {text[epos]!r} for {token}", epos)
        out.extend([token] * power)
    return out


def unparse(tokens) -> str:
    """Inverse of parse: runs of two (three for T) identical tokens get an exponent."""
    parts = []
    k = 0
    while k < len(tokens):
        t = tokens[k]
        run = 1
        limit = 3 if t == "T" else 2
        while run < limit and k + run < len(tokens) and tokens[k + run] == t:
            run += 1
        parts.append(t if run == 1 else f"{t}{run}")
        k += run
    return " ".join(parts)


def string_to_matrix(tokens) -> PhasedOp:
    if isinstance(tokens, str):
        tokens = parse(tokens)
    op = PHASED_IDENTITY
    for t in tokens:
        op = op @ gate_matrix(t)
    return op


# H/S/T spellings used by the expanded output; each is exact, not just projective
_EXPANSION = {
    "H0'": "HSH", "H1'": "SHSH", "H2'": "S2HSH",
    "V": "H2", "X": "HS2H2SH", "Z": "H2S2H2S",
}


def _expand(syllable: str) -> str:
    if syllable in _EXPANSION:
        return _EXPANSION[syllable]
    if syllable[:-1] in _EXPANSION:
        return _EXPANSION[syllable[:-1]] * 2
    return syllable


def _tpow(a: int) -> str:
    return "T" if a == 1 else "T2"


@dataclass(frozen=True)
class NormalForm:
    lead_t: int = 0
    body: tuple = ()
    tail_h: int | None = None
    tail_p: PElem = P_IDENTITY
    phase: Phase = field(default=ONE)

    @property
    def word(self):
        """Everything except the phase; equal words mean the same projective operator."""
        return (self.lead_t, self.body, self.tail_h, self.tail_p)

    @property
    def t_count(self) -> int:
        return (1 if self.lead_t else 0) + len(self.body)

    @property
    def h_count(self) -> int:
        return len(self.body) + (0 if self.tail_h is None else 1)

    def syllables(self) -> list:
        out = []
        if self.lead_t:
            out.append(_tpow(self.lead_t))
        for h, t in self.body:
            out += [f"H{h}'", _tpow(t)]
        if self.tail_h is not None:
            out.append(f"H{self.tail_h}'")
        out += self.tail_p.tokens()
        return out

    def to_string(self, expand: bool = False) -> str:
        """Space-separated syllables; expand=True spells everything in H, S, T."""
        syl = self.syllables()
        if expand:
            syl = [_expand(s) for s in syl]
        return " ".join(syl)

    def __str__(self):
        return self.to_string()

    def tokens(self) -> list:
        """Single-gate tokens of the syllable string (parse of to_string())."""
        return parse(self.to_string())

    def with_phase(self, phase: Phase) -> NormalForm:
        return NormalForm(self.lead_t, self.body, self.tail_h, self.tail_p, phase)


def t_count(n: NormalForm) -> int:
    return n.t_count


def h_count(n: NormalForm) -> int:
    return n.h_count


@cache
def _syllable_matrix(h, t: int) -> PhasedOp:
    """H'_h T^t (h None for no H')."""
    op = gate_matrix("T") ** t
    return op if h is None else gate_matrix(f"H{h}'") @ op


def nf_to_matrix(n: NormalForm) -> PhasedOp:
    """Product of the syllables, without n.phase (always i_pow 0)."""
    op = _syllable_matrix(None, n.lead_t)
    for h, t in n.body:
        op = op @ _syllable_matrix(h, t)
    tail = p_matrix(n.tail_p)
    if n.tail_h is not None:
        tail = _syllable_matrix(n.tail_h, 0) @ tail
    return op @ tail


def nf_to_op(n: NormalForm) -> PhasedOp:
    """The operator itself: n.phase * nf_to_matrix(n)."""
    return nf_to_matrix(n).times(n.phase)


class _Builder:
    __slots__ = ("lead", "body", "h", "p", "phase")

    def __init__(self):
        self.lead = 0
        self.body = []
        self.h = None
        self.p = P_IDENTITY
        self.phase = ONE

    def clifford(self, token):
        self.h, self.p, u = hp_times_gate(self.h, self.p, token)
        self.phase = self.phase * u

    def t(self):
        a, p, u = p_past_t(self.p, 1)
        self.phase = self.phase * u
        if self.h is not None:
            self.body.append((self.h, a))
            self.h, self.p = None, p
            return
        if self.body:
            prev = self.body[-1][1]
        elif self.lead:
            prev = self.lead
        else:
            self.lead, self.p = a, p
            return
        total = prev + a
        if total == 2:
            self._set_slot(2)
            self.p = p
            return
        # T^3 = omega Z^2, so T^3 p = omega Z^2 p and T^4 p = omega T Z^2 p
        self.p, u = p_mul(P_Z2, p)
        self.phase = self.phase * OMEGA * u
        if total == 4:
            self._set_slot(1)
        elif self.body:
            self.h = self.body.pop()[0]
        else:
            self.lead = 0

    def _set_slot(self, a):
        if self.body:
            self.body[-1] = (self.body[-1][0], a)
        else:
            self.lead = a

    def result(self) -> NormalForm:
        return NormalForm(self.lead, tuple(self.body), self.h, self.p, self.phase)


def normalize(tokens) -> NormalForm:
    """Rewrite a gate string into its normal form, tracking the exact phase.

    One left-to-right pass with O(1) table work per token; the number of T
    slots never exceeds the number of maximal T runs in the input.
    """
    if isinstance(tokens, str):
        tokens = parse(tokens)
    b = _Builder()
    for t in tokens:
        if t == "T":
            b.t()
        elif t in GATE_TOKENS:
            b.clifford(t)
        else:
            raise KeyError(f"unknown gate token {t!r}")
    return b.result()


def count_t_runs(tokens) -> int:
    runs, prev = 0, None
    for t in tokens:
        if t == "T" and prev != "T":
            runs += 1
        prev = t
    return runs
