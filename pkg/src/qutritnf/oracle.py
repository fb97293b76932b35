"""Brute-force ground truth for the normal form and the synthesis algorithm.

bfs_enumerate builds the projective Clifford+T group layer by layer in T-count.
Layer 0 is the closure of {H, S}; layer t+1 is every h T^a M with M in layer t,
h in {1, H0', H1', H2'} and a in {1, 2}, minus keys already seen.  Since layer
t is closed under left multiplication by Cliffords and any Clifford is h p with
p T^a = T^a' p', these eight left factors reach every element of T-count t+1,
so the layer index is the exact minimal T-count.

Witnesses are H/S/T strings built alongside the matrices, and each stored
matrix equals string_to_matrix(witness) exactly (phase included).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .clifford import H_SET
from .exactmat import PHASED_IDENTITY, PhasedOp, canonical_key, gate_matrix, parity_matrix
from .normalform import normalize, string_to_matrix
from .synth import AmbiguousPeel, exact_synthesize, hcount_from_k, parity_prefilter


@dataclass
class AtlasRecord:
    min_t_count: int
    witness: str
    h_count: int
    denom_exp: int
    matrix: PhasedOp = field(repr=False, compare=False)

    def to_json(self) -> dict:
        return {"min_t_count": self.min_t_count, "witness": self.witness,
                "h_count": self.h_count, "denom_exp": self.denom_exp}


@dataclass
class GroupAtlas:
    max_t: int
    records: dict = field(default_factory=dict)
    layer_sizes: list = field(default_factory=list)
    incomplete: bool = False

    def __len__(self):
        return len(self.records)

    def __contains__(self, key):
        return key in self.records

    def lookup(self, m) -> AtlasRecord | None:
        return self.records.get(canonical_key(m))

    def layer(self, t: int):
        return [r for r in self.records.values() if r.min_t_count == t]

    def to_jsonl(self) -> str:
        lines = []
        for key in sorted(self.records):
            rec = {"key": key.decode()}
            rec.update(self.records[key].to_json())
            lines.append(json.dumps(rec, sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")


_H_WITNESS = {None: "", 0: "HSH", 1: "SHSH", 2: "SSHSH"}


def _clifford_layer():
    """Closure of {H, S} by right multiplication, with shortest H/S witnesses."""
    gens = [("H", gate_matrix("H")), ("S", gate_matrix("S"))]
    seen = {canonical_key(PHASED_IDENTITY): ("", PHASED_IDENTITY)}
    frontier = [("", PHASED_IDENTITY)]
    while frontier:
        nxt = []
        for word, op in frontier:
            for g, gm in gens:
                m = op @ gm
                key = canonical_key(m)
                if key not in seen:
                    seen[key] = (word + g, m)
                    nxt.append((word + g, m))
        frontier = nxt
    return seen


def _left_factors():
    t = gate_matrix("T")
    out = []
    for h in H_SET:
        hm = PHASED_IDENTITY if h is None else gate_matrix(f"H{h}'")
        for a in (1, 2):
            out.append((_H_WITNESS[h] + "T" * a, hm @ (t ** a)))
    return out


def bfs_enumerate(max_t: int, budget: int | None = None) -> GroupAtlas:
    """All projective group elements of T-count <= max_t.

    budget caps the number of records; when hit, the atlas is returned with
    incomplete=True and the last layer partial.
    """
    atlas = GroupAtlas(max_t)
    recs = atlas.records

    def add(key, word, op, t):
        if budget is not None and len(recs) >= budget:
            atlas.incomplete = True
            return False
        nf = normalize(word)
        recs[key] = AtlasRecord(t, word, nf.h_count, op.denom_exp(), op)
        return True

    layer = []
    for key, (word, op) in _clifford_layer().items():
        if not add(key, word, op, 0):
            break
        layer.append(key)
    atlas.layer_sizes.append(len(layer))
    factors = _left_factors()
    for t in range(1, max_t + 1):
        if atlas.incomplete:
            break
        nxt = []
        for prev in layer:
            rec = recs[prev]
            for fw, fm in factors:
                m = fm @ rec.matrix
                key = canonical_key(m)
                if key in recs:
                    continue
                if not add(key, fw + rec.witness, m, t):
                    break
                nxt.append(key)
            if atlas.incomplete:
                break
        atlas.layer_sizes.append(len(nxt))
        layer = nxt
    return atlas


@dataclass
class Report:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        status = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"{self.name}: {self.checked} checked, {status}"


def check_uniqueness(atlas: GroupAtlas, limit: int = 20) -> Report:
    """normalize(witness) and exact_synthesize(matrix) agree exactly, and no two
    keys share a normal form word."""
    rep = Report("uniqueness")
    owner = {}
    for key, rec in atlas.records.items():
        rep.checked += 1
        nf = normalize(rec.witness)
        try:
            res = exact_synthesize(rec.matrix)
        except AmbiguousPeel as e:
            rep.violations.append((rec.witness, f"ambiguous peel: {e}"))
            continue
        if not res.is_member:
            rep.violations.append((rec.witness, f"synthesis failed: {res.reason}"))
        elif res.nf != nf:
            rep.violations.append((rec.witness, f"normalize {nf} != synth {res.nf}"))
        other = owner.setdefault(nf.word, key)
        if other != key:
            rep.violations.append((rec.witness, f"shares normal form {nf} with another key"))
        if len(rep.violations) >= limit:
            break
    return rep


def check_theorem1(atlas: GroupAtlas, limit: int = 20) -> Report:
    """k = h + 2 for h >= 1, k = 0 for h = 0, and the parity certificate."""
    rep = Report("theorem1")
    for rec in atlas.records.values():
        rep.checked += 1
        k, h = rec.denom_exp, rec.h_count
        try:
            expected = hcount_from_k(k)
        except ValueError:
            expected = None
        if expected != h:
            rep.violations.append((rec.witness, f"k={k} but h={h}"))
        elif not parity_prefilter(rec.matrix):
            rep.violations.append((rec.witness, f"parity certificate fails: {parity_matrix(rec.matrix)}"))
        if len(rep.violations) >= limit:
            break
    return rep


def check_t_optimality(atlas: GroupAtlas, limit: int = 20) -> Report:
    """t_count(normalize(witness)) equals the BFS minimal T-count."""
    rep = Report("t_optimality")
    for rec in atlas.records.values():
        rep.checked += 1
        tc = normalize(rec.witness).t_count
        if tc != rec.min_t_count:
            rep.violations.append((rec.witness, f"t_count {tc} != minimal {rec.min_t_count}"))
        if len(rep.violations) >= limit:
            break
    return rep


def check_witnesses(atlas: GroupAtlas, limit: int = 20) -> Report:
    """Every stored matrix is exactly the matrix of its witness string."""
    rep = Report("witnesses")
    for rec in atlas.records.values():
        rep.checked += 1
        if string_to_matrix(rec.witness) != rec.matrix:
            rep.violations.append((rec.witness, "witness does not reproduce the matrix"))
        if len(rep.violations) >= limit:
            break
    return rep


def denom_histogram(atlas: GroupAtlas) -> dict:
    return dict(sorted(Counter((r.min_t_count, r.denom_exp) for r in atlas.records.values()).items()))
