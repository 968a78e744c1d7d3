"""Non-existence rules for (k, g)-graphs of excess 4 (and the excess-2 side rule).

Each rule returns a FeasibilityVerdict. NONEXISTENT means a theorem fires,
OPEN means the hypotheses hold but nothing fires, NOT_COVERED means the
hypotheses of the rule are not met.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .graphcore import moore_bound
from .irreducibility import (
    IRREDUCIBLE,
    IrreducibilityCertificate,
    is_irreducible_over_Q,
    is_prime,
    shifted_dickson,
    shifted_dickson_certificate,
)

NONEXISTENT = "NONEXISTENT"
OPEN = "OPEN"
NOT_COVERED = "NOT_COVERED"

GENERAL = "GENERAL_EXCESS4"
CYCLIC = "CYCLIC_EXCESS4"
BICYCLIC = "BICYCLIC_EXCESS4"
EXCESS2 = "EXCESS2"

SCOPE_ALIASES = {
    "general": GENERAL,
    "cyclic": CYCLIC,
    "bicyclic": BICYCLIC,
    "excess2": EXCESS2,
}

# rule id -> theorem it encodes
RULES = {
    "R-BIGGS": "cages of girth 2d >= 6 with excess e <= k-2 have e even and are bipartite of diameter d+1",
    "R-EXC2": "excess-2 cages of even girth >= 6 have g = 6 and k not congruent to 5 or 7 mod 8",
    "R-EXCL1": "excess 4 excluded: g = 2p, p >= 5 prime, k not in {0,1,2} mod p",
    "R-EXCL2": "excess 4 excluded: g = 4*3^s, s >= 4, 9 | k, 3^(s-1) does not divide k",
    "R-EXCL3": "excess 4 excluded: g = 2p^2, p >= 5 prime, k not in {0,1,2} mod p, k even",
    "R-EXCL4": "excess 4 excluded: g = 4p, p >= 5 prime, k not in {0,1,2,3,p-2} mod p",
    "R-EXCL5": "excess 4 excluded: g = 0 mod 16 and k = 3 mod g",
    "R-DIV": "H_{d-1}-2 irreducible => d-1 | c-1 or c-2; H_{d-1}+2 irreducible => d-1 | c2-1 or c2",
    "R-THMA": "k >= 7 odd, g = 2d >= 8: d odd => d-1 | c-2 and c2; d even => d-1 | c-1 and c2-1",
    "R-CYC-ODD": "cyclic excess impossible for odd d (each excess cycle stays inside one partite set)",
    "R-CYC3": "cyclic excess, n = 0 mod 3 requires H_{d-1}-1 reducible",
    "R-CYC4-VACUOUS": "cyclic excess, n = 0 mod 4 requires H_{d-1} reducible, which always holds",
    "R-CYC6": "cyclic excess, n = 0 mod 6 requires H_{d-1}+1 reducible",
    "R-CYCLIC": "no cyclic excess 4: k = 1,2 mod 3 at g = 8; k = 1 mod 3 at g = 12, 16",
    "R-BICYCLIC": "no bicyclic excess 4: k >= 7 odd, g = 2d >= 8, d even",
}


@dataclass
class FeasibilityVerdict:
    k: int
    g: int
    scope: str
    verdict: str
    rule_ids: list[str] = field(default_factory=list)
    certificates: list[IrreducibilityCertificate] = field(default_factory=list)
    derived: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict == NONEXISTENT and not self.rule_ids:
            raise ValueError("a NONEXISTENT verdict must cite a rule")
        for rid in self.rule_ids:
            if rid not in RULES:
                raise ValueError(f"unknown rule id {rid}")

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "g": self.g,
            "scope": self.scope,
            "verdict": self.verdict,
            "rule_ids": list(self.rule_ids),
            "certificates": [c.to_dict() for c in self.certificates],
            "certificate_digests": [c.digest() for c in self.certificates],
            "derived": dict(self.derived),
            "notes": list(self.notes),
        }


def _derived(k: int, g: int, excess: int = 4) -> dict:
    out = {"n": moore_bound(k, g) + excess}
    if g % 2 == 0:
        out["d"] = g // 2
    return out


# informational precondition

def rule_biggs(k: int, g: int, e: int) -> dict:
    """Whether the cage structure theorem applies for excess e at (k, g)."""
    covered = g % 2 == 0 and g >= 6 and e <= k - 2
    note = {
        "rule": "R-BIGGS",
        "k": k,
        "g": g,
        "e": e,
        "covered": covered,
        "forces_bipartite": covered,
        "forces_even_excess": covered,
    }
    if covered:
        note["diameter"] = g // 2 + 1
        note["excess_parity_ok"] = e % 2 == 0
    return note


def rule_excess2(k: int, g: int) -> FeasibilityVerdict:
    derived = _derived(k, g, 2) if k >= 2 and g >= 3 else {}
    if g % 2 or g < 6:
        return FeasibilityVerdict(k, g, EXCESS2, NOT_COVERED, derived=derived, notes=["needs even g >= 6"])
    derived["k_mod_8"] = k % 8
    if g != 6:
        return FeasibilityVerdict(k, g, EXCESS2, NONEXISTENT, ["R-EXC2"], derived=derived, notes=["girth must be 6"])
    if k % 8 in (5, 7):
        return FeasibilityVerdict(k, g, EXCESS2, NONEXISTENT, ["R-EXC2"], derived=derived, notes=[f"k = {k % 8} mod 8"])
    return FeasibilityVerdict(k, g, EXCESS2, OPEN, derived=derived)


# general excess-4 exclusion list

def _prime_root(value: int, power: int) -> int | None:
    """p with p**power == value and p prime, else None."""
    p = round(value ** (1.0 / power))
    for cand in (p - 1, p, p + 1):
        if cand > 1 and cand**power == value and is_prime(cand):
            return cand
    return None


def exclusion_conditions(k: int, g: int) -> list[tuple[str, dict]]:
    """All exclusion conditions met by (k, g), with the residues used."""
    hits = []
    if g % 2 == 0:
        p = g // 2
        if p >= 5 and is_prime(p) and k % p not in (0, 1, 2):
            hits.append(("R-EXCL1", {"p": p, "k_mod_p": k % p}))
        p = _prime_root(g // 2, 2)
        if p is not None and p >= 5 and k % p not in (0, 1, 2) and k % 2 == 0:
            hits.append(("R-EXCL3", {"p": p, "k_mod_p": k % p}))
    if g % 4 == 0:
        q = g // 4
        s = 0
        while q % 3 == 0:
            q //= 3
            s += 1
        if q == 1 and s >= 4 and k % 9 == 0 and k % 3 ** (s - 1) != 0:
            hits.append(("R-EXCL2", {"s": s}))
        p = g // 4
        if p >= 5 and is_prime(p) and k % p not in (0, 1, 2, 3, p - 2):
            hits.append(("R-EXCL4", {"p": p, "k_mod_p": k % p}))
    if g % 16 == 0 and k % g == 3:
        hits.append(("R-EXCL5", {"k_mod_g": k % g}))
    return hits


def rule_exclusion_list(k: int, g: int) -> FeasibilityVerdict:
    if k < 6 or g % 2 or g <= 6:
        return FeasibilityVerdict(k, g, GENERAL, NOT_COVERED, notes=["needs k >= 6 and even g > 6"])
    derived = _derived(k, g)
    hits = exclusion_conditions(k, g)
    if hits:
        derived["residues"] = {rid: info for rid, info in hits}
        return FeasibilityVerdict(k, g, GENERAL, NONEXISTENT, [rid for rid, _ in hits], derived=derived)
    return FeasibilityVerdict(k, g, GENERAL, OPEN, derived=derived)


# divisibility consequences of irreducibility

@dataclass
class ConsistencyResult:
    consistent: bool
    rule_id: str
    reasons: list[str]
    certificates: list[IrreducibilityCertificate]


def rule_divisibility(k: int, g: int, c: int, c2: int) -> ConsistencyResult:
    """Irreducibility of H_{d-1} -+ 2, certified per instance, constrains c and c2."""
    d = g // 2
    m = d - 1
    certs, reasons = [], []
    ok = True
    minus = is_irreducible_over_Q(shifted_dickson(k, d, -2))
    plus = is_irreducible_over_Q(shifted_dickson(k, d, 2))
    certs.extend([minus, plus])
    if minus.verdict == IRREDUCIBLE and not ((c - 1) % m == 0 or (c - 2) % m == 0):
        ok = False
        reasons.append(f"H_{m}-2 irreducible but {m} divides neither c-1={c - 1} nor c-2={c - 2}")
    if plus.verdict == IRREDUCIBLE and not ((c2 - 1) % m == 0 or c2 % m == 0):
        ok = False
        reasons.append(f"H_{m}+2 irreducible but {m} divides neither c2-1={c2 - 1} nor c2={c2}")
    return ConsistencyResult(ok, "R-DIV", reasons, certs)


def rule_theorem_a(k: int, g: int, c: int, c2: int) -> ConsistencyResult:
    if k < 7 or k % 2 == 0 or g % 2 or g < 8:
        raise ValueError(f"needs odd k >= 7 and even g >= 8, got k={k}, g={g}")
    if c < 1 or not 0 <= c2 <= c:
        raise ValueError(f"needs c >= 1 and 0 <= c2 <= c, got c={c}, c2={c2}")
    d = g // 2
    m = d - 1
    certs = [shifted_dickson_certificate(k, d, -2), shifted_dickson_certificate(k, d, 2)]
    if d % 2:
        targets = {"c-2": c - 2, "c2": c2}
    else:
        targets = {"c-1": c - 1, "c2-1": c2 - 1}
    reasons = [f"{m} does not divide {name}={v}" for name, v in targets.items() if v % m]
    return ConsistencyResult(not reasons, "R-THMA", reasons, certs)


# cyclic and bicyclic excess

def cyclic_table(k: int, g: int) -> bool:
    """The residue table for cyclic excess 4."""
    if k < 6:
        return False
    if g == 8:
        return k % 3 in (1, 2)
    if g in (12, 16):
        return k % 3 == 1
    return False


def _cyclic_pipeline(k: int, g: int) -> FeasibilityVerdict:
    d = g // 2
    derived = _derived(k, g)
    n = derived["n"]
    derived["n_mod_12"] = n % 12
    if d % 2:
        return FeasibilityVerdict(k, g, CYCLIC, NONEXISTENT, ["R-CYC-ODD"], derived=derived)
    rules, certs, notes = [], [], []
    if n % 3 == 0:
        cert = is_irreducible_over_Q(shifted_dickson(k, d, -1))
        certs.append(cert)
        if cert.verdict == IRREDUCIBLE:
            rules.append("R-CYC3")
    if n % 6 == 0:
        cert = is_irreducible_over_Q(shifted_dickson(k, d, 1))
        certs.append(cert)
        if cert.verdict == IRREDUCIBLE:
            rules.append("R-CYC6")
    if n % 4 == 0:
        notes.append("R-CYC4-VACUOUS: x divides H_{d-1} for odd d-1, no conclusion")
    verdict = NONEXISTENT if rules else OPEN
    return FeasibilityVerdict(k, g, CYCLIC, verdict, rules, certs, derived, notes)


def rule_cyclic(k: int, g: int) -> FeasibilityVerdict:
    if k < 6 or g % 2 or g < 8:
        return FeasibilityVerdict(k, g, CYCLIC, NOT_COVERED, notes=["needs k >= 6 and even g >= 8"])
    v = _cyclic_pipeline(k, g)
    if g in (8, 12, 16):
        table = cyclic_table(k, g)
        if table != (v.verdict == NONEXISTENT):
            raise AssertionError(f"residue table and certificate pipeline disagree at k={k}, g={g}")
        if table:
            v.rule_ids.append("R-CYCLIC")
    return v


def rule_bicyclic(k: int, g: int) -> FeasibilityVerdict:
    if not (k >= 7 and k % 2 == 1 and g % 2 == 0 and g >= 8 and (g // 2) % 2 == 0):
        reason = "needs odd k >= 7 and g = 2d >= 8 with d even"
        return FeasibilityVerdict(k, g, BICYCLIC, NOT_COVERED, notes=[reason])
    d = g // 2
    result = rule_theorem_a(k, g, 2, 2)
    if result.consistent:
        raise AssertionError(f"theorem-a check unexpectedly consistent for c=2 at k={k}, g={g}")
    derived = _derived(k, g)
    return FeasibilityVerdict(
        k, g, BICYCLIC, NONEXISTENT, ["R-BICYCLIC", "R-THMA"], result.certificates, derived,
        [f"c=2: d-1={d - 1} does not divide c-1=1"],
    )


RULE_BY_SCOPE = {
    GENERAL: rule_exclusion_list,
    CYCLIC: rule_cyclic,
    BICYCLIC: rule_bicyclic,
    EXCESS2: rule_excess2,
}


def parse_scopes(text: str) -> list[str]:
    out = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if token not in SCOPE_ALIASES:
            raise ValueError(f"unknown scope {token!r}")
        out.append(SCOPE_ALIASES[token])
    if not out:
        raise ValueError("no scopes given")
    return out


@dataclass
class ScanResult:
    rows: list[FeasibilityVerdict]

    def summary(self) -> dict:
        counts: dict[str, dict[str, int]] = {}
        for row in self.rows:
            per = counts.setdefault(row.scope, {NONEXISTENT: 0, OPEN: 0, NOT_COVERED: 0})
            per[row.verdict] += 1
        return counts

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "summary": self.summary()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [r.k, r.g, r.scope, r.verdict, ";".join(r.rule_ids), ";".join(c.digest() for c in r.certificates)]
            )
        return buf.getvalue()


CSV_COLUMNS = ["k", "g", "scope", "verdict", "rule_ids", "certificate_digests"]


def scan(k_range, g_range, scopes, workers: int = 1) -> ScanResult:
    """Evaluate every (k, even g, scope) cell; rows ordered by k, then g, then scope order."""
    ks = sorted(set(k_range))
    gs = sorted({g for g in g_range if g % 2 == 0})
    if not ks or not gs:
        raise ValueError("empty k or g range")
    if not scopes:
        raise ValueError("no scopes given")
    cells = [(k, g, s) for k in ks for g in gs for s in scopes]

    def run(cell):
        k, g, s = cell
        return RULE_BY_SCOPE[s](k, g)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, cells))
    else:
        rows = [run(c) for c in cells]
    return ScanResult(rows)
