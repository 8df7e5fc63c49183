"""Setzer's criterion: admissible A, good D, congruence conditions, and the EGR_Q decision."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING

from .arith import factor, is_squarefree, kronecker, prime_divisors, squarefree_part

if TYPE_CHECKING:
    from .constructor import Witness

log = logging.getLogger(__name__)

DEFAULT_A_MAX = 10_000
CONDITIONS = ("a", "b", "c", "d", "e")


def in_R(A: int) -> bool:
    """Membership in the admissible set: 2|A => 16|A or 16|A-4, and 3|A => 27|A-12."""
    if A % 2 == 0 and not (A % 16 == 0 or (A - 4) % 16 == 0):
        return False
    if A % 3 == 0 and (A - 12) % 27 != 0:
        return False
    return True


def epsilon(D: int) -> int:
    return 1 if D % 4 == 1 else -1


@dataclass(frozen=True)
class GoodDRecord:
    """Witness that D is good: D t^2 = A^3 - 1728 and 9(A^3 - 1728) = D d1^2 d2^4."""

    A: int
    D: int
    t: int
    d1: int
    d2: int
    epsilon: int

    @classmethod
    def from_A(cls, A: int) -> GoodDRecord:
        B = A**3 - 1728
        D, t = squarefree_part(B)
        d1 = d2 = 1
        for p, e in factor(3 * t):
            d1 *= p ** (e % 2)
            d2 *= p ** (e // 2)
        return cls(A, D, t, d1, d2, epsilon(D))

    def check(self) -> bool:
        B = self.A**3 - 1728
        return (
            in_R(self.A)
            and self.D * self.t**2 == B
            and self.D * self.d1**2 * self.d2**4 == 9 * B
            and is_squarefree(self.d1)
            and self.epsilon == epsilon(self.D)
        )


GoodTable = dict[int, list[GoodDRecord]]


@lru_cache(maxsize=8)
def _scan(a_max: int) -> tuple[GoodDRecord, ...]:
    out = []
    for A in range(-a_max, a_max + 1):
        if A == 12 or not in_R(A):
            continue
        rec = GoodDRecord.from_A(A)
        if abs(rec.D) != 1:
            out.append(rec)
    return tuple(out)


def scan_good_d(a_max: int = DEFAULT_A_MAX) -> GoodTable:
    """Good D found from admissible A with |A| <= a_max, indexed by D (records ordered by |A|, A)."""
    if a_max < 1:
        raise ValueError("a_max must be positive")
    table: GoodTable = {}
    for rec in sorted(_scan(a_max), key=lambda r: (abs(r.A), r.A)):
        table.setdefault(rec.D, []).append(rec)
    return table


def table_to_csv(table: GoodTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["A", "D", "t", "d1", "d2", "epsilon"])
    rows = sorted((r for recs in table.values() for r in recs), key=lambda r: r.A)
    for r in rows:
        w.writerow([r.A, r.D, r.t, r.d1, r.d2, r.epsilon])
    return buf.getvalue()


def table_from_csv(text: str) -> GoodTable:
    table: GoodTable = {}
    for row in csv.DictReader(io.StringIO(text)):
        rec = GoodDRecord(*(int(row[k]) for k in ("A", "D", "t", "d1", "d2", "epsilon")))
        if not rec.check():
            raise ValueError(f"inconsistent good-D row: {row}")
        table.setdefault(rec.D, []).append(rec)
    return table


@dataclass(frozen=True)
class ConditionReport:
    D: int
    q: int
    results: dict[str, tuple[bool, int | None]]

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    def failed(self) -> list[str]:
        return [k for k in CONDITIONS if not self.results[k][0]]

    def describe(self) -> str:
        if self.passed:
            return f"D={self.D} q={self.q}: all conditions hold"
        parts = []
        for k in self.failed():
            w = self.results[k][1]
            parts.append(f"({k})" + (f" at p={w}" if w is not None else ""))
        return f"D={self.D} q={self.q}: fails " + ", ".join(parts)


def check_conditions(D: int, q: int) -> ConditionReport:
    """Evaluate the five congruence conditions for the pair (D, q), m = D q.

    (a) and (b) are tested at odd primes only; the prime 2 is governed by
    (d) and (e).
    """
    m = D * q
    if abs(D) == 1:
        raise ValueError("D = +-1 is never good")
    if not is_squarefree(m):
        raise ValueError(f"m = {m} is not square-free")
    eps = epsilon(D)
    res: dict[str, tuple[bool, int | None]] = {}

    bad = next((p for p in prime_divisors(D) if p != 2 and kronecker(-eps * q, p) != 1), None)
    res["a"] = (bad is None, bad)
    bad = next((p for p in prime_divisors(q) if p != 2 and kronecker(eps * D, p) != 1), None) if abs(q) > 1 else None
    res["b"] = (bad is None, bad)
    res["c"] = (not (eps * D < 0 and m < 0), None)
    res["d"] = (D % 8 not in (3, 5) or (q - D) % 4 == 0, None)
    res["e"] = (D % 2 == 1 or (q - D - 1) % 8 == 0, None)
    return ConditionReport(D, q, res)


def candidate_pairs(m: int) -> list[tuple[int, int]]:
    """All signed factorizations m = D q with D != +-1, ordered by |D| then sign."""
    n = abs(m)
    divs = [1]
    for p in prime_divisors(n):
        divs += [d * p for d in divs]
    pairs = []
    for d in sorted(divs):
        if d == 1:
            continue
        for D in (d, -d):
            pairs.append((D, m // D))
    return pairs


@dataclass
class EgrVerdict:
    m: int
    status: str
    witness: Witness | None = None
    failures: list[ConditionReport] = field(default_factory=list)
    unresolved: list[int] = field(default_factory=list)
    passing: list[ConditionReport] = field(default_factory=list)

    def summary(self) -> str:
        lines = [f"m={self.m} status={self.status}"]
        if self.witness is not None:
            w = self.witness
            lines.append(f"witness: A={w.record.A} D={w.record.D} q={w.q} u={w.u}")
        for r in self.failures:
            lines.append("  " + r.describe())
        if self.unresolved:
            lines.append("  unresolved D (conditions hold, goodness unknown): " + ", ".join(map(str, self.unresolved)))
        return "\n".join(lines)


def decide(
    m: int,
    table: GoodTable | None = None,
    *,
    a_max: int = DEFAULT_A_MAX,
    construct: bool = True,
    retry_cap: int = 8,
) -> EgrVerdict:
    """Decide whether Q(sqrt(m)) carries an EGR curve with rational j-invariant.

    YES needs a good D (from the table) passing all conditions; the witness
    curve is then built and certified. NO means every candidate D fails a
    condition, which is unconditional. Otherwise UNKNOWN, listing the D that
    pass but are not known to be good within the scan bound.
    """
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"m = {m} must be square-free and not 0 or 1")
    if table is None:
        table = scan_good_d(a_max)
    verdict = EgrVerdict(m, "NO")
    for D, q in candidate_pairs(m):
        rep = check_conditions(D, q)
        if not rep.passed:
            verdict.failures.append(rep)
            continue
        verdict.passing.append(rep)
        if D in table and verdict.witness is None and verdict.status != "YES":
            verdict.status = "YES"
            if construct:
                from .constructor import construct_witness

                verdict.witness = construct_witness(m, table[D][0], q, retry_cap=retry_cap)
        elif D not in table:
            verdict.unresolved.append(D)
    if verdict.status != "YES" and verdict.unresolved:
        verdict.status = "UNKNOWN"
    log.debug("decide(%d) -> %s", m, verdict.status)
    return verdict


def nonexistence_certificate(p: int) -> tuple[EgrVerdict, EgrVerdict]:
    """Verdicts for Q(sqrt(p)) and Q(sqrt(-p)), p prime = 3 (mod 8); both are NO without any table."""
    from .arith import is_prime

    if not is_prime(p) or p % 8 != 3:
        raise ValueError(f"{p} is not a prime congruent to 3 mod 8")
    return decide(p, table={}), decide(-p, table={})
