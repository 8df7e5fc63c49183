"""Counting families of q for which Q(sqrt(Dq)) is certified EGR, and their growth.

A family for a good D is q = sign * q_1 ... q_n (distinct primes) where every
q_j passes a quadratic-character test against the odd primes of D, plus a
congruence on q mod 8 or mod 4. Such q satisfy all five conditions of the
criterion, so each one yields an EGR field. Counts are compared with
X / log^alpha X, alpha = 1 - 1/2^r.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import is_squarefree, kronecker, prime_divisors, sieve_flags
from .setzer import epsilon

_QR_TABLE_LIMIT = 10**7


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of one family; ``prime_conditions`` holds (modulus, allowed residues) pairs."""

    D: int
    r: int
    epsilon: int
    odd_primes: tuple[int, ...]
    two_adic: tuple[int, ...] | None  # allowed residues mod 8 of odd q_j (even D only)
    allow_two: bool
    residue_modulus: int
    residues: tuple[int, ...]
    sign_of_q: int

    @property
    def alpha(self) -> Fraction:
        return 1 - Fraction(1, 2**self.r)

    @property
    def real(self) -> bool:
        return self.D * self.sign_of_q > 0

    @property
    def label(self) -> str:
        kind = "R" if self.real else "I"
        return f"{kind}_D(D={self.D},sign={self.sign_of_q:+d},q<=X)"

    @property
    def prime_conditions(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        out = [(p, tuple(sorted({x * x % p for x in range(1, p)}))) for p in self.odd_primes if p < 200]
        if self.two_adic is not None:
            out.append((8, self.two_adic))
        return tuple(out)

    def prime_ok(self, p: int) -> bool:
        if p == 2:
            return self.allow_two
        if any(kronecker(p, pi) != 1 for pi in self.odd_primes):
            return False
        return self.two_adic is None or p % 8 in self.two_adic

    def accepts(self, q: int) -> bool:
        """Per-integer membership test (slow path, used for spot checks)."""
        if q == 0 or (q > 0) != (self.sign_of_q > 0):
            return False
        if q % self.residue_modulus not in self.residues:
            return False
        n = abs(q)
        return is_squarefree(n) and all(self.prime_ok(p) for p in prime_divisors(n))


def family_for(D: int, sign: int | None = None, residues: str = "narrow") -> FamilySpec:
    """Family of q attached to a good D.

    ``sign`` defaults to -epsilon_D, which makes conditions (a) and (c) hold
    for every q. The opposite sign is accepted only when it keeps them true.
    With ``residues="narrow"`` the class for D = +-3 mod 8 is q = 5D mod 8;
    ``"full"`` uses the whole class q = D mod 4.
    """
    if abs(D) <= 1 or not is_squarefree(D):
        raise ValueError(f"D = {D} must be square-free with |D| > 1")
    if residues not in ("narrow", "full"):
        raise ValueError(f"unknown residue mode {residues!r}")
    eps = epsilon(D)
    odd = tuple(p for p in prime_divisors(D) if p != 2)
    if sign is None:
        sign = -eps
    elif sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    elif sign == eps:
        # (a) then needs (-1/p) = 1 for odd p | D, and (c) needs eps*D > 0
        if eps * D < 0 or any(p % 4 != 1 for p in odd):
            raise ValueError(f"sign {sign:+d} violates the conditions for D = {D}")

    two_adic = None
    allow_two = False
    if D % 2 == 0:
        half = D // 2
        delta = 1 if half % 4 == 1 else -1
        two_adic = tuple(x for x in (1, 3, 5, 7) if kronecker(-2 * delta, x) == 1)
        mod, res = 8, ((D + 1) % 8,)
    else:
        allow_two = all(kronecker(2, p) == 1 for p in odd)
        if D % 8 in (3, 5):
            if residues == "narrow":
                mod, res = 8, (5 * D % 8,)
            else:
                mod, res = 4, (D % 4,)
            allow_two = False
        else:
            mod, res = 1, (0,)
    r = len(prime_divisors(D))
    return FamilySpec(D, r, eps, odd, two_adic, allow_two, mod, res, sign)


def _qr_mask(values: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of values that are nonzero squares mod the odd prime p."""
    if p <= _QR_TABLE_LIMIT:
        table = np.zeros(p, dtype=bool)
        x = np.arange(1, p, dtype=np.int64)
        table[(x * x) % p] = True
        return table[values % p]
    return np.fromiter((kronecker(int(v), p) == 1 for v in values), dtype=bool, count=len(values))


def member_flags(spec: FamilySpec, n_max: int) -> np.ndarray:
    """flags[n] is True iff sign * n belongs to the family, for 0 <= n <= n_max."""
    n_max = int(n_max)
    is_p = sieve_flags(n_max)
    primes = np.flatnonzero(is_p).astype(np.int64)
    good = np.ones(len(primes), dtype=bool)
    for p in spec.odd_primes:
        good &= _qr_mask(primes, p)
    if spec.two_adic is not None:
        good &= np.isin(primes % 8, spec.two_adic)
    if len(primes) and primes[0] == 2:
        good[0] = spec.allow_two
    flags = np.ones(n_max + 1, dtype=bool)
    flags[0] = False
    for p in primes[~good]:
        flags[p::p] = False
    root = math.isqrt(n_max)
    for p in primes[good & (primes <= root)]:
        flags[p * p :: p * p] = False
    if spec.residue_modulus > 1:
        keep = np.zeros(n_max + 1, dtype=bool)
        for r in spec.residues:
            start = (spec.sign_of_q * r) % spec.residue_modulus
            keep[start :: spec.residue_modulus] = True
        flags &= keep
    return flags


def family_members(spec: FamilySpec, X: int) -> np.ndarray:
    """All q in the family with |q| <= X, ordered by |q|."""
    return spec.sign_of_q * np.flatnonzero(member_flags(spec, X))


def default_grid(X: int) -> list[int]:
    grid = [10**k for k in range(1, int(math.log10(X)) + 1) if 10**k <= X]
    if not grid or grid[-1] != X:
        grid.append(X)
    return grid


@dataclass(frozen=True)
class CountReport:
    label: str
    alpha: Fraction
    X_grid: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def normalized(self) -> tuple[float, ...]:
        return normalize(self.X_grid, self.counts, self.alpha)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["X", "count", "normalized"])
        for X, c, v in zip(self.X_grid, self.counts, self.normalized):
            w.writerow([X, c, f"{v:.6f}"])
        return buf.getvalue()

    def long_rows(self) -> list[tuple[str, int, int, str]]:
        return [(self.label, X, c, f"{v:.6f}") for X, c, v in zip(self.X_grid, self.counts, self.normalized)]


def normalize(X_grid, counts, alpha) -> tuple[float, ...]:
    a = float(alpha)
    return tuple(c * math.log(X) ** a / X for X, c in zip(X_grid, counts))


def _counts_at(flags: np.ndarray, bounds: list[int]) -> tuple[int, ...]:
    cum = np.cumsum(flags, dtype=np.int64)
    return tuple(int(cum[b]) if b >= 0 else 0 for b in bounds)


def count_family(spec: FamilySpec, X: int, grid: list[int] | None = None) -> CountReport:
    """Number of family members q with |q| <= x at each x of the grid (default: powers of 10, then X)."""
    if X < 10:
        raise ValueError("X must be at least 10")
    grid = sorted(grid) if grid is not None else default_grid(X)
    if grid[-1] > X or grid[0] < 1:
        raise ValueError("grid points must lie in [1, X]")
    flags = member_flags(spec, X)
    return CountReport(spec.label, spec.alpha, tuple(grid), _counts_at(flags, grid))


def _aggregate(spec: FamilySpec, scale: int, X: int, grid, label: str) -> CountReport:
    if X < 10:
        raise ValueError("X must be at least 10")
    grid = sorted(grid) if grid is not None else default_grid(X)
    # |disc| = scale*|q| < x  <=>  |q| <= (x - 1) // scale
    bounds = [(x - 1) // scale for x in grid]
    flags = member_flags(spec, max(max(bounds), 1))
    return CountReport(label, spec.alpha, tuple(grid), _counts_at(flags, bounds))


def aggregate_RX(X: int, grid: list[int] | None = None) -> CountReport:
    """Real fields Q(sqrt(2q)) from the D = 2 family with |disc| = 8q < X."""
    return _aggregate(family_for(2), 8, X, grid, "R(|disc|<X,D=2)")


def aggregate_IX(X: int, grid: list[int] | None = None) -> CountReport:
    """Imaginary fields Q(sqrt(37q)) from the D = 37 family with |disc| = 37|q| < X."""
    return _aggregate(family_for(37), 37, X, grid, "I(|disc|<X,D=37)")


def growth_check(report: CountReport, alpha=None) -> list[float]:
    """Normalized ratios count * log(X)^alpha / X; needs 3 or more nonzero grid points."""
    a = report.alpha if alpha is None else alpha
    pts = [(X, c) for X, c in zip(report.X_grid, report.counts) if c > 0]
    if len(pts) < 3:
        raise InsufficientDataError(f"need at least 3 grid points with nonzero counts, got {len(pts)}")
    return list(normalize([X for X, _ in pts], [c for _, c in pts], a))


def drift(ratios: list[float]) -> float:
    """Relative spread max/min - 1 of a list of positive ratios."""
    return max(ratios) / min(ratios) - 1


def long_csv(reports: list[CountReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "X", "count", "normalized"])
    for rep in reports:
        w.writerows(rep.long_rows())
    return buf.getvalue()
