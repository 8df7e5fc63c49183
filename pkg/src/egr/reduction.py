"""Local reduction types over Q(sqrt(m)) and certification of everywhere good reduction.

Tate's algorithm runs directly on elements of K, measuring everything with
P-adic valuations and reducing into O_K/P; no completions are formed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .arith import lcm, prime_divisors
from .curve import CurveModel, b_invariants, discriminant, rst_transform
from .quadfield import FieldElement, PrimeIdeal, split_prime


@dataclass(frozen=True)
class LocalReduction:
    prime: PrimeIdeal
    kodaira: str
    v_min_delta: int

    @property
    def is_good(self) -> bool:
        return self.v_min_delta == 0

    def render(self) -> str:
        return f"P={self.prime} type={self.kodaira} v(Dmin)={self.v_min_delta}"

    def to_json(self) -> str:
        P = self.prime
        return json.dumps(
            {"P": str(P), "p": P.p, "root": P.root, "kind": P.kind,
             "type": self.kodaira, "v_Dmin": self.v_min_delta}
        )


def _val(x: FieldElement, P: PrimeIdeal) -> float:
    return math.inf if not x else P.valuation(x)


def unit_discriminant(E: CurveModel) -> bool:
    """True iff the discriminant of the integral model E is a unit of O_K."""
    if not E.is_integral():
        raise ValueError("unit_discriminant needs an integral model")
    return abs(E.discriminant.norm()) == 1


def integral_model(E: CurveModel) -> tuple[CurveModel, int]:
    """Scale x -> x/lam^2, y -> y/lam^3 by the least rational integer lam making E integral."""
    lam = lcm(*(a.theta_coords()[2] for a in E.a_invariants))
    if lam == 1:
        return E, 1
    a = [ai * lam**k for ai, k in zip(E.a_invariants, (1, 2, 3, 4, 6))]
    return CurveModel(E.field, *a), lam


def _fast_path(E: CurveModel, P: PrimeIdeal) -> LocalReduction:
    vd = P.valuation(E.discriminant)
    v4, v6 = _val(E.c4, P), _val(E.c6, P)
    k = min(vd // 12, *(v // n for v, n in ((v4, 4), (v6, 6)) if v != math.inf))
    vmin = vd - 12 * k
    v4min = v4 - 4 * k
    if vmin == 0:
        kod = "good"
    elif v4min == 0:
        kod = f"I{vmin}"
    else:
        vj = 3 * v4min - vmin
        if vj < 0:
            kod = f"I{-vj}*"
        else:
            kod = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}[vmin]
    return LocalReduction(P, kod, int(vmin))


class _Local:
    """Helpers for computing in the localization of O_K at P."""

    def __init__(self, P: PrimeIdeal):
        self.P = P
        self.F = P.residue_field
        self.pi = P.uniformizer

    def val(self, x) -> float:
        return _val(x, self.P)

    def divides(self, x) -> bool:
        return self.val(x) > 0

    def reduce(self, x) -> FieldElement:
        return self.P.lift(self.P.residue(x))

    def inv(self, x) -> FieldElement:
        return self.P.lift(self.F.inv(self.P.residue(x)))

    def root(self, x, e: int) -> FieldElement:
        return self.P.lift(self.F.root(self.P.residue(x), e))


def _tate_full(E: CurveModel, P: PrimeIdeal) -> LocalReduction:
    L = _Local(P)
    p, pi = P.p, L.pi
    pi2, pi3, pi4 = pi**2, pi**3, pi**4
    a1, a2, a3, a4, a6 = E.a_invariants
    half = L.inv(E.field(2)) if p != 2 else None

    while True:
        b2, b4, b6, b8 = b_invariants(a1, a2, a3, a4, a6)
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        vd = L.val(discriminant(a1, a2, a3, a4, a6))
        if vd == 0:
            return LocalReduction(P, "good", 0)

        # move the singular point of the reduction to (0, 0)
        if p == 2:
            if L.divides(b2):
                r = L.root(a4, 2)
                t = L.root(((r + a2) * r + a4) * r + a6, 2)
            else:
                inv_a1 = L.inv(a1)
                r = inv_a1 * a3
                t = inv_a1 * (a4 + r * r)
        elif p == 3:
            r = L.root(-b6, 3) if L.divides(b2) else -L.inv(b2) * b4
            t = a1 * r + a3
        else:
            if L.divides(c4):
                r = -L.inv(E.field(12)) * b2
            else:
                r = -L.inv(12 * c4) * (c6 + b2 * c4)
            t = -half * (a1 * r + a3)
        r, t = L.reduce(r), L.reduce(t)
        a1, a2, a3, a4, a6 = rst_transform(a1, a2, a3, a4, a6, r, 0, t)
        b2, b4, b6, b8 = b_invariants(a1, a2, a3, a4, a6)

        if not L.divides(b2):
            return LocalReduction(P, f"I{vd}", vd)
        if L.val(a6) < 2:
            return LocalReduction(P, "II", vd)
        if L.val(b8) < 3:
            return LocalReduction(P, "III", vd)
        if L.val(b6) < 3:
            return LocalReduction(P, "IV", vd)

        # now arrange pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
        if p == 2:
            s = L.root(a2, 2)
            t = pi * L.root(a6 / pi2, 2)
        elif p == 3:
            s, t = a1, a3
        else:
            s, t = -a1 * half, -a3 * half
        a1, a2, a3, a4, a6 = rst_transform(a1, a2, a3, a4, a6, 0, s, t)

        # cubic T^3 + b T^2 + c T + d in the residue field
        b, c, d = a2 / pi, a4 / pi2, a6 / pi3
        w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
        x = 3 * c - b * b
        if not L.divides(w):
            return LocalReduction(P, "I0*", vd)

        if not L.divides(x):
            # double root: type I_n*
            if p == 2:
                r = L.root(c, 2)
            elif p == 3:
                r = c * L.inv(b)
            else:
                r = (b * c - 9 * d) * L.inv(2 * x)
            r = pi * L.reduce(r)
            a1, a2, a3, a4, a6 = rst_transform(a1, a2, a3, a4, a6, r, 0, 0)
            ix = iy = 3
            mx = my = pi2
            while True:
                a2t = a2 / pi
                a3t = a3 / my
                a6t = a6 / (mx * my)
                if not L.divides(a3t * a3t + 4 * a6t):
                    break
                if p == 2:
                    t = my * L.root(a6t, 2)
                else:
                    t = my * L.reduce(-a3t * half)
                a1, a2, a3, a4, a6 = rst_transform(a1, a2, a3, a4, a6, 0, 0, t)
                my = my * pi
                iy += 1
                a2t = a2 / pi
                a4t = a4 / (pi * mx)
                a6t = a6 / (mx * my)
                if not L.divides(a4t * a4t - 4 * a6t * a2t):
                    break
                if p == 2:
                    r = mx * L.root(a6t * L.inv(a2t), 2)
                else:
                    r = mx * L.reduce(-a4t * L.inv(2 * a2t))
                a1, a2, a3, a4, a6 = rst_transform(a1, a2, a3, a4, a6, r, 0, 0)
                mx = mx * pi
                ix += 1
            return LocalReduction(P, f"I{ix + iy - 5}*", vd)

        # triple root
        if p == 2:
            r = b
        elif p == 3:
            r = L.root(-d, 3)
        else:
            r = -b * L.inv(E.field(3))
        r = pi * L.reduce(r)
        a1, a2, a3, a4, a6 = rst_transform(a1, a2, a3, a4, a6, r, 0, 0)
        a3t, a6t = a3 / pi2, a6 / pi4
        if not L.divides(a3t * a3t + 4 * a6t):
            return LocalReduction(P, "IV*", vd)
        if p == 2:
            t = -pi2 * L.root(a6t, 2)
        else:
            t = pi2 * L.reduce(-a3t * half)
        a1, a2, a3, a4, a6 = rst_transform(a1, a2, a3, a4, a6, 0, 0, t)
        if L.val(a4) < 4:
            return LocalReduction(P, "III*", vd)
        if L.val(a6) < 6:
            return LocalReduction(P, "II*", vd)
        # not minimal: scale by pi and start over
        a1, a2, a3, a4, a6 = a1 / pi, a2 / pi2, a3 / pi3, a4 / pi4, a6 / pi**6


def tate(E: CurveModel, P: PrimeIdeal, method: str = "auto") -> LocalReduction:
    """Kodaira type and minimal discriminant valuation of E at P.

    ``method`` is "full" (Tate's algorithm), "fast" (c4/c6/discriminant
    valuations, residue characteristic >= 5 only) or "auto" (fast when
    p >= 5).
    """
    if not E.discriminant:
        raise ValueError("discriminant is 0")
    if method not in ("auto", "fast", "full"):
        raise ValueError(f"unknown method {method!r}")
    if any(_val(a, P) < 0 for a in E.a_invariants):
        raise ValueError(f"model is not integral at {P}")
    if method == "fast" or (method == "auto" and P.p >= 5):
        if P.p < 5:
            raise ValueError("fast path needs residue characteristic >= 5")
        return _fast_path(E, P)
    return _tate_full(E, P)


def bad_primes(E: CurveModel) -> list[PrimeIdeal]:
    """Prime ideals dividing the discriminant, ordered by (p, root)."""
    n = E.discriminant.norm()
    out = []
    for p in prime_divisors(n.numerator):
        out.extend(P for P in split_prime(E.field, p) if P.valuation(E.discriminant) > 0)
    return out


def verify_egr(E: CurveModel, method: str = "auto") -> tuple[bool, list[LocalReduction]]:
    """Certify everywhere good reduction, returning the per-prime report."""
    E, _ = integral_model(E)
    if unit_discriminant(E):
        return True, []
    reports = [tate(E, P, method) for P in bad_primes(E)]
    return all(r.is_good for r in reports), reports


def render_report(reports: list[LocalReduction], fmt: str = "text") -> str:
    if fmt == "json":
        return "\n".join(r.to_json() for r in reports)
    return "\n".join(r.render() for r in reports)
