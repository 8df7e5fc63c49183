"""Witness construction: norm equations, integral scaling, u candidates, E_{u,A}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .arith import is_squarefree, kronecker, prime_divisors, squarefree_part
from .curve import CurveModel
from .quadfield import FieldElement, QuadraticField
from .reduction import LocalReduction, verify_egr
from .setzer import GoodDRecord, in_R

MAX_HEIGHT_DOUBLINGS = 6
INTEGRAL_Y_MAX = 2000


class NormEquationError(ArithmeticError):
    pass


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConicSolution:
    """x^2 - m y^2 = c z^2 with gcd(x, y, z) = 1, z > 0; alpha = (x + y sqrt(m))/z."""

    m: int
    c: int
    x: int
    y: int
    z: int

    @property
    def alpha(self) -> FieldElement:
        return QuadraticField(self.m)(Fraction(self.x, self.z), Fraction(self.y, self.z))

    def check(self) -> bool:
        return self.z != 0 and self.x**2 - self.m * self.y**2 == self.c * self.z**2


class _Ternary:
    """a X^2 + b Y^2 + c Z^2 = 0 reduced to square-free, pairwise coprime coefficients.

    ``mult`` maps a reduced solution back: original_i = mult_i * reduced_i.
    """

    def __init__(self, a: int, b: int, c: int):
        if 0 in (a, b, c):
            raise ValueError("coefficients must be nonzero")
        coef = [a, b, c]
        mult = [Fraction(1)] * 3
        changed = True
        while changed:
            changed = False
            for i in range(3):
                d, s = squarefree_part(coef[i])
                if s > 1:
                    coef[i] = d
                    mult[i] /= s
                    changed = True
            for i, j in ((0, 1), (0, 2), (1, 2)):
                g = math.gcd(coef[i], coef[j])
                if g > 1:
                    k = 3 - i - j
                    coef[i] //= g
                    coef[j] //= g
                    coef[k] *= g
                    mult[i] /= g
                    mult[j] /= g
                    changed = True
        self.coef = coef
        self.mult = mult

    def solvable(self) -> bool:
        a, b, c = self.coef
        if (a > 0) == (b > 0) == (c > 0):
            return False
        for x, n in ((-b * c, a), (-a * c, b), (-a * b, c)):
            for p in prime_divisors(n) if abs(n) > 1 else ():
                if p != 2 and kronecker(x, p) != 1:
                    return False
        return True

    def solutions(self, doublings: int = MAX_HEIGHT_DOUBLINGS) -> Iterator[tuple[int, int, int]]:
        """Primitive solutions in original coordinates, by increasing search box.

        The first box uses Holzer's bounds, inside which a solution exists
        whenever the form is solvable.
        """
        a, b, c = self.coef
        bounds = [math.isqrt(abs(b * c)), math.isqrt(abs(a * c)), math.isqrt(abs(a * b))]
        # enumerate the two variables with the smallest bounds, solve for the third
        k = max(range(3), key=lambda i: (bounds[i], i))
        i, j = (n for n in range(3) if n != k)
        seen: set[tuple[int, int, int]] = set()
        for level in range(doublings + 1):
            h = 2**level
            for vi in range(bounds[i] * h + 1):
                for vj in range(bounds[j] * h + 1):
                    if vi == vj == 0:
                        continue
                    rhs = -(self.coef[i] * vi * vi + self.coef[j] * vj * vj)
                    if rhs % self.coef[k]:
                        continue
                    sq = rhs // self.coef[k]
                    if sq < 0:
                        continue
                    vk = math.isqrt(sq)
                    if vk * vk != sq:
                        continue
                    for si in (1, -1) if vi else (1,):
                        for sj in (1, -1) if vj else (1,):
                            for sk in (1, -1) if vk else (1,):
                                v = [0, 0, 0]
                                v[i], v[j], v[k] = si * vi, sj * vj, sk * vk
                                sol = self._to_original(v)
                                if sol not in seen:
                                    seen.add(sol)
                                    yield sol

    def _to_original(self, v: list[int]) -> tuple[int, int, int]:
        w = [m * x for m, x in zip(self.mult, v)]
        den = math.lcm(*(x.denominator for x in w))
        ints = [int(x * den) for x in w]
        g = math.gcd(*ints)
        ints = [x // g for x in ints]
        # canonical sign: last nonzero coordinate positive
        last = next(x for x in reversed(ints) if x)
        if last < 0:
            ints = [-x for x in ints]
        return tuple(ints)


def ternary_solvable(a: int, b: int, c: int) -> bool:
    """Legendre's criterion for a nontrivial rational zero of a x^2 + b y^2 + c z^2."""
    return _Ternary(a, b, c).solvable()


def solve_ternary(a: int, b: int, c: int) -> tuple[int, int, int]:
    t = _Ternary(a, b, c)
    if not t.solvable():
        raise NormEquationError(f"{a}x^2 + {b}y^2 + {c}z^2 = 0 has no nontrivial rational zero")
    for sol in t.solutions():
        return sol
    raise NormEquationError("search exhausted")  # pragma: no cover


def norm_equation_solvable(m: int, c: int) -> bool:
    """True iff c is a norm from Q(sqrt(m))."""
    if c == 0:
        raise ValueError("c must be nonzero")
    return ternary_solvable(1, -m, -c)


def _integral_solutions(m: int, c: int, y_max: int) -> Iterator[tuple[int, int]]:
    """x, y >= 0 with x^2 - m y^2 = c, by increasing y."""
    for y in range(y_max + 1):
        sq = c + m * y * y
        if sq < 0:
            if m < 0:
                return
            continue
        x = math.isqrt(sq)
        if x * x == sq:
            yield x, y


def iter_norm_solutions(
    m: int, c: int, doublings: int = MAX_HEIGHT_DOUBLINGS, y_max: int = INTEGRAL_Y_MAX
) -> Iterator[ConicSolution]:
    """Solutions of x^2 - m y^2 = c z^2 with x, y >= 0, z > 0, gcd 1, in deterministic order.

    Integral solutions (z = 1) with y <= y_max come first, smallest y first;
    then the conic search by growing boxes. Sign changes and conjugation are
    folded away since they only flip u or conjugate the curve.
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    t = _Ternary(1, -m, -c)
    if not t.solvable():
        return
    seen: set[tuple[int, int, int]] = set()
    for x, y in _integral_solutions(m, c, y_max):
        seen.add((x, y, 1))
        yield ConicSolution(m, c, x, y, 1)
    for x, y, z in t.solutions(doublings):
        key = (abs(x), abs(y), abs(z))
        if key not in seen:
            seen.add(key)
            yield ConicSolution(m, c, *key)


def solve_norm_equation(m: int, c: int) -> ConicSolution:
    """A rational alpha in Q(sqrt(m)) with norm c, as an integer conic solution."""
    if not norm_equation_solvable(m, c):
        raise NormEquationError(f"{c} is not a norm from Q(sqrt({m}))")
    for sol in iter_norm_solutions(m, c):
        return sol
    raise NormEquationError(f"search cap reached for x^2 - {m}y^2 = {c}z^2")  # pragma: no cover


def integralize(alpha: FieldElement) -> tuple[FieldElement, int]:
    """(n alpha, n) with n the least odd positive integer making n alpha integral.

    Raises ValueError when alpha is not integral at the primes above 2, since
    then no odd n exists.
    """
    if not alpha:
        raise ValueError("alpha must be nonzero")
    d = alpha.theta_coords()[2]
    if d % 2 == 0:
        raise ValueError(f"{alpha} has an even denominator; no odd multiple is integral")
    return alpha * d, d


def rho(m: int) -> FieldElement:
    return QuadraticField(m)(Fraction(m + 1, 2), 1)


def u_candidates(beta: FieldElement, d1: int, m: int) -> list[FieldElement]:
    base = beta * d1
    out = [base, -base]
    if m % 4 == 3:
        r = rho(m)
        out += [base * r, -base * r]
    return out


def build_curve(A: int, u: FieldElement) -> CurveModel:
    """E_{u,A}: y^2 = x^3 - 3A(A^3 - 1728)u^2 x - 2(A^3 - 1728)^2 u^3."""
    if not u:
        raise ValueError("u must be nonzero")
    if not in_R(A):
        raise ValueError(f"A = {A} is not admissible")
    B = A**3 - 1728
    K = u.field
    zero = K(0)
    return CurveModel(K, zero, zero, zero, -3 * A * B * u * u, -2 * B * B * u**3)


@dataclass(frozen=True)
class Witness:
    record: GoodDRecord
    q: int
    solution: ConicSolution
    beta: FieldElement
    n: int
    u: FieldElement
    branch: str
    curve: CurveModel
    reports: tuple[LocalReduction, ...]
    attempts: int

    @property
    def alpha(self) -> FieldElement:
        return self.solution.alpha


def construct_witness(m: int, record: GoodDRecord, q: int, retry_cap: int = 8) -> Witness:
    """Build E_{u,A} over Q(sqrt(m)) for the pair (record.D, q) and certify EGR.

    Tries u candidates for up to ``retry_cap`` distinct conic solutions whose
    alpha admits an odd integralizing factor.
    """
    if record.D * q != m:
        raise ValueError(f"D*q = {record.D * q} != m = {m}")
    if not is_squarefree(m):
        raise ValueError(f"m = {m} is not square-free")
    c = record.epsilon * record.D
    if not norm_equation_solvable(m, c):
        raise ConstructionError(f"{c} is not a norm from Q(sqrt({m})); conditions cannot hold")
    tried = 0
    for sol in iter_norm_solutions(m, c):
        try:
            beta, n = integralize(sol.alpha)
        except ValueError:
            continue
        tried += 1
        for idx, u in enumerate(u_candidates(beta, record.d1, m)):
            E = build_curve(record.A, u)
            ok, reports = verify_egr(E)
            if ok:
                branch = "rho" if idx >= 2 else "plain"
                return Witness(record, q, sol, beta, n, u, branch, E, tuple(reports), tried)
        if tried >= retry_cap:
            break
    raise ConstructionError(
        f"no EGR curve found for m={m}, D={record.D}, A={record.A} after {tried} conic solutions"
    )

