"""Arithmetic in K = Q(sqrt(m)): elements, integrality, prime ideals, valuations.

Elements are stored as exact rationals a + b*sqrt(m). Internally the ring of
integers is Z[theta] with theta = sqrt(m), or theta = (1 + sqrt(m))/2 when
m = 1 (mod 4); theta satisfies theta**2 = s*theta + t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from .arith import is_prime, is_squarefree, kronecker, sqrt_mod, v_p

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class QuadraticField:
    m: int

    def __post_init__(self) -> None:
        if self.m in (0, 1) or not is_squarefree(self.m):
            raise ValueError(f"m = {self.m} is not a square-free integer other than 0, 1")

    @property
    def discriminant(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m

    @property
    def is_real(self) -> bool:
        return self.m > 0

    @cached_property
    def theta_poly(self) -> tuple[int, int]:
        """(s, t) with theta**2 = s*theta + t."""
        if self.m % 4 == 1:
            return 1, (self.m - 1) // 4
        return 0, self.m

    @cached_property
    def theta(self) -> FieldElement:
        if self.m % 4 == 1:
            return FieldElement(self, Fraction(1, 2), Fraction(1, 2))
        return FieldElement(self, Fraction(0), Fraction(1))

    @cached_property
    def sqrt_m(self) -> FieldElement:
        return FieldElement(self, Fraction(0), Fraction(1))

    def __call__(self, a: Rational = 0, b: Rational = 0) -> FieldElement:
        return FieldElement(self, Fraction(a), Fraction(b))

    def primes_above(self, p: int) -> list[PrimeIdeal]:
        return split_prime(self, p)

    def __str__(self) -> str:
        return f"Q(sqrt({self.m}))"


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: QuadraticField
    a: Fraction
    b: Fraction

    def _coerce(self, other: object) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field.m != self.field.m:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, Fraction(other), Fraction(0))
        return None

    def __add__(self, other: object) -> FieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other: object) -> FieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other: object) -> FieldElement:
        return -(self - other)

    def __mul__(self, other: object) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, self.a * other, self.b * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self.field.m
        return FieldElement(self.field, self.a * o.a + m * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in a quadratic field")
        return FieldElement(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other: object) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by 0")
            return FieldElement(self.field, self.a / other, self.b / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> FieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> FieldElement:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, FieldElement):
            return self.field.m == other.field.m and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.m, self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def conjugate(self) -> FieldElement:
        return FieldElement(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.m * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def theta_coords(self) -> tuple[int, int, int]:
        """(A, B, d) with self = (A + B*theta)/d, d > 0 minimal."""
        if self.field.m % 4 == 1:
            x, y = self.a - self.b, 2 * self.b
        else:
            x, y = self.a, self.b
        d = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
        return int(x * d), int(y * d), d

    def is_integral(self) -> bool:
        return self.theta_coords()[2] == 1

    def __repr__(self) -> str:
        return f"FieldElement({self.field.m}, {self.a}, {self.b})"

    def __str__(self) -> str:
        return format_element(self)


def format_element(x: FieldElement) -> str:
    """Render as 'a + b*sqrt(m)' with rationals in lowest terms, dropping zero parts."""
    root = f"sqrt({x.field.m})"
    if x.b == 0:
        return str(x.a)
    coeff = "" if abs(x.b) == 1 else f"{abs(x.b)}*"
    if x.a == 0:
        return f"{'-' if x.b < 0 else ''}{coeff}{root}"
    return f"{x.a} {'-' if x.b < 0 else '+'} {coeff}{root}"


def is_integral(x: FieldElement) -> bool:
    return x.is_integral()


def norm(x: FieldElement) -> Fraction:
    return x.norm()


class ResidueField:
    """F_p (degree 1, elements are ints) or F_p[T]/(T^2 - sT - t) (elements are pairs)."""

    def __init__(self, p: int, degree: int, s: int = 0, t: int = 0):
        self.p = p
        self.degree = degree
        self.s = s % p
        self.t = t % p
        self.order = p**degree

    def zero(self):
        return 0 if self.degree == 1 else (0, 0)

    def one(self):
        return 1 if self.degree == 1 else (1, 0)

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def add(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x + y) % p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def mul(self, x, y):
        p = self.p
        if self.degree == 1:
            return x * y % p
        a, b = x
        c, d = y
        bd = b * d
        return ((a * c + bd * self.t) % p, (a * d + b * c + bd * self.s) % p)

    def pow(self, x, k: int):
        result = self.one()
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self.pow(x, self.order - 2)

    def root(self, x, e: int):
        """The unique e-th root of x when e is the characteristic (Frobenius inverse)."""
        if e != self.p:
            raise ValueError("only p-th roots in characteristic p are unique")
        return self.pow(x, self.order // self.p)

    def elements(self):
        p = self.p
        if self.degree == 1:
            return list(range(p))
        return [(a, b) for b in range(p) for a in range(p)]


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of O_K above p.

    ``root`` is the residue of sqrt(m) for odd p and for ramified 2; for 2
    split (m = 1 mod 8) sqrt(m) is 1 mod both primes, so ``root`` is the
    residue of (1 + sqrt(m))/2 instead. Inert primes carry no root.
    """

    field: QuadraticField
    p: int
    kind: str
    root: int | None = None

    @property
    def e(self) -> int:
        return 2 if self.kind == "ramified" else 1

    @property
    def f(self) -> int:
        return 2 if self.kind == "inert" else 1

    @cached_property
    def _theta_root(self) -> int | None:
        if self.kind == "inert":
            return None
        if self.field.m % 4 != 1 or self.p == 2:
            return self.root
        return (1 + self.root) * pow(2, -1, self.p) % self.p

    @cached_property
    def _other_theta_root(self) -> int:
        s, _ = self.field.theta_poly
        return (s - self._theta_root) % self.p

    @cached_property
    def residue_field(self) -> ResidueField:
        s, t = self.field.theta_poly
        return ResidueField(self.p, self.f, s, t)

    @cached_property
    def uniformizer(self) -> FieldElement:
        K = self.field
        if self.kind != "ramified":
            return K(self.p)
        if self.p == 2 and K.m % 4 == 3:
            return K(1, 1)
        return K.sqrt_m

    def _local_coords(self, x: FieldElement) -> tuple[int, int, int, int]:
        """(A, B, d, j): x * (theta - r')**j = (A + B*theta)/d with p not dividing d.

        r' is the root for the conjugate prime, so theta - r' is a P-unit;
        j > 0 only for split P.
        """
        A, B, d = x.theta_coords()
        j = 0
        if d % self.p == 0:
            if self.kind != "split":
                raise ValueError(f"{x} is not integral at {self}")
            j = v_p(d, self.p)
            s = self.field.theta - self._other_theta_root
            A, B, d = (x * s**j).theta_coords()
            if d % self.p == 0:
                raise ValueError(f"{x} is not integral at {self}")
        return A, B, d, j

    def residue(self, x: FieldElement, k: int = 1):
        """Image of x in O_K/P^k.

        k = 1 gives a residue field element; k > 1 gives the tuple of the
        first k digits of the P-adic expansion of x in the uniformizer.
        """
        if k < 1:
            raise ValueError("k must be positive")
        if k > 1:
            digits = []
            for _ in range(k):
                d = self.residue(x)
                digits.append(d)
                x = (x - self.lift(d)) / self.uniformizer
            return tuple(digits)
        p = self.p
        A, B, d, j = self._local_coords(x)
        dinv = pow(d, -1, p)
        if self.kind == "inert":
            return (A * dinv % p, B * dinv % p)
        if j:
            dinv = dinv * pow(self._theta_root - self._other_theta_root, -j, p)
        return (A + B * self._theta_root) * dinv % p

    def lift(self, r) -> FieldElement:
        K = self.field
        if self.kind == "inert":
            return K(r[0]) + K.theta * r[1]
        return K(r)

    def valuation(self, x: FieldElement) -> int:
        if not x:
            raise ValueError("valuation of 0")
        p = self.p
        if self.kind == "ramified":
            return _vp_rational(x.norm(), p)
        if self.kind == "inert":
            return _vp_rational(x.norm(), p) // 2
        A, B, d = x.theta_coords()
        g = min(v_p(A, p) if A else math.inf, v_p(B, p) if B else math.inf)
        prim = x.field(Fraction(A, p**g)) + x.field.theta * Fraction(B, p**g)
        vy = _vp_rational(prim.norm(), p) if self.residue(prim) == 0 else 0
        return g + vy - v_p(d, p)

    def __str__(self) -> str:
        m, p = self.field.m, self.p
        if self.kind == "inert":
            return f"({p})"
        if p == 2 and self.kind == "split":
            gen = f"(1+sqrt({m}))/2"
        else:
            gen = f"sqrt({m})"
        return f"({p}, {gen}-{self.root})" if self.root else f"({p}, {gen})"


def _vp_rational(x: Fraction, p: int) -> int:
    return v_p(x.numerator, p) - v_p(x.denominator, p)


def split_prime(K: QuadraticField, p: int) -> list[PrimeIdeal]:
    """Prime ideals above p, ordered by root."""
    if not is_prime(p) or p < 0:
        raise ValueError(f"{p} is not a positive prime")
    m = K.m
    kind = {1: "split", -1: "inert", 0: "ramified"}[kronecker(K.discriminant, p)]
    if kind == "inert":
        return [PrimeIdeal(K, p, kind)]
    if p == 2:
        if kind == "ramified":
            return [PrimeIdeal(K, 2, kind, m % 2)]
        return [PrimeIdeal(K, 2, kind, 0), PrimeIdeal(K, 2, kind, 1)]
    r = sqrt_mod(m, p)
    roots = sorted({r, (p - r) % p})
    return [PrimeIdeal(K, p, kind, c) for c in roots]


def valuation(x: FieldElement, P: PrimeIdeal) -> int:
    return P.valuation(x)


def residue(x: FieldElement, P: PrimeIdeal, k: int = 1):
    if not x.is_integral():
        raise ValueError(f"{x} is not integral")
    return P.residue(x, k)


def primes_dividing(x: FieldElement) -> list[PrimeIdeal]:
    """Prime ideals P with v_P(x) != 0, ordered by (p, root)."""
    from .arith import prime_divisors

    n = x.norm()
    ps = sorted(set(prime_divisors(n.numerator)) | set(prime_divisors(n.denominator)))
    out = []
    for p in ps:
        out.extend(P for P in split_prime(x.field, p) if P.valuation(x) != 0)
    return out
