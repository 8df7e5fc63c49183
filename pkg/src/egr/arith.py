"""Exact integer kernel: primality, factoring, square-free parts, symbols, sieves."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce
from typing import Iterator

import numpy as np

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Bases 2..41 are a deterministic Miller-Rabin witness set below this bound.
_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_EXTRA_ROUNDS = 64  # 4**-64 == 2**-128
_TRIAL_LIMIT = 1000


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        ps = [p for p, _ in self.factors]
        if ps != sorted(set(ps)):
            raise ValueError("primes must be strictly increasing")
        if any(e <= 0 or not is_prime(p) for p, e in self.factors):
            raise ValueError("factors must be (prime, positive exponent) pairs")

    def value(self) -> int:
        return self.sign * math.prod(p**e for p, e in self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __str__(self) -> str:
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return f"{'-' if self.sign < 0 else ''}{body or '1'}"


def _miller_rabin(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """True iff |n| is prime.

    Deterministic below 3.3e24 (covers 64 bits); beyond that 64 extra
    Miller-Rabin rounds with bases drawn from an RNG seeded by n, so the
    answer is reproducible and wrong with probability below 2**-128.
    """
    n = abs(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_miller_rabin(n, a, d, s) for a in _SMALL_PRIMES):
        return False
    if n < _DETERMINISTIC_BOUND:
        return True
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1), d, s) for _ in range(_EXTRA_ROUNDS))


def _brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Pollard rho, Brent's cycle)."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def _perfect_power(n: int) -> tuple[int, int]:
    for k in sieve_primes(n.bit_length()):
        r = _iroot(n, k)
        if r > 1 and r**k == n:
            return r, k
    return n, 1


def _iroot(n: int, k: int) -> int:
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _factor_into(n: int, out: dict[int, int], mult: int = 1) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + mult
        return
    root, k = _perfect_power(n)
    if k > 1:
        _factor_into(root, out, mult * k)
        return
    d = _brent(n)
    _factor_into(d, out, mult)
    _factor_into(n // d, out, mult)


def factor(n: int) -> Factorization:
    """Complete prime factorization of a nonzero integer."""
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        _factor_into(n, found)
    return Factorization(sign, tuple(sorted(found.items())))


_TRIAL_CACHE: list[int] = []


def _trial_primes() -> list[int]:
    if not _TRIAL_CACHE:
        _TRIAL_CACHE.extend(sieve_primes(_TRIAL_LIMIT))
    return _TRIAL_CACHE


def prime_divisors(n: int) -> list[int]:
    return factor(n).primes()


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factor(n))


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = d * t**2 with d square-free carrying the sign of n, t > 0."""
    if n == 0:
        raise ValueError("square-free part of 0 is undefined")
    f = factor(n)
    d = f.sign * math.prod(p for p, e in f if e % 2)
    t = math.prod(p ** (e // 2) for p, e in f)
    return d, t


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int:
    """Least r >= 0 with r^2 = a (mod p), p prime (Tonelli-Shanks); raises if a is a non-residue."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def sieve_flags(limit: int) -> np.ndarray:
    """Boolean array f with f[k] True iff k is prime, 0 <= k <= limit."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[: min(2, limit + 1)] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def sieve_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    return np.flatnonzero(sieve_flags(limit)).tolist()


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def odd_part(n: int) -> int:
    n = abs(n)
    while n and n % 2 == 0:
        n //= 2
    return n


def v_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k
