"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import sympy


def kronecker_ref(a: int, n: int) -> int:
    """Kronecker symbol from its definition: Euler's criterion on each prime factor."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    out = 1
    if n < 0:
        n = -n
        out = -1 if a < 0 else 1
    for p, e in sympy.factorint(n).items():
        if p == 2:
            s = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        else:
            r = pow(a % p, (p - 1) // 2, p)
            s = 0 if r == 0 else (1 if r == 1 else -1)
        out *= s**e
    return out


def squarefree_part_ref(n: int) -> tuple[int, int]:
    d, t = (1 if n > 0 else -1), 1
    for p, e in sympy.factorint(abs(n)).items():
        d *= p ** (e % 2)
        t *= p ** (e // 2)
    return d, t


def is_squarefree_ref(n: int) -> bool:
    return n != 0 and all(e == 1 for e in sympy.factorint(abs(n)).values())


def conic_brute(m: int, c: int, box: int) -> bool:
    """Nontrivial integer zero of x^2 - m y^2 - c z^2 with |x|, |y|, |z| <= box (z = 0 allowed)."""
    squares = {x * x: x for x in range(box + 1)}
    for z in range(box + 1):
        for y in range(box + 1):
            if y == z == 0:
                continue
            sq = m * y * y + c * z * z
            if sq in squares:
                return True
    return False


def family_member_ref(D: int, q: int, sign: int, residue_mod: int, residues, two_adic, allow_two) -> bool:
    """Naive family membership straight from the definition, factoring q with sympy."""
    if q == 0 or (q > 0) != (sign > 0) or q % residue_mod not in residues:
        return False
    n = abs(q)
    fac = sympy.factorint(n)
    if any(e > 1 for e in fac.values()):
        return False
    odd = [p for p in sympy.factorint(abs(D)) if p != 2]
    for qj in fac:
        if qj == 2:
            if not allow_two:
                return False
            continue
        if any(sympy.legendre_symbol(qj % p, p) != 1 if qj % p else True for p in odd):
            return False
        if two_adic is not None and qj % 8 not in two_adic:
            return False
    return True


def conic_brute_np(m: int, c: int, box: int) -> bool:
    """Vectorized conic_brute: scan y, z in [0, box] for m y^2 + c z^2 a perfect square <= box^2."""
    import numpy as np

    y = np.arange(box + 1, dtype=np.int64)
    vals = m * (y * y)[:, None] + c * (y * y)[None, :]
    vals[0, 0] = -1
    ok = (vals >= 0) & (vals <= box * box)
    r = np.round(np.sqrt(np.where(ok, vals, 0))).astype(np.int64)
    return bool(np.any(ok & (r * r == vals)))
