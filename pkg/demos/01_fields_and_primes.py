"""Arithmetic in Q(sqrt(m)): integrality, norms, how primes split, valuations and residues."""

from fractions import Fraction

from egr.arith import factor, kronecker, squarefree_part
from egr.quadfield import QuadraticField, split_prime

# %% Integers first: 20^3 - 1728 = 2 * 56^2, so D = 2 is the square-free part.
print("20^3 - 1728 =", factor(20**3 - 1728), "-> (D, t) =", squarefree_part(20**3 - 1728))
print("(-2/3) =", kronecker(-2, 3))

# %% Q(sqrt(29)): (5 + sqrt(29))/2 is an algebraic integer of norm -1, a unit.
K = QuadraticField(29)
a = K(Fraction(5, 2), Fraction(1, 2))
print(f"\n{K}: a = {a}, integral={a.is_integral()}, norm={a.norm()}")

# %% Splitting of small primes in Q(sqrt(6)) and valuations of 2 + sqrt(6).
K = QuadraticField(6)
x = K(2, 1)
for p in (2, 3, 5, 7):
    for P in split_prime(K, p):
        print(f"  {str(P):16} {P.kind:9} v({x}) = {P.valuation(x)}  residue = {P.residue(x)}")
