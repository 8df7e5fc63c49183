"""Kodaira types at primes of Q(sqrt(m)) with Tate's algorithm, and the valuation-only shortcut."""

from fractions import Fraction

from egr.curve import CurveModel
from egr.quadfield import QuadraticField, split_prime
from egr.reduction import bad_primes, tate, verify_egr

# %% A curve with unit discriminant has good reduction everywhere without any local work.
K = QuadraticField(29)
a = K(Fraction(5, 2), Fraction(1, 2))
E = CurveModel(K, K(1), K(0), a * a, K(0), K(0))
print("norm of discriminant:", E.discriminant.norm(), "-> EGR:", verify_egr(E)[0])

# %% y^2 = x^3 + sqrt(6): bad at the primes above 2 and 3.
K = QuadraticField(6)
E = CurveModel.from_coefficients(K, [0, 0, 0, 0, (0, 1)])
for P in bad_primes(E):
    print(tate(E, P).render())

# %% For residue characteristic >= 5, c4/c6/discriminant valuations already fix the type.
K = QuadraticField(-7)
E = CurveModel.from_coefficients(K, [0, 0, 0, 7**2, 7**3 * 2])
for P in split_prime(K, 7):
    print("full:", tate(E, P, "full").render(), "| fast:", tate(E, P, "fast").render())
