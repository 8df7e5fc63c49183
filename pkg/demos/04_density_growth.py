"""How many q make Q(sqrt(Dq)) EGR? Counts against X / log^alpha X."""

from fractions import Fraction

from egr.density import aggregate_RX, count_family, drift, family_for, growth_check

GRID = [10**4, 10**5, 10**6]

# %% Three families; for D = 2 that is q = 3 mod 8 with every prime factor 1 or 3 mod 8.
for D in (2, 37, -26):
    spec = family_for(D)
    rep = count_family(spec, GRID[-1], GRID)
    print(f"\n{rep.label}, alpha = {spec.alpha}")
    print(rep.to_csv(), end="")

# %% With two primes in D the exponent 3/4 flattens the ratios best.
rep = count_family(family_for(-26), GRID[-1], GRID)
for a in (Fraction(1, 2), Fraction(3, 4), Fraction(1)):
    print(f"alpha={a}: drift {drift(growth_check(rep, a)):.3f}")

# %% Fields counted by discriminant: 8q < X for the D = 2 family.
print()
print(aggregate_RX(10**6).to_csv(), end="")
