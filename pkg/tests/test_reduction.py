import random
from fractions import Fraction

import pytest

from egr.curve import CurveModel
from egr.quadfield import QuadraticField, split_prime
from egr.reduction import (
    LocalReduction, bad_primes, integral_model, render_report, tate, unit_discriminant, verify_egr,
)

from curves import intro_curve, short

KODAIRA_FROM_PARI = {1: "good", 2: "II", 3: "III", 4: "IV", -1: "I0*", -2: "II*", -3: "III*", -4: "IV*"}


def _random_integral(K, rng, size, short_form=False):
    t = K.theta
    while True:
        a = [K(rng.randint(-size, size)) + rng.randint(-size, size) * t for _ in range(5)]
        if short_form:
            a[0] = a[1] = a[2] = K(0)
        try:
            return CurveModel(K, *a)
        except ValueError:
            continue


def _scaled(E, K, rng, p):
    """E rescaled by a power of p so that non-minimal and additive cases show up."""
    k = rng.choice([0, 1, 1, 2])
    lam = K(p) ** k
    return CurveModel(K, *(a * lam**w for a, w in zip(E.a_invariants, (1, 2, 3, 4, 6))))


def test_unit_discriminant_examples():
    assert unit_discriminant(intro_curve())
    assert not unit_discriminant(short(6, 0, 1))
    with pytest.raises(ValueError):
        unit_discriminant(short(6, Fraction(1, 2), 1))


def test_intro_curve_good_everywhere():
    E = intro_curve()
    ok, reports = verify_egr(E)
    assert ok and reports == []
    (P29,) = split_prime(E.field, 29)
    assert tate(E, P29).kodaira == "good"


def test_type_ii_at_inert_five():
    # y^2 = x^3 + 5 is defined over Q; 5 is inert in Q(sqrt(2)), so the type at (5) matches Q_5
    E = short(2, 0, 5)
    (P,) = split_prime(E.field, 5)
    for method in ("auto", "full", "fast"):
        red = tate(E, P, method)
        assert red.kodaira == "II" and red.v_min_delta == 2


def test_bad_at_two_and_three():
    K = QuadraticField(6)
    E = CurveModel.from_coefficients(K, [0, 0, 0, 0, (0, 1)])
    ok, reports = verify_egr(E)
    assert not ok
    assert sorted({r.prime.p for r in reports if not r.is_good}) == [2, 3]
    assert {P.p for P in bad_primes(E)} == {2, 3}


def test_known_types_over_rationals_embedded():
    # curves over Q at an inert prime keep their Q_p Kodaira type
    cases = [
        ((0, 0, 0, -1, 0), 5, None, None),           # y^2 = x^3 - x, good at 5
        ((0, 0, 0, 0, 7**4), 7, "IV*", 8),
        ((0, 0, 0, 0, 7**2), 7, "IV", 4),
        ((0, 0, 0, 7, 0), 7, "III", 3),
        ((0, 0, 0, 7**2, 0), 7, "I0*", 6),
        ((0, 0, 0, 0, 7**5), 7, "II*", 10),
        ((0, 0, 0, 7**3, 0), 7, "III*", 9),
    ]
    K = QuadraticField(3)  # 7 is inert (3 is not a square mod 7); 5 is inert too
    for coeffs, p, kod, v in cases:
        E = CurveModel.from_coefficients(K, coeffs)
        (P,) = split_prime(K, p)
        red = tate(E, P, "full")
        if kod is None:
            assert red.is_good
        else:
            assert (red.kodaira, red.v_min_delta) == (kod, v)
            assert tate(E, P, "fast").v_min_delta == v


def test_multiplicative_and_star_types():
    K = QuadraticField(2)
    (P3,) = split_prime(K, 3)
    # y^2 + xy = x^3 + 3^k: multiplicative at 3
    E = CurveModel.from_coefficients(K, [1, 0, 0, 0, 27])
    assert tate(E, P3, "full").kodaira.startswith("I")
    E2 = CurveModel.from_coefficients(K, [0, 1, 0, 0, 3**4])  # y^2 = x^3 + x^2 + 81
    red = tate(E2, P3, "full")
    assert red.v_min_delta > 0


def test_method_validation():
    E = short(6, 1, 1)
    P = split_prime(E.field, 2)[0]
    with pytest.raises(ValueError):
        tate(E, P, "fast")
    with pytest.raises(ValueError):
        tate(E, P, "magic")
    with pytest.raises(ValueError):
        tate(short(6, Fraction(1, 2), 1), P)


@pytest.mark.parametrize("m", [6, -7, 29, -1, 33, 5])
def test_fast_path_matches_full(m):
    rng = random.Random(m)
    K = QuadraticField(m)
    checked = 0
    for _ in range(20):
        E0 = _random_integral(K, rng, 6, short_form=True)
        for p in (5, 7, 11):
            E = _scaled(E0, K, rng, p)
            for P in split_prime(K, p):
                if P.valuation(E.discriminant) == 0:
                    continue
                full, fast = tate(E, P, "full"), tate(E, P, "fast")
                assert (full.kodaira, full.v_min_delta) == (fast.kodaira, fast.v_min_delta), (E, P)
                checked += 1
    assert checked > 0


def test_integral_model_and_rendering():
    E = short(6, Fraction(1, 4), Fraction(1, 8))
    F, lam = integral_model(E)
    assert F.is_integral() and lam == 8 and F.j == E.j
    red = LocalReduction(split_prime(QuadraticField(6), 5)[0], "I3", 3)
    assert red.render() == "P=(5, sqrt(6)-1) type=I3 v(Dmin)=3"
    assert '"type": "I3"' in render_report([red], "json")


# ---- independent oracle: PARI/GP via cypari2 ----

def _pari_prime(pari, nf, P):
    """PARI prime ideal matching ours."""
    for pr in pari.idealprimedec(nf, P.p):
        if P.kind != "split":
            return pr
        gen = pari(f"x - {P.root}") if (P.p != 2) else pari(f"(1 + x)/2 - {P.root}")
        if int(pari.idealval(nf, gen, pr)) > 0:
            return pr
    raise AssertionError("no matching prime")


def test_full_algorithm_matches_pari():
    cypari2 = pytest.importorskip("cypari2")
    pari = cypari2.Pari()
    rng = random.Random(2024)
    mismatches = []
    cases = 0
    for m in (6, -7, 29, 5, -1, 33, -259, 395, 3, 2, 17, -3, 65):
        K = QuadraticField(m)
        nf = pari.nfinit(pari(f"x^2 - ({m})"))
        for _ in range(6):
            E0 = _random_integral(K, rng, 8)
            for p in (2, 3, 5):
                E = _scaled(E0, K, rng, p)
                coeffs = [pari(f"{a.a} + ({a.b})*x") for a in E.a_invariants]
                pe = pari.ellinit(coeffs, nf)
                for P in split_prime(K, p):
                    if P.valuation(E.discriminant) == 0:
                        continue
                    pr = _pari_prime(pari, nf, P)
                    red = pari.elllocalred(pe, pr)
                    code = int(red[1])
                    u = red[2][0]
                    vmin = int(pari.idealval(nf, pe.disc(), pr)) \
                        - 12 * int(pari.idealval(nf, u, pr))
                    if code in KODAIRA_FROM_PARI:
                        kod = KODAIRA_FROM_PARI[code]
                    elif code > 4:
                        kod = f"I{code - 4}"
                    else:
                        kod = f"I{-code - 4}*"
                    ours = tate(E, P, "full")
                    cases += 1
                    if (ours.kodaira, ours.v_min_delta) != (kod, vmin):
                        mismatches.append((m, str(P), E.a_invariants, ours, kod, vmin))
    assert cases > 50
    assert not mismatches, mismatches[:3]
