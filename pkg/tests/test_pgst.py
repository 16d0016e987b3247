import random
from fractions import Fraction

import pytest

from latsym.network import Network
from latsym.ninesite import build_ninesite
from latsym.pgst import (
    CERTIFIED,
    LITERAL_CONDITION_FAILED,
    NOT_COSPECTRAL,
    NOT_STRONGLY_COSPECTRAL,
    PGSTError,
    boundary_scan,
    trace_ratios,
    is_irreducible,
    parity_decompose,
    pgst_certificate,
)
from latsym.polynomial import RationalPoly
from latsym.spectral import char_poly

P_MINUS = RationalPoly([Fraction(-729, 1250), 0, 1])
P_PLUS = RationalPoly(
    [
        Fraction(-387420489, 3906250000),
        0,
        Fraction(5845851, 6250000),
        0,
        Fraction(-5103, 2500),
        0,
        1,
    ]
)


def path_network(n, k=Fraction(1)):
    return Network(n, [Fraction(0)] * n, [(i, i + 1, k) for i in range(1, n)])


def test_decompose_two_site():
    dec = parity_decompose(path_network(2), 1, 2)
    assert dec.p_plus == RationalPoly([-1, 1])
    assert dec.p_minus == RationalPoly([1, 1])
    assert dec.p_zero == RationalPoly.one()
    assert dec.plus_sign == -1
    assert dec.minus_sign == -1


def test_decompose_three_site_path():
    dec = parity_decompose(path_network(3), 1, 3)
    assert dec.p_plus == RationalPoly([-2, 0, 1])
    assert dec.p_minus == RationalPoly([0, 1])
    assert dec.p_zero == RationalPoly.one()


def test_decompose_ninesite_frozen():
    dec = parity_decompose(build_ninesite(), 2, 6)
    assert dec.p_minus == P_MINUS
    assert dec.p_plus == P_PLUS
    assert dec.p_zero == RationalPoly([0, 1])
    assert dec.plus_sign == -1
    assert dec.minus_sign == -1


def test_decompose_reassembles_char_poly():
    for net, u, v in [
        (path_network(2), 1, 2),
        (path_network(3), 1, 3),
        (build_ninesite(), 2, 6),
        (build_ninesite(Fraction(2, 3), potential=Fraction(1, 7)), 2, 6),
    ]:
        dec = parity_decompose(net, u, v)
        assert dec.p_plus * dec.p_minus * dec.p_zero == char_poly(net)


def test_decompose_rejects_bad_pairs():
    with pytest.raises(PGSTError):
        parity_decompose(path_network(3), 1, 2)  # not cospectral
    twins = Network(4, [Fraction(0)] * 4, [(1, 2, Fraction(1)), (3, 4, Fraction(1))])
    with pytest.raises(PGSTError):
        parity_decompose(twins, 1, 3)  # cospectral but degenerate reduction


def test_trace_ratios_basic():
    r_plus, r_minus, distinct = trace_ratios(
        RationalPoly([2, -3, 1]), RationalPoly([-1, 1])
    )
    assert r_plus == Fraction(3, 2)
    assert r_minus == 1
    assert distinct
    # scale invariance
    assert trace_ratios(
        3 * RationalPoly([2, -3, 1]), -2 * RationalPoly([-1, 1])
    ) == (Fraction(3, 2), 1, True)
    # the nine-site parity factors are both even: ratios collapse to 0 = 0
    assert trace_ratios(P_PLUS, P_MINUS) == (0, 0, False)
    with pytest.raises(ValueError):
        trace_ratios(RationalPoly.one(), RationalPoly.x())


def test_is_irreducible_examples():
    assert is_irreducible(RationalPoly([5, 2]))
    assert is_irreducible(RationalPoly([1, 1, 1]))
    assert not is_irreducible(RationalPoly([Fraction(-1, 4), 0, 1]))
    assert is_irreducible(RationalPoly([1, 0, 0, 0, 1]))  # x^4 + 1
    assert not is_irreducible(RationalPoly([4, 0, 0, 0, 1]))  # (x^2-2x+2)(x^2+2x+2)
    assert not is_irreducible(RationalPoly([1, 0, 1, 0, 1]))
    assert is_irreducible(RationalPoly([1, 0, -10, 0, 1]))
    assert is_irreducible(P_MINUS)
    assert is_irreducible(P_PLUS)
    with pytest.raises(ValueError):
        is_irreducible(RationalPoly.const(7))


def has_rational_root(coeffs):
    # integer coefficients, ascending; candidates p/q with p | a0, q | lead
    a0, lead = coeffs[0], coeffs[-1]
    if a0 == 0:
        return True
    p_divs = [d for d in range(1, abs(a0) + 1) if a0 % d == 0]
    q_divs = [d for d in range(1, abs(lead) + 1) if lead % d == 0]
    poly = RationalPoly(coeffs)
    for p in p_divs:
        for q in q_divs:
            for sign in (1, -1):
                if poly(Fraction(sign * p, q)) == 0:
                    return True
    return False


def test_is_irreducible_against_root_search():
    # degree 2 and 3: reducible over Q iff a rational root exists
    rng = random.Random(41)
    checked = 0
    while checked < 40:
        deg = rng.randint(2, 3)
        coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.choice([1, 2, 3, -1])]
        if coeffs[0] == 0 and rng.random() < 0.7:
            coeffs[0] = 1  # keep a few, but mostly avoid the trivial root
        assert is_irreducible(RationalPoly(coeffs)) == (not has_rational_root(coeffs))
        checked += 1


def test_certificate_two_site_is_certified():
    cert = pgst_certificate(path_network(2), 1, 2)
    assert cert.verdict == CERTIFIED
    assert cert.cospectral and cert.strongly_cospectral
    assert cert.swap_automorphism
    assert (cert.trace_ratio_plus, cert.trace_ratio_minus) == (1, -1)
    assert cert.trace_ratios_distinct
    assert "verdict: CERTIFIED" in cert.report_text()
    assert "latent_symmetric: no" in cert.report_text()


def test_certificate_three_site_fails_literal_condition():
    cert = pgst_certificate(path_network(3), 1, 3)
    assert cert.verdict == LITERAL_CONDITION_FAILED
    assert cert.trace_ratio_plus == cert.trace_ratio_minus == 0
    assert cert.plus_irreducible and cert.minus_irreducible


def test_certificate_ninesite():
    cert = pgst_certificate(build_ninesite(), 2, 6)
    assert cert.verdict == LITERAL_CONDITION_FAILED
    assert cert.cospectral
    assert not cert.swap_automorphism
    assert cert.strongly_cospectral
    assert cert.plus_irreducible and cert.minus_irreducible
    assert cert.trace_ratio_plus == 0 and cert.trace_ratio_minus == 0
    assert not cert.trace_ratios_distinct
    text = cert.report_text()
    assert "latent_symmetric: yes" in text
    assert "verdict: LITERAL_CONDITION_FAILED" in text
    assert "inconclusive" in text
    d = cert.to_dict()
    assert d["verdict"] == LITERAL_CONDITION_FAILED
    assert d["trace_ratio_plus"] == "0"


def test_certificate_gates():
    cert = pgst_certificate(path_network(3), 1, 2)
    assert cert.verdict == NOT_COSPECTRAL
    assert cert.p_plus is None
    twins = Network(4, [Fraction(0)] * 4, [(1, 2, Fraction(1)), (3, 4, Fraction(1))])
    cert = pgst_certificate(twins, 1, 3)
    assert cert.verdict == NOT_STRONGLY_COSPECTRAL
    assert cert.strongly_cospectral is False


def frange(lo, hi, step):
    grid = []
    e = Fraction(lo)
    while e <= Fraction(hi):
        grid.append(e)
        e += Fraction(step)
    return grid


def test_boundary_scan_brackets_upper_breakdown():
    report = boundary_scan(
        build_ninesite, Fraction(1), frange("24/10", "121/50", "1/100")
    )
    assert report.exact_failures == ()
    assert all(p.strongly_cospectral for p in report.points)
    assert report.brackets == ((Fraction(241, 100), Fraction(121, 50)),)


def test_boundary_scan_brackets_lower_breakdown():
    report = boundary_scan(
        build_ninesite, Fraction(1), frange("-43/100", "-2/5", "1/100")
    )
    assert report.brackets == ((Fraction(-21, 50), Fraction(-41, 100)),)


def test_boundary_scan_far_from_breakdown():
    report = boundary_scan(build_ninesite, Fraction(1), frange(5, 6, "1/2"))
    assert report.brackets == ()
    assert report.exact_failures == ()
    assert "no exact failures" in report.report_text()


def test_boundary_location_scales_with_coupling():
    # with doubled coupling the breakdown potential doubles
    report = boundary_scan(
        build_ninesite, Fraction(2), frange("482/100", "484/100", "1/100")
    )
    assert report.brackets == ((Fraction(482, 100), Fraction(483, 100)),)


def test_boundary_root_distance_dips_near_breakdown():
    near = boundary_scan(build_ninesite, Fraction(1), [Fraction(241, 100)])
    far = boundary_scan(build_ninesite, Fraction(1), [Fraction(5)])
    assert near.points[0].min_root_distance < 0.05
    assert far.points[0].min_root_distance > 0.1


def test_boundary_scan_input_validation():
    with pytest.raises(PGSTError):
        boundary_scan(build_ninesite, Fraction(0), [Fraction(1)])
    with pytest.raises(PGSTError):
        boundary_scan(build_ninesite, Fraction(1), [])
