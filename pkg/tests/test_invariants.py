from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2tor.catalog import Hn, SLnR, SOpq, resolve, resolve_space
from l2tor.errors import UnsupportedMetric, UnsupportedSpace
from l2tor.exact import PiScalar, Polynomial, exact_sqrt, integrate_polynomial
from l2tor.invariants import (
    INF_PLUS,
    NSValue,
    betti_profile,
    density_at,
    density_polynomials,
    dual_volume,
    formal_degree,
    full_report,
    ns_profile,
    plancherel_constant,
    q_invariant,
    q_terms,
    quotient_torsion,
    t2,
)

F = Fraction
pi = PiScalar.pi
one = NSValue.finite(1)


def mono(c, k):
    return PiScalar.monomial(F(c), k)


def sphere_volume(n: int) -> PiScalar:
    """vol(S^n) from the recursion vol(S^n) = 2 pi / (n - 1) * vol(S^(n-2))."""
    if n == 0:
        return PiScalar(2)
    if n == 1:
        return mono(2, 1)
    return mono(F(2, n - 1), 1) * sphere_volume(n - 2)


# -- NSValue ------------------------------------------------------------------


def test_ns_value_order():
    assert NSValue.finite(3) < INF_PLUS and not INF_PLUS < NSValue.finite(3)
    assert min(INF_PLUS, one) == one and str(INF_PLUS) == "inf+"
    with pytest.raises(ValueError):
        NSValue.finite(0)


# -- Betti and NS ---------------------------------------------------------------


def test_betti_h2():
    b = betti_profile(resolve(Hn(2)))
    assert b == [PiScalar(0), mono(F(1, 2), -1), PiScalar(0)]


@pytest.mark.parametrize("desc", ["SO(3,5)", "H^3"])
def test_betti_vanish_for_rank_one(desc):
    assert all(b.is_zero() for b in betti_profile(resolve_space(desc)))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_betti_even_hyperbolic_against_sphere_volume(n):
    b = betti_profile(resolve(Hn(n)))
    assert b[n // 2] == PiScalar(2) / sphere_volume(n)


def test_ns_profile_examples():
    a, t = ns_profile(resolve(Hn(3)))
    assert a == [INF_PLUS, one, INF_PLUS, INF_PLUS]
    assert t == [INF_PLUS, one, one, INF_PLUS]
    a, _ = ns_profile(resolve(SOpq(3, 5)))
    assert a[7] == one and sum(x != INF_PLUS for x in a) == 1
    a, t = ns_profile(resolve(SOpq(2, 4)))
    assert set(a) == set(t) == {INF_PLUS}


def test_ns_profile_rank_two_product():
    a, t = ns_profile(resolve_space("H^3 x H^3"))
    two = NSValue.finite(2)
    assert [p for p, x in enumerate(a) if x != INF_PLUS] == [2, 3]
    assert all(x == two for x in a if x != INF_PLUS)
    assert [p for p, x in enumerate(t) if x != INF_PLUS] == [2, 3, 4]


# -- densities and Q ----------------------------------------------------------


def test_density_examples():
    assert density_polynomials(resolve(Hn(3))) == [Polynomial([0, 0, 1])]
    p0, p1 = density_polynomials(resolve(Hn(5)))
    assert p0 == Polynomial([0, 0, F(-1, 12), 0, F(1, 12)])
    assert p1 == Polynomial([0, 0, F(-4, 3), 0, F(1, 3)])
    assert density_polynomials(resolve(SLnR(3))) == [Polynomial([0, 0, 1])]


def test_sl3_generic_density_differs_from_catalog():
    generic = density_polynomials(resolve(SLnR(3), generic=True), generic=True)
    assert generic == [Polynomial([F(-1, 8), 0, F(9, 8)])]
    assert integrate_polynomial(generic[0], 0, 1) == F(1, 4)


def test_middle_density_is_doubled_split_product():
    sd = resolve(Hn(5))
    mid = density_polynomials(sd, include_middle=True)[2]
    from l2tor.roots import root_product_line

    lam_plus = sd.lambda_at(2)[0]
    assert mid == root_product_line(sd.g_roots, lam_plus, sd.alpha0) * 2


def test_density_requires_rank_one():
    with pytest.raises(UnsupportedSpace):
        density_polynomials(resolve(SOpq(2, 4)))


@pytest.mark.parametrize("n,q", [(3, F(1, 3)), (5, F(31, 45)), (7, F(221, 210))])
def test_q_hyperbolic(n, q):
    assert q_invariant(resolve(Hn(n))) == q


def test_q_so35_equals_q_h7():
    assert q_invariant(resolve(SOpq(3, 5))) == F(221, 210)


RANK_ONE = [SOpq(p, q) for p in range(1, 8, 2) for q in range(max(p, 3), 36 // p + 1, 2) if p * q <= 35] + [
    SLnR(3),
    SLnR(4),
]


@pytest.mark.parametrize("atom", RANK_ONE, ids=str)
def test_termwise_positivity_and_sign_law(atom):
    sd = resolve(atom)
    assert all(t > 0 for t in q_terms(sd))
    assert ((-1) ** ((sd.n - 1) // 2) * t2(sd)).sign() == 1


@pytest.mark.parametrize("atom", RANK_ONE, ids=str)
def test_densities_even_and_symmetric(atom):
    sd = resolve(atom, generic=True)
    for l in range(2 * sd.u + 1):
        assert density_at(sd, l).is_even()
        assert density_at(sd, l) == density_at(sd, 2 * sd.u - l)


# -- volumes, Plancherel, formal degrees -----------------------------------------


@pytest.mark.parametrize("n", range(2, 10))
def test_hyperbolic_dual_volume_is_sphere_volume(n):
    assert dual_volume(resolve(Hn(n))) == sphere_volume(n)


def test_sl3_volume():
    assert dual_volume(resolve(SLnR(3), "trace2")) == mono(4, 3)


def test_volume_scaling_law():
    base = dual_volume(resolve(Hn(3)))
    for r in (1, 4, 9):
        sd = resolve(Hn(3), F(r))
        # vol scales by r^(n/2) = r * sqrt(r)
        assert dual_volume(sd) == base * r * exact_sqrt(r)
        assert q_invariant(sd) == F(1, 3)
        assert t2(sd) * dual_volume(sd) == t2(resolve(Hn(3))) * base


def test_irrational_alpha0_rejected():
    with pytest.raises(UnsupportedMetric):
        dual_volume(resolve(Hn(3), F(2)))


def test_plancherel_constants():
    assert plancherel_constant(resolve(Hn(3))) == mono(F(1, 4), -2)
    assert plancherel_constant(resolve(SLnR(3), "trace2")) == mono(F(1, 4), -3)
    sd = resolve(SOpq(2, 4))
    assert plancherel_constant(sd) == PiScalar(1) / dual_volume(sd)


def test_formal_degrees():
    h2 = resolve(Hn(2))
    assert formal_degree(h2, (0,)) == mono(F(1, 4), -1)
    assert formal_degree(h2, (1,)) == mono(F(3, 4), -1)
    so22 = resolve(SOpq(2, 2))
    assert formal_degree(so22, (0, 0)) == PiScalar(1) / dual_volume(so22)
    with pytest.raises(UnsupportedSpace):
        formal_degree(resolve(Hn(3)), (0, 0))


# -- torsion --------------------------------------------------------------------


def test_t2_examples():
    assert t2(resolve(SLnR(3), "trace2")) == mono(F(1, 6), -2)
    assert t2(resolve(Hn(3))) == mono(F(-1, 6), -1)
    assert t2(resolve_space("H^3 x H^2")) == mono(F(1, 12), -2)
    assert t2(resolve(SOpq(1, 4))) == 0


def test_t2_hyperbolic_closed_form():
    for n, q in [(3, F(1, 3)), (5, F(31, 45)), (7, F(221, 210))]:
        want = mono((-1) ** ((n - 1) // 2) * q, 1) / sphere_volume(n)
        assert t2(resolve(Hn(n))) == want


def test_t2_vanishes_for_two_rank_one_factors():
    assert t2(resolve_space("H^3 x H^5")) == 0
    assert t2(resolve_space("SL(5,R)")) == 0


def test_quotient_torsion():
    assert quotient_torsion(mono(F(1, 6), -2), mono(6, 2)) == 1
    assert quotient_torsion(mono(F(-1, 6), -1), PiScalar(1)) == mono(F(-1, 6), -1)
    assert quotient_torsion(PiScalar(0), mono(3, 1)) == 0
    with pytest.raises(ValueError):
        quotient_torsion(PiScalar(1), PiScalar(-1))


def test_full_report_examples():
    r = full_report("SO(3,5)")
    assert (r.m, r.Q) == (1, F(221, 210))
    assert r.alpha[7] == one and all(b.is_zero() for b in r.betti_per_vol)
    assert r.T2.sign() == -1 and not r.discrete_spectrum_nonempty
    r = full_report("H^2")
    assert r.discrete_spectrum_nonempty and r.betti_per_vol[1] == mono(F(1, 2), -1)
    assert r.Q is None and r.T2 == 0
    r = full_report("SL(3,R) @ trace2", volY=PiScalar(1))
    assert r.rho2 == mono(F(1, 6), -2)
    assert full_report("SL(6,R)").vol_dual is None


DESCS = ["H^2", "H^3", "H^4", "SO(2,4)", "SO(3,5)", "SL(3,R)", "SL(4,R)", "SL(5,R)", "H^3 x H^2", "H^3 x H^3", "SO(2,3)"]


@pytest.mark.parametrize("desc", DESCS)
def test_trichotomy(desc):
    r = full_report(desc)
    betti = any(not b.is_zero() for b in r.betti_per_vol)
    finite_ns = any(a != INF_PLUS for a in r.alpha)
    torsion = not r.T2.is_zero()
    assert [betti, finite_ns and not torsion, torsion].count(True) == 1
    assert betti == (r.m == 0) and torsion == (r.m == 1)


@settings(max_examples=40)
@given(st.sampled_from(RANK_ONE[:12]), st.integers(1, 4), st.integers(1, 4))
def test_scale_invariance(atom, a, b):
    r = F(a, b) ** 2
    base, other = resolve(atom), resolve(atom, r if isinstance(atom, SOpq) else 2 * r)
    assert q_invariant(base) == q_invariant(other)
    assert base.chi_dual_M == other.chi_dual_M
    assert t2(base) * dual_volume(base) == t2(other) * dual_volume(other)
