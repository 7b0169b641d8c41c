from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from l2tor.catalog import (
    Hn,
    SLnR,
    SOpq,
    SpaceDescriptor,
    check_structure,
    dimension,
    dual_euler_char,
    fundamental_rank,
    metric_scale,
    parse_descriptor,
    resolve,
    resolve_space,
)
from l2tor.errors import DescriptorError, UnsupportedMetric, UnsupportedSpace
from l2tor.roots import add, smul, weight

F = Fraction


def test_parse_examples():
    assert parse_descriptor("SO(3,5)") == SpaceDescriptor(((SOpq(3, 5), None),))
    assert parse_descriptor("H^3 x H^2").factors == ((SOpq(1, 3), None), (SOpq(1, 2), None))
    assert parse_descriptor("SL(3,R) @ trace2").factors == ((SLnR(3), "trace2"),)
    assert parse_descriptor("  SO( 3 , 5 )×H^2@4/9 ").factors == ((SOpq(3, 5), None), (SOpq(1, 2), F(4, 9)))


@pytest.mark.parametrize(
    "text,pos",
    [("SO(3,", 0), ("H^3 x", 5), ("H^3 H^2", 4), ("H^3 @", 5), ("SO(5,3)", 0), ("H^1", 0), ("SL(1,R)", 0)],
)
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(DescriptorError) as exc:
        parse_descriptor(text)
    assert exc.value.position == pos


atoms = st.one_of(
    st.tuples(st.integers(1, 6), st.integers(0, 6)).filter(lambda t: 2 * t[0] + t[1] >= 3).map(lambda t: SOpq(t[0], t[0] + t[1])),
    st.builds(SLnR, st.integers(2, 9)),
)
metrics = st.one_of(st.none(), st.sampled_from(["curvature-1", "trace2"]), st.fractions(F(1, 9), 9).filter(lambda x: x > 0))


@given(st.lists(st.tuples(atoms, metrics), min_size=1, max_size=3))
def test_print_parse_round_trip(factors):
    desc = SpaceDescriptor(tuple(factors))
    assert parse_descriptor(str(desc)) == desc


def test_fundamental_rank_examples():
    assert fundamental_rank(SOpq(3, 5)) == 1
    assert fundamental_rank(SLnR(3)) == 1
    assert fundamental_rank(SOpq(1, 4)) == 0
    assert fundamental_rank(parse_descriptor("H^3 x SL(5,R)")) == 3


@given(st.integers(1, 12), st.integers(0, 12))
def test_rank_one_exactly_for_odd_pairs(p, d):
    q = p + d
    if p + q < 3:
        return
    assert (fundamental_rank(SOpq(p, q)) == 1) == (p % 2 == 1 and q % 2 == 1)


def test_hyperbolic_alias():
    assert Hn(5) == SOpq(1, 5) and str(Hn(5)) == "H^5"
    assert parse_descriptor("H^4") == parse_descriptor("SO(1,4)")


def test_metric_scales():
    assert metric_scale(SOpq(1, 3), "curvature-1") == 1
    assert metric_scale(SLnR(3), "trace2") == 2
    assert metric_scale(SLnR(3), None) == 2
    assert metric_scale(SOpq(3, 5), F(4)) == 4
    with pytest.raises(UnsupportedMetric):
        metric_scale(SOpq(1, 3), "trace2")
    with pytest.raises(UnsupportedMetric):
        metric_scale(SOpq(1, 3), "round")


def test_h5_data():
    sd = resolve(Hn(5))
    assert (sd.n, sd.m, sd.u, sd.v) == (5, 1, 2, 0)
    assert sd.lambda_params == (weight(0, 1, 0), weight(0, 2, 0))
    assert sd.lambda_at(2) == (weight(0, 2, 1), weight(0, 2, -1))
    assert sd.w_A_order == 2 and sd.chi_dual_M == 1


def test_sl3_data():
    sd = resolve(SLnR(3), "trace2")
    assert (sd.n, sd.m, sd.u, sd.v) == (5, 1, 1, 1)
    assert sd.chi_dual_M == 2 and sd.w_A_order == 1
    assert sd.alpha0_norm == 1
    assert resolve(SLnR(3), "trace2", generic=True).alpha0_norm_sq == F(3, 4)


def test_w_a_order():
    assert resolve(Hn(3)).w_A_order == 2
    assert resolve(SOpq(3, 5)).w_A_order == 1


def test_sl4_is_so33():
    a, b = resolve(SLnR(4)), resolve(SOpq(3, 3))
    assert (a.n, a.m, a.u, a.v, a.chi_dual_M) == (b.n, b.m, b.u, b.v, b.chi_dual_M)
    assert dimension(SLnR(4)) == dimension(SOpq(3, 3)) == 9


def test_reduced_records():
    sd = resolve(SLnR(5))
    assert (sd.n, sd.m, sd.resolved) == (14, 2, False)
    with pytest.raises(UnsupportedSpace):
        sd.lambda_at(0)


def test_dual_euler_char_examples():
    assert dual_euler_char(SOpq(2, 4)) == 6
    assert dual_euler_char(SOpq(1, 2)) == 2
    assert dual_euler_char(SOpq(3, 5)) == 0


@pytest.mark.parametrize("p,q", [(p, q) for p in range(3, 10, 2) for q in range(p, 10, 2)])
def test_weyl_ratio_matches_binomial(p, q):
    want = 2 * comb((p + q - 2) // 2, (p - 1) // 2)
    assert dual_euler_char(SOpq(p - 1, q - 1)) == want
    assert resolve(SOpq(p, q)).chi_dual_M == want


def test_sphere_euler_characteristics():
    for n in range(2, 12, 2):
        assert dual_euler_char(Hn(n)) == 2


CATALOG = [SOpq(p, q) for p in range(1, 8) for q in range(p, 10) if p + q >= 3] + [SLnR(n) for n in range(2, 8)]


@pytest.mark.parametrize("atom", CATALOG, ids=str)
def test_structure_identities(atom):
    sd = resolve(atom)
    check_structure(sd)
    assert sd.n == dimension(atom) and sd.m == fundamental_rank(atom)


RANK_ONE = [SOpq(p, q) for p in range(1, 8, 2) for q in range(max(p, 3), 12, 2)] + [SLnR(3), SLnR(4)]


@pytest.mark.parametrize("atom", RANK_ONE, ids=str)
def test_lambda0_shift_is_conjugate_of_rho(atom):
    sd = resolve(atom, generic=True)
    shifted = add(sd.lambda_at(0)[0], smul(sd.u, sd.alpha0))
    rho = sd.g_roots.rho
    if sd.g_roots.family == "D":
        assert sorted(abs(x) for x in shifted) == sorted(abs(x) for x in rho)
    else:
        assert sorted(shifted) == sorted(rho)


def brute_top_weights(u: int, l: int) -> list:
    """Highest weights of Lambda^l of the standard so(2u) module, by subset enumeration.

    They are the subset sums maximizing the pairing with rho = (u-1, ..., 0).
    """
    basis = [tuple(F(1 if i == j else 0) for j in range(u)) for i in range(u)]
    wts = [w for e in basis for w in (e, tuple(-x for x in e))]
    rho = [u - 1 - i for i in range(u)]
    sums = {tuple(sum(c, F(0)) for c in zip(*sub)) if sub else (F(0),) * u for sub in combinations(wts, l)}
    best = max(sum(r * x for r, x in zip(rho, s)) for s in sums)
    return sorted(s for s in sums if sum(r * x for r, x in zip(rho, s)) == best)


@pytest.mark.parametrize("u", [2, 3, 4])
def test_lambda_parameters_match_enumerated_highest_weights(u):
    sd = resolve(Hn(2 * u + 1))
    for l in range(2 * u + 1):
        got = sorted(tuple(x - r for x, r in zip(lam, sd.rho_m))[1:] for lam in sd.lambda_at(l))
        assert got == brute_top_weights(u, l)


def test_resolve_space_products():
    sp = resolve_space("H^3 x H^2")
    assert (sp.n, sp.m) == (5, 1)
    assert sp.rank_one_factor.atom == Hn(3)
    assert [f.atom for f in sp.flat_factors] == [Hn(2)]
    assert '"schema": 1' in sp.to_json()
