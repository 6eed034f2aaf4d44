import pytest
from hypothesis import given, settings, strategies as st

from hyperpoincare.errors import GuardExceedsTruncation, NonUnitConstant, UnknownType
from hyperpoincare.polyseries import (FiniteType, IntPoly, TruncSeries, affine_poincare,
                                      all_finite_types, as_series, finite_poincare, finite_type,
                                      parse_poly, polynomial_terminates, render_poly, series_div,
                                      series_mul)

from oracles import poly_mul

A4 = (1, 4, 9, 15, 20, 22, 20, 15, 9, 4, 1)
Q48 = (1, -1, 0, -2, 1, 0, 1, -1, 2, -1, 1, 0, 1, 1, -1, -1, 0, 0, -1, 0, -1, 0, 0, 0, 1)


def test_intpoly_trims_and_degree():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([1, 2]).degree == 1
    assert IntPoly([0, 0]).degree is None
    assert IntPoly([]).coeffs == ()


def test_intpoly_arithmetic():
    p = IntPoly([1, 1])
    assert (p * p).coeffs == (1, 2, 1)
    assert (p ** 3).coeffs == (1, 3, 3, 1)
    assert (p - p).degree is None
    assert p(1) == 2


@pytest.mark.parametrize("ft,degrees", [
    ("A1", (2,)), ("A4", (2, 3, 4, 5)), ("B5", (2, 4, 6, 8, 10)), ("C3", (2, 4, 6)),
    ("D4", (2, 4, 6, 4)), ("D6", (2, 4, 6, 8, 10, 6)), ("E6", (2, 5, 6, 8, 9, 12)),
    ("E7", (2, 6, 8, 10, 12, 14, 18)), ("E8", (2, 8, 12, 14, 18, 20, 24, 30)),
    ("F4", (2, 6, 8, 12)), ("G2", (2, 6)),
])
def test_degree_table(ft, degrees):
    assert finite_type(ft).degrees == degrees


@pytest.mark.parametrize("ft,order", [("E6", 51840), ("E7", 2903040), ("E8", 696729600),
                                      ("F4", 1152), ("B5", 3840), ("D5", 1920)])
def test_group_orders_from_degrees(ft, order):
    # |W| = product of degrees, and the polynomial evaluates to it at t = 1
    assert finite_type(ft).order == order
    assert finite_poincare(ft)(1) == order


def test_positive_root_counts():
    assert finite_type("B5").positive_roots == 25
    assert finite_type("E8").positive_roots == 120
    for ft in all_finite_types(8):
        assert finite_poincare(ft).degree == ft.positive_roots


@pytest.mark.parametrize("bad", ["B1", "C2", "D3", "E5", "E9", "F3", "G3", "H3", "A0"])
def test_unknown_types(bad):
    with pytest.raises(UnknownType):
        finite_poincare(bad)


def test_finite_poincare_small():
    assert finite_poincare("A4").coeffs == A4
    assert finite_poincare("A1").coeffs == (1, 1)
    assert finite_poincare("B5").degree == 25


def test_affine_poincare_basics():
    s = affine_poincare("D4", 10)
    assert s[0] == 1
    assert s[1] == 5
    for ft in ("A1", "B3", "G2", "E6"):
        assert affine_poincare(ft, 4)[0] == 1


def test_affine_poincare_is_finite_times_geometric():
    # independent route: repeated division by (1 - t^e)
    T = 20
    s = finite_poincare("D4").to_series(T)
    for d in (2, 4, 4, 6):
        e = [0] * (T + 1)
        e[0] = 1
        if d - 1 <= T:
            e[d - 1] = -1
        s = series_div(s, TruncSeries(e))
    assert affine_poincare("D4", T) == s


def test_series_mul_examples():
    a = TruncSeries([1, 2, 3])
    assert series_mul(a, TruncSeries([1, 0, 0])) == a
    assert series_mul(IntPoly([1, 1]), IntPoly([1, 1])).coeffs == (1, 2, 1)
    # truncation is the shorter operand
    assert series_mul(TruncSeries([1, 1, 1, 1]), TruncSeries([1, 1])).truncation == 1


def test_series_mul_reproduces_h48_head():
    # P(A_4) times the coset counts gives the start of the H_48 series
    got = series_mul(IntPoly(A4), TruncSeries([1, 2, 3, 7, 12, 19, 32]))
    assert got.coeffs == (1, 6, 20, 52, 117, 237, 445)


def test_series_div_examples():
    a = TruncSeries([1, 5, -3, 7])
    assert series_div(a, a).coeffs == (1, 0, 0, 0)
    with pytest.raises(NonUnitConstant):
        series_div(a, TruncSeries([2, 1, 0, 0]))
    # negative unit constant term is allowed
    assert series_mul(series_div(a, TruncSeries([-1, 1, 0, 0])), TruncSeries([-1, 1, 0, 0])) == a


def test_geometric_series():
    s = series_div(IntPoly([1]).to_series(10), IntPoly([1, -1]))
    assert s.coeffs == (1,) * 11
    assert polynomial_terminates(s, 1) is None


def test_polynomial_terminates():
    s = IntPoly([1, 1]).to_series(10)
    assert polynomial_terminates(s, 5) == IntPoly([1, 1])
    assert polynomial_terminates(TruncSeries(Q48 + (0,)), 1).degree == 24
    with pytest.raises(GuardExceedsTruncation):
        polynomial_terminates(TruncSeries([1, 0]), 3)


small_unit_polys = st.lists(st.integers(-5, 5), min_size=0, max_size=8).map(lambda c: IntPoly([1] + c))


@settings(max_examples=300, deadline=None)
@given(small_unit_polys, small_unit_polys, st.integers(0, 20))
def test_div_mul_round_trip(p, q, T):
    prod = series_mul(p.to_series(T), q.to_series(T))
    assert series_div(prod, p.to_series(T)) == q.to_series(T)


@settings(max_examples=200, deadline=None)
@given(small_unit_polys, small_unit_polys)
def test_series_mul_matches_polynomial_product(p, q):
    T = len(p.coeffs) + len(q.coeffs)
    full = poly_mul(list(p.coeffs), list(q.coeffs))
    full += [0] * (T + 1 - len(full))
    assert series_mul(p.to_series(T), q.to_series(T)).coeffs == tuple(full)


def test_parse_and_render_round_trip():
    text = "1 - t - 2 t^3 + t^4 + t^6 - t^7 + 2 t^8 - t^9 + t^{10} + t^{12} + t^{13} - t^{14} - t^{15} -t^{18} - t^{20} + t^{24}"
    p = parse_poly(text)
    assert p.coeffs == Q48
    assert render_poly(p).startswith("1 - t - 2t^3 + t^4")
    assert parse_poly(render_poly(p)) == p
    assert parse_poly("(1 + t)") == IntPoly([1, 1])
    assert parse_poly("2 - 3t^2") == IntPoly([2, 0, -3])
    with pytest.raises(ValueError):
        parse_poly("1 + x^2 + @")


def test_csv_round_trip():
    p = IntPoly(Q48)
    assert IntPoly.from_csv(p.to_csv()) == p
    s = TruncSeries([1, 6, 20, 0])
    assert TruncSeries.from_csv(s.to_csv()) == s


def test_all_finite_types_ordering():
    types = all_finite_types(5)
    keys = [t.sort_key() for t in types]
    assert keys == sorted(keys)
    assert FiniteType("B", 5) in types and FiniteType("E", 6) not in types


def test_as_series_pads_polynomials():
    assert as_series(IntPoly([1, 1]), 3).coeffs == (1, 1, 0, 0)
    with pytest.raises(ValueError):
        TruncSeries([1]).truncate(3)
