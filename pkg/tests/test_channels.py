import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusioncat import build_named, build_pointed
from fusioncat.channels import (
    ChannelCombo,
    combo,
    combo_compose,
    composition_table,
    conditional_expectation,
    lambda_compose,
    vertex,
)
from fusioncat.errors import LabelOutOfRange, RingMismatch

GOLDEN = (1 + 5 ** 0.5) / 2
CATALOG = ["fibonacci", "ising", "rep_s3", "rep_a4", "haagerup", "vec_z2", "vec_z4", "ty_z3", "ty_z9", "psu2_5", "psu2_6"]


def ring(name):
    return build_named(name).ring


def test_lambda_examples():
    z2 = build_pointed([2])
    assert lambda_compose(z2, "1", "1").exact == (1, 0)
    fib = ring("fibonacci")
    c = lambda_compose(fib, "tau", "tau")
    assert c.coefficients == pytest.approx((1 / GOLDEN ** 2, 1 / GOLDEN), rel=1e-12)
    assert c["1"] == pytest.approx(0.3819660112501051)
    ising = ring("ising")
    c = lambda_compose(ising, "sigma", "sigma")
    assert c.coefficients == pytest.approx((0.5, 0.5, 0.0), abs=1e-12)
    with pytest.raises(LabelOutOfRange):
        lambda_compose(ising, "sigma", "tau")


def test_combo_examples():
    ising = ring("ising")
    half = combo(ising, {"1": 0.5, "psi": 0.5})
    assert combo_compose(half, vertex(ising, "sigma")).isclose(vertex(ising, "sigma"), 1e-12)
    fib = ring("fibonacci")
    t = vertex(fib, "tau")
    tt = combo_compose(t, t)
    assert combo_compose(t, tt).max_difference(combo_compose(tt, t)) <= 1e-12
    for name in ["rep_a4", "haagerup"]:
        r = ring(name)
        c = combo(r, {l: 1.0 / r.rank for l in r.labels})
        assert combo_compose(vertex(r, r.unit), c).isclose(c, 1e-12)


def test_expectation_examples():
    z2 = build_pointed([2])
    assert conditional_expectation(z2).exact == (Fraction(1, 2), Fraction(1, 2))
    assert conditional_expectation(ring("ising")).coefficients == pytest.approx((0.25, 0.25, 0.5), rel=1e-12)
    E = conditional_expectation(ring("fibonacci"))
    assert E.coefficients == pytest.approx((1 / (1 + GOLDEN ** 2), GOLDEN ** 2 / (1 + GOLDEN ** 2)), rel=1e-12)
    assert E["1"] == pytest.approx(0.276393202250021)


def test_exact_mode_for_integral_rings():
    r = ring("rep_s3")
    c = lambda_compose(r, "pi", "pi")
    assert c.exact == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    assert lambda_compose(ring("fibonacci"), "tau", "tau").exact is None


def test_combo_validation():
    r = ring("ising")
    with pytest.raises(ValueError):
        combo(r, {"1": 0.5})
    with pytest.raises(ValueError):
        combo(r, {"1": 1.5, "psi": -0.5})
    with pytest.raises(ValueError):
        ChannelCombo(r, (1.0, 0.0))
    with pytest.raises(RingMismatch):
        combo_compose(vertex(r, "1"), vertex(ring("fibonacci"), "1"))


@pytest.mark.parametrize("name", CATALOG)
def test_stochasticity(name):
    r = ring(name)
    d = r.dimensions.values
    t = r.table
    for x, y in itertools.product(range(r.rank), repeat=2):
        assert abs(sum(d[z] * t[x][y][z] for z in range(r.rank)) - d[x] * d[y]) <= 1e-9 * d[x] * d[y]
        assert sum(lambda_compose(r, x, y).coefficients) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("name", CATALOG)
def test_hypergroup_associativity(name):
    r = ring(name)
    v = [vertex(r, x) for x in range(r.rank)]
    for a, b, c in itertools.product(v, repeat=3):
        left = combo_compose(combo_compose(a, b), c)
        right = combo_compose(a, combo_compose(b, c))
        assert left.max_difference(right) <= 1e-10
        if left.exact is not None:
            assert left.exact == right.exact


@pytest.mark.parametrize("name", CATALOG)
def test_absorption(name):
    r = ring(name)
    E = conditional_expectation(r)
    for x in range(r.rank):
        lam = vertex(r, x)
        assert combo_compose(E, lam).max_difference(E) <= 1e-10
        assert combo_compose(lam, E).max_difference(E) <= 1e-10
        if E.exact is not None:
            assert combo_compose(E, lam) == E and combo_compose(lam, E) == E
    EE = combo_compose(E, E)
    assert EE.max_difference(E) <= 1e-10
    if E.exact is not None:
        assert EE == E


@pytest.mark.parametrize("name", CATALOG)
def test_conjugation_symmetry(name):
    r = ring(name)
    d = r.dimensions.values
    for x in range(r.rank):
        c = lambda_compose(r, x, r.dual[x])
        assert c.coefficients[r.unit] == pytest.approx(1 / d[x] ** 2, rel=1e-12)


def test_composition_table_shape():
    r = ring("rep_a4")
    table = composition_table(r)
    assert len(table) == 16
    assert list(table)[:2] == [("1", "1"), ("1", "chi")]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["rep_s3", "rep_a4", "ising", "haagerup"]), st.data())
def test_bilinearity(name, data):
    r = ring(name)
    w = data.draw(st.lists(st.integers(0, 5), min_size=r.rank, max_size=r.rank).filter(any))
    total = sum(w)
    a = combo(r, {l: Fraction(k, total) for l, k in zip(r.labels, w)})
    y = data.draw(st.integers(0, r.rank - 1))
    lhs = combo_compose(a, vertex(r, y))
    expected = [0.0] * r.rank
    for x, k in enumerate(w):
        for z, c in enumerate(lambda_compose(r, x, y).coefficients):
            expected[z] += k / total * c
    assert lhs.coefficients == pytest.approx(expected, abs=1e-12)
    assert (lhs.exact is not None) == (r.dimensions.exact_integers is not None)
