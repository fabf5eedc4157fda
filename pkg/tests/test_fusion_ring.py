import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fusioncat import build_named, build_pointed, build_psu2, build_ty
from fusioncat.errors import (
    LabelOutOfRange,
    MalformedRing,
    NonIntegralRing,
    NonVerifiedRing,
    RingFormatError,
)
from fusioncat.fusion_ring import (
    FusionRing,
    check_multiplicativity,
    find_isomorphism,
    format_ring,
    fp_dimensions,
    fuse_vectors,
    is_integral,
    load_ring,
    object_power,
    parse_ring,
    regular_object,
    tensor_multiplicities,
    verify_ring,
)

CATALOG = ["fibonacci", "ising", "rep_s3", "rep_a4", "haagerup", "vec_z2", "vec_z6", "ty_z3", "ty_z9", "psu2_2",
           "psu2_3", "psu2_4", "psu2_5", "psu2_6"]

GOLDEN = (1 + 5 ** 0.5) / 2

# frozen from oracles.eig_dimensions (numpy.linalg.eigvals)
EIG_DIMS = {
    "fibonacci": [1.0, 1.618033988749895],
    "ising": [1.0, 1.0, 1.414213562373095],
    "haagerup": [1.0, 1.0, 1.0, 3.302775637731995, 3.302775637731995, 3.302775637731995],
    "ty_z3": [1.0, 1.0, 1.0, 1.7320508075688772],
    "psu2_5": [1.0, 2.2469796037174667, 1.8019377358048385],
}


def ring(name):
    return build_named(name).ring


def non_associative_ring():
    # rank 2 with x*x = 1 + 2x is associative; rank 3 with an asymmetric product is not
    N = np.zeros((3, 3, 3), dtype=np.int64)
    for x in range(3):
        N[0, x, x] = N[x, 0, x] = 1
    N[1, 1, 0] = N[2, 2, 0] = 1
    N[1, 2, 2] = 1
    N[2, 1, 1] = 1
    return FusionRing(("1", "a", "b"), 0, N, (0, 1, 2), "broken")


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_rings_verify(name):
    rep = verify_ring(ring(name))
    assert rep.passed, rep.message
    assert oracles.associativity_defects(ring(name).fusion) == []


def test_vec_z2_passes():
    assert verify_ring(build_pointed([2])).passed


def test_fibonacci_mutation_is_associative_but_breaks_dimensions():
    fib = ring("fibonacci")
    mutated = fib.with_entry(1, 1, 1, 2)
    # tau^2 = 1 + 2 tau is still a commutative associative ring
    assert verify_ring(mutated).passed
    assert oracles.associativity_defects(mutated.fusion) == []
    rep = check_multiplicativity(mutated, fib.dimensions)
    assert not rep.passed
    assert rep.witness == (1, 1)


def test_associativity_witness():
    bad = non_associative_ring()
    defects = oracles.associativity_defects(bad.fusion)
    rep = verify_ring(bad)
    assert not rep.passed
    assert rep.axiom == "associativity"
    assert rep.witness == defects[0]


def test_unit_violation():
    bad = ring("fibonacci").with_entry(0, 1, 0, 1)
    rep = verify_ring(bad)
    assert rep.axiom == "unit" and rep.witness == (0, 1, 0)


def test_duality_violation():
    fib = ring("fibonacci")
    bad = FusionRing(fib.labels, 0, fib.fusion.copy(), (0, 1), "x")
    bad = bad.with_entry(1, 1, 0, 0)
    rep = verify_ring(bad)
    assert not rep.passed


def test_frobenius_violation():
    # Z/3 group law with a wrong dual: dual(1) = 1 breaks N^1_{X dual X} first
    N = ring("vec_z3").fusion.copy()
    bad = FusionRing(("0", "1", "2"), 0, N, (0, 1, 2))
    assert verify_ring(bad).axiom == "duality"


def test_malformed_shapes():
    with pytest.raises(MalformedRing):
        FusionRing(("1", "a"), 0, np.zeros((2, 2, 3), dtype=int), (0, 1))
    with pytest.raises(MalformedRing):
        FusionRing(("1", "a"), 5, np.zeros((2, 2, 2), dtype=int), (0, 1))
    with pytest.raises(MalformedRing):
        FusionRing(("1", "a"), 0, -np.ones((2, 2, 2), dtype=int), (0, 1))


@pytest.mark.parametrize("name", list(EIG_DIMS))
def test_dimensions_match_eigensolver(name):
    np.testing.assert_allclose(fp_dimensions(ring(name)).values, EIG_DIMS[name], rtol=1e-12)


@pytest.mark.parametrize("name", CATALOG)
def test_dimensions_properties(name):
    r = ring(name)
    d = fp_dimensions(r)
    assert d[r.unit] == 1.0
    assert all(v >= 1 - 1e-12 for v in d)
    for x in range(r.rank):
        assert d[x] == pytest.approx(d[r.dual[x]], rel=1e-12)
    assert check_multiplicativity(r).passed
    np.testing.assert_allclose(d.values, oracles.eig_dimensions(r.fusion), rtol=1e-9)


def test_fibonacci_and_haagerup_values():
    assert fp_dimensions(ring("fibonacci")).values == pytest.approx((1.0, GOLDEN), rel=1e-12)
    d_rho = fp_dimensions(ring("haagerup"))[3]
    assert d_rho == pytest.approx((3 + 13 ** 0.5) / 2, rel=1e-12)
    assert d_rho ** 2 == pytest.approx(1 + 3 * d_rho, rel=1e-12)


def test_vec_dims_are_ones():
    assert fp_dimensions(build_pointed([7])).values == (1.0,) * 7


def test_fp_dimensions_rejects_bad_ring():
    with pytest.raises(NonVerifiedRing):
        fp_dimensions(non_associative_ring())


def test_integrality():
    v = is_integral(ring("rep_s3"))
    assert v.integral and v.integers == (1, 1, 2)
    v = is_integral(ring("ising"))
    assert not v.integral
    assert [l for l, _ in v.non_integral] == ["sigma"]
    assert v.non_integral[0][1] == pytest.approx(2 ** 0.5, abs=1e-8)
    v = is_integral(build_ty([9], 2))
    assert v.integral and v.integers[-1] == 3


def test_tensor_multiplicities_examples():
    assert tensor_multiplicities(ring("fibonacci"), ["tau", "tau"]) == (1, 1)
    assert tensor_multiplicities(build_ty([3]), ["rho", "rho"]) == (1, 1, 1, 0)
    for name in ["ising", "rep_a4"]:
        r = ring(name)
        unit = [0] * r.rank
        unit[r.unit] = 1
        assert tensor_multiplicities(r, [r.unit]) == tuple(unit)
    with pytest.raises(LabelOutOfRange):
        tensor_multiplicities(ring("ising"), ["nope"])
    with pytest.raises(LabelOutOfRange):
        tensor_multiplicities(ring("ising"), [7])


@pytest.mark.parametrize("name", ["rep_a4", "haagerup", "psu2_5"])
def test_tensor_product_is_associative(name):
    r = ring(name)
    for a, b, c in itertools.product(range(r.rank), repeat=3):
        left = tensor_multiplicities(r, [a, b, c])
        right = fuse_vectors(r, a, fuse_vectors(r, b, c))
        assert left == right


def test_object_power_with_direct_sum():
    r = build_psu2(2)
    powers = object_power(r, [1, 1], 3)
    assert powers == [(1, 1), (2, 2), (4, 4)]


def test_regular_object():
    assert regular_object(build_pointed([2])) == (1, 1)
    assert regular_object(ring("rep_s3")) == (1, 1, 2)
    with pytest.raises(NonIntegralRing):
        regular_object(ring("fibonacci"))


@pytest.mark.parametrize("name", ["rep_s3", "rep_a4", "vec_z6", "ty_z9"])
def test_regular_element_identity(name):
    r = ring(name)
    R = regular_object(r)
    t = r.table
    for y, z in itertools.product(range(r.rank), repeat=2):
        assert sum(R[x] * t[x][y][z] for x in range(r.rank)) == R[y] * R[z]


def test_isomorphisms():
    assert find_isomorphism(build_psu2(3), ring("fibonacci")) == (0, 1)
    assert find_isomorphism(build_psu2(4), ring("rep_s3")) is not None
    assert find_isomorphism(build_ty([2]), ring("ising")) is not None
    assert find_isomorphism(ring("ising"), ring("rep_s3")) is None


@pytest.mark.parametrize("name", CATALOG)
def test_format_round_trip(name, tmp_path):
    r = ring(name)
    path = tmp_path / "ring.txt"
    path.write_text(format_ring(r), encoding="utf-8")
    back = load_ring(path)
    assert back.labels == r.labels and back.dual == r.dual and back.unit == r.unit
    assert np.array_equal(back.fusion, r.fusion)


def test_parser_accepts_comments():
    text = "# Z/2\nring z2\nlabels 1 g\nunit 0\n# group law\ndual 0 1\nN 0 0 0 1\nN 0 1 1 1\nN 1 0 1 1\nN 1 1 0 1\n"
    r = parse_ring(text)
    assert verify_ring(r).passed and r.name == "z2"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "labels 1 g\nring z\nunit 0\ndual 0 1\n",
        "ring z2\nlabels 1 g\nunit 0\ndual 0 1\nN 0 0 0 1\nN 0 0 0 1\n",
        "ring z2\nlabels 1 g\nunit 0\ndual 0 1\nN 0 0 5 1\n",
        "ring z2\nlabels 1 g\nunit 0\ndual 0 1\nN 0 0 0 -1\n",
        "ring z2\nlabels 1 g\nunit x\ndual 0 1\n",
        "ring z2\nlabels 1 g\nunit 0\ndual 0\n",
        "ring z2\nlabels 1 g\nunit 0\ndual 0 1\nM 0 0 0 1\n",
        "ring z2\nlabels 1 g\nunit 0\ndual 0 1\nN 0 0 0\n",
    ],
)
def test_parser_rejects(text):
    with pytest.raises(RingFormatError):
        parse_ring(text)


def test_equality_and_hash():
    a, b = build_psu2(4), build_psu2(4)
    assert a == b and hash(a) == hash(b)
    assert a != build_psu2(5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3))
def test_pointed_rings_property(factors):
    r = build_pointed(factors)
    assert verify_ring(r).passed
    assert is_integral(r).integers == (1,) * r.rank


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CATALOG), st.data())
def test_multiplicativity_property(name, data):
    r = ring(name)
    d = r.dimensions.values
    x = data.draw(st.integers(0, r.rank - 1))
    y = data.draw(st.integers(0, r.rank - 1))
    m = tensor_multiplicities(r, [x, y])
    assert sum(mz * dz for mz, dz in zip(m, d)) == pytest.approx(d[x] * d[y], rel=1e-9)


MUTATION_POOL = ["fibonacci", "ising", "rep_s3", "rep_a4", "haagerup", "vec_z3", "ty_z2", "ty_z3", "psu2_3", "psu2_4"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MUTATION_POOL), st.data())
def test_single_entry_mutation_is_detected(name, data):
    ring = build_named(name).ring
    x, y, z = (data.draw(st.integers(0, ring.rank - 1)) for _ in range(3))
    value = int(ring.fusion[x, y, z])
    step = 1 if value == 0 else data.draw(st.sampled_from([-1, 1]))
    mutated = ring.with_entry(x, y, z, value + step)
    caught = not verify_ring(mutated).passed or not check_multiplicativity(mutated, ring.dimensions).passed
    assert caught, (name, x, y, z, step)
