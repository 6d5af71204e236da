"""End-to-end checks on the named reference polynomials in canweight.fixtures."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canweight.cone import componentwise_min, meet_closed_under
from canweight.deformation import simultaneous_report
from canweight.fixtures import (
    COUNTEREXAMPLE,
    SURFACE_TRIAD,
    TOMARI,
    TYPE_T,
    WATANABE,
    WATANABE_PARTNER,
)
from canweight.newton import (
    OnePosition,
    SingularityLabel,
    build_newton,
    classify,
    face_containing_one,
    hodge_type_0_n_minus_1,
    is_type_T,
    position_of_one,
    quasi_reduced,
)
from canweight.support import ExponentVector, PolynomialSupport, WeightVector, ones, pairing, weight_of_poly
from canweight.weights import (
    absolutely_minimal,
    canonical_weight_verdict,
    check_certificate_signs,
    discrepancies,
    essential_cone,
    is_f_minimal,
    leading_coefficient,
    surface_triad_weight,
    three_ones_report,
    weights_above_threshold,
)


class TestCounterexample:
    def test_classification(self):
        f = COUNTEREXAMPLE.support()
        assert classify(f).label.value == COUNTEREXAMPLE.expected["label"]
        assert len(f) == COUNTEREXAMPLE.expected["support_size"]

    def test_cone_membership(self):
        cone = essential_cone(COUNTEREXAMPLE.support())
        for weight, member in COUNTEREXAMPLE.expected["members"].items():
            assert cone.contains(weight) is member

    def test_no_absolutely_minimal_vector(self):
        cone = essential_cone(COUNTEREXAMPLE.support())
        assert absolutely_minimal(cone) is None
        assert componentwise_min(COUNTEREXAMPLE.expected["componentwise_min_of"]) == WeightVector(
            COUNTEREXAMPLE.expected["componentwise_min"]
        )

    def test_leading_coefficient(self):
        assert leading_coefficient(COUNTEREXAMPLE.expected["blowup"]) == COUNTEREXAMPLE.expected["leading_coefficient"]

    def test_negative_divisor(self):
        f = COUNTEREXAMPLE.support()
        (record,) = discrepancies(COUNTEREXAMPLE.expected["blowup"], f, [COUNTEREXAMPLE.expected["divisor"]])
        assert record.m_q == COUNTEREXAMPLE.expected["divisor_m"]
        assert not record.excluded


class TestSurfaceTriad:
    @pytest.mark.parametrize("fixture", SURFACE_TRIAD, ids=lambda fx: fx.name)
    def test_abs_min(self, fixture):
        f = fixture.support()
        expected = WeightVector(fixture.expected["abs_min"])
        assert absolutely_minimal(essential_cone(f)) == expected
        triad = surface_triad_weight(f)
        assert triad.weight == expected
        assert triad.in_triad


class TestTomari:
    @pytest.mark.parametrize("fixture", TOMARI, ids=lambda fx: fx.name)
    def test_both_weights_are_f_minimal(self, fixture):
        f = fixture.support()
        assert classify(f).label is SingularityLabel.NOT_LOG_CANONICAL
        for weight in fixture.expected["f_minimal"]:
            decided, certificate = is_f_minimal(weight, f)
            assert decided, certificate.reason
            assert check_certificate_signs(weight, f, certificate) == []


class TestWatanabe:
    @pytest.mark.parametrize("fixture", WATANABE, ids=lambda fx: fx.name)
    def test_canonical_weight(self, fixture):
        f = fixture.support()
        verdict = canonical_weight_verdict(f)
        expected = WeightVector(fixture.expected["abs_min"])
        assert verdict.canonical_weights == (expected,)
        assert weight_of_poly(expected, f) == fixture.expected["weight_value"]

    @pytest.mark.parametrize("fixture", WATANABE, ids=lambda fx: fx.name)
    def test_simultaneous_report(self, fixture):
        report = simultaneous_report(fixture.support(), WATANABE_PARTNER.support(), fixture.expected["abs_min"])
        assert report.positive


class TestTypeT:
    def test_twenty_cases(self):
        assert len(TYPE_T) == 20
        assert {fx.dim for fx in TYPE_T} == {3, 4}

    @pytest.mark.parametrize("fixture", TYPE_T, ids=lambda fx: fx.name)
    def test_quasi_reduced_with_abs_min(self, fixture):
        f = fixture.support()
        assert sum(Fraction(1, a) for a in fixture.expected["type_t"]) < 1
        assert is_type_T(f) == ExponentVector(fixture.expected["type_t"])
        assert quasi_reduced(f)
        assert absolutely_minimal(essential_cone(f)) is not None


class TestThreeOnes:
    def test_cap_twelve(self):
        report = three_ones_report(12)
        assert report.holds
        for weight in weights_above_threshold(4, Fraction(3, 2), 12):
            assert sum(1 for x in weight if x == 1) >= 3


@st.composite
def supports(draw):
    """Random supports in 3 or 4 variables with exponents up to 8."""
    dim = draw(st.integers(min_value=3, max_value=4))
    exponent = st.tuples(*(st.integers(min_value=0, max_value=8) for _ in range(dim))).filter(any)
    exponents = draw(st.sets(exponent, min_size=1, max_size=5))
    return PolynomialSupport(dim, tuple(ExponentVector(e) for e in sorted(exponents)))


def exceeds_level(q, f):
    return weight_of_poly(q, f) > pairing(q, ones(f.dim))


class TestClassificationOracle:
    """Position of (1,...,1) against the essential cone, in both directions.

    (1,...,1) is outside the Newton polyhedron iff some q >= 0 has
    q(f) > q(1,...,1). The sum of the extreme rays of C1 lies in its relative
    interior, where every defining form not vanishing on all of C1 is strictly
    positive; so such q exists iff that sum is one.
    """

    @settings(max_examples=200, deadline=None)
    @given(supports())
    def test_position_matches_essential_cone(self, f):
        position = position_of_one(build_newton(f))
        cone = essential_cone(f)
        assert (position is OnePosition.INTERIOR) == cone.is_zero
        if cone.is_zero:
            return
        interior_point = tuple(sum(col) for col in zip(*cone.ray_tuples()))
        assert cone.contains(interior_point)
        assert (position is OnePosition.OUTSIDE) == exceeds_level(interior_point, f)

    @settings(max_examples=200, deadline=None)
    @given(supports())
    def test_small_witness_means_outside(self, f):
        position = position_of_one(build_newton(f))
        for q in itertools.product(range(4), repeat=f.dim):
            if any(q) and exceeds_level(q, f):
                assert position is OnePosition.OUTSIDE
                assert essential_cone(f).contains(q)
                return

    def test_witness_off_the_hilbert_basis(self):
        # every Hilbert basis element is tight, yet (1,1,1) separates
        f = PolynomialSupport(3, (ExponentVector((1, 2, 3)), ExponentVector((4, 1, 1))))
        assert exceeds_level((1, 1, 1), f)
        assert position_of_one(build_newton(f)) is OnePosition.OUTSIDE
        assert classify(f, assume_nondegenerate=True).label is SingularityLabel.NOT_LOG_CANONICAL


# exponents with sum of reciprocals 1: (1,...,1) lies inside the facet through the pure powers
FACET_EXPONENTS = (
    (3, 3, 3),
    (2, 4, 4),
    (2, 3, 6),
    (4, 4, 4, 4),
    (2, 3, 7, 42),
    (2, 4, 8, 8),
    (3, 3, 6, 6),
    (2, 5, 5, 10),
    (3, 4, 4, 6),
)


@st.composite
def one_ray_supports(draw):
    """Pure powers on a facet through (1,...,1), plus random monomials strictly above it."""
    exps = draw(st.sampled_from(FACET_EXPONENTS))
    dim = len(exps)
    level = math.lcm(*exps)
    weight = tuple(level // a for a in exps)
    above = st.tuples(*(st.integers(min_value=0, max_value=6) for _ in range(dim))).filter(
        lambda e: pairing(weight, e) > level
    )
    powers = [tuple(a if i == j else 0 for j in range(dim)) for i, a in enumerate(exps)]
    extra = draw(st.sets(above, max_size=3))
    support = PolynomialSupport(dim, tuple(ExponentVector(e) for e in sorted(set(powers) | extra)))
    return support, WeightVector(weight)


class TestOneRayCase:
    @settings(max_examples=60, deadline=None)
    @given(one_ray_supports())
    def test_facet_normal_is_the_only_ray(self, case):
        f, weight = case
        assert hodge_type_0_n_minus_1(f)
        assert face_containing_one(build_newton(f)).normal == weight
        cone = essential_cone(f)
        assert cone.ray_tuples() == (weight.coords,)
        assert absolutely_minimal(cone) == weight
        assert canonical_weight_verdict(f, assume_nondegenerate=True).canonical_weights == (weight,)

    @settings(max_examples=200, deadline=None)
    @given(supports())
    def test_single_ray_iff_compact_facet(self, f):
        cone = essential_cone(f)
        rays = () if cone.is_zero else cone.ray_tuples()
        single_positive = len(rays) == 1 and all(x > 0 for x in rays[0])
        assert hodge_type_0_n_minus_1(f) == single_positive
        if len(rays) == 1:
            assert absolutely_minimal(cone) == WeightVector(rays[0])


class TestLogCanonicalWeights:
    @pytest.mark.parametrize(
        "fixture", (*SURFACE_TRIAD, *WATANABE, *TYPE_T), ids=lambda fx: fx.name
    )
    def test_absolutely_minimal_is_f_minimal(self, fixture):
        f = fixture.support()
        assert classify(f, assume_nondegenerate=True).label is SingularityLabel.LOG_CANONICAL
        weight = absolutely_minimal(essential_cone(f))
        decided, certificate = is_f_minimal(weight, f)
        assert decided, certificate.reason

    @pytest.mark.parametrize("fixture", TYPE_T, ids=lambda fx: fx.name)
    def test_hilbert_basis_is_meet_closed(self, fixture):
        f = fixture.support()
        cone = essential_cone(f)
        basis = cone.hilbert_basis()
        for p, q in itertools.combinations(basis, 2):
            assert meet_closed_under(cone, p, q)
        assert absolutely_minimal(cone) == componentwise_min(basis)
