"""Tests for vectors, supports, the valuation q(f) and the input formats."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canweight.exceptions import (
    DimensionMismatchError,
    DomainError,
    ExponentLimitError,
    InputError,
    MalformedWeightError,
    PolynomialSyntaxError,
)
from canweight.support import (
    ExponentVector,
    PolynomialSupport,
    WeightVector,
    format_polynomial,
    load_polynomial,
    make_primitive,
    monomial_divisor_weight,
    pairing,
    parse_polynomial,
    parse_weight,
    read_polynomial_text,
    support_from_json,
    support_to_json,
    weight_of_poly,
)

vec4 = st.lists(st.integers(min_value=0, max_value=20), min_size=4, max_size=4)
signed4 = st.lists(st.integers(min_value=-20, max_value=20), min_size=4, max_size=4)
coefficient = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9).filter(bool),
    st.integers(min_value=1, max_value=6),
)


@st.composite
def polynomials(draw):
    """Random supports in up to four variables with nonzero rational coefficients."""
    dim = draw(st.integers(min_value=1, max_value=4))
    exponent = st.tuples(*(st.integers(min_value=0, max_value=9) for _ in range(dim)))
    terms = draw(st.dictionaries(exponent, coefficient, min_size=1, max_size=6))
    return PolynomialSupport.from_exponents(terms.keys(), dim=dim, coeffs=terms)


class TestVectors:
    def test_negative_exponent_rejected(self):
        with pytest.raises(DomainError):
            ExponentVector((1, -1))

    def test_weight_primitive(self):
        assert WeightVector((2, 1, 1)).primitive
        assert not WeightVector((2, 2, 4)).primitive
        assert not WeightVector((0, 0)).primitive

    def test_make_primitive(self):
        assert make_primitive((4, 2, 2)) == WeightVector((2, 1, 1))
        with pytest.raises(DomainError):
            make_primitive((0, 0, 0))

    @settings(max_examples=80, deadline=None)
    @given(signed4.filter(any))
    def test_make_primitive_is_idempotent_and_keeps_the_ray(self, v):
        m = make_primitive(v)
        assert make_primitive(m) == m
        assert m.primitive
        # v = g * m for the positive integer g = gcd(v)
        g = next(a // b for a, b in zip(v, m) if b)
        assert g > 0
        assert tuple(g * x for x in m) == tuple(v)

    def test_parse_weight(self):
        assert parse_weight("2,1,2,1") == WeightVector((2, 1, 2, 1))
        assert parse_weight("(21, 14, 6, 1)", 4) == WeightVector((21, 14, 6, 1))

    def test_parse_weight_malformed(self):
        with pytest.raises(MalformedWeightError):
            parse_weight("2,one,2")

    def test_parse_weight_wrong_dimension(self):
        with pytest.raises(DimensionMismatchError):
            parse_weight("1,1", 3)


class TestPairing:
    def test_pairing(self):
        assert pairing((21, 14, 6, 1), (1, 1, 1, 1)) == 42

    def test_weight_of_watanabe(self, watanabe):
        assert weight_of_poly((21, 14, 6, 1), watanabe) == 42

    def test_weight_of_counterexample(self, counterexample):
        assert weight_of_poly((2, 1, 2, 1), counterexample) == 6
        assert weight_of_poly((1, 1, 1, 1), counterexample) == 3

    def test_negative_weight(self, quadric):
        with pytest.raises(DomainError):
            weight_of_poly((1, -1, 1), quadric)

    def test_dimension_mismatch(self, quadric):
        with pytest.raises(DimensionMismatchError):
            weight_of_poly((1, 1), quadric)

    def test_monomial_divisor_weight(self, elliptic_surface):
        assert monomial_divisor_weight((2, 1, 1), elliptic_surface, 3) == Fraction(4, 3)

    @settings(max_examples=80, deadline=None)
    @given(signed4, signed4, vec4, st.integers(min_value=-5, max_value=5))
    def test_pairing_is_bilinear(self, q, r, a, k):
        total = [x + y for x, y in zip(q, r)]
        assert pairing(total, a) == pairing(q, a) + pairing(r, a)
        assert pairing([k * x for x in q], a) == k * pairing(q, a)
        assert pairing(a, q) == pairing(q, a)

    @settings(max_examples=80, deadline=None)
    @given(vec4, vec4, st.integers(min_value=0, max_value=5))
    def test_valuation_is_homogeneous_and_superadditive(self, q, r, k):
        f = parse_polynomial("x0*x1*x2*x3 + x0^3 + x1^2*x2^2 + x1^6 + x2^6 + x3^6", 4)
        assert weight_of_poly([k * x for x in q], f) == k * weight_of_poly(q, f)
        total = [a + b for a, b in zip(q, r)]
        assert weight_of_poly(total, f) >= weight_of_poly(q, f) + weight_of_poly(r, f)


class TestSupport:
    def test_counterexample_support(self, counterexample):
        assert len(counterexample) == 6
        assert ExponentVector((1, 1, 1, 1)) in counterexample.support

    def test_empty_support(self):
        with pytest.raises(DomainError):
            PolynomialSupport(3, ())

    def test_duplicate_support(self):
        a = ExponentVector((1, 0))
        with pytest.raises(DomainError):
            PolynomialSupport(2, (a, a))

    def test_union(self, counterexample):
        g = parse_polynomial("x0^3 + x1^6 + x2^3 + x3^6", 4)
        union = counterexample.union(g)
        assert len(union) == 7
        assert not union.has_coefficients

    def test_fingerprint_stable(self):
        f = parse_polynomial("x0^2 + x1^4 + x2^4", 3)
        g = parse_polynomial("x2^4 + x0^2 + x1^4", 3)
        assert f.fingerprint() == g.fingerprint()


class TestParser:
    def test_coefficients_collected(self):
        f = parse_polynomial("2*x0^2 - 1/2*x1 + x0^2", 2)
        assert f.coeffs[ExponentVector((2, 0))] == 3
        assert f.coeffs[ExponentVector((0, 1))] == Fraction(-1, 2)

    def test_cancellation_drops_monomial(self):
        f = parse_polynomial("x0^2 + x1^3 - x0^2 + x0*x1", 2)
        assert ExponentVector((2, 0)) not in f.support
        assert len(f) == 2

    def test_leading_sign_and_constant(self):
        f = parse_polynomial("-x0 + 3", 1)
        assert f.coeffs[ExponentVector((0,))] == 3
        assert f.coeffs[ExponentVector((1,))] == -1

    def test_all_terms_cancel(self):
        with pytest.raises(InputError):
            parse_polynomial("x0 - x0", 1)

    def test_syntax_error_position(self):
        with pytest.raises(PolynomialSyntaxError) as excinfo:
            parse_polynomial("x0^2 + y1", 2)
        assert excinfo.value.position == 7

    def test_variable_out_of_range(self):
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial("x0 + x3", 3)

    def test_exponent_limit(self, settings_override):
        settings = settings_override(max_exponent=10)
        with pytest.raises(ExponentLimitError):
            parse_polynomial("x0^11", 1, settings)

    def test_format_reads_back(self, counterexample):
        assert parse_polynomial(format_polynomial(counterexample), 4) == counterexample

    @settings(max_examples=100, deadline=None)
    @given(polynomials())
    def test_random_format_reads_back(self, f):
        text = format_polynomial(f)
        g = parse_polynomial(text, f.dim)
        assert g.support == f.support
        assert g.coeffs == f.coeffs
        assert format_polynomial(g) == text


class TestFiles:
    def test_json_form(self, counterexample):
        data = json.loads(json.dumps(support_to_json(counterexample)))
        assert support_from_json(data) == counterexample

    def test_json_missing_keys(self):
        with pytest.raises(InputError):
            support_from_json({"terms": []})

    def test_text_header(self):
        f = read_polynomial_text("# dim=3\n# a comment\nx0^2 + x1^4\n + x2^4\n", None)
        assert f.dim == 3
        assert len(f) == 3

    def test_text_without_dimension(self):
        with pytest.raises(InputError):
            read_polynomial_text("x0^2 + x1^4", None)

    def test_load_files(self, tmp_path, counterexample):
        (tmp_path / "f.json").write_text(json.dumps(support_to_json(counterexample)))
        (tmp_path / "g.txt").write_text("# dim=4\nx0*x1*x2*x3 + x0^3 + x1^2*x2^2 + x1^6 + x2^6 + x3^6\n")
        assert load_polynomial(tmp_path / "f.json") == counterexample
        assert load_polynomial(tmp_path / "g.txt") == counterexample

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_polynomial(tmp_path / "missing.txt", 3)
