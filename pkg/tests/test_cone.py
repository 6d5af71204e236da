"""Tests for the cone engine: extreme rays, Hilbert bases, enumeration and frames."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from canweight import lattice
from canweight.cone import (
    componentwise_min,
    cone_from_inequalities,
    cone_from_rays,
    lattice_points_under,
    simplicial_frame,
)
from canweight.exceptions import (
    DomainError,
    EnumerationLimitError,
    NonPointedConeError,
)
from canweight.support import WeightVector
from canweight.weights import absolutely_minimal

entry = st.integers(min_value=0, max_value=5)
ray2 = st.tuples(entry, entry).filter(any)
ray3 = st.tuples(entry, entry, entry).filter(any)
form3 = st.tuples(*(st.integers(min_value=-3, max_value=3) for _ in range(3)))


def lattice_box(highs):
    return itertools.product(*(range(h + 1) for h in highs))


@st.composite
def ray_sets(draw):
    """One to dim+1 nonzero rays in dimension 2 to 4 with entries up to 5."""
    dim = draw(st.integers(min_value=2, max_value=4))
    ray = st.tuples(*(entry for _ in range(dim))).filter(any)
    return draw(st.lists(ray, min_size=1, max_size=dim + 1))


def hilbert_box(rays):
    """Coordinate bounds covering every Hilbert basis element.

    Each element lies in the parallelepiped of at most rank-many rays.
    """
    r = lattice.rank(rays)
    return tuple(sum(sorted(col, reverse=True)[:r]) for col in zip(*rays))


def brute_force(cone, highs):
    """Hilbert basis and absolutely minimal vector found by scanning a box."""
    members = sorted((q for q in lattice_box(highs) if any(q) and cone.contains(q)), key=sum)
    member_set = set(members)
    basis = {
        x
        for x in members
        if not any(y != x and tuple(a - b for a, b in zip(x, y)) in member_set for y in members)
    }
    primitive = [q for q in members if lattice.vector_gcd(q) == 1]
    below_all = [
        m for m in primitive if all(all(a <= b for a, b in zip(m, q)) for q in primitive)
    ]
    return basis, (below_all[0] if below_all else None)


class TestExtremeRays:
    def test_orthant(self):
        cone = cone_from_inequalities([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert cone.ray_tuples() == ((0, 0, 1), (0, 1, 0), (1, 0, 0))

    def test_redundant_form_pruned(self):
        cone = cone_from_inequalities([(1, 0), (0, 1), (1, 1)])
        assert set(cone.facet_forms()) == {(1, 0), (0, 1)}

    def test_apex(self):
        cone = cone_from_inequalities([(1, -1), (-1, 1), (1, 0), (-1, -1)])
        assert cone.is_zero
        assert cone.rays == []

    def test_not_pointed(self):
        cone = cone_from_inequalities([(1, 0)], 2)
        assert not cone.is_pointed
        with pytest.raises(NonPointedConeError):
            cone.ray_tuples()
        assert cone.lineality_basis() == [(0, 1)]

    def test_lower_dimensional_cone(self):
        # x + y - 2z >= 0 and its negative cut out a plane
        cone = cone_from_inequalities([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -2), (-1, -1, 2)])
        assert set(cone.ray_tuples()) == {(2, 0, 1), (0, 2, 1)}
        assert cone.dimension == 2

    def test_rays_to_inequalities(self):
        cone = cone_from_rays([(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 1, 0)])
        assert set(cone.ray_tuples()) == {(1, 0, 0), (1, 1, 0), (1, 1, 1)}

    def test_rays_of_a_plane_cone(self):
        cone = cone_from_rays([(1, 0, 1), (0, 1, 1)])
        assert cone.contains((1, 1, 2))
        assert not cone.contains((1, 1, 1))
        assert set(cone.ray_tuples()) == {(1, 0, 1), (0, 1, 1)}

    @settings(max_examples=60, deadline=None)
    @given(st.lists(form3, min_size=1, max_size=5))
    def test_double_description_soundness(self, extra):
        forms = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] + extra
        cone = cone_from_inequalities(forms)
        for ray in cone.ray_tuples():
            assert all(lattice.dot(form, ray) >= 0 for form in forms)
            tight = [form for form in forms if lattice.dot(form, ray) == 0]
            assert lattice.rank(tight) == 2
        # every point of a small box inside the cone is a nonnegative combination of the rays
        if cone.ray_tuples():
            generated = cone_from_rays(cone.ray_tuples(), 3)
            for q in lattice_box((3, 3, 3)):
                assert cone.contains(q) == generated.contains(q)


class TestHilbertBasis:
    def test_two_dimensional(self):
        cone = cone_from_rays([(1, 0), (1, 3)])
        assert cone.hilbert_basis() == [WeightVector(v) for v in ((1, 0), (1, 1), (1, 2), (1, 3))]

    def test_unimodular(self):
        cone = cone_from_inequalities([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert len(cone.hilbert_basis()) == 3

    def test_enumeration_limit(self, settings_override):
        limited = settings_override(max_cells=10)
        cone = cone_from_rays([(1, 0), (1, 1000)])
        with pytest.raises(EnumerationLimitError):
            cone.hilbert_basis(limited)

    @settings(max_examples=40, deadline=None)
    @given(ray2, ray2)
    def test_matches_brute_force_in_the_plane(self, r, s):
        assume(lattice.determinant([r, s]) != 0)
        cone = cone_from_rays([r, s])
        basis = {h.coords for h in cone.hilbert_basis()}
        highs = (r[0] + s[0], r[1] + s[1])
        members = [q for q in lattice_box(highs) if any(q) and cone.contains(q)]

        def reducible(x):
            return any(
                y != x and cone.contains(tuple(a - b for a, b in zip(x, y))) for y in members
            )

        assert basis == {q for q in members if not reducible(q)}

    @settings(max_examples=25, deadline=None)
    @given(ray3, ray3, ray3)
    def test_generates_in_space(self, r, s, t):
        assume(lattice.determinant([r, s, t]) != 0)
        cone = cone_from_rays([r, s, t])
        basis = [h.coords for h in cone.hilbert_basis()]
        for h in basis:
            assert cone.contains(h)
            others = [g for g in basis if g != h]
            assert not any(cone.contains(tuple(a - b for a, b in zip(h, g))) for g in others)
        for q in lattice_box((4, 4, 4)):
            if any(q) and cone.contains(q) and q not in basis:
                assert any(cone.contains(tuple(a - b for a, b in zip(q, h))) for h in basis)

    @settings(
        max_examples=200,
        deadline=None,
        suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
    )
    @given(ray_sets())
    def test_matches_brute_force_up_to_dimension_four(self, rays):
        highs = hilbert_box(rays)
        assume(math.prod(h + 1 for h in highs) <= 8_000)
        cone = cone_from_rays(rays)
        basis, expected_min = brute_force(cone, highs)
        assert {h.coords for h in cone.hilbert_basis()} == basis
        found = absolutely_minimal(cone)
        assert (found.coords if found is not None else None) == expected_min


class TestEnumeration:
    def test_points_under(self):
        cone = cone_from_inequalities([(1, 0), (0, 1)])
        points = lattice_points_under(cone, (1, 1), 2)
        assert [p.coords for p in points] == [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]

    def test_form_must_be_positive(self):
        cone = cone_from_inequalities([(1, 0), (0, 1)])
        with pytest.raises(DomainError):
            lattice_points_under(cone, (1, 0), 3)

    def test_cell_limit(self, settings_override):
        limited = settings_override(max_cells=5)
        cone = cone_from_inequalities([(1, 0), (0, 1)])
        with pytest.raises(EnumerationLimitError):
            lattice_points_under(cone, (1, 1), 10, limited)

    @settings(max_examples=40, deadline=None)
    @given(ray2, ray2, st.integers(min_value=1, max_value=8))
    def test_matches_brute_force(self, r, s, bound):
        assume(lattice.determinant([r, s]) != 0)
        cone = cone_from_rays([r, s])
        form = (1, 1)
        found = {p.coords for p in lattice_points_under(cone, form, bound)}
        expected = {
            q for q in lattice_box((bound, bound)) if any(q) and sum(q) <= bound and cone.contains(q)
        }
        assert found == expected


class TestHelpers:
    def test_componentwise_min(self):
        assert componentwise_min([(2, 2, 1, 1), (2, 1, 2, 1)]) == WeightVector((2, 1, 1, 1))
        with pytest.raises(DomainError):
            componentwise_min([])

    def test_simplicial_frame(self):
        frame = simplicial_frame([(2, 1, 1), (0, 1, 0), (0, 0, 1)])
        assert frame.dual_basis[0] == (Fraction(1, 2), 0, 0)
        assert frame.dual_basis[1] == (Fraction(-1, 2), 1, 0)
        assert frame.dual_basis[2] == (Fraction(-1, 2), 0, 1)
        assert frame.multipliers == (2, 2, 2)
        assert frame.determinant == 2

    def test_simplicial_frame_dependent(self):
        with pytest.raises(DomainError):
            simplicial_frame([(1, 0, 0), (0, 1, 0), (1, 1, 0)])

    def test_simplicial_frame_not_primitive(self):
        with pytest.raises(DomainError):
            simplicial_frame([(2, 0), (0, 1)])
