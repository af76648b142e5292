"""Invariant arithmetic, polytope integrals, and the uniform family search."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabkit.kstab import (
    Crease,
    HilbCoeffs,
    ModelNumbers,
    PLFunction,
    Polytope,
    boundary_integral_pl,
    df_invariant,
    integrate_pl,
    minimum_pl,
    model_norm,
    toric_df,
    toric_df_data,
    toric_hilb,
    toric_minnorm,
    toric_uniform_search,
)

INTERVAL = Polytope(1, [(0,), (1,)])
SQUARE = Polytope(2, [(0, 0), (1, 0), (1, 1), (0, 1)])
WIDE_TRIANGLE = Polytope(2, [(0, 0), (2, 0), (0, 1)])

rat = st.fractions(min_value=-12, max_value=12, max_denominator=5)


def pl(dim, *pieces):
    return PLFunction(dim, pieces)


class TestInvariantNumbers:
    def test_df_golden(self):
        a = HilbCoeffs(1, 2)
        b = ModelNumbers(Fraction(-2, 3), Fraction(-3, 2))
        assert df_invariant(a, b) == Fraction(1, 6)

    def test_hilb_validation(self):
        with pytest.raises(ValueError):
            HilbCoeffs(0, 1)
        with pytest.raises(ValueError):
            HilbCoeffs(-1, 1)

    def test_model_norm_golden(self):
        b = ModelNumbers(0, 0, r=1, n=1, l_mix=3, l_top=1, vol_ln=1)
        assert model_norm(b) == 1

    def test_model_norm_needs_intersection_data(self):
        with pytest.raises(ValueError):
            model_norm(ModelNumbers(1, 1))
        with pytest.raises(ValueError):
            model_norm(ModelNumbers(0, 0, l_mix=1, l_top=1, vol_ln=0))

    def test_model_validation(self):
        with pytest.raises(ValueError):
            ModelNumbers(0, 0, r=0)
        with pytest.raises(ValueError):
            ModelNumbers(0, 0, n=0)

    def test_norm_scales_with_r(self):
        b = ModelNumbers(0, 0, r=2, n=2, l_mix=9, l_top=3, vol_ln=1)
        assert model_norm(b) == Fraction(9, 3) - Fraction(3, 3 * 4)

    @given(rat, rat, rat)
    @settings(max_examples=40, deadline=None)
    def test_df_vanishes_on_proportional_data(self, a1, b0, scale):
        # b proportional to a gives a zero invariant
        a0 = Fraction(1)
        a = HilbCoeffs(a0, a1)
        b = ModelNumbers(scale * a0, scale * a1)
        assert df_invariant(a, b) == 0


class TestPolytope:
    def test_interval_normalization(self):
        p = Polytope(1, [(Fraction(3),), (Fraction(-1),), (Fraction(1),)])
        assert p.interval == (-1, 3)
        assert p.volume() == 4
        assert p.boundary_measure() == 2

    def test_degenerate_interval_rejected(self):
        with pytest.raises(ValueError):
            Polytope(1, [(1,), (1,)])

    def test_polygon_hull(self):
        p = Polytope(2, [(0, 0), (1, 0), (1, 1), (0, 1), (Fraction(1, 2), Fraction(1, 2))])
        assert p.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
        assert p.volume() == 1
        assert p.boundary_measure() == 4

    def test_flat_polygon_rejected(self):
        with pytest.raises(ValueError):
            Polytope(2, [(0, 0), (1, 1), (2, 2)])

    def test_unsupported_dimension(self):
        with pytest.raises(ValueError):
            Polytope(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])

    def test_lattice_boundary_measure(self):
        assert WIDE_TRIANGLE.boundary_measure() == 4
        assert len(WIDE_TRIANGLE.edges()) == 3
        with pytest.raises(ValueError):
            INTERVAL.edges()


class TestPLFunction:
    def test_duplicates_dropped(self):
        f = pl(1, ((1,), 0), ((1,), 0), ((0,), 0))
        assert len(f.pieces) == 2

    def test_needs_a_piece(self):
        with pytest.raises(ValueError):
            PLFunction(1, [])

    def test_value_is_max(self):
        f = pl(1, ((1,), 0), ((-1,), 0))
        assert f.value((Fraction(-3),)) == 3
        assert f.value((Fraction(2),)) == 2

    def test_gradient_dimension_checked(self):
        with pytest.raises(ValueError):
            pl(2, ((1,), 0))

    def test_on_prunes_inactive_pieces(self):
        f = PLFunction.on(INTERVAL, [((1,), 0), ((1,), -5)])
        assert f.pieces == (((Fraction(1),), Fraction(0)),)


class TestIntegrals:
    def test_absolute_value_on_symmetric_interval(self):
        box = Polytope(1, [(-1,), (1,)])
        f = pl(1, ((1,), 0), ((-1,), 0))
        assert integrate_pl(box, f) == 1
        assert boundary_integral_pl(box, f) == 2
        assert minimum_pl(box, f) == 0

    def test_hinge_on_interval(self):
        f = pl(1, ((0,), 0), ((2,), -1))
        assert integrate_pl(INTERVAL, f) == Fraction(1, 4)
        assert boundary_integral_pl(INTERVAL, f) == 1
        assert minimum_pl(INTERVAL, f) == 0
        assert toric_df(INTERVAL, f) == Fraction(1, 4)

    def test_coordinate_on_square(self):
        f = pl(2, ((1, 0), 0))
        assert integrate_pl(SQUARE, f) == Fraction(1, 2)
        assert boundary_integral_pl(SQUARE, f) == 2
        assert minimum_pl(SQUARE, f) == 0

    def test_wide_triangle_data(self):
        f = pl(2, ((1, 0), 0))
        data = toric_df_data(WIDE_TRIANGLE, f)
        assert data.a0 == 1
        assert data.a1 == 2
        assert data.integral_f == Fraction(2, 3)
        assert data.boundary_integral_f == 3
        assert data.df == Fraction(1, 6)

    def test_simplex_coordinate_is_neutral(self):
        simplex = Polytope(2, [(0, 0), (1, 0), (0, 1)])
        assert toric_df(simplex, pl(2, ((1, 0), 0))) == 0

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            toric_df(SQUARE, pl(1, ((1,), 0)))
        with pytest.raises(ValueError):
            toric_minnorm(INTERVAL, pl(2, ((1, 0), 0)))

    def test_hilb_of_square(self):
        h = toric_hilb(SQUARE)
        assert h.a0 == 1 and h.a1 == 2

    @given(rat)
    @settings(max_examples=30, deadline=None)
    def test_constants_are_invisible(self, c):
        f = pl(2, ((0, 0), c))
        assert toric_df(SQUARE, f) == 0
        assert toric_minnorm(SQUARE, f) == 0

    @given(rat, rat, st.integers(min_value=1, max_value=5))
    @settings(max_examples=30, deadline=None)
    def test_df_scales_linearly(self, g, c, k):
        f = pl(1, ((g,), c))
        scaled = pl(1, ((k * g,), k * c))
        assert toric_df(INTERVAL, scaled) == k * toric_df(INTERVAL, f)

    @given(rat, rat)
    @settings(max_examples=40, deadline=None)
    def test_minnorm_separates_constants(self, g, c):
        f = pl(1, ((g,), c))
        norm = toric_minnorm(INTERVAL, f)
        assert norm >= 0
        assert (norm == 0) == (g == 0)

    @given(rat, rat, rat, rat)
    @settings(max_examples=40, deadline=None)
    def test_integral_bounds(self, g1, c1, g2, c2):
        f = pl(1, ((g1,), c1), ((g2,), c2))
        total = integrate_pl(INTERVAL, f)
        lo = minimum_pl(INTERVAL, f)
        hi = max(f.value((Fraction(0),)), f.value((Fraction(1),)))
        assert lo <= total <= hi


class TestCreases:
    def test_validation(self):
        with pytest.raises(ValueError):
            Crease((0, 0), 1)
        c = Crease((1, -1), Fraction(1, 2))
        assert c.gap((Fraction(1), Fraction(0))) == Fraction(1, 2)

    def test_kink_pieces_build_the_hinge(self):
        c = Crease((2,), 1)
        f = PLFunction(1, c.kink_pieces())
        assert f.value((Fraction(0),)) == 0
        assert f.value((Fraction(1),)) == 1


class TestUniformSearch:
    def test_interval_fails_at_positive_epsilon(self):
        verdict = toric_uniform_search(INTERVAL, [], Fraction(1, 10))
        assert verdict.status == "fails-at-epsilon"
        assert verdict.alpha == (1,)
        assert verdict.df == 0
        assert verdict.minnorm == Fraction(1, 2)
        assert verdict.df < Fraction(1, 10) * verdict.minnorm

    def test_interval_holds_at_zero(self):
        verdict = toric_uniform_search(INTERVAL, [], Fraction(0))
        assert verdict.status == "holds-on-family"
        assert verdict.minimum == 0

    def test_wide_triangle_destabilized(self):
        verdict = toric_uniform_search(WIDE_TRIANGLE, [], Fraction(0))
        assert verdict.status == "fails-at-epsilon"
        assert verdict.minimum == Fraction(-1, 2)
        assert verdict.alpha == (0, 1)
        assert verdict.df == Fraction(-1, 6)
        assert verdict.minnorm == Fraction(1, 3)
        assert verdict.certificate.pieces == (((Fraction(0), Fraction(1)), Fraction(0)),)

    def test_certificates_reverify(self):
        verdict = toric_uniform_search(WIDE_TRIANGLE, [], Fraction(0))
        cert = verdict.certificate
        assert toric_df(WIDE_TRIANGLE, cert) == verdict.df
        assert toric_minnorm(WIDE_TRIANGLE, cert) == verdict.minnorm
        assert verdict.df < 0

    def test_crease_must_cross_interior(self):
        with pytest.raises(ValueError):
            toric_uniform_search(INTERVAL, [Crease((1,), 5)], Fraction(0))
        with pytest.raises(ValueError):
            toric_uniform_search(INTERVAL, [Crease((1, 0), Fraction(1, 2))], Fraction(0))

    def test_crease_family_on_interval(self):
        # adding the midpoint kink keeps the interval's verdict at zero
        verdict = toric_uniform_search(INTERVAL, [Crease((1,), Fraction(1, 2))], Fraction(0))
        assert verdict.status == "holds-on-family"
        assert verdict.minimum == 0

    def test_simplex_holds(self):
        simplex = Polytope(2, [(0, 0), (1, 0), (0, 1)])
        verdict = toric_uniform_search(simplex, [], Fraction(0))
        assert verdict.status == "holds-on-family"
        assert verdict.minimum == 0
