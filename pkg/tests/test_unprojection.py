from fractions import Fraction

import pytest

from p2xp2 import fixtures
from p2xp2.series import gorenstein_symmetry_check, series_equal, series_expand
from p2xp2.unprojection import (
    JERRY,
    TOM,
    GradingError,
    ProjectionError,
    SkewPfaffianData,
    TomJerryPattern,
    UnprojectionLedger,
    ci_euler,
    euler_ledger,
    hilbert_burch_numerator,
    node_count,
    pattern_feasible,
    pfaffian_degrees,
    pfaffian_numerator,
    project_type_one,
    unprojection_degree,
)

from conftest import poly, series


class TestSkewData:
    def test_from_degree_table_20543(self):
        data = SkewPfaffianData.from_degree_table(
            [[0, 1, 1, 2], [1, 1, 2], [2, 3], [3]], zero_entries=[(1, 2), (4, 5)]
        )
        assert [str(w) for w in data.row_weights] == ["0", "0", "1", "1", "2"]
        assert pfaffian_degrees(data) == (4, 4, 3, 3, 2)

    def test_from_degree_table_rejects_inconsistent(self):
        with pytest.raises(GradingError):
            SkewPfaffianData.from_degree_table([[0, 1, 1, 2], [1, 1, 2], [2, 3], [9]])

    def test_half_integral_weights(self):
        data = SkewPfaffianData(["1/2"] * 4 + ["3/2"])
        assert pfaffian_degrees(data) == (3, 3, 3, 3, 2)

    def test_pairwise_sums_must_be_integral(self):
        with pytest.raises(GradingError):
            SkewPfaffianData(["1/2", 0, 0, 0, 0])


class TestPfaffianDegrees:
    def test_solved_degrees(self):
        assert pfaffian_degrees(SkewPfaffianData((0, 0, 1, 1, 2))) == (4, 4, 3, 3, 2)
        assert pfaffian_degrees(SkewPfaffianData((0, 1, 1, 1, 1))) == (4, 3, 3, 3, 3)
        assert pfaffian_degrees(SkewPfaffianData((0, 0, 0, 0, 0))) == (0, 0, 0, 0, 0)


class TestPfaffianNumerator:
    def test_20543_numerator_with_cancellation(self):
        p = pfaffian_numerator(SkewPfaffianData((0, 1, 1, 1, 1)))
        assert p == poly({0: 1, 3: -4, 5: 4, 8: -1})

    def test_degenerate_grading_rejected(self):
        with pytest.raises(GradingError):
            pfaffian_numerator(SkewPfaffianData((0, 0, 0, 0, 0)))

    def test_half_integral_example(self):
        p = pfaffian_numerator(SkewPfaffianData(["1/2"] * 4 + ["3/2"]))
        report = gorenstein_symmetry_check(p)
        assert report.palindromic and report.sign == -1 and report.degree == 7

    def test_random_antisymmetric_of_degree_2w(self, rng):
        produced = 0
        while produced < 200:
            half = rng.choice((Fraction(0), Fraction(1, 2)))
            ws = sorted(rng.randint(0, 4) + half for _ in range(5))
            data = SkewPfaffianData(ws)
            if any(d <= 0 for d in (sum(ws) - w for w in ws)):
                continue
            p = pfaffian_numerator(data)
            if p.is_zero():
                continue
            report = gorenstein_symmetry_check(p)
            assert report.palindromic and report.sign == -1
            assert report.degree == data.adjunction_number
            produced += 1


class TestProjectTypeOne:
    def test_26989_projection(self):
        data = project_type_one(fixtures.model_for_id("26989"), 2)
        assert data.degree_table() == "(0) 1 1 1 / 1 1 1 / 2 2 / (2)"
        assert data.zero_entries == frozenset({(1, 2), (4, 5)})
        assert data.ambient_weights == (1,) * 7

    def test_20543_projection(self):
        data = project_type_one(fixtures.model_for_id("20543"), 2)
        assert data.degree_table() == "(0) 1 1 2 / 1 1 2 / 2 3 / (3)"
        assert [str(w) for w in data.row_weights] == ["0", "0", "1", "1", "2"]

    def test_4839_two_projections(self):
        model = fixtures.model_for_id("4839")
        for carrier in (5, 9):
            data = project_type_one(model, carrier)
            assert data.adjunction_number == sum(data.ambient_weights) - 1

    def test_no_projection_signalled(self):
        with pytest.raises(ProjectionError):
            project_type_one(fixtures.model_for_id("26989"), 7)


class TestPatternFeasible:
    def _eq20543(self):
        return SkewPfaffianData((0, 0, 1, 1, 2), zero_entries=[(1, 2), (4, 5)])

    def test_tom3_on_20543(self):
        pattern = TomJerryPattern(TOM, (3,), (1, 1, 2, 2))
        assert pattern_feasible(self._eq20543(), pattern)

    def test_tom3_on_26989(self):
        data = SkewPfaffianData((0, 0, 1, 1, 1), zero_entries=[(1, 2), (4, 5)])
        assert pattern_feasible(data, TomJerryPattern(TOM, (3,), (1, 1, 1, 1)))

    def test_jerry_with_zero_pivot_rejected(self):
        data = SkewPfaffianData((0, 0, 1, 1, 1), zero_entries=[(1, 2), (4, 5)])
        assert not pattern_feasible(data, TomJerryPattern(JERRY, (4, 5), (1, 1, 1, 1)))

    def test_marked_entry_below_generator_weight_rejected(self):
        data = SkewPfaffianData((0, 0, 1, 1, 1), zero_entries=[(1, 2), (4, 5)])
        assert not pattern_feasible(data, TomJerryPattern(TOM, (5,), (2, 2)))


class TestHilbertBurch:
    def test_linear_case(self):
        assert hilbert_burch_numerator((0, 0, 0), (1, 1, 1, 1)) == poly({0: 1, 3: -4, 4: 3})

    def test_uniform_rescaling(self):
        for d in (1, 2, 3):
            p = hilbert_burch_numerator((0, 0, 0), (d,) * 4)
            assert p == poly({0: 1, 3 * d: -4, 4 * d: 3})

    def test_mixed_degrees_by_enumeration(self):
        # r = (0,0,1), c = (1,1,1,2): sigma = 6; minors have degrees
        # sigma - c_j = (5,5,5,4), syzygies sigma + r_i = (6,6,7)
        p = hilbert_burch_numerator((0, 0, 1), (1, 1, 1, 2))
        assert p == poly({0: 1, 4: -1, 5: -3, 6: 2, 7: 1})


class TestNodeCount:
    def test_six_nodes(self):
        assert node_count(poly({0: 1, 3: -4, 4: 3}), (1, 1, 1)) == 6

    def test_single_node(self):
        assert node_count(poly({0: 1, 1: -1}), (1, 1)) == 1

    def test_composition_with_hilbert_burch(self):
        assert node_count(hilbert_burch_numerator((0, 0, 0), (1, 1, 1, 1)), (1, 1, 1)) == 6


class TestCiEuler:
    def test_2_2_2_complete_intersection(self):
        assert ci_euler(6, (2, 2, 2)) == -24

    def test_quadric_threefold(self):
        assert ci_euler(4, (2,)) == 4

    def test_3_3_complete_intersection(self):
        # h^{1,1} = 1, h^{2,1} = 73: e = 2(1 + 1) - 2(73 + ... ) = -144
        assert ci_euler(5, (3, 3)) == -144

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            ci_euler(5, (2,))


class TestEulerLedger:
    def test_theorem_values(self):
        assert euler_ledger(-24, 6) == -14
        assert euler_ledger(-24, 5) == -16
        assert euler_ledger(-24, 7) == -12
        assert euler_ledger(-56, 9) == -40
        assert euler_ledger(-40, 9) == -24

    def test_slope_two_in_nodes(self):
        for n in range(0, 12):
            assert euler_ledger(-24, n + 1) - euler_ledger(-24, n) == 2

    def test_ledger_dataclass_validates(self):
        UnprojectionLedger(-24, 6, -14, 2)
        with pytest.raises(ValueError):
            UnprojectionLedger(-24, 6, -15, 2)


class TestUnprojectionDegree:
    def test_paper_planes(self):
        assert unprojection_degree((1, 1, 1)) == 2
        assert unprojection_degree((1, 3, 7)) == 10
        assert unprojection_degree((1, 1, 8)) == 9

    def test_consistency_check(self):
        assert unprojection_degree((1, 1, 1), k_y=-1, k_d=-3) == 2
        with pytest.raises(ValueError):
            unprojection_degree((1, 1, 1), k_y=-1, k_d=-5)


def _contains(multiset, sub):
    pool = list(multiset)
    for x in sub:
        if x not in pool:
            return False
        pool.remove(x)
    return True


class TestProjectionSeriesRoundTrip:
    def test_26989_projection_is_degenerate_ci(self):
        # the image of the projection has the Hilbert series of the 2,2,2
        # complete intersection it deforms to
        data = project_type_one(fixtures.model_for_id("26989"), 2)
        p = pfaffian_numerator(data)
        ci = poly({0: 1, 2: -1}) * poly({0: 1, 2: -1}) * poly({0: 1, 2: -1})
        assert p == ci

    def test_20543_two_route_agreement(self):
        pfaffian_route = series({0: 1, 3: -4, 5: 4, 8: -1}, [1] * 5 + [2, 2])
        model = fixtures.model_for_id("20543")
        assert series_equal(model.series, pfaffian_route)
        assert series_expand(model.series, 40) == series_expand(pfaffian_route, 40)

    def test_unprojection_identity_at_every_type_one_centre(self):
        """P_X = P_Y + t^b / prod(1 - t^a, a in D + (b,)) at every centre
        whose plane D = P(local type) embeds in the image ambient, for some
        admissible deletion entry."""
        from p2xp2.fano_model import TERMINAL, orbifold_screen
        from p2xp2.series import HilbertSeries, IntPolynomial

        checked = 0
        for row in fixtures.CATALOGUE:
            model = fixtures.model_for_row(row)
            rows = model.degree_matrix.rows
            entries = model.degree_matrix.entries()
            for point in orbifold_screen(model):
                if point.verdict != TERMINAL or point.local_weights is None:
                    continue
                if point.r not in entries:
                    continue
                ambient_y = list(model.ambient)
                ambient_y.remove(point.r)
                if not _contains(ambient_y, point.local_weights):
                    continue  # no numerical Type I projection from this point
                b = unprojection_degree(point.local_weights)
                assert b == point.r
                cone = HilbertSeries.of(
                    IntPolynomial({b: 1}), tuple(point.local_weights) + (b,)
                )
                lhs = series_expand(model.series, 40)
                candidates = [
                    (i, j) for i in range(3) for j in range(3) if rows[i][j] == point.r
                ]
                assert any(
                    lhs
                    == [
                        y + c
                        for y, c in zip(
                            series_expand(
                                HilbertSeries.of(
                                    pfaffian_numerator(
                                        project_type_one(model, point.r, entry)
                                    ),
                                    ambient_y,
                                ),
                                40,
                            ),
                            series_expand(cone, 40),
                        )
                    ]
                    for entry in candidates
                ), f"{row.grdb_id}: no deletion entry matches the centre 1/{point.r}{point.local_weights}"
                checked += 1
        assert checked >= 85
