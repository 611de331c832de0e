import pytest

from p2xp2 import catalog, fixtures
from p2xp2.key_variety import weight_matrix
from p2xp2.series import gorenstein_symmetry_check


class TestFixtures:
    def test_catalogue_invariants(self):
        fixtures.check_catalogue_invariants()

    def test_row_count_and_histogram(self):
        assert len(fixtures.CATALOGUE) == 53
        by_k = {}
        for row in fixtures.CATALOGUE:
            by_k[row.k] = by_k.get(row.k, 0) + 1
        assert by_k == {k: n for k, n in fixtures.EXPECTED_MATCH_COUNTS.items() if n}

    def test_outcome_tags(self):
        tags = {row.grdb_id: row.outcome_tag for row in fixtures.CATALOGUE}
        assert tags["26989"] == fixtures.NEW_TJ
        assert tags["20652"] == fixtures.SECOND_TOM
        assert tags["12960"] == fixtures.SUBFAMILY
        assert tags["878"] == fixtures.QUASISMOOTH_MODEL
        assert tags["577"] == fixtures.NOT_TERMINAL
        assert tags["11157"] == fixtures.BAD_POINT

    def test_1766_alternate_id_recorded(self):
        assert fixtures.catalogue_row("1766").alt_id == "1799"

    def test_model_ambients_sum_to_2k_plus_1(self):
        for row in fixtures.CATALOGUE:
            amb = fixtures.model_ambient(row)
            assert len(amb) == 8
            assert sum(amb) == 2 * row.k + 1

    def test_codim3_rows_gain_the_unprojection_weight(self):
        row = fixtures.catalogue_row("20543")
        assert fixtures.model_ambient(row) == (1, 1, 1, 1, 1, 2, 2, 2)
        row = fixtures.catalogue_row("1396")
        assert fixtures.model_ambient(row) == (1, 2, 3, 3, 4, 5, 5, 6)

    def test_11157_sheds_one_weight(self):
        row = fixtures.catalogue_row("11157")
        assert fixtures.model_ambient(row) == (1, 1, 1, 2, 2, 3, 3, 4)


class TestDatabase:
    def test_build_database_passes_gates(self):
        db = fixtures.build_database()
        assert len(db) == 53
        for entry in db:
            report = gorenstein_symmetry_check(entry.numerator)
            assert report.palindromic
            assert report.degree == sum(entry.ambient_weights) - 1

    def test_bundled_database_is_fresh(self):
        assert catalog.bundled_database().entries == fixtures.build_database().entries

    def test_save_load_round_trip_bit_exact(self, tmp_path):
        db = fixtures.build_database()
        first = tmp_path / "a.db"
        second = tmp_path / "b.db"
        catalog.save_database(db, first)
        catalog.save_database(catalog.load_database(first), second)
        assert first.read_bytes() == second.read_bytes()

    def test_comments_and_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "db.txt"
        path.write_text("# comment\n\n1 | 1,1,1,1,1 | 1,0,0,0,-1\n")
        db = catalog.load_database(path)
        assert len(db) == 1 and db.get("1").ambient_weights == (1, 1, 1, 1, 1)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.db"
        path.write_text("")
        assert len(catalog.load_database(path)) == 0

    def test_invariant_violation_reports_id_and_line(self, tmp_path):
        path = tmp_path / "bad.db"
        path.write_text("999 | 1,1,2 | 1,0,-1\n")  # degree 2 != 4 - 1
        with pytest.raises(catalog.DatabaseParseError) as exc:
            catalog.load_database(path)
        assert "999" in str(exc.value) and ":1:" in str(exc.value)

    def test_malformed_line_reports_line_number(self, tmp_path):
        path = tmp_path / "bad.db"
        path.write_text("1 | 1,1\n")
        with pytest.raises(catalog.DatabaseParseError) as exc:
            catalog.load_database(path)
        assert ":1:" in str(exc.value)


class TestReports:
    def test_theorem_ledgers_all_pass(self):
        report = catalog.report_theorem_ledgers()
        assert report.failed == 0, report.render_text()
        assert report.passed >= 11

    def test_cross_check_29_of_29(self):
        report = catalog.cross_check_tables()
        assert len(report.cells) == 29
        assert report.failed == 0, report.render_text()

    def test_shared_matrix_rows_both_pass(self):
        # two catalogue rows share one matrix but have different centres
        m1253 = weight_matrix(fixtures.catalogue_row("1253").weight_data())
        m1218 = weight_matrix(fixtures.catalogue_row("1218").weight_data())
        assert m1253.rows == m1218.rows
        st = {r.grdb_id: r for r in fixtures.SECOND_TOM_TABLE}
        assert st["1253"].centres != st["1218"].centres

    def test_reports_are_deterministic(self):
        a = catalog.report_theorem_ledgers().render_text()
        b = catalog.report_theorem_ledgers().render_text()
        assert a == b

    def test_screen_report_checks_outcomes(self):
        report = catalog.screen_report(["26989", "4839", "645"])
        assert len(report.cells) == 3
        assert report.failed == 0

    def test_screen_report_full_catalogue_has_one_known_discrepancy(self):
        report = catalog.screen_report()
        assert len(report.cells) == 53
        failing = [c.label for c in report.cells if not c.passed]
        assert len(failing) == 1 and "577" in failing[0]
