"""End-to-end command-line behavior: chaining, exit codes, messages."""

import pytest
from click.testing import CliRunner

from semlabel.cli import main
from tests.conftest import FIXTURES, GOLDEN


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


class TestChain:
    def test_full_pipeline(self, runner, tmp_path):
        snap = tmp_path / "snapshot.tsv"
        var = tmp_path / "variants.tsv"
        occ = tmp_path / "occurrences.tsv"
        found = tmp_path / "found.tsv"
        corpus = tmp_path / "corpus.tsv"
        corpus.write_text(
            "doc-1\tunit\tCarbon monoxide poisoning and CO exposure.\n"
            "doc-2\tunit\tNothing relevant here.\n",
            encoding="utf-8",
        )

        r = run(runner, "ingest", FIXTURES / "homographs.tsv", "--out", snap)
        assert r.exit_code == 0, r.output
        assert "21 concepts" in r.output

        r = run(runner, "variants", "--snapshot", snap, "--out", var, "--budget", 500)
        assert r.exit_code == 0, r.output
        assert "21 concepts" in r.output

        r = run(
            runner, "scan",
            "--variants", var, "--corpus", corpus,
            "--occurrences", occ, "--stats", found, "--workers", 1,
        )
        assert r.exit_code == 0, r.output
        assert "scanned 2 documents" in r.output
        assert "carbon monoxide" in occ.read_text(encoding="utf-8")

        report_dir = tmp_path / "report"
        r = run(
            runner, "analyze",
            "--snapshot", snap, "--variants", var, "--found", found,
            "--out", report_dir,
        )
        assert r.exit_code == 0, r.output
        names = {p.name for p in report_dir.iterdir()}
        assert names == {
            "report.csv", "summary.txt", "fig_retrieval.tsv", "fig_histogram.tsv",
        }

    def test_duplicate_documents_are_reported(self, runner, tmp_path):
        snap = tmp_path / "snapshot.tsv"
        var = tmp_path / "variants.tsv"
        corpus = tmp_path / "corpus.tsv"
        corpus.write_text("d1\ts\tsome CO text\nd1\ts\tsame id again\n", encoding="utf-8")
        run(runner, "ingest", FIXTURES / "homographs.tsv", "--out", snap)
        run(runner, "variants", "--snapshot", snap, "--out", var, "--budget", 500)
        r = run(
            runner, "scan",
            "--variants", var, "--corpus", corpus,
            "--occurrences", tmp_path / "o.tsv", "--stats", tmp_path / "f.tsv",
            "--workers", 1,
        )
        assert r.exit_code == 0
        assert "1 duplicates skipped" in r.output


class TestExitCodes:
    def test_missing_input_is_1_and_names_the_path(self, runner, tmp_path):
        r = run(runner, "ingest", tmp_path / "absent.tsv", "--out", tmp_path / "s.tsv")
        assert r.exit_code == 1
        assert "absent.tsv" in r.output

    def test_unreadable_snapshot_is_1(self, runner, tmp_path):
        r = run(
            runner, "variants",
            "--snapshot", tmp_path / "missing.tsv", "--out", tmp_path / "v.tsv",
        )
        assert r.exit_code == 1
        assert "missing.tsv" in r.output

    def test_budget_smaller_than_the_name_list_is_2(self, runner, tmp_path):
        snap = tmp_path / "snapshot.tsv"
        run(runner, "ingest", FIXTURES / "homographs.tsv", "--out", snap)
        r = run(
            runner, "variants",
            "--snapshot", snap, "--out", tmp_path / "v.tsv", "--budget", 1,
        )
        assert r.exit_code == 2

    def test_missing_required_option_is_2(self, runner):
        r = run(runner, "variants")
        assert r.exit_code == 2

    def test_analyze_with_missing_stats_is_1(self, runner, tmp_path):
        snap = tmp_path / "snapshot.tsv"
        var = tmp_path / "variants.tsv"
        run(runner, "ingest", FIXTURES / "homographs.tsv", "--out", snap)
        run(runner, "variants", "--snapshot", snap, "--out", var, "--budget", 500)
        r = run(
            runner, "analyze",
            "--snapshot", snap, "--variants", var,
            "--found", tmp_path / "nope.tsv", "--out", tmp_path / "report",
        )
        assert r.exit_code == 1
        assert "nope.tsv" in r.output

    def test_version(self, runner):
        r = run(runner, "--version")
        assert r.exit_code == 0
        assert "semlabel" in r.output


class TestExport:
    def test_matches_committed_export(self, runner, tmp_path):
        out = tmp_path / "export.xml"
        r = run(
            runner, "export",
            "--data", FIXTURES / "service_data", "--doc", "pmid-777019",
            "--out", out,
        )
        assert r.exit_code == 0, r.output
        golden = (GOLDEN / "export_pmid-777019.xml").read_bytes()
        assert out.read_bytes() == golden

    def test_stdout_export_is_bare_xml(self, runner):
        r = run(
            runner, "export",
            "--data", FIXTURES / "service_data", "--doc", "note-2",
        )
        assert r.exit_code == 0
        assert r.output == (GOLDEN / "export_note-2.xml").read_text(encoding="utf-8")

    def test_unknown_document_is_1(self, runner):
        r = run(
            runner, "export", "--data", FIXTURES / "service_data", "--doc", "ghost"
        )
        assert r.exit_code == 1
        assert "ghost" in r.output

    def test_not_a_state_directory_is_1(self, runner, tmp_path):
        r = run(runner, "export", "--data", tmp_path, "--doc", "d1")
        assert r.exit_code == 1
