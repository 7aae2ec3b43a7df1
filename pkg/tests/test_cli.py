"""End-to-end tests for the command-line harness (in-process)."""

import json

import pytest

from endolift.cli import SCHEMA_VERSION, main
from endolift.errors import ConsistencyFailure, WindowExhausted


@pytest.fixture
def outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("ENDOLIFT_OUT_DIR", str(tmp_path))
    return tmp_path


def _run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


def _run_json(capsys, argv):
    rc, out = _run(capsys, argv)
    return rc, json.loads(out)


class TestSelfcheck:
    def test_passes_and_reports(self, outdir, capsys):
        rc, report = _run_json(capsys, ["selfcheck"])
        assert rc == 0
        assert report["schema_version"] == SCHEMA_VERSION
        assert report["command"] == "selfcheck"
        assert report["footers"]["summary"] == {"checks": 10, "passed": 10}
        assert all(v["pass"] for v in report["verdicts"])

    def test_writes_output_file(self, outdir, capsys):
        rc, out = _run(capsys, ["selfcheck"])
        assert rc == 0
        assert (outdir / "selfcheck.json").read_text(encoding="utf-8") == out


class TestInventory:
    def test_known_totals(self, outdir, capsys):
        rc, report = _run_json(capsys, ["inventory", "--case", "unr", "--p", "3", "--c0", "1"])
        assert rc == 0
        footer = report["footers"]["unr p=3 c0=1"]
        assert footer["total_proper"] == 5
        assert footer["total_proper"] == footer["closed_form"]
        assert not report["errata"]

    def test_ramified_display_mismatch_goes_to_errata(self, outdir, capsys):
        rc, report = _run_json(capsys, ["inventory", "--case", "ram", "--p", "3", "--c0", "1"])
        assert rc == 0  # the mismatch is reported, not failed
        codes = [e["code"] for e in report["errata"]]
        assert "displayed-closed-form-mismatch" in codes
        assert all(v["pass"] for v in report["verdicts"])

    def test_conductor_zero(self, outdir, capsys):
        rc, report = _run_json(capsys, ["inventory", "--case", "both", "--p", "3", "--c0", "0"])
        assert rc == 0
        # unramified: nothing proper at conductor 0; ramified keeps its one
        # nonstandard component (the closed form gives 1 there too)
        assert report["footers"]["unr p=3 c0=0"]["total_proper"] == 0
        assert report["footers"]["ram p=3 c0=0"]["total_proper"] == 1
        assert report["footers"]["ram p=3 c0=0"]["closed_form"] == 1


class TestRecursion:
    def test_verdicts_pass(self, outdir, capsys):
        rc, report = _run_json(capsys, ["recursion", "--case", "unr", "--p", "3", "--k", "1"])
        assert rc == 0
        names = [v["check"] for v in report["verdicts"]]
        assert any("closed-form" in n for n in names)
        assert all(v["pass"] for v in report["verdicts"])

    def test_dump_adds_coefficient_rows(self, outdir, capsys):
        rc, plain = _run_json(capsys, ["recursion", "--case", "unr", "--p", "3", "--k", "1"])
        rc2, dumped = _run_json(
            capsys, ["recursion", "--case", "unr", "--p", "3", "--k", "1", "--dump"]
        )
        assert rc == rc2 == 0
        assert len(dumped["rows"]) > len(plain["rows"])


class TestMultiplicity:
    def test_grid_row_content(self, outdir, capsys):
        rc, report = _run_json(
            capsys, ["multiplicity", "--case", "ram", "--p", "3", "--c0", "1"]
        )
        assert rc == 0
        (row,) = report["rows"]
        assert row["snf_length"] == 2
        assert row["closed_form"] == 2
        assert row["match"] is True
        assert report["footers"]["grid"]["all_match"] is True

    def test_conductor_zero_is_a_usage_error(self, outdir, capsys):
        rc = main(["multiplicity", "--case", "unr", "--p", "3", "--c0", "0"])
        assert rc == 2

    def test_window_exhaustion_maps_to_exit_three(self, outdir, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise WindowExhausted("probe")

        monkeypatch.setattr("endolift.lengths.quotient_length_details", boom)
        rc = main(["multiplicity", "--case", "unr", "--p", "3", "--c0", "1"])
        assert rc == 3

    def test_consistency_failure_maps_to_exit_one(self, outdir, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise ConsistencyFailure("probe")

        monkeypatch.setattr("endolift.lengths.quotient_length_details", boom)
        rc = main(["multiplicity", "--case", "unr", "--p", "3", "--c0", "1"])
        assert rc == 1


class TestLattice:
    def test_sublattice_listing(self, outdir, capsys):
        rc, report = _run_json(
            capsys, ["lattice", "--p", "3", "--sublattices", "2"]
        )
        assert rc == 0
        subl = [r for r in report["rows"] if r.get("kind") == "sublattice"]
        assert {r["k"] for r in subl} == {0, 1, 2}
        for r in subl:
            assert r["count"] == 1
        codes = [e["code"] for e in report["errata"]]
        assert "sublattice-display-swap" in codes

    def test_superlattice_census(self, outdir, capsys):
        rc, report = _run_json(
            capsys, ["lattice", "--p", "3", "--superlattices", "1"]
        )
        assert rc == 0
        supl = [r for r in report["rows"] if r.get("kind") == "superlattice"]
        assert len(supl) == 3
        assert all(v["pass"] for v in report["verdicts"])

    def test_appendix_census(self, outdir, capsys):
        rc, report = _run_json(capsys, ["lattice", "--p", "3", "--appendix"])
        assert rc == 0
        census = [r for r in report["rows"] if r.get("kind") == "hodge-census"]
        assert census
        assert census[0]["both_stable"] == 1


class TestOutputContract:
    def test_reruns_are_byte_identical(self, outdir, capsys):
        _, first = _run(capsys, ["inventory", "--case", "unr", "--p", "3", "--c0", "1"])
        _, second = _run(capsys, ["inventory", "--case", "unr", "--p", "3", "--c0", "1"])
        assert first == second

    def test_json_is_sorted_and_indented(self, outdir, capsys):
        _, report_text = _run(capsys, ["selfcheck"])
        parsed = json.loads(report_text)
        assert report_text == json.dumps(parsed, sort_keys=True, indent=2) + "\n"

    def test_tsv_has_sorted_union_header(self, outdir, capsys):
        rc, out = _run(
            capsys,
            ["multiplicity", "--case", "unr", "--p", "3", "--c0", "1", "--format", "tsv"],
        )
        assert rc == 0
        lines = out.strip().split("\n")
        header = lines[0].split("\t")
        assert header == sorted(header)
        assert len(lines) == 2
        assert (outdir / "multiplicity.tsv").exists()

    def test_config_file_supplies_defaults(self, outdir, capsys, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text(
            "# desk sweep\ncase = ram\np = 3\nc0 = 1\nformat = tsv\n", encoding="utf-8"
        )
        rc, out = _run(capsys, ["multiplicity", "--config", str(cfg)])
        assert rc == 0
        assert "\t" in out
        assert "ram" in out

    def test_cli_flags_beat_config_file(self, outdir, capsys, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text("case = ram\np = 3\nc0 = 1\n", encoding="utf-8")
        rc, report = _run_json(
            capsys, ["multiplicity", "--config", str(cfg), "--case", "unr"]
        )
        assert rc == 0
        assert {row["case"] for row in report["rows"]} == {"unr"}

    def test_missing_config_file_is_usage_error(self, outdir, capsys):
        rc = main(["multiplicity", "--config", "/nonexistent/x.cfg"])
        assert rc == 2


class TestArgumentErrors:
    def test_unknown_command_exits_two(self, outdir, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_int_list_is_usage_error(self, outdir, capsys):
        rc = main(["multiplicity", "--p", "three"])
        assert rc == 2
