import json

import pytest
from click.testing import CliRunner

from rindex.cli import cli
from rindex.ingest import write_dataset

PAPER_HEADER = "paper_id,publication_date,authors,reviews_received\n"
REVIEW_HEADER = "event_id,reviewer_id,event_date,kind,excluded,paper_id\n"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def section3_files(tmp_path, section3_dataset):
    return write_dataset(section3_dataset, tmp_path)


def test_compute_section3(runner, section3_files):
    res = runner.invoke(cli, ["compute", *section3_files, "--as-of", "2024-01-01", "--lag-months", "0", "--format", "json"])
    assert res.exit_code == 0, res.stderr
    items = json.loads(res.stdout)
    assert {(i["r_index"]["num"], i["r_index"]["den"], i["r_index_decimal"]) for i in items} == {(1, 2, "0.5000")}

    table = runner.invoke(cli, ["compute", *section3_files, "--as-of", "2024-01-01", "--lag-months", "0"])
    rows = table.stdout.splitlines()[2:]
    assert len(rows) == 4 and all(r.split()[-2:] == ["0.5000", "1/2"] for r in rows)


def test_compute_default_lag_defers_paper(runner, section3_files):
    # published 2021-06-01; only 19 months elapsed by 2023-01-01
    res = runner.invoke(cli, ["compute", *section3_files, "--as-of", "2023-01-01", "--format", "json"])
    items = json.loads(res.stdout)
    assert all(i["r_index"] == {"num": 2, "den": 1} and i["lagged_out_papers"] == ["p1"] for i in items)


def test_compute_researcher_filter_and_csv(runner, section3_files):
    res = runner.invoke(cli, ["compute", *section3_files, "--as-of", "2024-01-01", "--lag-months", "0",
                              "--format", "csv", "--researcher", "a3"])
    lines = res.stdout.splitlines()
    assert len(lines) == 2 and lines[1].startswith("a3,3/2,1.5000,2,1/2,0.5000")


def test_compute_missing_as_of_is_usage_error(runner, section3_files):
    res = runner.invoke(cli, ["compute", *section3_files])
    assert res.exit_code == 2
    assert "Usage" in res.stderr and res.stdout == ""


@pytest.mark.parametrize("flag", [["--lag-months", "-1"], ["--editorial-mode", "weekly"], ["--as-of", "2024-13-01"]])
def test_compute_bad_flags(runner, section3_files, flag):
    args = ["compute", *section3_files, "--as-of", "2024-01-01", *flag]
    if flag[0] == "--as-of":
        args = ["compute", *section3_files, *flag]
    assert runner.invoke(cli, args).exit_code == 2


def test_compute_unreadable_file(runner, tmp_path):
    missing = str(tmp_path / "missing_papers.csv")
    res = runner.invoke(cli, ["compute", missing, missing, "--as-of", "2024-01-01"])
    assert res.exit_code == 1
    assert missing in res.stderr and res.stdout == ""


def test_compute_editorial_mode_paper_without_link(runner, tmp_path):
    p = tmp_path / "papers.csv"
    p.write_text(PAPER_HEADER)
    r = tmp_path / "reviews.csv"
    r.write_text(REVIEW_HEADER + "e1,ed,2021-01-01,editorial_round,false,\n")
    ok = runner.invoke(cli, ["compute", str(p), str(r), "--as-of", "2024-01-01", "--format", "csv"])
    assert ok.exit_code == 0 and ok.stdout.splitlines()[1].startswith("ed,0,0.0000,1,1,")
    bad = runner.invoke(cli, ["compute", str(p), str(r), "--as-of", "2024-01-01", "--editorial-mode", "paper"])
    assert bad.exit_code == 1 and "paper linkage" in bad.stderr


def test_validate_ok(runner, section3_files):
    res = runner.invoke(cli, ["validate", *section3_files])
    assert res.exit_code == 0
    assert res.stdout.strip() == "0 error(s), 0 warning(s)"


def test_validate_three_errors(runner, tmp_path):
    p = tmp_path / "papers.csv"
    p.write_text(PAPER_HEADER + "p1,2021-13-01,a,1\np2,2021-01-01,,1\np3,2021-01-01,a,-4\n")
    r = tmp_path / "reviews.csv"
    r.write_text(REVIEW_HEADER)
    res = runner.invoke(cli, ["validate", str(p), str(r)])
    assert res.exit_code == 1
    assert len([ln for ln in res.stderr.splitlines() if ln.startswith("error:")]) == 3
    assert "error:" not in res.stdout


def test_validate_warning_only(runner, tmp_path):
    p = tmp_path / "papers.csv"
    p.write_text(PAPER_HEADER + "p1,2021-01-01,a,6\n")
    r = tmp_path / "reviews.csv"
    r.write_text(REVIEW_HEADER + "".join(f"e{i},b,2021-02-01,manuscript_review,false,p1\n" for i in range(4)))
    res = runner.invoke(cli, ["validate", str(p), str(r)])
    assert res.exit_code == 0
    assert len([ln for ln in res.stderr.splitlines() if ln.startswith("warning:")]) == 1
    assert res.stdout.strip() == "0 error(s), 1 warning(s)"


def test_json_input_format(runner, tmp_path, section3_dataset):
    files = write_dataset(section3_dataset, tmp_path, "json")
    res = runner.invoke(cli, ["compute", *files, "--as-of", "2024-01-01", "--lag-months", "0", "--format", "csv"])
    assert res.exit_code == 0 and res.stdout.count("1/2") == 4


def test_simulate_is_byte_identical(runner, tmp_path):
    outs = []
    for name in ("a", "b"):
        res = runner.invoke(cli, ["simulate", "--seed", "42", "--researchers", "20", "--out", str(tmp_path / name)])
        assert res.exit_code == 0, res.stderr
        outs.append({f: (tmp_path / name / f).read_bytes() for f in ("papers.csv", "reviews.csv", "manifest.json")})
    assert outs[0] == outs[1]
    manifest = json.loads(outs[0]["manifest.json"])
    assert (manifest["review_count_mean"], manifest["review_count_sd"]) == (3.49, 1.45)
    assert manifest["seed"] == 42


def test_simulate_infeasible(runner, tmp_path):
    res = runner.invoke(cli, ["simulate", "--seed", "1", "--researchers", "2", "--out", str(tmp_path)])
    assert res.exit_code == 1 and "infeasible" in res.stderr


def test_simulate_requires_seed(runner, tmp_path):
    assert runner.invoke(cli, ["simulate", "--out", str(tmp_path)]).exit_code == 2
    assert runner.invoke(cli, ["simulate", "--seed", str(2**64), "--out", str(tmp_path)]).exit_code == 2


def test_check_conservation(runner, tmp_path):
    out = tmp_path / "sim"
    runner.invoke(cli, ["simulate", "--seed", "42", "--out", str(out)])
    papers, reviews = out / "papers.csv", out / "reviews.csv"
    res = runner.invoke(cli, ["check-conservation", str(papers), str(reviews)])
    assert res.exit_code == 0 and res.stdout == "0\n"

    # drop the first review event: its paper keeps its declared responsibility
    lines = reviews.read_text().splitlines(keepends=True)
    reviews.write_text(lines[0] + "".join(lines[2:]))
    res = runner.invoke(cli, ["check-conservation", str(papers), str(reviews)])
    assert res.exit_code == 1
    assert res.stdout == "-1\n"  # brute-force oracle on this fixture gives -1
    assert "not closed" in res.stderr


def test_check_conservation_empty(runner, tmp_path):
    p = tmp_path / "papers.csv"
    p.write_text(PAPER_HEADER)
    r = tmp_path / "reviews.csv"
    r.write_text(REVIEW_HEADER)
    res = runner.invoke(cli, ["check-conservation", str(p), str(r)])
    assert res.exit_code == 0 and res.stdout == "0\n"


def test_stdout_is_deterministic(runner, section3_files):
    args = ["compute", *section3_files, "--as-of", "2024-01-01", "--lag-months", "0"]
    assert runner.invoke(cli, args).stdout == runner.invoke(cli, args).stdout
