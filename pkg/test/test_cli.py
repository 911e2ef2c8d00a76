import io
import json

import pandas as pd
import pytest

from src.config.settings import EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE
from src.pipeline.cli import build_parser, main

WBF7_PAIR = ["--m", "7", "--h", "2", "--w", "(6,0110111)"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_help_exits_cleanly(capsys):
    code, out, _ = run_cli(capsys, "--help")
    assert code == EXIT_OK
    assert "multipath" in out


def test_missing_required_argument(capsys):
    code, _, _ = run_cli(capsys, "build")
    assert code == EXIT_USAGE


def test_parser_defaults():
    args = build_parser().parse_args(["sweep", "--delta", "4"])
    assert args.trials == 10_000
    assert args.out is None


def test_build_dot(capsys):
    code, out, _ = run_cli(capsys, "build", "--m", "3", "--format", "dot")
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert sum("[level=" in line for line in out.splitlines()) == 24


def test_build_edges(capsys):
    code, out, _ = run_cli(capsys, "build", "--m", "2")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 16
    assert lines[0] == "(0,00) (1,00) down"


def test_build_summary(capsys):
    code, out, _ = run_cli(capsys, "build", "--m", "3", "--format", "json")
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["nodes"] == 24
    assert summary["degree_set"] == [4]


def test_build_rejects_small_dimension(capsys):
    code, out, err = run_cli(capsys, "build", "--m", "1")
    assert code == EXIT_USAGE
    assert out == ""
    assert "m debe ser >= 2" in err


def test_route(capsys):
    code, out, _ = run_cli(capsys, "route", "--m", "3", "--w", "(0,111)")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["route"]["length"] == 3
    assert document["route"]["hops"][-1] == "(0,111)"


def test_multipath_four_routes(capsys):
    code, out, _ = run_cli(capsys, "multipath", *WBF7_PAIR)
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["unrolled_level"] == 6
    assert document["shortcuts"] == []
    assert len(document["routes"]) == 4
    assert all(route["length"] == 13 for route in document["routes"])
    assert document["independence"]["passed"]
    assert document["independence"]["pairs_checked"] == 6


def test_multipath_dot(capsys):
    code, out, _ = run_cli(capsys, "multipath", *WBF7_PAIR, "--format", "dot")
    assert code == EXIT_OK
    assert '"route_10"' in out


def test_multipath_single_bit(capsys):
    code, out, _ = run_cli(capsys, "multipath", "--m", "6", "--h", "1", "--w", "(3,000111)")
    assert code == EXIT_OK
    assert len(json.loads(out)["routes"]) == 2


def test_multipath_close_pair(capsys):
    code, out, err = run_cli(capsys, "multipath", "--m", "6", "--h", "1", "--w", "(1,000001)")
    assert code == EXIT_PRECONDITION
    assert out == ""
    assert "Precondición" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["multipath", "--m", "7", "--h", "4", "--w", "(6,0110111)"],
        ["multipath", "--m", "7", "--h", "2", "--w", "(6,01)"],
        ["multipath", "--m", "7", "--h", "2", "--w", "6,0110111"],
        ["route", "--m", "3", "--w", "(3,000)"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run_cli(capsys, *argv)
    assert code == EXIT_USAGE


def test_redundancy_on_edge_list(capsys, edge_file):
    path = edge_file("v a\na b\nb w\n")
    code, out, _ = run_cli(capsys, "redundancy", "--graph", str(path), "--v", "v", "--w", "w", "--h", "1")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["delta"] == 1
    assert len(record["cut"]) == 1
    assert record["witness_paths"] == [["v", "a", "b", "w"]]


def test_redundancy_csv(capsys, edge_file):
    path = edge_file("v a\na w\nw b\nb v\n")
    code, out, _ = run_cli(
        capsys, "redundancy", "--graph", str(path), "--v", "v", "--w", "w", "--h", "1", "--format", "csv"
    )
    assert code == EXIT_OK
    frame = pd.read_csv(io.StringIO(out))
    assert frame.loc[0, "delta"] == 2
    assert frame.loc[0, "cut"] == "a b"


def test_redundancy_disconnected(capsys, edge_file):
    path = edge_file("v a\nb w\n")
    code, out, err = run_cli(capsys, "redundancy", "--graph", str(path), "--v", "v", "--w", "w", "--h", "1")
    assert code == EXIT_OK
    assert json.loads(out)["delta"] == 0


def test_redundancy_on_butterfly(capsys):
    code, out, _ = run_cli(capsys, "redundancy", "--butterfly", "7", "--h", "2", "--w", "(6,0110111)")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["v"] == "(0,0000000)"
    assert record["lower_bound"] == 4
    assert record["bound_check"] is True
    assert record["delta"] >= 4



def test_redundancy_rejects_radius_beyond_half_dimension(capsys):
    code, out, err = run_cli(capsys, "redundancy", "--butterfly", "4", "--h", "3", "--w", "(2,1111)")
    assert code == EXIT_USAGE
    assert out == ""
    assert "h=3" in err

def test_redundancy_all_pairs(capsys, edge_file):
    path = edge_file("".join(f"{i} {(i + 1) % 8}\n" for i in range(8)))
    code, out, _ = run_cli(capsys, "redundancy", "--graph", str(path), "--h", "1", "--all-pairs", "--workers", "2")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["delta"] == 2
    assert document["pairs_evaluated"] == 28
    assert document["exact"] is True
    assert document["upper_bound_only"] is False


def test_redundancy_flagged_pair(capsys, edge_file):
    path = edge_file("v a\na w\n")
    code, out, _ = run_cli(capsys, "redundancy", "--graph", str(path), "--v", "v", "--w", "w", "--h", "2")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["delta"] is None
    assert record["flags"]["mutually_trusted"] is True


def test_redundancy_bad_files(capsys, edge_file, tmp_path):
    bad = edge_file("v a b\n", "bad.txt")
    code, _, err = run_cli(capsys, "redundancy", "--graph", str(bad), "--v", "v", "--w", "a", "--h", "1")
    assert code == EXIT_USAGE
    assert "línea 1" in err
    missing = tmp_path / "missing.txt"
    code, _, _ = run_cli(capsys, "redundancy", "--graph", str(missing), "--v", "v", "--w", "a", "--h", "1")
    assert code == EXIT_USAGE


def test_redundancy_needs_endpoints(capsys, edge_file):
    path = edge_file("v a\n")
    code, _, _ = run_cli(capsys, "redundancy", "--graph", str(path), "--h", "1")
    assert code == EXIT_USAGE


def test_sweep(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--delta", "4", "--trials", "1000", "--workers", "1")
    assert code == EXIT_OK
    frame = pd.read_csv(io.StringIO(out))
    assert len(frame) == 20
    row = frame[(frame.k == 2) & (frame.c == 3)].iloc[0]
    assert row.exact == pytest.approx(0.5)


def test_sweep_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "sweep", "--delta", "4", "--trials", "500", "--seed", "5", "--workers", "1")
    _, again, _ = run_cli(capsys, "sweep", "--delta", "4", "--trials", "500", "--seed", "5", "--workers", "3")
    assert first == again


def test_sweep_to_file(capsys, tmp_path):
    target = tmp_path / "out" / "sweep.csv"
    code, out, _ = run_cli(capsys, "sweep", "--delta", "3", "--trials", "10", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert len(pd.read_csv(target)) == 12


def test_sweep_rejects_zero_trials(capsys):
    code, _, _ = run_cli(capsys, "sweep", "--delta", "4", "--trials", "0")
    assert code == EXIT_USAGE


def test_simulate(capsys):
    code, out, _ = run_cli(
        capsys, "simulate", "--m", "6", "--h", "2", "--w", "(3,001111)",
        "--k", "2", "--c", "0", "--trials", "200",
    )
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["undetected_failure"] == 0
    assert report["accepted_clean"] == 200
    assert report["source"] == "network"


def test_simulate_rejects_too_many_copies(capsys):
    code, _, _ = run_cli(
        capsys, "simulate", "--m", "6", "--h", "2", "--w", "(3,001111)",
        "--k", "5", "--c", "1", "--trials", "10",
    )
    assert code == EXIT_USAGE


def test_verify_small_grid(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--m-values", "4", "5", "--samples", "5",
        "--redundancy-m-values", "5", "--redundancy-samples", "3", "--oracle-max-delta", "5",
    )
    assert code == EXIT_OK
    results = json.loads(out)
    assert results["validation_summary"]["status"] == "success"
    assert results["validation_summary"]["total_checks"] == 4


def test_log_file(capsys, tmp_path):
    log_path = tmp_path / "logs" / "wbf.log"
    code, _, _ = run_cli(capsys, "--log-file", str(log_path), "build", "--m", "2")
    assert code == EXIT_OK
    assert "WBF(2)" in log_path.read_text(encoding="utf-8")
