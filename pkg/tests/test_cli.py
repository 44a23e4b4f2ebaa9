"""CLI contract: commands, exit codes, JSON stability, disk cache."""

import json
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "mackeyalg.cli"]


def run(*args, env=None):
    return subprocess.run(CMD + list(args), capture_output=True, text=True)


def test_usage_errors_exit_2():
    assert run("blocks").returncode == 2                     # missing group
    assert run("info", "--group", "nosuch").returncode == 2  # bad spec
    assert run("nope", "--group", "C2").returncode == 2      # bad command


def test_info_c2():
    r = run("info", "--group", "C2", "--p", "2", "--json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["mu_dim"] == 6 and data["mu1_dim"] == 6
    assert data["mu_dim_Q"] == 6


def test_blocks_s3_json_byte_stable():
    r1 = run("blocks", "--group", "S3", "--p", "2", "--json")
    r2 = run("blocks", "--group", "S3", "--p", "2", "--json")
    assert r1.returncode == r2.returncode == 0
    assert r1.stdout == r2.stdout
    data = json.loads(r1.stdout)
    assert sorted(b["dim"] for b in data["blocks"]) == [25, 56]


def test_cartan_c3():
    r = run("cartan", "--group", "C3", "--p", "3", "--json")
    data = json.loads(r.stdout)
    [blk] = data["blocks"]
    assert sorted(map(sorted, blk["cartan"])) in (
        [[1, 2], [1, 3]], [[1, 3], [1, 2]])


def test_decomp_c2():
    r = run("decomp", "--group", "C2", "--p", "2", "--json")
    data = json.loads(r.stdout)
    assert len(data["rows"]) == 2 and len(data["cols"]) == 3


def test_cache_dir(tmp_path):
    cache = str(tmp_path / "cache")
    r1 = run("info", "--group", "C4", "--p", "2", "--json",
             "--cache-dir", cache)
    r2 = run("info", "--group", "C4", "--p", "2", "--json",
             "--cache-dir", cache)
    assert r1.returncode == r2.returncode == 0
    assert r1.stdout == r2.stdout
    assert any((tmp_path / "cache").iterdir())


def test_verify_paper_only():
    r = run("verify-paper", "--only", "dim-mu-c2,symmetric-algebra",
            "--json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert [x["name"] for x in data["results"]] \
        == ["dim-mu-c2", "symmetric-algebra"]
    assert all(x["status"] == "pass" for x in data["results"])


def test_verify_paper_unknown_check():
    assert run("verify-paper", "--only", "bogus").returncode == 2
