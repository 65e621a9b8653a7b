import csv
import io
import json
import subprocess
import sys

import pytest

from kummer_tower.cli_scan import SCHEMA_VERSION, UnitCache, main
from kummer_tower.quad_field import QuadElement, dyadic_generator, fundamental_unit


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k not in ("timings", "elapsed_s")}
    if isinstance(obj, list):
        return [_strip_timings(x) for x in obj]
    return obj


def test_verify_json_is_reproducible():
    c1, a = run(["verify", "--prime", "7", "--format", "json"])
    c2, b = run(["verify", "--prime", "7", "--format", "json"])
    assert c1 == c2 == 0
    ra, rb = json.loads(a), json.loads(b)
    assert _strip_timings(ra) == _strip_timings(rb)
    assert ra["schema_version"] == SCHEMA_VERSION and ra["status"] == "ok"
    assert ra["assumed"] == ["kida[lambda=1]"]
    # big integers travel as strings
    assert all(isinstance(x, str) for x in ra["units"]["eps"])


@pytest.mark.parametrize("argv,code", [
    (["verify", "--prime", "4"], 64),
    (["verify", "--prime", "x"], 64),
    (["verify", "--prime", "1000003"], 64),
    (["scan", "--range", "10"], 64),
    (["scan", "--range", "1..10", "--jobs", "0"], 64),
    ([], 64),
    (["bogus"], 64),
    (["verify", "--prime", "31"], 3),
    (["verify", "--prime", "17"], 3),
    (["verify", "--prime", "3"], 0),
    (["verify", "--prime", "7", "--ell", "3"], 0),
    (["verify", "--prime", "19", "--ell", "3"], 3),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv)[0] == code


def test_scan_formats():
    code, text = run(["scan", "--range", "2..30", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["p"] for r in rows] == ["2", "3", "5", "7", "11", "13", "17", "19", "23", "29"]
    code, text = run(["scan", "--range", "2..30", "--format", "json"])
    agg = json.loads(text)
    assert agg["mismatches"] == [] and agg["primes"] == "10"
    code, text = run(["scan", "--range", "2..30", "--ell", "3", "--format", "text"])
    assert code == 0 and "2,5 mod 9" in text


def test_scan_empty_range():
    code, text = run(["scan", "--range", "24..28", "--format", "json"])
    assert code == 0 and json.loads(text)["primes"] == "0"


def test_cache_round_trip_and_revalidation(tmp_path):
    path = tmp_path / "units.jsonl"
    c, _ = run(["verify", "--prime", "23", "--cache", str(path)])
    assert c == 0
    cache = UnitCache(str(path))
    assert cache.rejected == 0 and cache.get(23)["eps"] == fundamental_unit(23)
    assert "eta" in cache.get(23)
    # a second run with the cache produces the same verdicts
    c, _ = run(["verify", "--prime", "23", "--cache", str(path)])
    assert c == 0
    lines = path.read_text().splitlines()
    # tampered record: checksum mismatch
    rec = json.loads(lines[0])
    rec["eps"][0] = str(int(rec["eps"][0]) + 2)
    # forged record with a valid checksum but a wrong pi
    cache2 = UnitCache(None)
    forged_path = tmp_path / "forged.jsonl"
    cache2.path = str(forged_path)
    cache2.put(7, fundamental_unit(7), QuadElement.of(5, 1, 7))
    cache2.put(31, fundamental_unit(31), dyadic_generator(31))
    path.write_text("\n".join([json.dumps(rec), lines[0], '{"p": "5", "eps": ['])
                    + "\n" + forged_path.read_text())
    reloaded = UnitCache(str(path))
    assert reloaded.rejected == 3
    assert sorted(reloaded.entries) == [23, 31]


def test_selftest_passes():
    code, text = run(["selftest"])
    assert code == 0
    assert text.strip().endswith("12/12 fixtures passed")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "kummer_tower.cli_scan", "verify", "--prime", "5",
                        "--format", "json"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["case"] == "5 mod 8"
