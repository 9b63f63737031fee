"""Command-line interface: schemas, exit codes, artifacts, determinism."""

from __future__ import annotations

import json
import math
import shutil
import subprocess
import sys
import xml.dom.minidom

import cambrian as c
from cambrian.cli import main
from cambrian.core import parse_signature
from cambrian.forest import IndexPair

FIG = ["--black", "0,1,2,4,5,7,8", "--white", "3,6,9"]
FIG_SIG = "--signature=-++-+--+"


def run(argv, tmp_path, name="out"):
    path = tmp_path / name
    rc = main([*argv, "--output", str(path)])
    return rc, path.read_text() if path.exists() else None


def test_enumerate_schema(tmp_path):
    rc, text = run(["enumerate", "--signature=---", "--full"], tmp_path)
    assert rc == 0
    payload = json.loads(text)
    assert payload["signature"] == "---"
    assert payload["black"] == [0, 1, 2, 3] and payload["white"] == [1, 2, 3, 4]
    assert payload["count"] == 5 and len(payload["trees"]) == 5

    # space-separated spelling of a dash-only signature must survive argparse
    rc, text = run(["enumerate", "--signature", "---", "--full"], tmp_path, "sp")
    assert rc == 0 and json.loads(text) == payload

    rc, text = run(["enumerate", "--signature=-", "--black", "0", "--white", "1"],
                   tmp_path)
    assert rc == 0
    assert json.loads(text)["trees"] == [[[0, 1]]]

    rc, text = run(["enumerate", FIG_SIG, *FIG], tmp_path)
    assert rc == 0
    payload = json.loads(text)
    got = [tuple(tuple(e) for e in t) for t in payload["trees"]]
    sig = parse_signature("-++-+--+")
    ij = IndexPair((0, 1, 2, 4, 5, 7, 8), (3, 6, 9))
    assert got == list(c.enumerate_trees(sig, ij)) and payload["count"] == 12


def test_usage_errors_exit_2(tmp_path):
    assert main(["enumerate", "--signature=--"]) == 2  # no index selection
    assert main(["enumerate", "--signature=-x-", "--full"]) == 2
    assert main(["enumerate", "--signature=--", "--black", "0,a",
                 "--white", "1"]) == 2
    # min(black) must be below min(white)
    assert main(["enumerate", "--signature=--", "--black", "2",
                 "--white", "1"]) == 2
    assert main(["export", "--signature=--", "--full", "--format",
                 "svg-tropical"]) == 0  # three whites: fine
    assert main(["export", "--signature=-", "--full", "--format",
                 "svg-mixed"]) == 2  # two whites
    assert main(["export", "--signature=-+-", "--full", "--format",
                 "svg-tropical"]) == 2  # four whites


def test_enumeration_guard_exit_3(tmp_path):
    rc = main(["enumerate", "--signature=" + "-" * 13, "--full"])
    assert rc == 3


def test_verify_lattice(tmp_path):
    rc, text = run(["verify", "lattice", "--signature=-++-", "--full"], tmp_path)
    assert rc == 0
    payload = json.loads(text)
    assert payload["ok"] is True and payload["size"] == 14
    assert payload["violation"] is None


def test_verify_interval(tmp_path):
    rc, text = run(
        ["verify", "interval", "--signature=-+-", "--black", "0,2",
         "--white", "1,3"],
        tmp_path,
    )
    assert rc == 0
    payload = json.loads(text)
    assert payload["ok"] is True
    assert payload["lattice_size"] == 5
    assert set(payload["interval"]) == {"bottom", "top"}


def test_verify_triangulation(tmp_path):
    rc, text = run(["verify", "triangulation", "--signature=-++-", "--full"],
                   tmp_path)
    assert rc == 0
    payload = json.loads(text)
    assert payload["ok"] and payload["simplices"] == payload["expected"] == 14
    assert payload["improper_pairs"] == 0 and payload["dual_equals_flips"]


def test_verify_regularity(tmp_path):
    for lift in ("sqrt", "rational"):
        rc, text = run(
            ["verify", "regularity", "--signature=-++-+--+", "--full",
             "--lift", lift],
            tmp_path,
        )
        assert rc == 0
        payload = json.loads(text)
        assert payload["ok"] is True and payload["folds"] == []


def test_verify_tropical(tmp_path):
    rc, text = run(["verify", "tropical", FIG_SIG, *FIG], tmp_path)
    assert rc == 0
    payload = json.loads(text)
    assert payload["ok"] is True
    assert payload["trees"] == 12 and payload["flips"] == 16
    assert payload["checks"]["vertices_are_trees"]
    assert payload["checks"]["walls_match"]
    assert payload["checks"]["anti_isomorphic"]
    assert payload["checks"]["functional_increasing"] is False
    assert payload["checks"]["functional_monotone"] is True
    assert payload["checks"]["tie_arcs"] == [0, 10, 14]
    assert payload["checks"]["geometry_ok"] is True
    assert payload["hyperplanes"] == {
        "0": "full", "1": "full", "2": "full",
        "4": "degenerate", "5": "degenerate",
        "7": "at-infinity", "8": "at-infinity",
    }
    sig = parse_signature("-++-+--+")
    ij = IndexPair((0, 1, 2, 4, 5, 7, 8), (3, 6, 9))
    coords = {
        tuple(tuple(e) for e in p["tree"]): p["coords"]
        for p in payload["points"]
    }
    lo = coords[c.extremal_tree(sig, ij, "min")]
    hi = coords[c.extremal_tree(sig, ij, "max")]
    expect = {
        "lo3": -1.0,
        "lo6": math.sqrt(3) - 1,
        "hi3": math.sqrt(2) - math.sqrt(3),
        "hi6": -math.sqrt(2),
    }
    assert abs(float(lo["3"]) - expect["lo3"]) < 1e-9
    assert abs(float(lo["6"]) - expect["lo6"]) < 1e-9
    assert abs(float(hi["3"]) - expect["hi3"]) < 1e-9
    assert abs(float(hi["6"]) - expect["hi6"]) < 1e-9


def test_probe_conjecture_explicit(tmp_path):
    rc, text = run(
        ["probe-conjecture", "--signature=-+-", "--black", "0,1,2,3",
         "--white", "1,2,3,4"],
        tmp_path,
    )
    assert rc == 0
    payload = json.loads(text)
    assert payload["ok"] is True and payload["mode"] == "explicit"
    assert set(payload["witness"]) == {"bottom", "top"}

    rc, text = run(
        ["probe-conjecture", "--signature=-+-", "--black", "0,2",
         "--white", "1,3"],
        tmp_path,
    )
    assert rc == 0 and json.loads(text)["ok"] is True

    # inner pair not nested in the declared outer pair
    assert main(
        ["probe-conjecture", "--signature=-+-", "--black", "0,2",
         "--white", "1,3", "--black-sup", "0,1", "--white-sup", "2,4"]
    ) == 2


def test_probe_conjecture_random_is_deterministic(tmp_path):
    base = ["probe-conjecture", "--signature=x-ignored", "--random", "--n", "4",
            "--trials", "30", "--seed", "5"]
    base = base[:1] + base[2:]  # --random path never reads --signature
    rc1, text1 = run(base, tmp_path, "a.json")
    rc2, text2 = run(base, tmp_path, "b.json")
    rc3, text3 = run([*base, "--jobs", "2"], tmp_path, "c.json")
    assert rc1 == rc2 == rc3 == 0
    assert text1 == text2 == text3
    payload = json.loads(text1)
    assert payload["trials"] == 30 and payload["ok"] and payload["failures"] == []


def test_export_dot(tmp_path):
    rc, text = run(["export", FIG_SIG, *FIG, "--format", "dot"], tmp_path)
    assert rc == 0
    assert text.startswith("digraph")
    assert text.count("label=") == 12
    assert text.count("->") == 16


def test_export_json_extremal_trees(tmp_path):
    sig = parse_signature("-++-+--+")
    ij = IndexPair((0, 1, 2, 4, 5, 7, 8), (3, 6, 9))
    for which in ("min", "max"):
        rc, text = run(
            ["export", FIG_SIG, *FIG, "--format", "json", "--tree", which],
            tmp_path,
        )
        assert rc == 0
        payload = json.loads(text)
        want = [[i, j] for i, j in c.extremal_tree(sig, ij, which)]
        assert payload["edges"] == want


def test_export_json_roundtrips_through_enumerate(tmp_path):
    rc, via_export = run(["export", "--signature=-++-", "--full",
                          "--format", "json"], tmp_path, "e1.json")
    rc2, via_enumerate = run(["enumerate", "--signature=-++-", "--full"],
                             tmp_path, "e2.json")
    assert rc == rc2 == 0
    assert json.loads(via_export) == json.loads(via_enumerate)


def test_export_svg_lattice(tmp_path):
    rc, text = run(["export", "--signature=-++-", "--full", "--format",
                    "svg-lattice"], tmp_path)
    assert rc == 0
    xml.dom.minidom.parseString(text)
    assert text.count("<circle") == 14


def test_export_svg_mixed(tmp_path):
    rc, text = run(["export", "--signature=--", "--full", "--format",
                    "svg-mixed"], tmp_path)
    assert rc == 0
    xml.dom.minidom.parseString(text)
    assert text.count("<polygon") == 3  # two cells plus the outline


def test_export_svg_tropical(tmp_path):
    rc, text = run(["export", FIG_SIG, *FIG, "--format", "svg-tropical"],
                   tmp_path)
    assert rc == 0
    xml.dom.minidom.parseString(text)
    assert text.count('class="hyperplane"') == 5
    assert text.count('data-kind="full"') == 3
    assert text.count('data-kind="degenerate"') == 2
    assert text.count('class="infinity-note"') >= 1
    assert text.count("<circle") == 12
    assert text.count("<line") == 16
    assert text.count("<polygon") == 5


def test_outputs_are_byte_stable(tmp_path):
    jobs = [
        ["enumerate", FIG_SIG, *FIG],
        ["export", FIG_SIG, *FIG, "--format", "dot"],
        ["export", FIG_SIG, *FIG, "--format", "svg-tropical"],
    ]
    for k, argv in enumerate(jobs):
        _, first = run(argv, tmp_path, f"first{k}")
        _, second = run(argv, tmp_path, f"second{k}")
        assert first == second


def test_module_and_console_entry_points(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cambrian", "enumerate", "--signature=m",
         "--full"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["signature"] == "-" and payload["count"] == 1

    exe = shutil.which("cambrian")
    assert exe is not None, "console script not installed"
    proc = subprocess.run(
        [exe, "enumerate", "--signature=p", "--full"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["signature"] == "+"
