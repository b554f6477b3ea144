import json
import subprocess
import sys

import pytest

from lamkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tau_outputs(capsys):
    assert run(capsys, "tau", "3", "1/4")[:2] == (0, "1/4 (fixed)\n")
    assert run(capsys, "tau", "3", "1/6")[:2] == (0, "1/2\n")
    assert run(capsys, "tau", "3", "--fixed")[:2] == (0, "0, 1/4, 1/2\n")


def test_tau_bad_input(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tau", "3", "one/4"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "tau", "3", "3/4")
    assert code == 2 and "refused" in err


def test_portraits(capsys):
    code, out, _ = run(capsys, "portraits", "3", "--census")
    assert (code, out) == (0, "total 5, classes 3, with-strip 2\n")
    code, out, _ = run(capsys, "portraits", "2", "1/3-2/3")
    assert code == 0 and out.strip().endswith("2 collections")
    code, out, err = run(capsys, "portraits", "2", "0-1/2")
    assert code == 2 and out == "" and "diameter" in err


def test_portraits_json_and_svgs(capsys, tmp_path):
    code, out, _ = run(capsys, "portraits", "2", "1/3-2/3", "--format", "json", "--deterministic",
                       "--svg-dir", str(tmp_path))
    doc = json.loads(out)
    assert code == 0 and doc["result"]["count"] == 2
    assert "generated_at" not in doc
    assert len(list(tmp_path.glob("*.svg"))) == 2


def test_census(capsys):
    code, out, _ = run(capsys, "census", "5")
    assert code == 0 and out.count("ok") == 4


def test_strip_verify(capsys):
    code, out, _ = run(capsys, "strip-verify", "2", "--denominator-max", "200")
    assert code == 0
    assert "0 counterexamples" in out and "(COMPLETE)" in out
    code, out, _ = run(capsys, "strip-verify", "2", "--image", "1/5-2/5")
    assert code == 0


def test_irp_commands(capsys):
    assert run(capsys, "irp", "search", "3", "4", "5")[:2] == (0, "0 orbits found (complete)\n")
    code, out, _ = run(capsys, "irp", "search", "3", "3", "3", "--exact", "--analyze")
    assert code == 0 and out.strip().endswith("12 orbits found (complete)")
    code, out, _ = run(capsys, "irp", "search", "3", "4", "5", "--max-nodes", "50")
    assert code == 3 and "INCOMPLETE" in out
    code, out, _ = run(capsys, "irp", "examples", "4")
    assert code == 0 and out.count("identity return") == 3
    code, out, _ = run(capsys, "irp", "verify", "3", "2", "1/8", "1/4", "7/8")
    assert code == 1 and "order-reversed" in out
    code, out, _ = run(capsys, "irp", "verify", "3", "2", "1/8", "1/4", "7/8", "--no-order")
    assert code == 0


def test_render_commands(capsys, tmp_path):
    for argv in (["render", "tau", "3"], ["render", "portrait", "3"], ["render", "tree", "4", "--index", "3"],
                 ["render", "orbit", "3", "--period", "3"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and out.startswith("<?xml")
    target = tmp_path / "orbit.svg"
    assert run(capsys, "render", "orbit", "3", "--period", "3", "--out", str(target))[0] == 0
    assert target.read_text().startswith("<?xml")
    assert run(capsys, "render", "orbit", "3")[0] == 2


def test_json_timestamp_only_without_deterministic(capsys):
    _, out, _ = run(capsys, "tau", "3", "1/4", "--format", "json")
    assert "generated_at" in json.loads(out)
    _, a, _ = run(capsys, "irp", "examples", "3", "--format", "json", "--deterministic")
    _, b, _ = run(capsys, "irp", "examples", "3", "--format", "json", "--deterministic")
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lamkit", "tau", "2", "--fixed"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "0, 1/3\n"
