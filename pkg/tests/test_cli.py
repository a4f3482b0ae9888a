import json
import pathlib
import subprocess
import sys

import pytest

from resolvent import abcat as ab
from resolvent import cli
from resolvent import formats as fm
from resolvent import resolutions as rs

DATA = pathlib.Path(__file__).resolve().parent.parent / "demos" / "data"


def run(*argv):
    return cli.run([str(a) for a in argv])


@pytest.mark.parametrize("argv", [
    ["resolve", "--input", DATA / "repa2_random.cplx"],
    ["ce", "--input", DATA / "repa2_random.cplx"],
    ["tot", "--input", DATA / "empty.grid", "--backend", "vect"],
    ["kill", "--input", DATA / "repa2_random.cplx", "--degree", "0"],
    ["ding-yang", "--input", DATA / "stalk0_k.cplx", "--steps", "5"],
    ["tower", "--input", DATA / "repa2_random.cplx", "--levels", "2"],
    ["rel-resolve", "--input", DATA / "repa2_simples.obj", "--class", "torsion"],
    ["check-we", "--input", DATA / "torsion_incl.cplx", "--class", "torsion"],
    ["ab4-check", "--input", DATA / "repa2_simples.obj", "--k", "0"],
    ["icodim", "--input", DATA / "repa2_simples.obj"],
])
def test_subcommands_pass(argv):
    code, text = run(*argv)
    assert code == 0, text
    lines = text.splitlines()
    assert lines[0].startswith("certificate: ")
    assert any(line.startswith("inputs: sha256:") for line in lines)
    assert lines[-1].startswith("result: PASS")


def test_prod_class_from_file():
    code, text = run("rel-resolve", "--input", DATA / "repa2_simples.obj",
                     "--class", f"prod:{DATA / 'prod_I2.obj'}")
    assert code == 0, text


def test_failing_check_exits_one():
    code, text = run("check-fib", "--input", DATA / "torsion_incl.cplx")
    assert code == 1
    assert text.splitlines()[-1].startswith("result: FAIL")


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["resolve"],
    ["resolve", "--input", DATA / "stalk0_k.cplx", "--backend", "repa2"],
    ["resolve", "--input", DATA / "stalk0_k.cplx", "--depth", "0"],
    ["tower", "--input", DATA / "stalk0_k.cplx", "--levels", "-1"],
    ["ab4-check", "--input", DATA / "nilp_k.obj", "--k", "5", "--depth", "3"],
    ["rel-resolve", "--input", DATA / "stalk0_k.cplx", "--class", "torsion"],
    ["resolve", "--input", DATA / "stalk0_k.cplx", "--seed", "-4"],
    ["resolve", "--input", DATA / "does-not-exist.cplx"],
])
def test_usage_errors_exit_two(argv):
    code, text = run(*argv)
    assert code == 2
    assert text.startswith("resolvent: ")


def test_json_mirrors_text():
    argv = ["resolve", "--input", DATA / "repa2_random.cplx", "--seed", "9"]
    _, text = run(*argv)
    code, js = run(*argv, "--format", "json")
    data = json.loads(js)
    assert code == 0 and data["passed"] is True
    assert data["config"]["seed"] == 9
    assert f"inputs: sha256:{data['inputs_sha256']}" in text
    assert len(data["checks"]) == sum(1 for line in text.splitlines() if line.startswith("PASS"))


def test_digest_depends_on_seed_and_input():
    def digest(*argv):
        return json.loads(run(*argv, "--format", "json")[1])["inputs_sha256"]
    base = ["resolve", "--input", DATA / "repa2_random.cplx"]
    assert digest(*base, "--seed", "1") == digest(*base, "--seed", "1")
    assert digest(*base, "--seed", "1") != digest(*base, "--seed", "2")
    assert digest(*base, "--seed", "1") != digest("resolve", "--input", DATA / "stalk0_k.cplx",
                                                  "--seed", "1")


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("RESOLVENT_SEED", "17")
    _, js = run("resolve", "--input", DATA / "repa2_random.cplx", "--format", "json")
    assert json.loads(js)["config"]["seed"] == 17


def test_witnesses_are_embedded():
    _, plain = run("kill", "--input", DATA / "repa2_random.cplx")
    _, wit = run("kill", "--input", DATA / "repa2_random.cplx", "--witnesses")
    assert len(wit) > len(plain) and "witness K:" in wit
    _, js = run("kill", "--input", DATA / "repa2_random.cplx", "--witnesses", "--format", "json")
    k = fm.parse_text(json.loads(js)["witnesses"]["K"], ab.repa2()).complexes["K"]
    _, x = next(iter(fm.load(DATA / "repa2_random.cplx").complexes.items()))
    assert k == rs.kill_coboundaries(x, x.lo)[0]


def test_selftest_is_deterministic_across_jobs():
    c1, t1 = run("selftest", "--seed", "5", "--count", "1")
    c2, t2 = run("selftest", "--seed", "5", "--count", "1", "--jobs", "2")
    assert c1 == c2 == 0
    assert t1 == t2


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "resolvent.cli", "resolve", "--input",
                           str(DATA / "stalk0_k.cplx")], capture_output=True, text=True)
    assert proc.returncode == 0 and "result: PASS" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "resolvent.cli", "resolve"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == "" and "UsageError" in proc.stderr
