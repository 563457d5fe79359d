import json
import re
import subprocess
import sys

import pytest

from topocontext.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def field(out, key):
    m = re.search(rf"^{re.escape(key)}: (.*)$", out, re.M)
    assert m, f"{key!r} missing from output"
    return m.group(1)


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(2.23606797749979) == "2.2360679775"
    assert fmt(1e-20) == "1e-20"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["category", "verify", "--builtin", "fibonacci"], 0),
        (["category", "verify", "--builtin", "su2k:4"], 0),
        (["category", "verify", "--builtin", "nosuch"], 2),
        (["category", "verify", "--tol", "-1"], 2),
        (["category", "frobnicate"], 2),
        (["rep", "build", "-n", "1"], 2),
        (["rep", "check", "--builtin", "ising", "-n", "3", "--total", "1"], 1),
        (["rep", "apply", "-n", "3", "-w", "s1 s7"], 2),
        (["jones", "-n", "2", "-w", "s1 t1"], 2),
        (["contextuality"], 2),
        (["scenario", "check"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_broken_file(capsys, data_dir):
    code, out, _ = run(capsys, "category", "verify", "--file", str(data_dir / "broken.json"))
    assert code == 1
    assert "pentagon: status=FAIL" in out


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "category", "verify", "--file", str(p))
    assert code == 2 and "invalid JSON" in err


def test_rep_build_fibonacci_three(capsys):
    code, out, _ = run(capsys, "rep", "build", "--builtin", "fibonacci", "-n", "3", "--total", "tau")
    assert code == 0
    assert "-0.809016994375 -0.587785252292" in out
    assert "-0.309016994375 0.951056516295" in out
    assert "sigma_2:" in out and "F-move 1:" in out


def test_rep_density(capsys):
    code, out, _ = run(capsys, "rep", "density", "--builtin", "fibonacci", "-n", "4", "--total", "tau")
    assert code == 0 and "closure: 8 of 8" in out


def test_rep_apply_identity(capsys):
    code, out, _ = run(capsys, "rep", "apply", "-w", "")
    assert code == 0
    assert "[ 1 0 | 0 0 ]" in out and "[ 0 0 | 1 0 ]" in out


def test_rep_check_seed(capsys):
    code, out, _ = run(capsys, "rep", "check", "-n", "5", "--seed", "3")
    assert code == 0 and "seed=3" in out and "result: pass" in out


def test_jones_agreement(capsys):
    code, out, _ = run(capsys, "jones", "-n", "2", "-w", "s1 s1 s1")
    assert code == 0
    assert field(out, "value") == field(out, "oracle")
    assert float(field(out, "difference")) < 1e-8


def test_jones_unknot(capsys):
    code, out, _ = run(capsys, "jones", "-n", "1", "-w", "")
    assert code == 0 and field(out, "value") == "1 0"


def test_jones_figure_eight_real(capsys):
    code, out, _ = run(capsys, "jones", "-n", "3", "-w", "s1 s2^-1 s1 s2^-1")
    assert code == 0
    assert abs(float(field(out, "value").split()[1])) < 1e-8


def test_jones_parse_error_column(capsys):
    code, _, err = run(capsys, "jones", "-n", "3", "-w", "s1 s2 q")
    assert code == 2 and "column 7" in err


def test_kcbs(capsys):
    code, out, _ = run(capsys, "contextuality", "--kcbs-fibonacci")
    assert code == 0
    assert field(out, "value").startswith("2.2360679")
    assert field(out, "classical bound") == "2"
    assert "verdict: contextual" in out


def test_prbox(capsys, data_dir):
    code, out, _ = run(capsys, "contextuality", "--file", str(data_dir / "prbox.json"))
    assert code == 0 and "verdict: strongly_contextual" in out


def test_deterministic(capsys, data_dir):
    code, out, _ = run(capsys, "contextuality", "--file", str(data_dir / "deterministic.json"))
    assert code == 0 and "verdict: noncontextual" in out


def test_braid_family(capsys):
    argv = ["contextuality", "-n", "4", "--total", "tau"]
    for w in ["", "s1", "s2", "s1 s2", "s2 s1"]:
        argv += ["-w", w]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "verdict: noncontextual" in out


def _signalling(tmp_path):
    p = tmp_path / "sig.json"
    p.write_text(
        json.dumps(
            {
                "measurements": ["a", "b", "c"],
                "outcomes": {"a": [0, 1], "b": [0, 1], "c": [0, 1]},
                "contexts": [["a", "b"], ["a", "c"]],
                "tables": {"0": {"0,0": 0.5, "1,1": 0.5}, "1": {"0,0": 0.9, "1,1": 0.1}},
            }
        )
    )
    return p


def test_signalling_model(capsys, tmp_path):
    p = _signalling(tmp_path)
    code, out, _ = run(capsys, "contextuality", "--file", str(p))
    assert code == 1 and "contexts 0 and 1 disagree on {a}" in out
    code, out, _ = run(capsys, "scenario", "check", "--file", str(p))
    assert code == 1 and "signalling:" in out


def _numbers(text):
    return sorted(float(x) for x in re.findall(r"(?<![\w.])-?\d+(?:\.\d+)?(?:e[-+]\d+)?(?![\w.])", text))


@pytest.mark.parametrize(
    "argv",
    [
        ["contextuality", "--kcbs-fibonacci"],
        ["jones", "-n", "3", "-w", "s1 s2^-1 s1 s2^-1"],
        ["rep", "build", "-n", "3"],
        ["category", "verify", "--builtin", "ising"],
    ],
)
def test_json_matches_text(capsys, argv):
    _, text, _ = run(capsys, *argv)
    _, js, _ = run(capsys, *argv, "--format", "json")
    obj = json.loads(js)

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                yield from walk(v)
        elif isinstance(x, list):
            for v in x:
                yield from walk(v)
        elif isinstance(x, (int, float)) and not isinstance(x, bool):
            yield float(x)

    json_numbers = sorted(walk(obj))
    assert json_numbers
    text_numbers = _numbers(text)
    for v in json_numbers:
        assert any(v == t for t in text_numbers), v


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "topocontext", "jones", "-n", "2", "-w", "s1 s1 s1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.startswith("category: fibonacci")
