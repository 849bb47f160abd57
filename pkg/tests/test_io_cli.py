import subprocess
import sys

import pytest

from bracelab.cli import build_parser, run
from bracelab.core import trivial_brace
from bracelab.errors import AxiomError, StructureError
from bracelab.io import dumps, load, loads, save
from bracelab.parametric import d12_quotient, d13_brace

from conftest import LOOP5

SUBCOMMANDS = [
    "verify", "series", "zl", "center", "classify-nilpotency", "gen", "ideals", "quotient",
    "identities", "epi", "classify", "a2check", "ybe", "make", "make d12", "make d13", "make trivial",
]


def test_round_trip(tmp_path):
    B = d13_brace(3)
    path = tmp_path / "d13.brace"
    save(B, path, ("d13", 3))
    C = load(path)
    assert (C.add == B.add).all() and (C.mul == B.mul).all()
    assert C.labels == B.labels
    assert dumps(C, ("d13", 3)) == path.read_text()


def test_comments_and_blank_lines_are_ignored():
    text = "# hello\n\n" + dumps(trivial_brace(3)) + "\n# trailing comment\n"
    assert loads(text).order == 3


@pytest.mark.parametrize(
    "text",
    [
        "brace v2\norder 1\naddition\n0\nmultiplication\n0\n",
        "brace v1\norder x\n",
        "brace v1\norder 2\naddition\n0 1\n1 0\nmultiplication\n0 1\n",
        "brace v1\norder 2\naddition\n0 1\n1 0 0\nmultiplication\n0 1\n1 0\n",
        "brace v1\norder 2\naddition\n0 1\n1 a\nmultiplication\n0 1\n1 0\n",
        "brace v1\norder 2\naddition\n0 1\n1 0\nmultiplication\n0 1\n1 0\nextra\n",
        "brace v1\norder 2\naddition\n0 1\n1 2\nmultiplication\n0 1\n1 0\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises(StructureError):
        loads(text)


def _write_loop(path):
    rows = "\n".join(" ".join(str((i + j) % 5) for j in range(5)) for i in range(5))
    mul = "\n".join(" ".join(map(str, r)) for r in LOOP5)
    path.write_text(f"brace v1\norder 5\naddition\n{rows}\nmultiplication\n{mul}\n")


def test_broken_brace_exit_codes(tmp_path):
    path = tmp_path / "loop.brace"
    _write_loop(path)
    with pytest.raises(AxiomError):
        load(path)
    status, out, err = run(["verify", str(path)])
    assert status == 1
    assert "LB2" in out + err
    status, _, _ = run(["zl", str(path)])
    assert status == 1
    status, out, _ = run(["ybe", str(path), "--unchecked"])
    assert status == 1 and "braid relation [exhaustive, 125 triples]: NO at (0, 0, 2)" in out


def test_malformed_file_exit_2(tmp_path):
    path = tmp_path / "bad.brace"
    path.write_text("brace v1\norder 2\n")
    assert run(["verify", str(path)])[0] == 2
    assert run(["verify", str(tmp_path / "missing.brace")])[0] == 2


def test_make_verify_zl(tmp_path):
    path = tmp_path / "d13.brace"
    status, _, _ = run(["make", "d13", "--n", "3", "-o", str(path)])
    assert status == 0
    status, out, _ = run(["verify", str(path)])
    assert status == 0
    status, out, _ = run(["zl", str(path)])
    assert status == 0 and out.strip().splitlines()[-1] == "3"


def test_make_even_d13_verify_fails(tmp_path):
    path = tmp_path / "d13n2.brace"
    assert run(["make", "d13", "--n", "2", "-o", str(path)])[0] == 0
    status, out, err = run(["verify", str(path)])
    assert status == 1 and "LB2" in out + err


def test_order_cap(tmp_path):
    status, _, err = run(["make", "d13", "--n", "7", "-o", str(tmp_path / "x"), "--order-cap", "1000"])
    assert status == 2 and "exceed" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["series"], ["center"], ["classify-nilpotency"], ["gen", "--elements", "1"], ["ideals"],
        ["identities", "--suite", "universal", "--max-exponent", "3"], ["epi"], ["classify"],
        ["a2check"], ["ybe"],
    ],
)
def test_commands_run_on_d12(tmp_path, argv):
    path = tmp_path / "d12.brace"
    save(d12_quotient(3), path, ("d12", 3))
    status, out, err = run([argv[0], str(path), *argv[1:]])
    assert status == 0, out + err
    assert out.startswith(f"# bracelab {argv[0]} ")


def test_quotient_command(tmp_path):
    path = tmp_path / "d13.brace"
    save(d13_brace(2), path, ("d13", 2))
    out_path = tmp_path / "q.brace"
    # (0,0,0,1) and (0,0,1,0) span the star-center
    status, out, err = run(["quotient", str(path), "--unchecked", "--ideal-elements", "1,2", "-o", str(out_path)])
    assert status == 0, err
    assert load(out_path).order == 4


def test_epi_gate_unmet_exit_0(tmp_path):
    path = tmp_path / "t.brace"
    save(trivial_brace(4), path)
    status, out, _ = run(["epi", str(path)])
    assert status == 0 and "hypotheses unmet" in out


@pytest.mark.parametrize("name", SUBCOMMANDS)
def test_help(name, capsys):
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(name.split() + ["--help"])
    assert info.value.code == 0
    assert "usage:" in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    path = tmp_path / "t.brace"
    save(trivial_brace(2), path)
    proc = subprocess.run([sys.executable, "-m", "bracelab", "zl", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("1")


def test_gated_suite_alias(tmp_path):
    path = tmp_path / "d12.brace"
    save(d12_quotient(3), path)
    a = run(["identities", str(path), "--suite", "gated"])
    b = run(["identities", str(path), "--suite", "section4"])
    assert a[0] == 0 and a[1] == b[1]
