import os
import subprocess
import sys
from pathlib import Path

import pytest

from dualitykit import Kind, check_kind
from dualitykit.cli import main
from dualitykit.duality import frame_report
from dualitykit.speclang import AlgebraDecl, FrameDecl, parse_document, report_from_machine

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"
CORPUS = sorted(CORPUS_DIR.glob("*.dua"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def chain2(tmp_path):
    p = tmp_path / "chain2.dua"
    p.write_text("frame f2 { kind = rdsa; universe = {a, b}; order = {(a, b)}; }\n"
                 "space s { universe = {1,2,3,4}; classes = {{1,2},{3,4}}; }\n")
    return p


def test_verify_reports_twenty_three_spaces(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "lem:monadic", "--max-n", 4)
    assert code == 0
    assert out.startswith("PASS lem:monadic (max n 4, 23 instances)")
    assert "checked 23, passed 23, failed 0" in out


def test_missing_file_is_a_usage_error(capsys):
    code, out, err = run(capsys, "check", "missing.dua")
    assert code == 2 and out == "" and "no such file" in err


def test_parse_error_is_a_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.dua"
    bad.write_text("space s { universe = {1}; classes = {{2}}; }")
    code, out, err = run(capsys, "check", bad)
    assert code == 2 and "1:39" in err and "semantic" in err


def test_bad_arguments_are_usage_errors(capsys, chain2):
    assert run(capsys, "cm", chain2)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "cm", "--name", "nope", chain2)[0] == 2
    assert run(capsys, "cm", "--name", "s", chain2)[0] == 2
    assert run(capsys, "verify", "--theorem", "nope", "--max-n", 2)[0] == 2
    assert run(capsys, "enumerate", "--family", "posets", "--n", 9)[0] == 2


def test_cm_output_reparses_and_passes(capsys, chain2):
    code, out, _ = run(capsys, "cm", "--kind", "rdsa", "--name", "f2", chain2)
    assert code == 0
    alg = parse_document(out).get("cm_f2")
    assert len(alg) == 3 and check_kind(alg, Kind.RDSA).passed


def test_cs_output_reparses_and_passes(capsys, chain2, tmp_path):
    _, algebra_text, _ = run(capsys, "cm", "--name", "f2", chain2)
    src = tmp_path / "alg.dua"
    src.write_text(algebra_text)
    code, out, _ = run(capsys, "cs", "--name", "cm_f2", src)
    assert code == 0
    frame = parse_document(out).get("cs_cm_f2")
    assert len(frame) == 2 and frame_report(frame, Kind.RDSA).passed


def test_roundtrip_prints_both_directions(capsys, chain2):
    code, out, _ = run(capsys, "roundtrip", "--name", "f2", chain2)
    heads = [ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert code == 0
    assert heads == ["PASS roundtrip f2 frame rdsa (iso yes; source 2, algebra 3, target 2)",
                     "PASS roundtrip cm_f2 algebra rdsa (iso yes; source 3, canonical 2, target 3)"]


def test_approx_prints_the_pair(capsys, chain2):
    code, out, _ = run(capsys, "approx", "--space", "s", "--set", "{1,2,3}", chain2)
    assert (code, out) == (0, "<{1,2},{1,2,3,4}>\n")
    assert run(capsys, "approx", "--space", "s", "--set", "{9}", chain2)[0] == 2
    assert run(capsys, "approx", "--space", "s", "--set", "(1,2)", chain2)[0] == 2


def test_enumerate_streams_reparseable_declarations(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "partitions", "--n", 4)
    assert code == 0 and len(parse_document(out).declarations) == 15
    code, out, _ = run(capsys, "enumerate", "--family", "posets", "--n", 3)
    assert len(parse_document(out).declarations) == 19
    code, out, _ = run(capsys, "enumerate", "--family", "frames-demorgan", "--n", 2)
    assert len(parse_document(out).declarations) == 4


def test_ceiling_flag_overrides_limit(capsys, monkeypatch):
    monkeypatch.delenv("DUALITYKIT_CEILING", raising=False)
    code, out, _ = run(capsys, "enumerate", "--family", "posets-unlabeled", "--n", 5, "--ceiling", 5)
    assert code == 0 and len(parse_document(out).declarations) == 63


def test_failing_check_exits_one(capsys):
    code, out, _ = run(capsys, "check", CORPUS_DIR / "09_rdsa_four_chain_fails.dua")
    assert code == 1
    assert "  FAIL rdsa.M witness a=1 b=2" in out.splitlines()


def test_complex_algebra_of_long_chain_reports_the_failing_law(capsys, tmp_path):
    p = tmp_path / "long.dua"
    p.write_text("frame c3 { kind = rdsa; universe = {a,b,c}; order = {(a,b),(b,c)}; }\n"
                 "check k { run = cm; on = c3; }\n")
    code, out, err = run(capsys, "check", p)
    assert code == 1 and err == ""
    assert out.splitlines()[0].startswith("FAIL k:c3")
    assert "  FAIL rdsa.M witness a={c} b={b,c}" in out.splitlines()


def test_strict_cm_command_rejects_long_chain(capsys, tmp_path):
    p = tmp_path / "long.dua"
    p.write_text("frame c3 { kind = rdsa; universe = {a,b,c}; order = {(a,b),(b,c)}; }\n")
    code, out, err = run(capsys, "cm", "--name", "c3", p)
    assert code == 1 and out == "" and "PreconditionError" in err


def test_machine_format_parses_back(capsys):
    code, out, _ = run(capsys, "--format", "machine", "check", CORPUS_DIR / "07_chain2.dua")
    assert code == 0
    chunks = out.split("\nreport[\n")
    assert report_from_machine(chunks[0] + "\n").passed


def test_verify_machine_format(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "DeM", "--max-n", 2, "--format", "machine")
    summary = report_from_machine(out)
    assert code == 0 and summary.instances == 5 and summary.passed


@pytest.mark.parametrize("path", CORPUS, ids=[p.stem for p in CORPUS])
def test_corpus_print_parse_closure(capsys, path):
    doc = parse_document(path.read_text())
    for decl in doc.declarations:
        if isinstance(decl, FrameDecl) and decl.kind != "r2a":
            code, out, _ = run(capsys, "cm", "--name", decl.name, path)
            assert code == 0
            alg = parse_document(out).get(f"cm_{decl.name}")
            assert check_kind(alg, decl.kind).passed
        elif isinstance(decl, AlgebraDecl):
            code, out, err = run(capsys, "cs", "--name", decl.name, path)
            if decl.name == "c4":
                assert code == 1 and "PreconditionError" in err
                continue
            assert code == 0
            frame = parse_document(out).get(f"cs_{decl.name}")
            assert len(frame) > 0


@pytest.mark.parametrize("path", CORPUS, ids=[p.stem for p in CORPUS])
def test_identical_invocations_are_byte_identical(capsys, path):
    first = run(capsys, "check", path)
    second = run(capsys, "check", path, "--format", "text")
    assert first == second


def test_console_script_and_module_entry_points(tmp_path):
    p = tmp_path / "c.dua"
    p.write_text("space s { universe = {1,2}; classes = {{1,2}}; }\n")
    mod = subprocess.run([sys.executable, "-m", "dualitykit", "approx", "--space", "s", "--set", "{1}", str(p)],
                         capture_output=True, text=True)
    assert (mod.returncode, mod.stdout) == (0, "<{},{1,2}>\n")
    missing = subprocess.run([sys.executable, "-m", "dualitykit", "check", str(tmp_path / "none.dua")],
                             capture_output=True, text=True)
    assert missing.returncode == 2 and missing.stdout == "" and "no such file" in missing.stderr


def test_ceiling_flag_does_not_leak_into_the_environment(capsys, monkeypatch):
    monkeypatch.delenv("DUALITYKIT_CEILING", raising=False)
    run(capsys, "enumerate", "--family", "partitions", "--n", 1, "--ceiling", 7)
    assert "DUALITYKIT_CEILING" not in os.environ
