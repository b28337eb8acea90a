import io
import json
from pathlib import Path

import pytest

from secanthilbert import batch
from secanthilbert.batch import ResultCache, ResultEnvelope, parse_manifest, run_batch
from secanthilbert.cli import main
from secanthilbert.eulerdata import Curve
from secanthilbert.exactring import InputError

SHIPPED = Path(batch.__file__).parent / "data" / "corpus.manifest"


def run(*argv):
    out = io.StringIO()
    rc = main(list(argv), out=out)
    return rc, out.getvalue()


def test_poly_text():
    rc, text = run("poly", "--space", "curve", "--genus", "0", "--degree", "4", "--secant", "1", "--format", "text")
    assert rc == 0
    assert text.strip() == "dim 3, degree 3, P(ℓ) = (1/2)ℓ³ + (3/2)ℓ² + 2ℓ + 1"


def test_poly_json():
    rc, text = run("poly", "--space", "curve", "--genus", "0", "--degree", "6", "--secant", "2")
    assert rc == 0
    env = json.loads(text)
    assert env["computation"] == "poly2"
    assert env["positivity"] == "ok"
    assert env["payload"]["dimension"] == 5
    assert env["payload"]["degree"] == "4/1"
    assert env["variety"] == {"space": "curve", "genus": 0, "degree": 6}


def test_poly_warning_and_strict(capsys):
    argv = ["poly", "--space", "pps", "--dims", "2", "--degrees", "1", "--secant", "2"]
    rc, text = run(*argv)
    assert rc == 0
    assert json.loads(text)["positivity"]["status"] == "warning"
    assert "warning" in capsys.readouterr().err
    rc, _ = run(*argv, "--strict")
    assert rc == 2


def test_degree_text():
    rc, text = run("degree", "--space", "curve", "--genus", "1", "--degree", "8")
    assert rc == 0
    assert text.splitlines() == ["Sigma_1: dim 3, degree 20", "Sigma_2: dim 5, degree 16"]


def test_nodes_csv():
    rc, text = run("nodes", "--space", "curve", "--genus", "0", "--degree", "4", "--secant", "1")
    assert rc == 0
    assert text.splitlines() == ["ell,value", "1,5/1", "3,34/1", "5,111/1", "7,260/1"]


def test_table_csv():
    rc, text = run("table", "--space", "curve", "--genus", "2", "--degree", "9", "--k", "2", "--ell", "1..2")
    assert rc == 0
    assert text.splitlines() == ["i,ell,dim", "0,1,8", "1,1,16", "0,2,36", "1,2,34"]


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--space", "curve", "--genus", "1", "--degree", "8", "--k", "2", "--ell", "0..2"],
        ["table", "--space", "curve", "--genus", "1", "--degree", "8", "--k", "2", "--ell", "x"],
        ["poly", "--space", "torus", "--secant", "1"],
        ["poly", "--space", "curve", "--genus", "1", "--secant", "1"],
        ["poly", "--space", "pps", "--dims", "1,1", "--degrees", "2", "--secant", "1"],
        ["poly", "--space", "curve", "--genus", "-1", "--degree", "4", "--secant", "1"],
        ["poly", "--space", "curve", "--genus", "0", "--degree", "4", "--secant", "3"],
        ["batch", "/nonexistent/manifest", "--out", "/tmp/never"],
    ],
)
def test_input_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        rc = main(argv, out=io.StringIO())
        raise SystemExit(rc)
    assert exc.value.code == 1


def test_verify_default_passes():
    rc, text = run("verify")
    assert rc == 0
    assert text.strip().endswith("8/8 checks passed")


def test_batch_is_deterministic(tmp_path):
    outs = []
    for name, threads in [("a", "1"), ("b", "1"), ("c", "4")]:
        rc, _ = run("batch", str(SHIPPED), "--out", str(tmp_path / name), "--threads", threads)
        assert rc == 0
        outs.append({p.name: p.read_bytes() for p in sorted((tmp_path / name).iterdir())})
    assert outs[0] == outs[1] == outs[2]
    assert len(outs[0]) == 14


def test_batch_cache_hit(tmp_path):
    m = parse_manifest(SHIPPED.read_text())
    cache = ResultCache(tmp_path / "cache")
    first = run_batch(m, tmp_path / "o1", cache=cache)
    assert first.computed == 14 and not first.failed
    second = run_batch(m, tmp_path / "o2", cache=cache)
    assert second.computed == 0
    assert all(s.status == "cached" for s in second.statuses)
    for p in (tmp_path / "o1").iterdir():
        assert p.read_bytes() == (tmp_path / "o2" / p.name).read_bytes()


def test_empty_manifest(tmp_path):
    m = tmp_path / "empty.manifest"
    m.write_text("# nothing here\n\n")
    rc, text = run("batch", str(m), "--out", str(tmp_path / "out"))
    assert rc == 0 and text == ""
    assert list((tmp_path / "out").iterdir()) == []


def test_partial_failure(tmp_path):
    m = tmp_path / "mixed.manifest"
    m.write_text(
        "[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly1\n"
        "[entry]\nspace = curve\ngenus = -2\ndegree = 4\ncomputations = poly1, degree\n"
    )
    rc, text = run("batch", str(m), "--out", str(tmp_path / "out"))
    assert rc == 4
    lines = text.splitlines()
    assert lines[0].startswith("line 1 poly1: computed")
    assert lines[1].startswith("line 6 poly1: error")
    assert len(list((tmp_path / "out").iterdir())) == 1


def test_corrupted_cache_fails_verify(tmp_path, monkeypatch):
    cache_dir = tmp_path / "cache"
    m = parse_manifest("[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly1\n")
    run_batch(m, tmp_path / "out", cache=ResultCache(cache_dir))
    assert run("verify", "--cache", str(cache_dir))[0] == 0
    (path,) = ResultCache(cache_dir).entries()
    env = json.loads(path.read_text())
    env["payload"]["degree"] = "4/1"
    path.write_text(json.dumps(env, sort_keys=True, indent=2) + "\n")
    monkeypatch.setenv("SECANT_CACHE", str(cache_dir))
    rc, text = run("verify", "--cache", str(cache_dir))
    assert rc == 3
    assert "[FAIL] cache-integrity" in text


def test_envelope_roundtrip():
    env = batch.compute(Curve(1, 8), "table3", (1, 2))
    assert ResultEnvelope.from_json(env.to_json()) == env
    assert batch.recompute_envelope(env) == env
    with pytest.raises(InputError):
        ResultEnvelope.from_dict({"toolVersion": "x"})


@pytest.mark.parametrize(
    "text",
    [
        "space = curve\n",
        "[entry]\nspace curve\n",
        "[entry]\ncolour = red\n",
        "[entry]\nspace = curve\nspace = pps\n",
    ],
)
def test_manifest_syntax_errors(text):
    with pytest.raises(InputError):
        parse_manifest(text)


def test_manifest_semantic_errors_are_per_entry():
    m = parse_manifest(
        "[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly7\n"
        "[entry]\nspace = pps\ndims = 1\ndegrees = 3\ncomputations = poly1\nell = 2..3  # trailing comment\n"
    )
    assert m.entries[0].error is not None
    assert m.entries[1].error is None and m.entries[1].ells == (2, 3)


def test_output_names_are_canonical():
    a = batch.output_name(Curve(0, 4), "table2", (1, 6))
    b = batch.output_name(Curve(0, 4), "table2", (1, 5))
    c = batch.output_name(Curve(0, 4), "poly1", (1, 5))
    assert a != b and a.startswith("table2-")
    assert c == batch.output_name(Curve(0, 4), "poly1", (1, 6))
