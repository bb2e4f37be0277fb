import io
import json

from brdescent.certlang import parse_instance, serialize_instance
from brdescent.cli import main
from brdescent.instances import doc_from_instance
from brdescent.descent import make_instance
from brdescent.fields import FieldTower


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_split_exit_codes():
    code, out = run("split", "--tower", "GF2(t)", "--alpha", "t", "--beta", "t^2", "-D", "2")
    assert code == 0 and out.startswith("Witness (t, 1)")
    code, out = run("split", "--tower", "GF2(t)", "--alpha", "t", "--beta", "t+1", "-D", "4")
    assert code == 2 and "NoWitnessUpTo(4)" in out


def test_split_with_denominator():
    code, out = run("split", "--tower", "GF2(s)", "--alpha", "s", "--beta", "1/s^2", "-D", "4", "--denom", "s^2")
    assert code == 0


def test_usage_and_parse_errors(capsys):
    assert run()[0] == 1
    assert run("split", "--tower", "GF2(t)")[0] == 1
    code, _ = run("split", "--tower", "GF2(t)", "--alpha", "t +* 1", "--beta", "t")
    assert code == 1
    assert "at column 4" in capsys.readouterr().err
    assert run("descend")[0] == 1
    assert run("gen", "--count", "0")[0] == 1


def test_chain_exit_codes(capsys):
    code, out = run("chain", "--tower", "GF2(s)", "--beta", "0", "--nb", "s^2", "--gamma", "s^2", "--nc", "s^2",
                    "-D", "2", "--denom", "s")
    assert code == 0 and out.splitlines()[0].startswith("delta = ")
    code, _ = run("chain", "--tower", "GF2(s)", "--beta", "s", "--nb", "s+1", "--gamma", "0", "--nc", "s", "-D", "0")
    assert code == 4
    assert "ChainFailed" in capsys.readouterr().err


def test_descend_generic_and_verify(tmp_path, capsys):
    code, out = run("descend", "--generic", "--seed", "7", "--out", str(tmp_path))
    assert code == 0 and "trdeg 9" in out
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["generic.descent-cert", "generic.index.descent-cert", "generic.presentation"]
    pres = (tmp_path / "generic.presentation").read_text().splitlines()
    assert len([l for l in pres if l.startswith("[")]) == 4
    code, out = run("verify", str(tmp_path / "generic.descent-cert"), str(tmp_path / "generic.index.descent-cert"))
    assert code == 0 and out.count("Accept (oracle calls: 0)") == 2
    # byte-identical across runs
    other = tmp_path / "again"
    run("descend", "--mode", "generic", "--out", str(other))
    for name in files:
        assert (tmp_path / name).read_bytes() == (other / name).read_bytes()


def test_verify_reject_and_missing(tmp_path, capsys):
    run("descend", "--generic", "--out", str(tmp_path))
    p = tmp_path / "generic.descent-cert"
    doc = json.loads(p.read_text())
    doc["steps"][8]["witness"]["x"] += "+s"
    bad = tmp_path / "bad.descent-cert"
    bad.write_text(json.dumps(doc, indent=2))
    code, _ = run("verify", str(bad))
    err = capsys.readouterr().err
    assert code == 5 and "step 8" in err and "WitnessFails" in err
    assert run("verify", str(tmp_path / "nope.descent-cert"))[0] == 1
    trunc = tmp_path / "trunc.descent-cert"
    trunc.write_text(p.read_text()[:300])
    assert run("verify", str(trunc))[0] == 1


def test_gen_descend_branches(tmp_path):
    for branch, want in (("generic", 0), ("x", 3), ("z", 3), ("t", 3)):
        f = tmp_path / f"{branch}.json"
        assert run("gen", "--seed", "5", "--branch", branch, "--out", str(f))[0] == 0
        code, out = run("descend", "--instance", str(f), "--out", str(tmp_path / "o"), "-D", "4")
        assert code == want, (branch, out)
        if want == 3:
            assert f"Decomposable branch {branch}" in out
    code, _ = run("verify", str(tmp_path / "o" / "generic.descent-cert"))
    assert code == 0


def test_descend_chain_failed(tmp_path):
    L = FieldTower.rational(1, ("s",))
    s = L.gen("s")
    inst = make_instance(L, s, s ** 3, s ** 5, L, s, s, s + 1, s + 1, s)
    f = tmp_path / "hard.json"
    f.write_text(serialize_instance(doc_from_instance(inst)))
    assert run("descend", "--instance", str(f), "-D", "0", "--out", str(tmp_path))[0] == 4


def test_gen_thread_independence(tmp_path, monkeypatch):
    outs = []
    for n in ("1", "4"):
        monkeypatch.setenv("DESCENT_THREADS", n)
        d = tmp_path / f"t{n}"
        assert run("gen", "--seed", "3", "--count", "6", "--out", str(d))[0] == 0
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1] and len(outs[0]) == 6
    for b in outs[0].values():
        parse_instance(b.decode())


def test_gen_stdout():
    code, out = run("gen", "--seed", "2")
    assert code == 0 and json.loads(out)["kind"] == "descent-instance"
    assert run("gen", "--count", "2")[0] == 1


def test_bench(tmp_path):
    csvp = tmp_path / "b.csv"
    code, out = run("bench", "-D", "2", "4", "--repeats", "2", "--out", str(csvp))
    assert code == 0
    lines = csvp.read_text().splitlines()
    assert lines[0].startswith("D,unknowns,equations,found")
    assert len(lines) == 3
