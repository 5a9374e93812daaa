import json
import subprocess
import sys

import pytest

from hass.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def params(tmp_path, capsys):
    path = tmp_path / "params.json"
    code, _, _ = call(capsys, "setup", "--parties", "4", "--prime-bits", "10", "--seed", "1",
                      "-o", str(path))
    assert code == 0
    return path


def test_setup_deterministic(capsys):
    a = call(capsys, "setup", "--parties", "3", "--prime-bits", "12", "--seed", "4")
    b = call(capsys, "setup", "--parties", "3", "--prime-bits", "12", "--seed", "4")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["seed"] == 4


def test_setup_records_generated_seed(capsys):
    code, out, _ = call(capsys, "setup", "--parties", "2", "--prime-bits", "8")
    assert code == 0 and isinstance(json.loads(out)["seed"], int)


def test_count_csv(capsys):
    code, out, _ = call(capsys, "count", "--n-max", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[4].startswith("4,") and ",6940,6940," in out


def test_poly_build_eval_verify(tmp_path, capsys):
    path = tmp_path / "poly.json"
    assert call(capsys, "poly", "build", "--m", "6", "--n", "5", "-o", str(path))[0] == 0
    code, out, _ = call(capsys, "poly", "eval", "--poly", str(path), "--z", "11111")
    assert code == 0 and json.loads(out)["value"] == 0
    code, out, _ = call(capsys, "poly", "eval", "--poly", str(path), "--z", "11011")
    assert json.loads(out)["value"] != 0
    code, out, _ = call(capsys, "poly", "verify", "--poly", str(path))
    assert code == 0 and json.loads(out)["passed"]


def test_setsys_build(tmp_path, capsys):
    vec = tmp_path / "vectors.json"
    code, out, _ = call(capsys, "setsys", "build", "--m", "6", "--n", "3", "--verify",
                        "--dedupe", "--vectors-out", str(vec), "--uniform")
    assert code == 0 and json.loads(out)["index_count"] == 147
    assert len(json.loads(vec.read_text())["vectors"]) == 7


def test_ases_encode_and_hsver(tmp_path, capsys, params):
    tokens, audit = tmp_path / "tokens.json", tmp_path / "audit.json"
    code, _, _ = call(capsys, "ases", "encode", "--params", str(params), "--omega", "1,2,3",
                      "--seed", "7", "-o", str(tokens), "--emit-secret-audit", str(audit))
    assert code == 0
    assert "identifiers" not in tokens.read_text()
    assert json.loads(audit.read_text())["secret"] is True
    code, out, _ = call(capsys, "ases", "hsver", "--tokens", str(tokens), "--coalition", "1,2,3,4")
    assert code == 0 and json.loads(out)["witness"] == [1, 2, 3]
    code, out, _ = call(capsys, "ases", "hsver", "--tokens", str(tokens), "--coalition", "1,2,3,4",
                        "--strict")
    assert code == 1 and not json.loads(out)["authorized"]
    code, _, _ = call(capsys, "ases", "hsver", "--tokens", str(tokens), "--coalition", "1,4")
    assert code == 1


def test_scheme_share_recon(tmp_path, capsys):
    access = tmp_path / "access.json"
    access.write_text(json.dumps({"parties": 4, "minimal_sets": [[1, 2], [3, 4]]}))
    bundle = tmp_path / "bundle.json"
    code, _, _ = call(capsys, "scheme", "share", "--access", str(access), "--secret-hex", "0a",
                      "--seed", "9", "-o", str(bundle))
    assert code == 0
    first = bundle.read_text()
    call(capsys, "scheme", "share", "--access", str(access), "--secret-hex", "0a",
         "--seed", "9", "-o", str(bundle))
    assert bundle.read_text() == first
    code, out, _ = call(capsys, "scheme", "recon", "--bundle", str(bundle), "--coalition", "3,4,1")
    assert code == 0 and json.loads(out)["secret"] == "a"
    code, out, _ = call(capsys, "scheme", "recon", "--bundle", str(bundle), "--coalition", "1,3")
    assert code == 1 and not json.loads(out)["authorized"]


def test_usage_errors(tmp_path, capsys):
    assert call(capsys, "scheme", "recon", "--bundle", str(tmp_path / "no.json"),
                "--coalition", "1")[0] == 2
    assert call(capsys, "poly", "build", "--m", "8", "--n", "3")[0] == 2
    assert call(capsys, "poly", "eval", "--m", "6", "--n", "3", "--z", "12")[0] == 2
    access = tmp_path / "access.json"
    access.write_text(json.dumps({"parties": 3, "minimal_sets": [[1, 2], [1, 2, 3]]}))
    assert call(capsys, "scheme", "share", "--access", str(access), "--secret-hex", "5",
                "--seed", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["setsys", "build"])
    assert exc.value.code == 2


def test_oracle_all_small(capsys):
    code, out, _ = call(capsys, "oracle", "all", "--grid", "small")
    assert code == 0 and all(r["passed"] for r in json.loads(out))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hass", "count", "--n-max", "3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)[-1]["S"] == 147
