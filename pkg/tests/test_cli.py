import json

import pytest

from oscgrass.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_degenerate_then_verify(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "degenerate", "--r", "2", "--n", "5", "--k1", "0", "--k2", "1",
                       "--out", str(path))
    assert code == 0
    res = json.loads(out)
    assert res["seed"] == 20240601 and res["result"]["verdict"]
    docs = json.loads(path.read_text())
    assert docs[0]["target"] == [3, 4, 5]
    code, out, _ = run(capsys, "verify-cert", str(path))
    assert code == 0 and json.loads(out)["result"]["verified"]


def test_tampered_certificate_exits_2(tmp_path, capsys):
    path = tmp_path / "cert.json"
    run(capsys, "degenerate", "--r", "2", "--n", "5", "--k1", "0", "--k2", "1", "--out", str(path))
    docs = json.loads(path.read_text())
    docs[0]["coeffs"][0][1] += 1
    path.write_text(json.dumps(docs))
    code, out, _ = run(capsys, "verify-cert", str(path))
    assert code == 2
    assert json.loads(out)["result"]["failed"] == [[3, 4, 5]]


def test_malformed_certificate_is_usage_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('[{"r": 2}]')
    assert run(capsys, "verify-cert", str(path))[0] == 1


def test_determinism(tmp_path, capsys):
    outs = []
    for i in range(2):
        p = tmp_path / f"s{i}.json"
        assert run(capsys, "sweep", "--r", "2", "--n-min", "5", "--n-max", "6", "--h-max", "3",
                   "--output", str(p))[0] == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    a = run(capsys, "oscproj", "--r", "2", "--n", "7", "--orders", "2", "--seed", "7")[1]
    b = run(capsys, "oscproj", "--r", "2", "--n", "7", "--orders", "2", "--seed", "7")[1]
    assert a == b and json.loads(a)["seed"] == 7


def test_secant_report(capsys):
    code, out, _ = run(capsys, "secant", "--r", "2", "--n", "6", "--h", "3")
    res = json.loads(out)
    assert code == 0 and res["result"]["defect"] == 1
    assert res["field"].startswith("GF(")


def test_secant_csv(capsys):
    code, out, _ = run(capsys, "secant", "--r", "2", "--n", "5", "--h", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("r,n,h,expected_dim")


def test_size_guard_exit(capsys):
    code, _, err = run(capsys, "secant", "--r", "5", "--n", "17", "--h", "40")
    assert code == 3 and "entries" in err


def test_usage_errors(capsys):
    assert run(capsys, "secant", "--r", "3", "--n", "2", "--h", "1")[0] == 1
    assert run(capsys, "degenerate", "--r", "2", "--n", "5", "--k1", "0")[0] == 1
    assert run(capsys, "degenerate", "--r", "2", "--n", "5", "--k1", "1", "--k2", "1")[0] == 1
    assert run(capsys, "bounds", "--r", "1", "--n", "5")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 1


def test_bounds_report(capsys):
    code, out, _ = run(capsys, "bounds", "--r", "6", "--n", "55")
    res = json.loads(out)["result"]
    x = 56 // 7
    assert code == 0 and res["h_thm"] + 1 == x * x + x + 1 == 73


def test_bounds_compare_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--compare", "--rmax", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("r,n,a,")
    assert lines[0].endswith("seed,field")


def test_bounds_text_table(capsys):
    code, out, _ = run(capsys, "bounds", "--r", "4", "--n", "29", "--format", "text")
    assert code == 0 and "37" in out and "h_thm+1" in out


def test_oscdim_and_oscproj(capsys):
    code, out, _ = run(capsys, "oscdim", "--r", "2", "--n", "5", "--samples", "1")
    assert code == 0 and json.loads(out)["result"]["agree"]
    code, out, _ = run(capsys, "oscproj", "--r", "3", "--n", "8", "--orders", "2,0")
    res = json.loads(out)["result"]
    assert code == 0 and res["certified_by"]["branch"] == "r-prime"
    assert res["generically_finite"]
    assert run(capsys, "oscproj", "--r", "2", "--n", "5", "--orders", "3")[0] == 1


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--r", "2", "--n", "7")
    res = json.loads(out)["result"]
    assert code == 0 and res["consistent"]


def test_multi_point_degenerate(tmp_path, capsys):
    code, out, _ = run(capsys, "degenerate", "--r", "3", "--n", "8", "--k", "1",
                       "--out", str(tmp_path / "c.json"))
    assert code == 0 and json.loads(out)["result"]["solved"] == 5
