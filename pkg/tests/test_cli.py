import json

from dnfree.cli import main


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), (json.loads(err) if err.strip().startswith("{") else err)


def dist(*rows, key="moments"):
    return {"N": len(rows), "order": len(rows[0]), "components": [{key: list(r)} for r in rows]}


def test_point_mass_model(tmp_path, capsys):
    f = write(tmp_path, "pm.json", {"N": 1, "order": 3, "components": [{"model": {"point_mass": {"value": "2"}}}]})
    code, out, _ = run(capsys, "transform", "--in", f, "--direction", "m2k")
    assert code == 0
    assert out["payload"]["cumulants"]["components"][0]["cumulants"] == ["2", "0", "0"]
    code, out, _ = run(capsys, "convolve", "--op", "add", "--in", f, "--in", write(tmp_path, "z.json", dist(["0", "0", "0"])))
    assert out["payload"]["distribution"]["components"][0]["moments"] == ["2", "4", "8"]


def test_k2m_semicircular(tmp_path, capsys):
    f = write(tmp_path, "k.json", dist(["0", "1", "0", "0", "0", "0"], key="cumulants"))
    code, out, _ = run(capsys, "transform", "--in", f, "--direction", "k2m")
    assert code == 0
    assert out["payload"]["distribution"]["components"][0]["moments"] == ["0", "1", "0", "2", "0", "5"]


def test_bad_rational_names_field(tmp_path, capsys):
    f = write(tmp_path, "bad.json", dist(["1", "1/0"]))
    code, out, err = run(capsys, "transform", "--in", f, "--direction", "m2k")
    assert code == 1 and out is None
    assert err["error"]["type"] == "parse"
    assert "components[0].moments[1]" in err["error"]["field"]
    assert "zero denominator" in err["error"]["message"]


def test_malformed_json_has_location(tmp_path, capsys):
    f = write(tmp_path, "bad.json", '{"N": 1,\n  "order": }')
    code, _, err = run(capsys, "transform", "--in", f, "--direction", "m2k")
    assert code == 1 and err["error"]["line"] == 2


def test_mult_all_routes_agree(tmp_path, capsys):
    fp = write(tmp_path, "fp.json", {"N": 2, "order": 4, "components": [
        {"model": {"free_poisson": {"rate": "1"}}}, {"moments": ["2", "5", "1", "3"]}]})
    code, out, _ = run(capsys, "convolve", "--op", "mult", "--method", "all", "--in", fp, "--in", fp)
    assert code == 0
    assert out["payload"]["agreement"] is True
    assert out["payload"]["routes"] == ["boxed", "product-formula", "s-transform"]
    assert out["payload"]["distribution"]["components"][0]["moments"] == ["1", "3", "12", "55"]


def test_mult_all_with_zero_mean_skips_s_route(tmp_path, capsys):
    sc = write(tmp_path, "sc.json", {"N": 1, "order": 4, "components": [{"model": {"semicircular": {"variance": "1"}}}]})
    code, out, _ = run(capsys, "convolve", "--op", "mult", "--in", sc, "--in", sc)
    assert code == 0 and "s-transform" in out["provenance"]["skipped"]
    code, _, err = run(capsys, "convolve", "--op", "mult", "--method", "s-transform", "--in", sc, "--in", sc)
    assert code == 2 and err["error"]["index"] == 1


def test_nc_table(capsys):
    code, out, _ = run(capsys, "nc", "--n", "4", "--table")
    assert code == 0 and out["payload"]["count"] == 14 and len(out["payload"]["rows"]) == 14
    row = out["payload"]["rows"][0]
    assert row == {"partition": "{{1},{2},{3},{4}}", "kreweras": "{{1,2,3,4}}", "mobius": "-5"}
    code, out, _ = run(capsys, "nc", "--n", "3")
    assert sorted(out["payload"]["partitions"]) == sorted(
        ["{{1},{2},{3}}", "{{1,2},{3}}", "{{1,3},{2}}", "{{1},{2,3}}", "{{1,2,3}}"])


def test_exit_codes(tmp_path, capsys):
    z = write(tmp_path, "z.json", dist(["0", "1", "0"], ["1", "1", "1"]))
    code, _, err = run(capsys, "stransform", "--in", z)
    assert code == 2 and err["error"]["index"] == 1
    code, _, err = run(capsys, "nc", "--n", "13")
    assert code == 3 and err["error"]["type"] == "bound"
    code, _, _ = run(capsys, "nc", "--n", "4", "--bogus")
    assert code == 1
    one = write(tmp_path, "one.json", dist(["1", "1", "1"]))
    code, _, err = run(capsys, "convolve", "--op", "add", "--in", z, "--in", one)
    assert code == 2
    code, _, _ = run(capsys, "convolve", "--op", "add", "--order", "5", "--in", one, "--in", one)
    assert code == 3
    code, _, _ = run(capsys, "transform", "--in", str(tmp_path / "missing.json"), "--direction", "m2k")
    assert code == 1


def test_stransform_and_order(tmp_path, capsys):
    f = write(tmp_path, "fp.json", {"N": 1, "order": 4, "components": [{"model": {"free_poisson": {"rate": "1"}}}]})
    code, out, _ = run(capsys, "stransform", "--in", f)
    s = out["payload"]["s_transform"]
    assert code == 0 and s["order"] == 3
    code, out, _ = run(capsys, "stransform", "--in", f, "--order", "2")
    assert out["payload"]["s_transform"]["order"] == 1


def test_classify_and_divide(tmp_path, capsys):
    sc = write(tmp_path, "sc.json", {"N": 2, "order": 6, "components": [
        {"model": {"semicircular": {"variance": "2"}}}, {"moments": ["0"] * 6}]})
    code, out, _ = run(capsys, "classify", "--in", sc, "--kind", "semicircular")
    assert code == 0 and out["payload"]["holds"] and out["payload"]["components"] == ["pass", "exempt"]
    code, out, _ = run(capsys, "divide", "--in", sc, "--n", "2")
    assert out["payload"]["distribution"]["components"][0]["moments"] == ["0", "1", "0", "2", "0", "5"]
    code, _, _ = run(capsys, "divide", "--in", sc, "--n", "0")
    assert code == 3
    joint = write(tmp_path, "j.json", {"N": 1, "order": 2, "vars": ["x", "y"], "moments": {
        "x": ["0"], "y": ["0"], "x x": ["1"], "x y": ["1"], "y x": ["1"], "y y": ["1"]}})
    code, out, _ = run(capsys, "classify", "--in", joint, "--kind", "free")
    assert code == 0 and out["payload"]["holds"] is False and out["payload"]["witness"] == "x y"


def test_deterministic_output(tmp_path, capsys):
    f = write(tmp_path, "a.json", dist(["1", "2", "1/3", "4"], ["-1", "2", "0", "5"]))
    main(["convolve", "--op", "mult", "--in", f, "--in", f])
    first = capsys.readouterr().out
    main(["convolve", "--op", "mult", "--in", f, "--in", f])
    assert capsys.readouterr().out == first


def test_output_feeds_back_in(tmp_path, capsys):
    f = write(tmp_path, "a.json", dist(["1", "2", "3"]))
    code, out, _ = run(capsys, "convolve", "--op", "add", "--in", f, "--in", f)
    g = write(tmp_path, "b.json", out["payload"]["distribution"])
    code, out2, _ = run(capsys, "transform", "--in", g, "--direction", "m2k")
    assert code == 0 and out2["payload"]["cumulants"]["components"][0]["cumulants"] == ["2", "2", "-2"]


def test_module_entry_point_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck", "--order", "3")
    assert code == 0 and out["payload"]["failed"] == 0
    code, _, _ = run(capsys, "selfcheck", "--order", "9")
    assert code == 3
