import json


from covmub.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field", "info", "--field", "2^2")
    assert code == 0
    data = json.loads(out)
    assert data["field"] == {"p": 2, "r": 2, "modulus": [1, 1, 1]}
    assert data["q"] == 4


def test_bad_field_string(capsys):
    code, _, err = run(capsys, "field", "info", "--field", "notafield")
    assert code == 2
    code, _, err = run(capsys, "generate", "--field", "6", "--multiplier", "inv")
    assert code == 2


def test_multipliers_enumerate_and_show(capsys):
    code, out, _ = run(capsys, "multipliers", "enumerate", "--field", "3")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 9
    assert len(data["multipliers"]) == 9
    code, out, _ = run(
        capsys, "multipliers", "show", "--field", "3", "--multiplier", "inv"
    )
    assert code == 0
    assert json.loads(out)["multiplier"]["L"] == 3
    code, _, _ = run(
        capsys, "multipliers", "show", "--field", "3", "--multiplier", "99"
    )
    assert code == 2


def test_generate_verify_round_trip(tmp_path, capsys):
    out_file = tmp_path / "bundle.json"
    code, _, _ = run(
        capsys,
        "generate", "--field", "3", "--multiplier", "inv", "--out", str(out_file),
    )
    assert code == 0
    bundle = json.loads(out_file.read_text())
    assert len(bundle["projections"]) == 12
    code, out, _ = run(capsys, "verify", str(out_file))
    assert code == 0 and "ok" in out
    # determinism: regenerating produces a byte-identical file
    out_file2 = tmp_path / "bundle2.json"
    run(capsys, "generate", "--field", "3", "--multiplier", "inv", "--out", str(out_file2))
    assert out_file.read_bytes() == out_file2.read_bytes()


def test_generate_gf2_bundle(tmp_path, capsys):
    out_file = tmp_path / "b2.json"
    code, _, _ = run(
        capsys,
        "generate", "--field", "2", "--multiplier", "selfdual", "--out", str(out_file),
    )
    assert code == 0
    assert len(json.loads(out_file.read_text())["projections"]) == 6
    assert run(capsys, "verify", str(out_file))[0] == 0


def test_generate_inv_needs_odd_p(capsys):
    code, _, err = run(capsys, "generate", "--field", "2^2", "--multiplier", "inv")
    assert code == 2


def test_verify_rejects_corrupted_bundle(tmp_path, capsys):
    out_file = tmp_path / "bundle.json"
    run(capsys, "generate", "--field", "2", "--multiplier", "selfdual", "--out", str(out_file))
    bundle = json.loads(out_file.read_text())
    bundle["projections"][0]["matrix"][0][0] = [0.7, 0.1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(bundle))
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 4
    # structurally malformed input is a config error
    bad2 = tmp_path / "bad2.json"
    bad2.write_text(json.dumps({"field": {"p": 2, "r": 1, "modulus": [0, 1]}}))
    assert run(capsys, "verify", str(bad2))[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--field", "2")
    assert code == 0
    data = json.loads(out)
    assert data["per_form"] == 2
    assert data["sl_invariant"] == 0
    assert data["torus_invariant"] == 2
    assert data["total"] == 2
    code, out, _ = run(capsys, "classify", "--field", "3")
    data = json.loads(out)
    assert (data["per_form"], data["sl_invariant"], data["total"]) == (9, 1, 18)
    assert run(capsys, "classify", "--field", "7")[0] == 3


def test_classify_gf5_counts(capsys):
    code, out, _ = run(capsys, "classify", "--field", "5")
    assert code == 0
    data = json.loads(out)
    assert data["per_form"] == 625
    assert data["total"] == 2500
    assert data["sl_invariant"] == 1


def test_torus_report(capsys):
    code, out, _ = run(capsys, "torus", "--field", "3")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 4
    assert sorted(len(o) for o in data["orbits"]) == [2, 2]


def test_metaplectic_report(capsys):
    code, out, _ = run(
        capsys, "metaplectic", "--field", "3", "--multiplier", "inv"
    )
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 4
    assert data["max_covariance_residual"] <= 1e-9
    assert len(data["operators"]) == 4


def test_probe_sl_report(capsys):
    code, out, _ = run(capsys, "probe-sl", "--field", "3", "--multiplier", "inv")
    assert code == 0
    data = json.loads(out)
    assert data["defect_free"] is True
    assert data["group_order"] == 24


def test_demo_qubit(capsys):
    code, out, _ = run(capsys, "demo", "qubit")
    assert code == 0
    assert json.loads(out)["all_ok"] is True


def test_enumeration_guard(capsys):
    code, _, _ = run(capsys, "multipliers", "enumerate", "--field", "3^2")
    assert code == 3
