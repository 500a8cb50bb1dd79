import json

import pytest

from ulrichmf import cli
from ulrichmf.fields import PrimeField
from ulrichmf.poly import Poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_pencil_descriptor(tmp_path, name="pencil.json"):
    # q1 = x0^2 + x1^2, q2 = x0^2 - x1^2
    field = PrimeField(10009)
    names = ("x0", "x1")
    q1 = Poly.from_pairs(field, names, [((2, 0), 1), ((0, 2), 1)])
    q2 = Poly.from_pairs(field, names, [((2, 0), 1), ((0, 2), -1)])
    path = tmp_path / name
    path.write_text(json.dumps({"vars": 2, "q1": q1.to_json(), "q2": q2.to_json()}))
    return str(path)


def test_pencil_disc(tmp_path, capsys):
    path = write_pencil_descriptor(tmp_path)
    code, out, _ = run(capsys, "pencil", "disc", path)
    assert code == 0
    assert "s^2" in out


def test_pencil_diag_and_smooth(tmp_path, capsys):
    path = write_pencil_descriptor(tmp_path)
    code, out, _ = run(capsys, "pencil", "diag", path)
    assert code == 0 and "f1" in out
    code, out, _ = run(capsys, "pencil", "smooth", path)
    assert code == 0 and "smooth: True" in out


def test_pencil_smooth_failure_exit_code(tmp_path, capsys):
    field = PrimeField(10009)
    names = ("x0", "x1")
    q1 = Poly.from_pairs(field, names, [((2, 0), 1), ((0, 2), 1)])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vars": 2, "q1": q1.to_json(), "q2": q1.to_json()}))
    code, out, _ = run(capsys, "pencil", "smooth", str(path))
    assert code == 1  # proportional quadrics: squared discriminant, not smooth
    assert "smooth: False" in out


def test_mf_build_and_grouplaw(capsys):
    code, out, _ = run(capsys, "mf", "build-li", "--g", "1", "--i", "1")
    assert code == 0
    assert "rank 1, degree 1" in out
    code, out, _ = run(capsys, "mf", "grouplaw", "--g", "1", "--i", "1,2", "--j", "2,3")
    assert code == 0
    assert "pass: True" in out


def test_mf_cohomology_and_raynaud(capsys):
    code, out, _ = run(
        capsys, "mf", "cohomology", "--g", "2", "--i", "", "--range", "0:2"
    )
    assert code == 0
    assert "h0:     1" in out
    code, out, _ = run(capsys, "mf", "raynaud", "--g", "2", "--i", "1,2")
    assert code == 0 and "raynaud: False" in out


def test_clifford_commands(capsys):
    code, out, _ = run(capsys, "clifford", "mul", "--g", "1", "--i", "1,2", "--j", "2,3")
    assert code == 0 and "e_[1, 3]" in out
    code, out, _ = run(capsys, "clifford", "center", "--g", "1")
    assert code == 0 and "y^2 = f verified" in out
    code, out, _ = run(capsys, "clifford", "decompose", "--g", "1", "--i", "1,2")
    assert code == 0 and "pass: True" in out
    code, out, _ = run(capsys, "clifford", "bgg", "--g", "1", "--window", "0:2")
    assert code == 0 and "dims N_0..N_3: [1, 4, 8, 12]" in out


def test_betti_table_golden(capsys):
    code, out, _ = run(capsys, "betti", "table", "--g", "3")
    assert code == 0
    assert out == "... 28 20 12  5  1\n           1  5 12 20 28 36 ...\n"


def test_betti_chi_json(capsys):
    code, out, _ = run(
        capsys, "--format", "json", "betti", "chi", "--g", "3", "--r", "1", "--d", "0"
    )
    assert code == 0
    data = json.loads(out)
    assert data == {"admissible": False, "chi": -4, "rank": "2"}


def test_ulrich_construct_verify_round_trip(tmp_path, capsys):
    out_path = str(tmp_path / "candidate.json")
    code, out, _ = run(
        capsys, "ulrich", "construct", "--n", "2", "--d", "1,2,3", "--out", out_path
    )
    assert code == 0
    code, out, _ = run(capsys, "ulrich", "verify", out_path, "--seed", "5")
    assert code == 0
    assert "pass: True" in out


def test_ulrich_for_roots(tmp_path, capsys):
    out_path = str(tmp_path / "cand.json")
    code, out, _ = run(
        capsys,
        "ulrich",
        "for-roots",
        "--roots",
        "1,4,9,2,3",
        "--seed",
        "3",
        "--out",
        out_path,
    )
    assert code == 0
    assert "presentation: 4 x 8 linear" in out
    data = json.loads(open(out_path).read())
    assert data["n"] == 2
    # canonical export round trip is byte stable
    code, exported, _ = run(capsys, "--format", "json", "export", out_path)
    assert code == 0
    assert exported == cli.canonical_json(data)
    # text export re-verifies the candidate on load
    code, out, _ = run(capsys, "export", out_path, "--format", "text")
    assert code == 0
    assert "certificates: A@B' = 0" in out


def test_export_betti_text_golden(tmp_path, capsys):
    table_path = tmp_path / "table.json"
    code, out, _ = run(capsys, "--format", "json", "betti", "table", "--g", "3")
    table_path.write_text(out)
    code, rendered, _ = run(
        capsys, "export", str(table_path), "--format", "text"
    )
    assert code == 0
    assert rendered == "... 28 20 12  5  1\n           1  5 12 20 28 36 ...\n"


def test_export_unknown_text_shape(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text('{"a": 1}')
    code, out, err = run(capsys, "export", str(path), "--format", "text")
    assert code == 2


def test_export_unknown_format_exits_2(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{}")
    with pytest.raises(SystemExit) as err:
        cli.main(["export", str(path), "--format", "yaml"])
    assert err.value.code == 2
    capsys.readouterr()


def test_suite_transcripts_deterministic(capsys):
    code1, out1, _ = run(capsys, "suite", "betti", "--g", "3")
    code2, out2, _ = run(capsys, "suite", "betti", "--g", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "# field: 10009" in out1
    assert "# seed: 0" in out1
    assert "# certificates:" in out1


def test_suite_seed_in_transcript(capsys):
    code, out, _ = run(capsys, "suite", "knorrer", "--max-n", "1", "--seed", "42")
    assert code == 0
    assert "# seed: 42" in out


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("ULRICHMF_FIELD", "13")
    monkeypatch.setenv("ULRICHMF_FORMAT", "json")
    code, out, _ = run(capsys, "suite", "betti", "--g", "2")
    assert code == 0
    data = json.loads(out)
    assert data["field"] == "13"


def test_bad_field_exits_2(capsys):
    code, _, err = run(capsys, "--field", "15", "suite", "betti")
    assert code == 2
    assert "error" in err


def test_bad_subset_exits_2(capsys):
    code, _, err = run(capsys, "mf", "build-li", "--g", "1", "--i", "9")
    assert code == 2


def test_grouplaw_suite_g1(capsys):
    code, out, _ = run(capsys, "suite", "grouplaw", "--g", "1")
    assert code == 0
    assert "result: PASS (64 checks)" in out


def test_suite_ulrich_e2e_explicit_roots(capsys):
    code, out, _ = run(
        capsys, "suite", "ulrich-e2e", "--roots", "1,4,9,2,3", "--seed", "7"
    )
    assert code == 0
    assert "discriminant-roots: PASS - 1,2,3,4,9" in out
    assert "result: PASS (3 checks)" in out


def test_suite_ulrich_e2e_transcript_deterministic(capsys):
    code1, out1, _ = run(capsys, "suite", "ulrich-e2e", "--n", "2", "--seed", "9")
    code2, out2, _ = run(capsys, "suite", "ulrich-e2e", "--n", "2", "--seed", "9")
    assert code1 == code2 == 0
    assert out1 == out2


def test_mf_tensor_command(capsys):
    code, out, _ = run(capsys, "mf", "tensor", "--g", "1", "--i", "1", "--j", "2")
    assert code == 0
    assert "rank 1, degree 2" in out


def test_degree_cap_flag(capsys):
    # an absurdly small cap breaks the tensor kernel sweep: bad input, exit 2
    code, _, err = run(
        capsys, "mf", "tensor", "--g", "1", "--i", "1", "--j", "2", "--degree-cap", "-5"
    )
    assert code == 2
    assert "error" in err
    # a generous cap works
    code, out, _ = run(
        capsys, "mf", "tensor", "--g", "1", "--i", "1", "--j", "2", "--degree-cap", "30"
    )
    assert code == 0


def test_ulrich_verify_rejects_corrupted_candidate(tmp_path, capsys):
    out_path = str(tmp_path / "cand.json")
    code, _, _ = run(
        capsys, "ulrich", "construct", "--n", "2", "--d", "1,2,3", "--out", out_path
    )
    assert code == 0
    data = json.loads(open(out_path).read())
    # tamper with one presentation coefficient
    data["presentation"]["entries"][0][0][1] += 1
    bad_path = str(tmp_path / "bad.json")
    open(bad_path, "w").write(json.dumps(data))
    code, out, _ = run(capsys, "ulrich", "verify", bad_path)
    assert code == 1
    assert "verification failed" in out


def test_ulrich_verify_transcript_stable_across_export(tmp_path, capsys):
    out_path = str(tmp_path / "cand.json")
    run(capsys, "ulrich", "for-roots", "--roots", "1,4,9,2,3", "--out", out_path)
    code, out1, _ = run(capsys, "ulrich", "verify", out_path, "--seed", "11")
    assert code == 0
    round_path = str(tmp_path / "round.json")
    code, _, _ = run(
        capsys, "--format", "json", "export", out_path, "--out", round_path
    )
    assert code == 0
    code, out2, _ = run(capsys, "ulrich", "verify", round_path, "--seed", "11")
    assert code == 0
    assert out1 == out2
