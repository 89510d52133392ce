import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cgframes import GFrameFamily, certify, compose, example_2_3
from cgframes import io as fio
from cgframes.cli import main
from cgframes.core import block_distance, block_norm
from cgframes.errors import SpecFormatError
from cgframes.generators import random_frame_with_bounds


def write(path, fam):
    fio.write_family(path, fam)
    return str(path)


@pytest.fixture
def files(tmp_path):
    th = example_2_3()
    return {
        "example": write(tmp_path / "example_2_3.json", th),
        "zero": write(tmp_path / "zero_family.json", GFrameFamily.from_blocks([np.zeros((1, 2))], [1.0])),
        "diag12": write(tmp_path / "diag12.json", compose(th, np.diag([1.0, 2.0]))),
        "diag1half": write(tmp_path / "diag1half.json", compose(th, np.diag([1.0, 0.5]))),
        "scaled": write(tmp_path / "scaled.json", compose(th, 2 * np.eye(2))),
        "frame13": write(tmp_path / "frame13.json", GFrameFamily.from_blocks([np.eye(2), [[1.0, 1.0]]], [1, 1])),
        "singular": write(tmp_path / "singular.json", compose(th, np.diag([1.0, 0.0]))),
    }


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


# --- file formats -------------------------------------------------------------

def test_family_file_roundtrip_is_bit_exact(tmp_path):
    fam = random_frame_with_bounds(9, 4, [2, 1, 3], [0.1, 1 / 3, 7.0], 0.3, 11.0)
    path = write(tmp_path / "f.json", fam)
    back = fio.read_family(path)
    assert back.weights == fam.weights
    assert all(a.tobytes() == b.tobytes() for a, b in zip(fam.blocks, back.blocks))
    assert fio.dumps_family(back) == fio.dumps_family(fam)


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=2, max_size=2),
       st.floats(1e-300, 1e300))
def test_complex_entries_roundtrip(entry, weight):
    fam = GFrameFamily.from_blocks([[[complex(*entry)]]], [weight])
    back = fio.loads_family(fio.dumps_family(fam))
    assert back.blocks[0].tobytes() == fam.blocks[0].tobytes()
    assert back.weights == fam.weights


@pytest.mark.parametrize("text,where", [
    ('{"ambient_dim": 2, "atoms": [{"weight": 1, "block": [[[1,0],[0,0]], [[1,0]]]}]}', "atoms[0].block[1]"),
    ('{"ambient_dim": 2, "atoms": [{"weight": 1, "block": [[[1,0],[0,0],[0,0]]]}]}', "atoms[0].block[0]"),
    ('{"ambient_dim": 2, "atoms": [{"weight": -1, "block": [[[1,0],[0,0]]]}]}', "atoms[0].weight"),
    ('{"ambient_dim": 2, "atoms": [{"weight": 1, "block": [[[1,0],"x"]]}]}', "atoms[0].block[0][1]"),
    ('{"ambient_dim": 0, "atoms": []}', "ambient_dim"),
    ('{"ambient_dim": 2,\n "atoms": [}', "line 2"),
])
def test_parse_errors_carry_context(text, where):
    with pytest.raises(SpecFormatError) as info:
        fio.loads_family(text)
    assert where in str(info.value)


def test_certificate_roundtrip():
    cert = certify(random_frame_with_bounds(1, 3, [1, 2], None, 0.5, 2.0))
    doc = fio.certificate_document(cert, "sha256:00", 0.125)
    text = json.dumps(doc)
    doc2, cert2 = fio.read_certificate_document(text)
    assert cert2 == cert
    assert doc2 == doc


def test_cframe_roundtrip(tmp_path):
    from cgframes.induced import LocalBases, induce

    fam = random_frame_with_bounds(2, 3, [2, 2], [0.5, 3.0], 1.0, 2.0)
    u = induce(fam, LocalBases.identity(fam.dims))
    fio.write_cframe(tmp_path / "u.json", u)
    back = fio.read_cframe(tmp_path / "u.json")
    assert back.vectors.tobytes() == u.vectors.tobytes()
    assert back.weights.tobytes() == u.weights.tobytes()
    assert back.origins == u.origins


# --- certify ------------------------------------------------------------------

def test_certify_example(capsys, files):
    code, doc = run_json(capsys, ["certify", files["example"], "--json"])
    assert code == 0
    c = doc["certificate"]
    assert c["is_orthonormal_basis"] is True
    assert c["lower_bound"] == c["upper_bound"] == 1.0
    assert doc["input_digest"].startswith("sha256:")
    assert doc["tolerance"] == 1e-8
    assert {"tool", "version", "elapsed_seconds"} <= doc.keys()


def test_certify_zero(capsys, files):
    code, doc = run_json(capsys, ["certify", files["zero"], "--json"])
    assert code == 0
    assert doc["certificate"]["is_frame"] is False and doc["certificate"]["lower_bound"] == 0.0


def test_certify_text_and_out(capsys, files, tmp_path):
    assert main(["certify", files["frame13"]]) == 0
    out = capsys.readouterr().out
    assert "is_frame" in out and "yes" in out
    assert "defect parseval" in out and "e+00" in out
    report = tmp_path / "report.json"
    assert main(["certify", files["example"], "--json", "--out", str(report)]) == 0
    doc, cert = fio.read_certificate_document(report.read_text())
    assert cert.is_orthonormal_basis


def test_certify_malformed(capsys, tmp_path):
    bad = tmp_path / "malformed.json"
    bad.write_text('{"ambient_dim": 2, "atoms": [{"weight": 1, "block": [[[1, 0]]]}]}')
    assert main(["certify", str(bad)]) == 2
    assert "atoms[0].block[0]" in capsys.readouterr().err
    assert main(["certify", str(tmp_path / "missing.json")]) == 2


def test_certify_invalid_tolerance(files):
    assert main(["certify", files["example"], "--tol", "-1"]) == 2


# --- factorize ----------------------------------------------------------------

def test_factorize(capsys, files):
    code, doc = run_json(capsys, ["factorize", files["diag12"], files["example"], "--json"])
    assert code == 0
    t = doc["transition"]
    V = np.array([[complex(*z) for z in row] for row in t["V"]])
    np.testing.assert_allclose(V, np.diag([1, 2]), atol=1e-15)
    assert t["is_invertible"] is True and t["is_isometry"] is False
    code, doc = run_json(capsys, ["factorize", files["example"], files["example"], "--json"])
    assert code == 0
    V = np.array([[complex(*z) for z in row] for row in doc["transition"]["V"]])
    np.testing.assert_array_equal(V, np.eye(2))
    assert main(["factorize", files["example"], files["scaled"]]) == 3
    assert main(["factorize", files["example"], files["example"]]) == 0


# --- split ----------------------------------------------------------------------

def test_split_parseval_pair(capsys, files, tmp_path):
    out = tmp_path / "pp"
    code, manifest = run_json(capsys, ["split", files["diag1half"], files["example"],
                                       "--kind", "parseval-pair", "--out", str(out), "--json"])
    assert code == 0
    assert manifest["coefficients"] == pytest.approx([0.5, 0.5], abs=1e-15)
    assert all(manifest["recertified"])
    for name in manifest["parts"]:
        assert certify(fio.read_family(out / name)).is_parseval


def test_split_three_onb(files, tmp_path):
    out = tmp_path / "t"
    assert main(["split", files["example"], files["example"], "--kind", "three-onb", "--out", str(out)]) == 0
    sp = fio.read_split(out / "manifest.json")
    assert len(sp.parts) == 3
    assert all(certify(p).is_orthonormal_basis for p in sp.parts)
    assert block_distance(sp.recombine(), example_2_3()) <= 1e-12


def test_split_precondition_failures(files, tmp_path):
    assert main(["split", files["frame13"], files["example"], "--kind", "two-onb", "--out", str(tmp_path / "a")]) == 4
    assert main(["split", files["singular"], files["example"], "--kind", "two-onb", "--out", str(tmp_path / "b")]) == 4
    assert main(["split", files["singular"], files["example"], "--kind", "onb-riesz", "--out", str(tmp_path / "c")]) == 4
    assert main(["split", files["diag12"], files["scaled"], "--kind", "three-onb", "--out", str(tmp_path / "d")]) == 3


# --- induce ---------------------------------------------------------------------

def test_induce(capsys, files, tmp_path):
    out = tmp_path / "u.json"
    code, rep = run_json(capsys, ["induce", files["example"], "--bases", "identity", "--out", str(out), "--json"])
    assert code == 0 and rep["holds"]
    assert rep["c_certificate"]["lower_bound"] == rep["c_certificate"]["upper_bound"] == 1.0
    u = fio.read_cframe(out)
    np.testing.assert_array_equal(u.vectors, np.eye(2))
    code, rep = run_json(capsys, ["induce", files["frame13"], "--bases", "random:4", "--json"])
    assert code == 0
    assert rep["g_certificate"]["upper_bound"] == pytest.approx(3.0)
    assert rep["c_certificate"]["upper_bound"] == pytest.approx(3.0)


def test_induce_errors(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["induce", str(bad)]) == 2
    assert main(["induce", files["example"], "--bases", "fourier"]) == 64


def test_induce_disagreement_exit_code(files, monkeypatch):
    import cgframes.cli as cli
    from cgframes.induced import EquivalenceReport

    real = cli.equivalence_report

    def broken(*a, **k):
        rep = real(*a, **k)
        return EquivalenceReport(rep.g_certificate, rep.c_certificate, {**rep.agreements, "is_frame": False},
                                 rep.lower_bound_diff, rep.upper_bound_diff, rep.operator_diff, rep.tolerance)

    monkeypatch.setattr(cli, "equivalence_report", broken)
    assert main(["induce", files["example"]]) == 5


# --- generate -----------------------------------------------------------------

def test_generate_onb(tmp_path):
    out = tmp_path / "onb.json"
    assert main(["generate", "--class", "onb", "--n", "4", "--dims", "2,2", "--seed", "9", "--out", str(out)]) == 0
    assert certify(fio.read_family(out)).is_orthonormal_basis


def test_generate_frame(capsys):
    assert main(["generate", "--class", "frame", "--n", "3", "--dims", "2,2", "--A", "1", "--B", "3"]) == 0
    fam = fio.loads_family(capsys.readouterr().out)
    c = certify(fam)
    assert c.lower_bound == pytest.approx(1.0, rel=1e-9) and c.upper_bound == pytest.approx(3.0, rel=1e-9)


def test_generate_inconsistent():
    assert main(["generate", "--class", "riesz", "--n", "2", "--dims", "1,1,1", "--A", "1", "--B", "2"]) == 2
    assert main(["generate", "--class", "frame", "--n", "2"]) == 2
    assert main(["generate", "--class", "frame", "--n", "2", "--weights", "1,-1", "--A", "1", "--B", "2"]) == 2


def test_usage_errors():
    assert main(["certify", "x.json", "--bogus"]) == 64
    assert main([]) == 64
    assert main(["frobnicate"]) == 64
    assert main(["split", "a.json", "b.json", "--kind", "nope", "--out", "d"]) == 64


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "cgframes", "certify", files["example"], "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certificate"]["is_orthonormal_basis"]


def test_pipeline_roundtrip(tmp_path):
    frame_path = tmp_path / "frame.json"
    basis_path = tmp_path / "basis.json"
    assert main(["generate", "--class", "riesz", "--n", "3", "--dims", "1,2", "--weights", "0.5,2",
                 "--A", "0.5", "--B", "4", "--seed", "21", "--out", str(frame_path)]) == 0
    assert main(["generate", "--class", "onb", "--n", "3", "--dims", "1,2", "--weights", "0.5,2",
                 "--seed", "22", "--out", str(basis_path)]) == 0
    original = certify(fio.read_family(frame_path))
    for kind in ("parseval-pair", "three-onb", "two-onb", "onb-riesz"):
        out = tmp_path / kind
        assert main(["split", str(frame_path), str(basis_path), "--kind", kind, "--out", str(out)]) == 0
        sp = fio.read_split(out / "manifest.json")
        rec = sp.recombine()
        fam = fio.read_family(frame_path)
        assert block_distance(rec, fam) <= 1e-8 * block_norm(fam)
        c = certify(rec)
        assert c.flags() == original.flags()
        assert abs(c.lower_bound - original.lower_bound) <= 1e-8 * original.upper_bound
        assert abs(c.upper_bound - original.upper_bound) <= 1e-8 * original.upper_bound
