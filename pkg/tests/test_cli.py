import io
import json
import subprocess
import sys

import pytest

from tetrablock.cli import dumps, main


def run(*argv, stdin=""):
    out = io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None)


def c(z):
    return [z.real, z.imag]


def triple(a, b, d):
    return json.dumps({"x": [c(complex(a)), c(complex(b)), c(complex(d))]})


IDENTITY = {"omega": [-1, 0], "alpha": [0, 0]}


class TestCheck:
    def test_origin(self):
        code, out = run("check", triple(0, 0, 0))
        assert code == 0
        assert out["consensus"] and out["member"]

    def test_outside(self):
        code, out = run("check", triple(1, 0, 0))
        assert code == 1
        assert out["consensus"] and not out["member"]

    def test_triangular(self):
        code, out = run("check", triple(0.5, 0.5, 0.25))
        assert code == 0 and out["triangular"]
        assert out["margins"]["inequality"] == pytest.approx(0.375)

    def test_stdin(self):
        code, out = run("check", stdin=triple(0, 0, 0))
        assert code == 0 and out["member"]
        code, _ = run("check", "-", stdin=triple(0, 0, 0))
        assert code == 0


class TestSchwarz:
    def test_infeasible(self):
        code, out = run("schwarz", json.dumps({"y": [[0.9, 0], [0, 0], [0.2, 0]]}))
        assert code == 1 and out["feasible"] is False

    def test_central(self):
        lam = [[0.5, 0], [0, -0.3]]
        code, out = run("schwarz", json.dumps({"y": [[0, 0], [0, 0], [1, 0]], "lambda": lam}))
        assert code == 0 and out["degenerate"]
        for sample in out["phi_samples"]:
            assert sample["phi"][:2] == [[0, 0], [0, 0]]
            assert sample["phi"][2] == pytest.approx(sample["lambda"])

    def test_coefficient(self):
        code, out = run("schwarz", json.dumps({"y": [[0.5, 0], [0.25, 0], [0.25, 0]]}), "--emit-F")
        assert code == 0
        assert out["C"] == [0.2857142857142857, 0.0]
        assert len(out["phi_samples"]) == 8 == len(out["F_samples"])

    def test_sample_count(self):
        _, out = run("schwarz", "--lambda-samples", "3", json.dumps({"y": [[0.5, 0], [0, 0], [0, 0]]}))
        assert len(out["phi_samples"]) == 3


class TestCanonical:
    def test_central(self):
        code, out = run("canonical", triple(0, 0, 0.5))
        assert code == 0 and out["r"] == 0.5
        assert out["image"][2] == pytest.approx([0.5, 0], abs=1e-15)

    def test_triangular(self):
        code, out = run("canonical", triple(0.3, 0.4j, 0.12j))
        assert code == 0 and out["r"] < 1e-9

    def test_random(self):
        _, out = run("canonical", triple(0.2 + 0.1j, -0.3j, 0.4))
        assert out["image"][0] == pytest.approx([0, 0], abs=1e-9)
        assert out["image"][2] == pytest.approx([out["r"], 0], abs=1e-9)

    def test_outside(self):
        code, out = run("canonical", triple(0, 0, 1))
        assert code == 1 and "error" in out


class TestAut:
    def test_apply_identity(self):
        g = {"upsilon": IDENTITY, "chi": IDENTITY, "flip": False}
        x = [[0.1, 0.2], [0.3, 0], [0, 0.1]]
        code, out = run("aut", "apply", json.dumps({"g": g, "x": x}))
        assert code == 0 and out["image"] == x

    def test_apply_rotation(self):
        g = {"upsilon": {"omega": [0, -1], "alpha": [0, 0]}, "chi": IDENTITY, "flip": False}
        code, out = run("aut", "apply", json.dumps({"g": g, "x": [[0.5, 0], [0.25, 0], [0.1, 0]]}))
        # rotation by i: (i x1, x2, i x3)
        assert out["image"] == [[0, 0.5], [0.25, 0], [0, 0.1]]

    def test_compose_then_apply(self):
        g = {"upsilon": {"omega": [0, 1], "alpha": [0.3, 0.1]}, "chi": IDENTITY, "flip": True}
        h = {"upsilon": IDENTITY, "chi": {"omega": [1, 0], "alpha": [-0.2, 0.4]}, "flip": False}
        x = [[0.1, 0.2], [0.3, 0], [0, 0.1]]
        _, comp = run("aut", "compose", json.dumps({"g": g, "h": h}))
        _, direct = run("aut", "apply", json.dumps({"g": comp["composite"], "x": x}))
        _, hx = run("aut", "apply", json.dumps({"g": h, "x": x}))
        _, seq = run("aut", "apply", json.dumps({"g": g, "x": hx["image"]}))
        for a, b in zip(direct["image"], seq["image"]):
            assert a == pytest.approx(b, abs=1e-12)

    def test_inverse(self):
        g = {"upsilon": {"omega": [0, 1], "alpha": [0.3, 0.1]}, "chi": IDENTITY, "flip": True}
        code, out = run("aut", "inverse", json.dumps({"g": g}))
        assert code == 0 and out["inverse"]["flip"] is True

    def test_bad_omega(self):
        g = {"upsilon": {"omega": [2, 0], "alpha": [0, 0]}, "chi": IDENTITY, "flip": False}
        code, out = run("aut", "inverse", json.dumps({"g": g}))
        assert code == 2 and "error" in out


class TestMu:
    def test_feasible(self):
        a = [[0, 0], [1, 0], [0, 0], [0, 0]]
        b = [[0, 0], [0, 0], [1, 0], [0, 0]]
        code, out = run("mu", json.dumps({"a": a, "b": b}))
        assert code == 0 and out["feasible"] and out["wedge"] == [1, 0]

    def test_infeasible(self):
        a = [[0, 0], [1, 0], [0, 0], [0, 0]]
        b = [[1, 0], [0, 0], [1, 0], [1, 0]]
        code, out = run("mu", json.dumps({"a": a, "b": b}))
        assert code == 1 and not out["feasible"]

    def test_diagonal_b(self):
        a = [[0, 0], [1, 0], [0, 0], [0, 0]]
        b = [[1, 0], [0, 0], [0, 0], [1, 0]]
        code, _ = run("mu", json.dumps({"a": a, "b": b}))
        assert code == 2


class TestVerify:
    def test_small_run(self):
        code, out = run("verify", "--samples", "200", "--seed", "3")
        assert code == 0 and out["clean"]
        assert [r["suite"] for r in out["reports"]] == ["cross", "invariance"]

    def test_byte_identical(self):
        texts = []
        for _ in range(2):
            buf = io.StringIO()
            main(["verify", "--suite", "cross", "--samples", "100", "--grid", "32"], stdout=buf)
            doc = json.loads(buf.getvalue())
            for r in doc["reports"]:
                r.pop("elapsed")
            texts.append(dumps(doc))
        assert texts[0] == texts[1]

    def test_unknown_suite(self):
        code, out = run("verify", "--suite", "nope")
        assert code == 2 and "error" in out


class TestInputErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["check", "{not json"],
            ["check", '{"x": [[0, 0], [0, 0]]}'],
            ["check", '{"y": []}'],
            ["schwarz", '{"y": "abc"}'],
            ["aut", "apply", '{"x": [[0,0],[0,0],[0,0]]}'],
        ],
    )
    def test_malformed(self, argv):
        code, out = run(*argv)
        assert code == 2 and "error" in out

    def test_unknown_command(self):
        assert run("frobnicate")[0] == 2


def test_floats_round_trip():
    v = 0.1 + 0.2
    assert float(dumps(v)) == v
    assert dumps({"a": [1.5, True, None]}) == '{"a":[1.5,true,null]}'


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tetrablock", "check", triple(0, 0, 0)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["member"] is True
