import json

import pytest

from complexity_one.catalog import load, simplex_lambda, simplex_polytope
from complexity_one.cli import main
from complexity_one.io import (
    canonical_json,
    chardata_from_dict,
    chardata_to_dict,
    lambda_to_dict,
    loads,
    polytope_to_dict,
    sponge_to_dict,
    weight_system_to_dict,
)
from complexity_one.lattice import vec
from complexity_one.weights import WeightSystem


@pytest.fixture
def workdir(tmp_path):
    ws = WeightSystem(4, (vec(1, 0, -1), vec(0, 1, -1), vec(-1, 0, -1), vec(0, -1, -1)))
    (tmp_path / "weights.json").write_text(canonical_json(weight_system_to_dict(ws)))
    (tmp_path / "delta3.json").write_text(canonical_json(polytope_to_dict(simplex_polytope())))
    (tmp_path / "lam.json").write_text(canonical_json(lambda_to_dict(simplex_lambda())))
    cd = load("g42").data
    (tmp_path / "g42.json").write_text(canonical_json(chardata_to_dict(cd)))
    (tmp_path / "g42sponge.json").write_text(canonical_json(sponge_to_dict(cd.sponge)))
    return tmp_path


class TestCommands:
    def test_validate_weights(self, workdir, capsys):
        code = main(["validate-weights", str(workdir / "weights.json")])
        out = capsys.readouterr().out
        assert code == 0
        assert "c=[1, -1, 1, -1]" in out
        assert "strictly-appropriate" in out

    def test_validate_sponge(self, workdir, capsys):
        code = main(["validate-sponge", str(workdir / "g42sponge.json")])
        assert code == 0

    def test_homology(self, workdir, capsys):
        code = main(["homology", str(workdir / "g42sponge.json")])
        out = capsys.readouterr().out
        assert code == 0 and "1 0 4" in out

    def test_reduce_emits_chardata(self, workdir, capsys):
        out_file = workdir / "cd.json"
        code = main(
            [
                "reduce",
                "--polytope",
                str(workdir / "delta3.json"),
                "--lambda",
                str(workdir / "lam.json"),
                "--alpha",
                "1,1,-1",
                "-o",
                str(out_file),
            ]
        )
        assert code == 0
        cd = chardata_from_dict(loads(out_file.read_text()))
        assert cd.n == 3 and cd.ambient.kind == "sphere"

    def test_reduce_solver_fallback(self, workdir, capsys):
        code = main(
            [
                "reduce",
                "--polytope",
                str(workdir / "delta3.json"),
                "--lambda",
                str(workdir / "lam.json"),
            ]
        )
        out = capsys.readouterr().out
        assert code == 0 and "subtorus" in out

    def test_validate_chardata(self, workdir, capsys):
        code = main(["validate-chardata", str(workdir / "g42.json")])
        out = capsys.readouterr().out
        assert code == 0 and "euler-cycle" in out

    def test_compare_equivalent(self, workdir, capsys):
        code = main(["compare", str(workdir / "g42.json"), str(workdir / "g42.json")])
        out = capsys.readouterr().out
        assert code == 0 and "Equivalent" in out

    def test_compare_flipped_sign(self, workdir, capsys):
        data = loads((workdir / "g42.json").read_text())
        fid = sorted(data["euler_sign"])[0]
        data["euler_sign"][fid] = -data["euler_sign"][fid]
        (workdir / "flipped.json").write_text(canonical_json(data))
        code = main(["compare", str(workdir / "g42.json"), str(workdir / "flipped.json")])
        out = capsys.readouterr().out
        assert code == 1 and "Inequivalent" in out

    def test_catalog_verify(self, capsys):
        code = main(["catalog", "f3"])
        assert code == 0

    def test_catalog_list(self, capsys):
        code = main(["--format", "json", "catalog", "--list"])
        out = capsys.readouterr().out
        payload = json.loads(out)
        assert code == 0 and payload["command"] == "catalog"

    def test_malformed_json_exits_2(self, workdir, capsys):
        bad = workdir / "bad.json"
        bad.write_text("{broken")
        code = main(["validate-sponge", str(bad)])
        assert code == 2

    def test_unknown_catalog_exits_2(self, capsys):
        assert main(["catalog", "missing-entry"]) == 2

    def test_float_rejected(self, workdir, capsys):
        bad = workdir / "float.json"
        bad.write_text('{"n": 3.5, "weights": []}')
        code = main(["validate-weights", str(bad)])
        assert code == 2


class TestRoundTrip:
    def test_emitted_chardata_revalidates_identically(self, workdir, capsys):
        out_file = workdir / "cd.json"
        main(
            [
                "reduce",
                "--polytope",
                str(workdir / "delta3.json"),
                "--lambda",
                str(workdir / "lam.json"),
                "--alpha",
                "1,1,-1",
                "-o",
                str(out_file),
            ]
        )
        capsys.readouterr()
        code1 = main(["--format", "json", "validate-chardata", str(out_file)])
        first = capsys.readouterr().out
        # serialize -> parse -> serialize is byte-stable
        parsed = chardata_from_dict(loads(out_file.read_text()))
        again = canonical_json(chardata_to_dict(parsed)) + "\n"
        assert again == out_file.read_text()
        (workdir / "cd2.json").write_text(again)
        code2 = main(["--format", "json", "validate-chardata", str(workdir / "cd2.json")])
        second = capsys.readouterr().out
        assert code1 == code2 == 0
        assert first.replace(str(out_file), "X") == second.replace(str(workdir / "cd2.json"), "X")

    def test_big_integer_encoding(self):
        from complexity_one.io import _decode_int, _encode_int

        big = 2**80 + 7
        assert _encode_int(big) == str(big)
        assert _decode_int(str(big), "t") == big
        assert _encode_int(12) == 12
