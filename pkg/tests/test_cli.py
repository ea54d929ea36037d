import io
import json

import jsonschema
import pytest

from quasiring.cli import OUTPUT_SCHEMAS, run
from quasiring.ring import parse_ring


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestCommands:
    def test_classify(self):
        code, out, _ = call("classify", "--ring", "Z/6", "--element", "2")
        d = json.loads(out)
        assert code == 0
        assert (d["in_N"], d["in_Q"], d["in_pi"]) == (False, True, True)
        assert d["witnesses"]["pi"] == "2*x - x^2"

    def test_radicals(self):
        code, out, _ = call("radicals", "--ring", "M2(Z/2)")
        d = json.loads(out)
        assert code == 0 and d["J"] == d["Nil_upper"] == d["Nil_lower"] == ["[[0,0],[0,0]]"]
        assert d["N_count"] == 4

    def test_verify(self):
        code, out, _ = call("verify", "--suite", "finite_core", "--max-n", "16")
        assert code == 0 and json.loads(out)["pass"] is True

    def test_witness(self):
        code, out, _ = call("witness", "--ring", "Q", "--element", "3/2")
        d = json.loads(out)
        assert d["pi_witness"] == "3*x - 2*x^2" and d["hat"] == "-3*x + x^2"

    def test_quasigroup(self):
        code, out, _ = call("quasigroup", "--ring", "Z/8", "--element", "2")
        assert code == 0 and json.loads(out)["pass"]

    def test_list_suites(self):
        code, out, _ = call("list-suites")
        assert code == 0 and {d["name"] for d in json.loads(out)} >= {"finite_core", "notcl"}


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ("classify", "--ring", "Z/1", "--element", "0"),
            ("classify", "--ring", "Z/6", "--element", "[[1]]"),
            ("radicals", "--ring", "Q"),
            ("verify", "--suite", "nope"),
            ("bogus",),
            ("classify", "--ring", "Z/6"),
            ("quasigroup", "--ring", "Z/4", "--element", "1"),
        ],
    )
    def test_usage_errors(self, argv, capsys):
        code, _, err = call(*argv)
        assert code == 2

    def test_failure_exit_code(self, monkeypatch):
        from quasiring import cli
        from quasiring.certificate import Certificate

        def failing(args):
            c = Certificate("demo", "label", "formula", 0)
            c.add("x", "breaks", False, {"detail": 1})
            return c, False

        monkeypatch.setitem(cli.COMMANDS, "list-suites", failing)
        code, _, err = call("list-suites")
        assert code == 1 and "counterexample" in err


class TestOutput:
    @pytest.mark.parametrize(
        "argv,schema",
        [
            (("classify", "--ring", "M2(Z/3)", "--element", "[[0,1],[0,0]]"), "classify"),
            (("radicals", "--ring", "Z/8"), "radicals"),
            (("witness", "--ring", "Z/4", "--element", "2"), "witness"),
            (("witness", "--ring", "Q", "--element", "5/3"), "witness"),
            (("quasigroup", "--ring", "M2(Z/2)"), "quasigroup"),
            (("verify", "--suite", "notcl"), "verify"),
            (("list-suites",), "list-suites"),
        ],
    )
    def test_json_schema(self, argv, schema):
        code, out, _ = call(*argv)
        assert code == 0
        jsonschema.validate(json.loads(out), OUTPUT_SCHEMAS[schema])

    def test_descriptor_roundtrip(self):
        _, out, _ = call("classify", "--ring", "Z/4+M2(F2)", "--element", "(2|[[0,1],[0,0]])")
        d = json.loads(out)
        assert str(parse_ring(d["ring"])) == d["ring"]

    def test_csv_and_text(self):
        _, out, _ = call("verify", "--suite", "notcl", "--format", "csv")
        assert out.splitlines()[0] == "suite,input,claim,result"
        _, out, _ = call("radicals", "--ring", "Z/8", "--format", "text")
        assert "chain_holds: True" in out

    def test_out_file(self, tmp_path):
        target = tmp_path / "cert.json"
        code, out, _ = call("verify", "--suite", "notcl", "--no-timing", "--out", str(target))
        assert code == 0 and out == ""
        data = json.loads(target.read_text())
        assert "elapsed_ms" not in data
        assert not [p for p in tmp_path.iterdir() if p.name.startswith(".quasiring-")]
