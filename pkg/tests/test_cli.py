import json
import random
from fractions import Fraction as F

import pytest

from plconj import cli
from plconj.plmap import PLMap, compose, conjugate_by, evaluate, invert, power
from plconj.randgen import random_element

X0_DOC = [["0", "0"], ["1/2", "1/4"], ["3/4", "1/2"], ["1", "1"]]
X1_DOC = [["0", "0"], ["1/2", "1/2"], ["3/4", "5/8"], ["7/8", "3/4"], ["1", "1"]]


def run_cli(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParseElement:
    def test_nodes_doc(self, x0):
        assert cli.parse_element(X0_DOC) == x0
        assert cli.parse_element({"nodes": X0_DOC}) == x0

    def test_word_identity(self):
        assert cli.parse_element({"word": "x0 x0^-1"}).is_identity()

    def test_word_expansion(self, x0, x1):
        expanded = cli.parse_element({"word": "x2"})
        assert expanded == compose(invert(x0), compose(x1, x0))

    def test_word_powers(self, x0):
        assert cli.parse_element({"word": "x0^3"}) == power(x0, 3)

    def test_generator_relation(self, x0, x1):
        # x1 x0 = x0 x2 with the product as composition
        lhs = compose(x1, x0)
        rhs = compose(x0, cli.parse_element({"word": "x2"}))
        assert lhs == rhs

    def test_round_trip(self):
        rng = random.Random(50)
        for _ in range(30):
            f = random_element(rng)
            assert cli.parse_element(cli.serialize_element(f)) == f

    def test_bad_input(self):
        with pytest.raises(cli.InputError):
            cli.parse_element([["0", "0"], ["1/3", "1/2"], ["1", "1"]])
        with pytest.raises(cli.InputError):
            cli.parse_element({"word": "y0"})
        with pytest.raises(cli.InputError):
            cli.parse_element(17)


class TestCommands:
    def test_reach_yes(self, capsys, x0):
        code, out, _ = run_cli(capsys, ["reach", "1/17", "13/17"])
        assert code == 0
        doc = json.loads(out)
        witness = cli.parse_element(doc["witness"])
        assert evaluate(witness, F(1, 17)) == F(13, 17)

    def test_reach_no(self, capsys):
        code, out, _ = run_cli(capsys, ["reach", "1/17", "3/17"])
        assert code == 1
        doc = json.loads(out)
        assert doc["obstruction"]["kind"] == "exponent congruence unsolvable"

    def test_reach_bad_input(self, capsys):
        code, _, err = run_cli(capsys, ["reach", "1/17"])
        assert code == 2 and err

    def test_eval(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, ["eval", "1/3", "--in", "-"], stdin=json.dumps(X0_DOC), monkeypatch=monkeypatch
        )
        assert code == 0 and json.loads(out) == {"value": "1/6"}

    def test_compose_invert_power(self, capsys, monkeypatch, x0):
        doc = json.dumps({"f": X0_DOC, "g": X0_DOC})
        code, out, _ = run_cli(capsys, ["compose", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        assert code == 0
        assert cli.parse_element(json.loads(out)["result"]) == power(x0, 2)
        code, out, _ = run_cli(
            capsys, ["invert", "--in", "-"], stdin=json.dumps(X0_DOC), monkeypatch=monkeypatch
        )
        assert cli.parse_element(json.loads(out)["result"]) == invert(x0)
        code, out, _ = run_cli(
            capsys, ["power", "3", "--in", "-"], stdin=json.dumps(X0_DOC), monkeypatch=monkeypatch
        )
        assert cli.parse_element(json.loads(out)["result"]) == power(x0, 3)

    def test_fixedset(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, ["fixedset", "--in", "-"], stdin=json.dumps(X1_DOC), monkeypatch=monkeypatch
        )
        assert code == 0
        assert json.loads(out) == {
            "components": [
                {"type": "interval", "lo": "0", "hi": "1/2"},
                {"type": "point", "at": "1"},
            ]
        }

    def test_conjugate_yes_and_verify(self, capsys, monkeypatch, x0):
        rng = random.Random(51)
        g = random_element(rng)
        z = conjugate_by(x0, g)
        doc = json.dumps({"y": X0_DOC, "z": cli.serialize_element(z)})
        code, out, _ = run_cli(capsys, ["conjugate", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        assert code == 0
        witness = json.loads(out)["witness"]
        vdoc = json.dumps({"y": X0_DOC, "z": cli.serialize_element(z), "g": witness})
        code, out, _ = run_cli(capsys, ["verify", "--in", "-"], stdin=vdoc, monkeypatch=monkeypatch)
        assert code == 0 and json.loads(out) == {"verified": True}

    def test_conjugate_no(self, capsys, monkeypatch):
        doc = json.dumps({"y": X0_DOC, "z": X1_DOC})
        code, out, _ = run_cli(capsys, ["conjugate", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        assert code == 1
        assert json.loads(out)["obstruction"]["kind"] == "fixed-set mismatch"

    def test_simconj(self, capsys, monkeypatch, x0, x1):
        rng = random.Random(52)
        g = random_element(rng)
        doc = json.dumps(
            {
                "xs": [cli.serialize_element(x0), cli.serialize_element(x1)],
                "ys": [
                    cli.serialize_element(conjugate_by(x0, g)),
                    cli.serialize_element(conjugate_by(x1, g)),
                ],
            }
        )
        code, out, _ = run_cli(capsys, ["simconj", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        assert code == 0
        witness = cli.parse_element(json.loads(out)["witness"])
        assert conjugate_by(x0, witness) == conjugate_by(x0, g)

    def test_simconj_length_mismatch(self, capsys, monkeypatch):
        doc = json.dumps({"xs": [X0_DOC], "ys": [X0_DOC, X1_DOC]})
        code, _, err = run_cli(capsys, ["simconj", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        assert code == 2 and err

    def test_roots_and_centralizer(self, capsys, monkeypatch, x0):
        doc = json.dumps(cli.serialize_element(power(x0, 2)))
        code, out, _ = run_cli(capsys, ["roots", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        got = json.loads(out)["roots"]
        assert [r["degree"] for r in got] == [1, 2]
        assert cli.parse_element(got[1]["root"]) == x0
        code, out, _ = run_cli(
            capsys, ["centralizer", "--in", "-"], stdin=json.dumps(X0_DOC), monkeypatch=monkeypatch
        )
        desc = json.loads(out)
        assert (desc["m"], desc["n"]) == (0, 1)
        assert cli.parse_element(desc["factors"][0]["generator"]) == x0

    def test_intersect_reduce2_round_trip(self, capsys, monkeypatch):
        doc = json.dumps({"xs": [X0_DOC, X1_DOC]})
        code, out, _ = run_cli(capsys, ["intersect", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        assert code == 0
        desc_doc = json.loads(out)
        assert all(f["kind"] == "trivial" for f in desc_doc["factors"])
        code, out, _ = run_cli(
            capsys, ["reduce2", "--in", "-"], stdin=json.dumps(desc_doc), monkeypatch=monkeypatch
        )
        assert code == 0
        pair = json.loads(out)
        doc2 = json.dumps({"xs": [pair["w1"], pair["w2"]]})
        code, out, _ = run_cli(capsys, ["intersect", "--in", "-"], stdin=doc2, monkeypatch=monkeypatch)
        assert json.loads(out) == desc_doc

    def test_gen_deterministic(self, capsys):
        code, out1, _ = run_cli(capsys, ["gen", "pair", "2", "--seed", "9"])
        assert code == 0
        code, out2, _ = run_cli(capsys, ["gen", "pair", "2", "--seed", "9"])
        assert out1 == out2
        vectors = json.loads(out1)["vectors"]
        assert len(vectors) == 2
        for v in vectors:
            y = cli.parse_element(v["y"])
            z = cli.parse_element(v["z"])
            g = cli.parse_element(v["conjugator"])
            assert conjugate_by(y, g) == z

    def test_plot(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, ["plot", "--in", "-"], stdin=json.dumps(X0_DOC), monkeypatch=monkeypatch
        )
        assert code == 0
        assert "1/2" in out and "1/4" in out and "f(x)" in out

    def test_output_determinism(self, capsys, monkeypatch):
        doc = json.dumps({"y": X0_DOC, "z": X0_DOC})
        code, out1, _ = run_cli(capsys, ["conjugate", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        code, out2, _ = run_cli(capsys, ["conjugate", "--in", "-"], stdin=doc, monkeypatch=monkeypatch)
        assert out1 == out2

    def test_bad_json(self, capsys, monkeypatch):
        code, _, err = run_cli(capsys, ["conjugate", "--in", "-"], stdin="nope", monkeypatch=monkeypatch)
        assert code == 2 and "JSON" in err

    def test_missing_field(self, capsys, monkeypatch):
        code, _, err = run_cli(
            capsys, ["conjugate", "--in", "-"], stdin=json.dumps({"y": X0_DOC}), monkeypatch=monkeypatch
        )
        assert code == 2 and "'z'" in err
