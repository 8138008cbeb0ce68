import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from hypersym import __version__, cli
from hypersym.classify import REFERENCE_CUBIC_FOURFOLDS
from hypersym.diagact import DiagonalAutomorphism, acts_with_character, pgl_order
from hypersym.polyforms import parse_polynomial

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "output_schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return data


class TestOrders:
    def test_cubic_fourfolds(self, capsys):
        code, out, _ = run(capsys, "orders", "--d", "3", "--N", "6")
        assert code == 0 and out.splitlines()[0] == "21 30 32 33 36 48"
        assert "48: (v) a=(1,) b=5" in out

    def test_cubic_threefolds(self, capsys):
        _, out, _ = run(capsys, "orders", "--d", "3", "--N", "5")
        assert out.splitlines()[0] == "11 15 16 18 24"

    def test_expand(self, capsys):
        _, out, _ = run(capsys, "orders", "--d", "3", "--N", "3", "--expand")
        assert "all orders: 1 2 3 4 6" in out

    def test_json(self, capsys):
        data = run_json(capsys, "orders", "--d", "3", "--N", "6", "--expand")
        assert data["result"]["maximal_orders"] == [21, 30, 32, 33, 36, 48]
        assert data["d"] == 3 and data["N"] == 6 and data["version"] == __version__
        assert 16 in data["result"]["expanded"]

    def test_bad_degree(self, capsys):
        code, _, err = run(capsys, "orders", "--d", "2", "--N", "6")
        assert code == 2 and "d >= 3" in err

    def test_missing_flag(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["orders", "--d", "3"])
        assert exc.value.code == 2


class TestGroup:
    def test_k6(self, capsys):
        _, out, _ = run(capsys, "group", "--d", "3", "--type", "K6")
        first = next(line for line in out.splitlines() if line.startswith("Z/"))
        group, gen = first.split(", generator ")
        assert group == "Z/21"
        assert DiagonalAutomorphism.parse(gen).projectively_equal(DiagonalAutomorphism.parse("1/63(1,-2,4,-8,16,-32)"))

    def test_fermat(self, capsys):
        _, out, _ = run(capsys, "group", "--d", "3", "--type", "K1+K1+K1")
        assert "Z/3 x Z/3" in out

    def test_support_infinite(self, capsys, tmp_path):
        f = tmp_path / "nonsmooth.json"
        f.write_text(json.dumps({"d": 3, "n_vars": 3, "monomials": [[2, 1, 0], [1, 2, 0]]}))
        code, out, _ = run(capsys, "group", "--d", "3", "--support", str(f))
        assert code == 0 and "InfiniteGroup" in out
        data = run_json(capsys, "group", "--d", "3", "--support", str(f))
        assert data["result"]["group"]["finite"] is False
        assert data["result"]["necessary_check"] == {"A": [3], "B": []}

    def test_support_finite(self, capsys, tmp_path):
        f = tmp_path / "klein.json"
        f.write_text(json.dumps([[2, 1, 0], [0, 2, 1], [1, 0, 2]]))
        data = run_json(capsys, "group", "--support", str(f))
        assert data["result"]["group"]["invariant_factors"] == [3]
        assert data["result"]["necessary_check"] is None

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "group", "--d", "3", "--type", "Q7")
        assert code == 2 and "Q7" in err

    def test_type_needs_degree(self, capsys):
        assert run(capsys, "group", "--type", "K3")[0] == 2

    def test_budget_exit_code(self, capsys, tmp_path, monkeypatch):
        f = tmp_path / "klein.json"
        f.write_text(json.dumps([[2, 1, 0], [0, 2, 1], [1, 0, 2]]))
        monkeypatch.setenv("HYPERSYM_BUDGET", "1")
        code, _, err = run(capsys, "group", "--support", str(f))
        assert code == 3 and "budget" in err


class TestSmooth:
    def test_klein(self, capsys):
        assert run(capsys, "smooth", "--d", "3", "--targets", "2,3,1")[1].strip() == "SMOOTH type K3"

    def test_single(self, capsys):
        assert run(capsys, "smooth", "--d", "3", "--targets", "1")[1].strip() == "SMOOTH type K1"

    def test_singular_witness(self, capsys):
        out = run(capsys, "smooth", "--d", "3", "--targets", "3,3,1", "--witness")[1]
        assert out.strip() == "SINGULAR at [1 : e^{iπ/2} : 0]"

    def test_singular_plain(self, capsys):
        out = run(capsys, "smooth", "--d", "3", "--targets", "3,3,1")[1]
        assert out.startswith("SINGULAR")

    def test_json(self, capsys):
        data = run_json(capsys, "smooth", "--d", "4", "--targets", "3,3,3", "--witness")
        assert data["result"]["witness"]["angles"] == ["0", "1/6", None]

    def test_bad_targets(self, capsys):
        assert run(capsys, "smooth", "--d", "3", "--targets", "3,x")[0] == 2
        assert run(capsys, "smooth", "--d", "3", "--targets", "4,1,1")[0] == 2

    def test_verification_failure_exit(self, capsys, monkeypatch):
        import hypersym.oracle

        monkeypatch.setattr(hypersym.oracle, "verify_singular_point", lambda iv, w, mode="exact": False)
        assert run(capsys, "smooth", "--d", "3", "--targets", "3,3,1", "--witness")[0] == 4


class TestWitness:
    def test_order_48(self, capsys):
        out = run(capsys, "witness", "--d", "3", "--N", "6", "--order", "48")[1]
        lines = dict(line.split(": ", 1) for line in out.splitlines()[1:])
        assert lines["type"] == "T5+K1"
        assert lines["polynomial"] == "x1^2*x2 + x2^2*x3 + x3^2*x4 + x4^2*x5 + x5^3 + x6^3"
        g = DiagonalAutomorphism.parse(lines["automorphism"])
        assert g.projectively_equal(DiagonalAutomorphism.parse("1/48(3,-6,12,-24,0,16)"))

    def test_identity(self, capsys):
        out = run(capsys, "witness", "--d", "3", "--N", "6", "--order", "1")[1]
        assert "x1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x6^3" in out and "pgl order 1" in out

    def test_none(self, capsys):
        code, out, _ = run(capsys, "witness", "--d", "3", "--N", "6", "--order", "50")
        assert code == 0 and out.startswith("NONE")

    @pytest.mark.parametrize("n", [2, 7, 11, 12, 16, 21, 30, 32, 33, 36, 48])
    def test_round_trip(self, capsys, n):
        data = run_json(capsys, "witness", "--d", "3", "--N", "6", "--order", str(n))["result"]
        s = parse_polynomial(data["polynomial"], 6)
        g = DiagonalAutomorphism.parse(data["automorphism"])
        assert acts_with_character(g, s) == data["character"]
        assert pgl_order(g) == n == data["pgl_order"]

    def test_verification_failure_exit(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "pgl_order", lambda g: -1)
        assert run(capsys, "witness", "--d", "3", "--N", "6", "--order", "48")[0] == 4


class TestCubic4:
    def test_text(self, capsys):
        out = run(capsys, "cubic4")[1]
        assert out.splitlines()[0] == "maximal orders: 21 30 32 33 36 48"
        assert "published ones: 6/6" in out and "unique type for every order: yes" in out

    def test_json(self, capsys):
        data = run_json(capsys, "cubic4")["result"]
        assert data["unique"] is True
        rows = {r["order"]: r for r in data["rows"]}
        for n, type_text, aut_text in REFERENCE_CUBIC_FOURFOLDS:
            assert rows[n]["type"] == type_text
            assert rows[n]["admitting_types"] == [type_text]
            assert rows[n]["matches_reference"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["orders", "--d", "3", "--N", "6", "--json"],
        ["cubic4", "--json"],
        ["witness", "--d", "3", "--N", "6", "--order", "36", "--json"],
    ],
)
def test_json_is_byte_identical_across_processes(argv):
    outs = [
        subprocess.run([sys.executable, "-m", "hypersym", *argv], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]
    jsonschema.validate(json.loads(outs[0]), SCHEMA)


def test_version(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--version"])
    assert __version__ in capsys.readouterr().out
