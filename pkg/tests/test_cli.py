import csv
import io
import json

import pytest

from toric_ech.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats_json(capsys):
    code, out, _ = run(capsys, "stats", "e_{1,1}^3")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["index"] == 18


def test_capacities_csv(capsys):
    code, out, _ = run(capsys, "capacities", "B(1)", "--k-max", "10", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "capacity_num", "capacity_den"]
    oracle = sorted(m + n for m in range(11) for n in range(11))[:11]
    assert [int(r[1]) for r in rows[1:]] == oracle
    assert all(r[2] == "1" for r in rows[1:])


def test_pipeline_exit_code(capsys):
    code, out, _ = run(capsys, "pipeline", "--a", "2", "--c", "29/10")
    assert code == 10
    assert json.loads(out)["verdict"] == "EmbeddingObstructed"


def test_pipeline_trace(capsys):
    code, out, _ = run(capsys, "pipeline", "--a", "2", "--c", "29/10", "--trace", "--format", "text")
    assert code == 10 and out.startswith("# P(2,1) -> B(29/10)")


def test_pipeline_volume_gate(capsys):
    code, _, err = run(capsys, "pipeline", "--a", "2", "--c", "3")
    assert code == 2 and "not below" in err


def test_pipeline_endpoint_note(capsys):
    code, out, _ = run(capsys, "pipeline", "--explain-endpoint", "--format", "text")
    assert code == 0 and "irrational" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["stats", "--nope", "e_{1,1}"],
        ["pipeline", "--a", "2", "--c", "2.9"],
        ["capacities", "B(1)"],
        ["stats", "e_{2,2}"],
        ["obstruct", "--from", "P(2,1)", "--to", "B(3)", "e_{1,1}", "--nonminimal-target"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_obstruct_codes(capsys):
    code, out, _ = run(capsys, "obstruct", "--from", "P(2,1)", "--to", "B(29/10)", "e_{1,1}^4")
    assert code == 10 and json.loads(out)["outcome"] == "Obstructed"
    code, out, _ = run(capsys, "obstruct", "--from", "P(2,1)", "--to", "B(3)", "e_{1,1}^2")
    assert code == 0 and json.loads(out)["witness"]


def test_generator_round_trip(capsys):
    from toric_ech.generators import parse_generator

    _, out, _ = run(capsys, "enumerate", "--max-x", "3", "--max-y", "3", "--allow-h")
    for text in json.loads(out)["generators"]:
        assert str(parse_generator(text)) == text
    _, out, _ = run(capsys, "product", "e_{1,0}^3 e_{2,1} e_{1,3}", "e_{2,1} e_{0,1}^2")
    data = json.loads(out)
    assert data["index"] == data["index_formula"] == 120
    assert str(parse_generator(data["product"])) == data["product"]


def test_misc_commands(capsys):
    assert run(capsys, "index", "e_{1,1}^2", "--format", "text")[1] == "10\n"
    assert run(capsys, "action", "P(2,1)", "e_{1,0}^2 e_{0,1}", "--format", "text")[1] == "4\n"
    code, out, _ = run(capsys, "leq", "--from", "P(2,1)", "--to", "B(2)", "e_{1,0}^2", "e_{1,1}")
    assert json.loads(out)["holds"] is True
    code, out, _ = run(capsys, "minimal", "B(1)", "--k", "3")
    assert json.loads(out)["unique"] is False
    code, out, _ = run(capsys, "construct", "large-d", "--d", "9", "--format", "text")
    assert out == "e_{1,0}^4 e_{20,1} e_{0,1}\n"
    code, out, _ = run(capsys, "construct", "y", "--d", "3", "--delta", "2")
    assert json.loads(out)["Y"] == "e_{2,1} e_{1,1}"
    code, out, _ = run(capsys, "witness", "--a", "13/5", "--d", "5")
    assert json.loads(out)["witness"] == "e_{1,0}^6 e_{7,1}"
    code, out, _ = run(capsys, "verify", "--format", "csv")
    assert code == 0 and out.count("\n") == 4


def test_no_color(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    _, out, _ = run(capsys, "verify", "--format", "text")
    assert "\033[" not in out
