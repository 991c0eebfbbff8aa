import csv
import io
import json

from ihara_towers.towers_cli import (
    generate_family,
    graph_from_json,
    graph_to_json,
    main,
)


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_and_round_trip(tmp_path, capsys):
    path = tmp_path / "g.json"
    code, _, _ = run(["generate", "bouquet", "3", "5", "--output", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["vertices"] == ["v0"]
    assert [e["voltage"] for e in doc["edges"]] == [3, 5]
    vg = graph_from_json(doc)
    assert graph_to_json(vg) == doc


def test_generate_families():
    fib = generate_family("fibonacci", [])
    assert [fib.voltages[i] for i in range(2)] == [1, 2]
    gp = generate_family("petersen", [2])
    assert [gp.voltages[i] for i in range(3)] == [1, 0, 2]
    ig = generate_family("igraph", [2, 3])
    assert [ig.voltages[i] for i in range(3)] == [2, 0, 3]
    try:
        generate_family("dumbbell", [1])
        assert False
    except ValueError:
        pass


def test_analyze_command(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(["generate", "bouquet", "3", "5", "--output", str(path)], capsys)
    code, out, _ = run(["analyze", str(path), "--prime", "2", "--prime", "5"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["b"] == 5 and doc["e"] == 2
    assert doc["delta1"] == "-34"
    assert doc["padic_measure_exponents"] == {"2": 0, "5": 0}


def test_analyze_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    run(["generate", "bouquet", "0", "0", "--output", str(bad)], capsys)
    code, _, err = run(["analyze", str(bad)], capsys)
    assert code == 2 and "monodromy" in err

    cycle = tmp_path / "cycle.json"
    cycle.write_text(json.dumps({
        "vertices": ["a", "b", "c"],
        "edges": [
            {"from": "a", "to": "b", "voltage": 1},
            {"from": "b", "to": "c", "voltage": 0},
            {"from": "c", "to": "a", "voltage": 0},
        ],
    }))
    code, _, err = run(["analyze", str(cycle)], capsys)
    assert code == 2 and "Euler characteristic" in err


def test_table_csv_and_json(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(["generate", "bouquet", "3", "5", "--output", str(path)], capsys)
    code, out, _ = run(["table", str(path), "--n-max", "10", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["kappa"] for r in rows] == [
        "1", "4", "3", "32", "5", "300", "1183", "1024", "12321", "16820",
    ]
    assert rows[9]["resultant"] == "-168200" and rows[9]["delta"] == "57188"

    code, out, _ = run(["table", str(path), "--n-max", "1"], capsys)
    doc = json.loads(out)
    assert doc["rows"] == [{"n": 1, "kappa": "1", "resultant": "1", "delta": "-34"}]


def test_verify_command_and_mismatch(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(["generate", "fibonacci", "--output", str(path)], capsys)
    code, out, _ = run(["verify", str(path), "--n-max", "8"], capsys)
    assert code == 0 and json.loads(out)["ok"]

    code, out, _ = run(["verify", str(path), "--n-max", "6", "--mode", "bruteforce-small"], capsys)
    assert code == 0

    code, out, _ = run(["verify", str(path), "--n-max", "8", "--jobs", "2"], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_verify_detects_corruption(tmp_path, capsys, monkeypatch):
    # corrupt the formula path so the oracle disagrees
    path = tmp_path / "g.json"
    run(["generate", "fibonacci", "--output", str(path)], capsys)
    import ihara_towers.towers_cli as cli

    real = cli.kappa_sequence
    monkeypatch.setattr(cli, "kappa_sequence", lambda ta, n: [v + (i == 3) for i, v in enumerate(real(ta, n))])
    code, out, err = run(["verify", str(path), "--n-max", "6"], capsys)
    assert code == 3
    assert json.loads(out)["first_mismatch"]["n"] == 4
    assert "mismatch" in err


def test_padic_command(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(["generate", "fibonacci", "--output", str(path)], capsys)
    code, out, _ = run(["padic", str(path), "--prime", "2", "--n-max", "12", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    # ord2(n * F_n**2) for n = 1..6
    assert [r["ord"] for r in rows][:6] == ["0", "1", "2", "2", "0", "7"]
    assert all(r["source"] == "structural" for r in rows)

    code, out, _ = run(["padic", str(path), "--prime", "5", "--n-max", "5"], capsys)
    doc = json.loads(out)
    assert doc["ramified"] and doc["c"] == "-1"
    assert doc["rows"][4]["ord"] == "3"  # kappa(X_5) = 5 * 25


def test_asymptotics_command(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(["generate", "fibonacci", "--output", str(path)], capsys)
    code, out, _ = run(["asymptotics", str(path), "--n-probe", "150"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["applicable"] and doc["gap"] < 1e-8

    # circulant tower with jumps (1, 3)
    run(["generate", "circulant-base", "1", "3", "--output", str(path)], capsys)
    code, out, _ = run(["asymptotics", str(path), "--n-probe", "300"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["applicable"] and doc["gap"] < 1e-6


def test_max_bits_cap(tmp_path, capsys, monkeypatch):
    path = tmp_path / "g.json"
    run(["generate", "bouquet", "3", "5", "--output", str(path)], capsys)
    monkeypatch.setenv("IHARA_TOWERS_MAX_BITS", "64")
    code, _, err = run(["table", str(path), "--n-max", "40"], capsys)
    assert code == 4 and "resource" in err.lower()


def test_usage_error_exit_code(capsys):
    try:
        code = main(["generate", "nosuchfamily"])
    except SystemExit as exc:
        code = exc.code
    assert code == 1
