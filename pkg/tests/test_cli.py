import json

from gatefuzz.bench import parse_bench
from gatefuzz.cli import main
from gatefuzz.fixtures import fixture_text
from gatefuzz.graph import build_graph
from gatefuzz.netlist import scan_convert
from gatefuzz.seedgen import read_patterns
from gatefuzz.simulate import simulate
from gatefuzz.targets import parse_targets


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _setup_c17(tmp_path, targets="n22=1\n"):
    netlist = _write(tmp_path, "c17.bench", fixture_text("c17.bench"))
    targets_path = _write(tmp_path, "t.targets", targets)
    return netlist, targets_path


def test_gen_c17_end_to_end(tmp_path):
    netlist, targets = _setup_c17(tmp_path)
    patterns_out = str(tmp_path / "patterns.txt")
    report_out = str(tmp_path / "report.csv")
    dimacs_out = str(tmp_path / "formula.cnf")
    code = main(["gen", netlist, targets, "-R", "10",
                 "--patterns-out", patterns_out, "--report-out", report_out,
                 "--dimacs-out", dimacs_out,
                 "--manifest-out", str(tmp_path / "m.json")])
    assert code == 0
    patterns = read_patterns(open(patterns_out).read())
    assert len(patterns) >= 1
    graph = build_graph(scan_convert(parse_bench(fixture_text("c17.bench"), name="c17")))
    spec = parse_targets("n22=1", graph)
    for p in patterns:
        assert simulate(graph, p)[spec.entries[0][0]] == 1
    report = open(report_out).read().splitlines()
    assert report[0].startswith("design,")
    assert report[1].split(",")[7] == "100.00"  # state coverage
    dimacs = open(dimacs_out).read()
    assert "p cnf 11 19" in dimacs  # 18 circuit clauses + 1 target unit
    manifest = json.load(open(tmp_path / "m.json"))
    assert manifest["command"] == "gen"
    assert len(manifest["inputs"]) == 2
    assert set(manifest["outputs"]) == {dimacs_out, patterns_out, report_out}


def test_gen_unsatisfiable_target_exits_3(tmp_path, capsys):
    # y = a AND NOT(a) is constant 0, so y=1 is unreachable
    netlist = _write(tmp_path, "c.bench",
                     "INPUT(a)\nINPUT(b)\nOUTPUT(y)\nn = NOT(a)\ny = AND(a, n)\n")
    targets = _write(tmp_path, "t.targets", "y=1\n")
    code = main(["gen", netlist, targets, "--manifest-out", str(tmp_path / "m.json")])
    assert code == 3
    assert "invalid" in capsys.readouterr().out


def test_gen_missing_netlist_exits_1(tmp_path):
    targets = _write(tmp_path, "t.targets", "y=1\n")
    code = main(["gen", str(tmp_path / "nope.bench"), targets,
                 "--manifest-out", str(tmp_path / "m.json")])
    assert code == 1


def test_gen_parse_error_exits_1(tmp_path):
    netlist = _write(tmp_path, "bad.bench", "INPUT(a)\nwat\n")
    targets = _write(tmp_path, "t.targets", "y=1\n")
    assert main(["gen", netlist, targets,
                 "--manifest-out", str(tmp_path / "m.json")]) == 1


def test_gen_unknown_target_node_exits_1(tmp_path):
    netlist, targets = _setup_c17(tmp_path, targets="bogus=1\n")
    assert main(["gen", netlist, targets,
                 "--manifest-out", str(tmp_path / "m.json")]) == 1


def test_gen_bad_dmin_exits_2(tmp_path):
    netlist, targets = _setup_c17(tmp_path)
    assert main(["gen", netlist, targets, "--dmin", "9",
                 "--manifest-out", str(tmp_path / "m.json")]) == 2


def test_gen_budget_exhausted_exits_4(tmp_path):
    # XOR/XNOR disagreement needs at least one decision and conflict
    netlist = _write(tmp_path, "hard.bench",
                     "INPUT(a)\nINPUT(b)\nOUTPUT(y)\nOUTPUT(z)\n"
                     "y = XOR(a, b)\nz = XNOR(a, b)\n")
    targets = _write(tmp_path, "t.targets", "y=1\nz=1\n")
    code = main(["gen", netlist, targets, "--conflict-budget", "0",
                 "--manifest-out", str(tmp_path / "m.json")])
    assert code == 4


def test_gen_blif_input(tmp_path):
    netlist = _write(tmp_path, "t.blif",
                     ".model t\n.inputs a b\n.outputs y\n.names a b y\n11 1\n.end")
    targets = _write(tmp_path, "t.targets", "y=1\n")
    patterns_out = str(tmp_path / "p.txt")
    code = main(["gen", netlist, targets, "--patterns-out", patterns_out,
                 "--manifest-out", str(tmp_path / "m.json")])
    assert code == 0
    assert read_patterns(open(patterns_out).read())[0].bits == (1, 1)


def test_compare_or4_and_determinism(tmp_path):
    netlist = _write(tmp_path, "or4.bench", fixture_text("or4.bench"))
    targets = _write(tmp_path, "t.targets", "y=1\n")
    outs = {}
    for run in ("a", "b"):
        outs[run] = {
            "sat": str(tmp_path / f"sat_{run}.csv"),
            "cgf": str(tmp_path / f"cgf_{run}.csv"),
            "summary": str(tmp_path / f"sum_{run}.csv"),
        }
        code = main(["compare", netlist, targets, "-R", "12", "--trials", "5",
                     "--seed", "7",
                     "--sat-curve-out", outs[run]["sat"],
                     "--cgf-curve-out", outs[run]["cgf"],
                     "--summary-out", outs[run]["summary"],
                     "--manifest-out", str(tmp_path / f"m_{run}.json")])
        assert code == 0
    for key in ("sat", "cgf", "summary"):
        assert open(outs["a"][key]).read() == open(outs["b"][key]).read()
    summary = open(outs["a"]["summary"]).read().splitlines()
    assert summary[0] == "metric,sat,cgf_mean,cgf_min,cgf_max"
    state = summary[1].split(",")
    assert state[0] == "state_coverage_pct" and state[1] == "100.00"


def test_compare_single_trial(tmp_path):
    netlist = _write(tmp_path, "or4.bench", fixture_text("or4.bench"))
    targets = _write(tmp_path, "t.targets", "y=1\n")
    summary_out = str(tmp_path / "s.csv")
    code = main(["compare", netlist, targets, "-R", "8", "--trials", "1",
                 "--summary-out", summary_out,
                 "--manifest-out", str(tmp_path / "m.json")])
    assert code == 0
    row = open(summary_out).read().splitlines()[1].split(",")
    assert row[2] == row[3] == row[4]  # mean == min == max with one trial


def test_targets_diff_identical_files(tmp_path):
    netlist = _write(tmp_path, "c17.bench", fixture_text("c17.bench"))
    out = str(tmp_path / "d.targets")
    code = main(["targets-diff", netlist, netlist, "--polarity", "1",
                 "--out", out, "--manifest-out", str(tmp_path / "m.json")])
    assert code == 0
    assert open(out).read() == ""


def test_targets_diff_kind_mutation(tmp_path):
    a = _write(tmp_path, "a.bench", "INPUT(x)\nINPUT(y)\nOUTPUT(z)\nz = AND(x, y)\n")
    b = _write(tmp_path, "b.bench", "INPUT(x)\nINPUT(y)\nOUTPUT(z)\nz = OR(x, y)\n")
    out = str(tmp_path / "d.targets")
    code = main(["targets-diff", a, b, "--polarity", "1", "--out", out,
                 "--manifest-out", str(tmp_path / "m.json")])
    assert code == 0
    assert open(out).read() == "z=1\n"


def test_targets_diff_both_polarities_added_gate(tmp_path):
    a = _write(tmp_path, "a.bench", fixture_text("c17.bench"))
    b_text = fixture_text("c17.bench").replace(
        "n16 = NAND(n2, n11)", "nX = NAND(n11, n11)\nn16 = NAND(n2, nX)")
    b = _write(tmp_path, "b.bench", b_text)
    out = str(tmp_path / "d.targets")
    code = main(["targets-diff", a, b, "--polarity", "both", "--out", out,
                 "--manifest-out", str(tmp_path / "m.json")])
    assert code == 0
    all0 = open(tmp_path / "d.all0.targets").read()
    all1 = open(tmp_path / "d.all1.targets").read()
    assert sorted(all1.splitlines()) == ["n16=1", "nX=1"]
    assert sorted(all0.splitlines()) == ["n16=0", "nX=0"]


def test_targets_diff_parse_failure_exits_1(tmp_path):
    a = _write(tmp_path, "a.bench", "INPUT(x)\nnope\n")
    b = _write(tmp_path, "b.bench", "INPUT(x)\nOUTPUT(y)\ny = BUF(x)\n")
    assert main(["targets-diff", a, b, "--out", str(tmp_path / "d.targets"),
                 "--manifest-out", str(tmp_path / "m.json")]) == 1
