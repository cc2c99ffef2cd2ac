"""Command-line pipeline: targeted generation, fuzzer comparison, diff targets.

Exit codes: 0 success, 1 parse/read error, 2 configuration error, 3 invalid
(unreachable) target state, 4 solver conflict budget exhausted.  All
randomness is seeded, and data files never contain wall-clock values, so
identical invocations produce byte-identical outputs; timing lives in the
JSON run manifest that every command emits.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .blif import parse_blif
from .bench import parse_bench
from .cgf import run_cgf
from .cnf import encode, write_dimacs
from .coverage import coverage_curve, curve_csv, measure
from .graph import build_graph, diff_graphs
from .netlist import NetlistError, scan_convert
from .sat import InfeasibleConstraintError, SolverBudgetError
from .seedgen import (REPORT_CSV_HEADER, GenConfig, GenConfigError, generate,
                      report_csv_row, write_patterns)
from .targets import (TargetError, build_target_formula, check_validity,
                      parse_targets, targets_from_diff)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CONFIG = 2
EXIT_INVALID_TARGET = 3
EXIT_BUDGET = 4


class _Manifest:
    """Run metadata: input digests, config, stage times, output paths."""

    def __init__(self, command, args_namespace):
        self.data = {
            "tool_version": __version__,
            "command": command,
            "config": {},
            "inputs": {},
            "stage_times_s": {},
            "outputs": [],
        }
        for key in ("pattern_budget", "d_min", "seed", "trials", "polarity",
                    "conflict_budget"):
            if hasattr(args_namespace, key):
                self.data["config"][key] = getattr(args_namespace, key)
        self._last = time.perf_counter()

    def read_input(self, path):
        with open(path, "rb") as fh:
            raw = fh.read()
        self.data["inputs"][str(path)] = hashlib.sha256(raw).hexdigest()
        return raw.decode("utf-8")

    def stage(self, name):
        now = time.perf_counter()
        self.data["stage_times_s"][name] = round(now - self._last, 6)
        self._last = now

    def write_output(self, path, text):
        if path is None:
            return
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        self.data["outputs"].append(str(path))

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.data, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _load_netlist(manifest, path):
    text = manifest.read_input(path)
    name = str(path).rsplit("/", 1)[-1].rsplit(".", 1)[0]
    if str(path).endswith(".blif") or text.lstrip().startswith(".model"):
        return parse_blif(text, name=name)
    return parse_bench(text, name=name)


def _prepare(manifest, netlist_path, targets_path):
    netlist = scan_convert(_load_netlist(manifest, netlist_path))
    graph = build_graph(netlist)
    manifest.stage("parse_and_graph")
    formula = encode(graph)
    manifest.stage("encode")
    spec = parse_targets(manifest.read_input(targets_path), graph)
    manifest.stage("parse_targets")
    return graph, formula, spec


def cmd_gen(args) -> int:
    manifest = _Manifest("gen", args)
    graph, formula, spec = _prepare(manifest, args.netlist, args.targets)
    literals = build_target_formula(spec, formula)
    if args.dimacs_out:
        manifest.write_output(args.dimacs_out, write_dimacs(formula, assumptions=literals))

    verdict = check_validity(spec, formula, decision_seed=args.seed,
                             conflict_budget=args.conflict_budget)
    manifest.stage("check_validity")
    if not verdict.is_valid:
        print(f"targeted state is invalid: no input reaches all {len(spec)} "
              f"target values simultaneously")
        manifest.save(args.manifest_out)
        return EXIT_INVALID_TARGET
    print(f"targeted state is valid (witness {verdict.witness.to_string()})")

    config = GenConfig(pattern_budget=args.pattern_budget, d_min=args.d_min,
                       seed=args.seed, conflict_budget=args.conflict_budget)
    report = generate(formula, literals, config)
    manifest.stage("generate")

    cov = measure(graph, spec, report.patterns)
    manifest.write_output(args.patterns_out, write_patterns(report, graph))
    if args.report_out:
        row = report_csv_row(report, graph, state_pct=cov.state_coverage_pct,
                             site_pct=cov.site_coverage_pct, target_count=len(spec))
        manifest.write_output(args.report_out, REPORT_CSV_HEADER + "\n" + row + "\n")
    manifest.stage("report")
    manifest.save(args.manifest_out)

    print(f"{len(report.patterns)} patterns "
          f"({'space exhausted' if report.exhausted else 'budget reached'}), "
          f"{report.solver_calls} solver calls, "
          f"state coverage {cov.state_coverage_pct:.2f}%, "
          f"site coverage {cov.site_coverage_pct:.2f}%, "
          f"d_max {report.observed_d_max}")
    return EXIT_OK


def cmd_compare(args) -> int:
    manifest = _Manifest("compare", args)
    graph, formula, spec = _prepare(manifest, args.netlist, args.targets)
    literals = build_target_formula(spec, formula)
    config = GenConfig(pattern_budget=args.pattern_budget, d_min=args.d_min,
                       seed=args.seed, conflict_budget=args.conflict_budget)
    sat_report = generate(formula, literals, config)
    sat_curve = coverage_curve(graph, spec, sat_report.patterns)
    sat_cov = measure(graph, spec, sat_report.patterns)
    manifest.stage("sat_generation")

    trials = []
    for t in range(args.trials):
        trials.append(run_cgf(graph, spec, budget=args.pattern_budget,
                              rng_seed=args.seed + t))
    manifest.stage("cgf_trials")

    manifest.write_output(args.sat_curve_out, curve_csv(sat_curve))
    manifest.write_output(args.cgf_curve_out, curve_csv(_mean_curve([t.curve for t in trials])))
    summary = _summary_csv(sat_cov, sat_curve, len(sat_report.patterns),
                           [t.report for t in trials], [t.curve for t in trials],
                           args.pattern_budget)
    manifest.write_output(args.summary_out, summary)
    manifest.stage("report")
    manifest.save(args.manifest_out)
    print(summary, end="")
    return EXIT_OK


def _mean_curve(curves):
    """Index-wise mean of equal-length coverage curves."""
    if not curves:
        return []
    length = max(len(c) for c in curves)
    out = []
    for i in range(length):
        states = [c[i][1] for c in curves if i < len(c)]
        sites = [c[i][2] for c in curves if i < len(c)]
        out.append((i + 1, sum(states) / len(states), sum(sites) / len(sites)))
    return out


def _first_full_state(curve):
    for index, state, _ in curve:
        if state == 100.0:
            return index
    return None


def _summary_csv(sat_cov, sat_curve, sat_patterns, cgf_reports, cgf_curves, budget):
    def fmt(x):
        return "" if x is None else (f"{x:.2f}" if isinstance(x, float) else str(x))

    def stats(values):
        present = [v for v in values if v is not None]
        if not present:
            return None, None, None
        return sum(present) / len(present), min(present), max(present)

    lines = ["metric,sat,cgf_mean,cgf_min,cgf_max"]
    for metric, sat_value, cgf_values in (
        ("state_coverage_pct", sat_cov.state_coverage_pct,
         [r.state_coverage_pct for r in cgf_reports]),
        ("site_coverage_pct", sat_cov.site_coverage_pct,
         [r.site_coverage_pct for r in cgf_reports]),
        ("first_full_state_index", _first_full_state(sat_curve),
         [_first_full_state(c) for c in cgf_curves]),
        ("patterns", sat_patterns, [budget] * len(cgf_reports)),
    ):
        mean, lo, hi = stats(cgf_values)
        mean = float(mean) if mean is not None else None
        lines.append(",".join([metric, fmt(sat_value), fmt(mean), fmt(lo), fmt(hi)]))
    return "\n".join(lines) + "\n"


def cmd_targets_diff(args) -> int:
    manifest = _Manifest("targets-diff", args)
    original = build_graph(scan_convert(_load_netlist(manifest, args.original)))
    modified = build_graph(scan_convert(_load_netlist(manifest, args.modified)))
    manifest.stage("parse_and_graph")
    diff = diff_graphs(original, modified)
    specs = targets_from_diff(diff, args.polarity)
    manifest.stage("diff")

    paths = _polarity_paths(args.out, args.polarity)
    by_polarity = {spec.entries[0][1]: spec for spec in specs if spec.entries}
    for polarity, path in paths:
        spec = by_polarity.get(polarity)
        manifest.write_output(path, spec.to_text(modified) if spec else "")
    manifest.stage("write")
    manifest.save(args.manifest_out)
    print(f"{len(diff.changed)} changed, {len(diff.added)} added; "
          f"wrote {', '.join(p for _, p in paths)}")
    return EXIT_OK


def _polarity_paths(out, polarity):
    if polarity in ("0", "1"):
        return [(int(polarity), out)]
    stem, dot, ext = out.rpartition(".")
    if not dot:
        stem, ext = out, ""
    suffix = lambda tag: f"{stem}.{tag}.{ext}" if dot else f"{out}.{tag}"
    return [(0, suffix("all0")), (1, suffix("all1"))]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatefuzz",
        description="SAT-directed test pattern generation for gate-level netlists")
    parser.add_argument("--version", action="version", version=f"gatefuzz {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_targets=True):
        p.add_argument("netlist", help="netlist file (.bench or .blif)")
        if with_targets:
            p.add_argument("targets", help="target file: <node>=<0|1> per line")
        p.add_argument("-R", "--patterns", dest="pattern_budget", type=int, default=100,
                       help="pattern budget (default 100)")
        p.add_argument("--dmin", dest="d_min", type=int, default=2,
                       help="minimum pairwise Hamming distance (default 2)")
        p.add_argument("--seed", type=int, default=0, help="base RNG/decision seed")
        p.add_argument("--conflict-budget", type=int, default=None,
                       help="abort any solve after this many conflicts")
        p.add_argument("--manifest-out", default="gatefuzz-manifest.json",
                       help="run manifest path (default gatefuzz-manifest.json)")

    gen = sub.add_parser("gen", help="generate targeted patterns")
    common(gen)
    gen.add_argument("--dimacs-out", default=None,
                     help="write the circuit CNF plus target unit clauses as DIMACS")
    gen.add_argument("--patterns-out", default=None, help="write the pattern file")
    gen.add_argument("--report-out", default=None, help="write the summary CSV row")
    gen.set_defaults(func=cmd_gen)

    cmp_ = sub.add_parser("compare", help="compare against coverage-guided fuzzing")
    common(cmp_)
    cmp_.add_argument("--trials", type=int, default=15,
                      help="number of seeded CGF runs (default 15)")
    cmp_.add_argument("--sat-curve-out", default=None, help="SAT coverage curve CSV")
    cmp_.add_argument("--cgf-curve-out", default=None, help="mean CGF coverage curve CSV")
    cmp_.add_argument("--summary-out", default=None, help="summary CSV")
    cmp_.set_defaults(func=cmd_compare)

    diff = sub.add_parser("targets-diff", help="derive targets from a netlist diff")
    diff.add_argument("original", help="original netlist")
    diff.add_argument("modified", help="modified netlist")
    diff.add_argument("--polarity", choices=("0", "1", "both"), default="both")
    diff.add_argument("--out", default="diff.targets", help="output target file")
    diff.add_argument("--manifest-out", default="gatefuzz-manifest.json")
    diff.set_defaults(func=cmd_targets_diff)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename}", file=sys.stderr)
        return EXIT_PARSE
    except (NetlistError, TargetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GenConfigError, InfeasibleConstraintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
