"""SAT-driven generation of diverse targeted input patterns.

Every emitted pattern is a solver model of the circuit formula under the
target literals, so by construction it drives all target nodes to their
desired values.  Diversity is enforced as a minimum pairwise Hamming
distance: each accepted pattern contributes a blocking clause (never repeat
the exact assignment) and an at-least-``d_min`` constraint over the input
literals that disagree with it.  Generation stops at the pattern budget, at
UNSAT (the qualifying solution space is exhausted), or after too many
consecutive rejections.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cnf import CnfFormula
from .graph import CircuitGraph
from .pattern import InputPattern
from .sat import SolverSession
from .targets import project_model


class GenConfigError(ValueError):
    pass


@dataclass
class GenConfig:
    pattern_budget: int = 100
    d_min: int = 2
    retry_budget: int = 20
    seed: int = 0
    conflict_budget: int | None = None

    def __post_init__(self):
        if self.pattern_budget < 1:
            raise GenConfigError("pattern_budget must be >= 1")
        if self.d_min < 2:
            raise GenConfigError("d_min must be >= 2")
        if self.retry_budget < 1:
            raise GenConfigError("retry_budget must be >= 1")


@dataclass
class GenReport:
    patterns: list[InputPattern] = field(default_factory=list)
    observed_d_max: int = 0
    observed_d_min: int = 0
    exhausted: bool = False
    solver_calls: int = 0
    wall_time: float = 0.0

    @property
    def pattern_count(self) -> int:
        return len(self.patterns)


def generate(formula: CnfFormula, target_literals, config: GenConfig) -> GenReport:
    """Generate up to ``config.pattern_budget`` targeted patterns.

    ``exhausted`` is set only on UNSAT, i.e. when no further pattern at
    distance >= ``d_min`` from all accepted ones exists; giving up after
    ``retry_budget`` consecutive rejections leaves it false.
    """
    width = len(formula.input_vars)
    if config.d_min > width:
        raise GenConfigError(
            f"d_min {config.d_min} exceeds the {width} primary inputs")
    started = time.perf_counter()
    session = SolverSession(formula, decision_seed=config.seed,
                            conflict_budget=config.conflict_budget)
    target_literals = list(target_literals)
    patterns: list[InputPattern] = []
    solver_calls = 0
    rejections = 0
    exhausted = False
    while len(patterns) < config.pattern_budget:
        result = session.solve(assumptions=target_literals)
        solver_calls += 1
        if not result.is_sat:
            exhausted = True
            break
        candidate = project_model(result.model, formula)
        diff_lits = _difference_literals(candidate, formula)
        session.add_clause(diff_lits)  # blocking clause: never repeat exactly
        if all(candidate.hamming(p) >= config.d_min for p in patterns):
            patterns.append(candidate)
            session.encode_at_least_k(diff_lits, config.d_min)
            rejections = 0
        else:
            # unreachable with a sound solver (each accepted pattern already
            # carries its distance constraint); kept as a guard
            rejections += 1
            if rejections >= config.retry_budget:
                break
    d_lo, d_hi = _distance_extremes(patterns)
    return GenReport(
        patterns=patterns,
        observed_d_max=d_hi,
        observed_d_min=d_lo,
        exhausted=exhausted,
        solver_calls=solver_calls,
        wall_time=time.perf_counter() - started,
    )


def _difference_literals(pattern: InputPattern, formula: CnfFormula):
    """Literals true exactly where an input differs from ``pattern``.

    Their disjunction is the pattern's blocking clause; an at-least-k
    constraint over them is the Hamming-distance floor.
    """
    return [-var if bit else var
            for var, bit in zip(formula.input_vars, pattern.bits)]


def _distance_extremes(patterns):
    lo = hi = 0
    first = True
    for i in range(len(patterns)):
        for j in range(i + 1, len(patterns)):
            d = patterns[i].hamming(patterns[j])
            if first:
                lo = hi = d
                first = False
            else:
                lo = min(lo, d)
                hi = max(hi, d)
    return lo, hi


def write_patterns(report: GenReport, graph: CircuitGraph) -> str:
    """Pattern file: a header of input names, then one bitstring per line.

    The leftmost bit of each line is the first primary input.
    """
    lines = ["# " + " ".join(graph.names[n] for n in graph.primary_inputs)]
    for p in report.patterns:
        lines.append(p.to_string())
    return "\n".join(lines) + "\n"


def read_patterns(text: str) -> list[InputPattern]:
    """Inverse of :func:`write_patterns` (header and comments skipped)."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(InputPattern.from_string(line))
    return out


def report_csv_row(report: GenReport, graph: CircuitGraph, state_pct: float,
                   site_pct: float, target_count: int, design: str | None = None,
                   wall_time: float | None = None) -> str:
    """One summary CSV row: design, gate/node/input counts, target share,
    pattern count, time, both coverage percentages, max Hamming distance."""
    gates = sum(1 for k in graph.kinds if k != "INPUT")
    pct_targets = 100.0 * target_count / graph.node_count if graph.node_count else 0.0
    time_field = "" if wall_time is None else f"{wall_time:.3f}"
    return ",".join([
        design if design is not None else graph.name,
        str(gates),
        str(graph.node_count),
        str(graph.input_count),
        f"{pct_targets:.2f}",
        str(report.pattern_count),
        time_field,
        f"{state_pct:.2f}",
        f"{site_pct:.2f}",
        str(report.observed_d_max),
    ])


REPORT_CSV_HEADER = ("design,gates,nodes,inputs,pct_target_nodes,"
                     "patterns,time_s,state_coverage_pct,site_coverage_pct,d_max")
