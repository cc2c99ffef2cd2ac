"""Target state and target site coverage over simulated pattern sets.

State coverage counts a target node as covered once any applied pattern
drives it to its desired value.  Site coverage uses toggle semantics: a
target node is covered once the pattern set has exercised it to both 0 and
1.  Both metrics are cumulative, so appending patterns never decreases them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CircuitGraph
from .simulate import WORD_WIDTH, simulate_batch
from .targets import TargetSpec


@dataclass
class TargetCoverage:
    node: int
    desired: int
    reached_state: bool = False
    saw_0: bool = False
    saw_1: bool = False
    first_reach_index: int | None = None  # 1-based pattern number

    @property
    def toggled(self) -> bool:
        return self.saw_0 and self.saw_1


@dataclass
class CoverageReport:
    per_target: list[TargetCoverage]
    state_coverage_pct: float
    site_coverage_pct: float
    patterns_applied: int

    def first_reach_indices(self):
        return [t.first_reach_index for t in self.per_target]


def measure(graph: CircuitGraph, spec: TargetSpec, patterns) -> CoverageReport:
    """Coverage of the target spec over the whole pattern list."""
    patterns = list(patterns)
    per_target = _scan(graph, spec, patterns)
    state_pct, site_pct = _percentages(per_target)
    return CoverageReport(
        per_target=per_target,
        state_coverage_pct=state_pct,
        site_coverage_pct=site_pct,
        patterns_applied=len(patterns),
    )


def coverage_curve(graph: CircuitGraph, spec: TargetSpec, patterns):
    """Per-pattern-prefix coverage: list of (pattern_number, state_pct, site_pct).

    The final point equals :func:`measure` over the full list; both
    coordinates are nondecreasing.
    """
    curve = []
    _scan(graph, spec, patterns,
          after_each=lambda per_target, number: curve.append(
              (number,) + _percentages(per_target)))
    return curve


def _scan(graph, spec, patterns, after_each=None):
    patterns = list(patterns)
    for node, _ in spec.entries:
        if node >= graph.node_count:
            raise KeyError(f"target node {node} is not in graph {graph.name!r}")
    per_target = [TargetCoverage(node=n, desired=v) for n, v in spec.entries]
    number = 0
    for start in range(0, len(patterns), WORD_WIDTH):
        batch = simulate_batch(graph, patterns[start:start + WORD_WIDTH])
        for lane in range(batch.lane_count):
            number += 1
            for t in per_target:
                bit = batch.node_bit(t.node, lane)
                t.saw_0 |= bit == 0
                t.saw_1 |= bit == 1
                if bit == t.desired and not t.reached_state:
                    t.reached_state = True
                    t.first_reach_index = number
            if after_each is not None:
                after_each(per_target, number)
    return per_target


def _percentages(per_target):
    k = len(per_target)
    if k == 0:
        return 100.0, 100.0  # vacuous: no targets to miss
    reached = sum(1 for t in per_target if t.reached_state)
    toggled = sum(1 for t in per_target if t.toggled)
    return 100.0 * reached / k, 100.0 * toggled / k


def per_target_csv(report: CoverageReport, graph: CircuitGraph) -> str:
    """One CSV row per target node."""
    lines = ["node,desired,reached_state,saw_0,saw_1,first_reach_index"]
    for t in report.per_target:
        lines.append(",".join([
            graph.names[t.node],
            str(t.desired),
            str(int(t.reached_state)),
            str(int(t.saw_0)),
            str(int(t.saw_1)),
            "" if t.first_reach_index is None else str(t.first_reach_index),
        ]))
    return "\n".join(lines) + "\n"


def curve_csv(curve) -> str:
    lines = ["pattern_index,state_coverage_pct,site_coverage_pct"]
    for number, state_pct, site_pct in curve:
        lines.append(f"{number},{state_pct:.2f},{site_pct:.2f}")
    return "\n".join(lines) + "\n"
