"""Two-valued levelized simulation of circuit graphs.

:func:`simulate` evaluates one pattern; :func:`simulate_batch` packs up to 64
patterns into machine words and evaluates all lanes in a single topological
pass.  Scan conversion guarantees the graph is combinational, so no X/Z
handling is needed: every node gets a definite 0/1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CircuitGraph
from .pattern import InputPattern

WORD_WIDTH = 64


class SimulationError(ValueError):
    pass


def simulate(graph: CircuitGraph, pattern: InputPattern) -> list[int]:
    """Evaluate all nodes under one input pattern; returns bits by node id."""
    if len(pattern) != graph.input_count:
        raise SimulationError(
            f"pattern has {len(pattern)} bits, circuit has {graph.input_count} inputs")
    value = [0] * graph.node_count
    for position, node in enumerate(graph.primary_inputs):
        value[node] = pattern[position]
    for node in graph.topo_order:
        kind = graph.kinds[node]
        if kind == "INPUT":
            continue
        ins = [value[s] for s in graph.fanins[node]]
        value[node] = _eval_gate(kind, ins)
    return value


def _eval_gate(kind, ins):
    if kind == "AND":
        return int(all(ins))
    if kind == "NAND":
        return int(not all(ins))
    if kind == "OR":
        return int(any(ins))
    if kind == "NOR":
        return int(not any(ins))
    if kind == "XOR":
        return sum(ins) & 1
    if kind == "XNOR":
        return (sum(ins) & 1) ^ 1
    if kind == "NOT":
        return ins[0] ^ 1
    if kind == "BUF":
        return ins[0]
    if kind == "CONST0":
        return 0
    if kind == "CONST1":
        return 1
    raise SimulationError(f"cannot simulate node kind {kind!r}")


@dataclass
class SimBatch:
    """Bit-packed valuations: lane ``j`` of ``words[n]`` is pattern ``j`` at node ``n``."""

    patterns: list[InputPattern]
    words: list[int]

    @property
    def lane_count(self) -> int:
        return len(self.patterns)

    def node_bit(self, node: int, lane: int) -> int:
        return (self.words[node] >> lane) & 1

    def valuation(self, lane: int) -> list[int]:
        return [(w >> lane) & 1 for w in self.words]


def simulate_batch(graph: CircuitGraph, patterns) -> SimBatch:
    """Word-parallel simulation of up to :data:`WORD_WIDTH` patterns."""
    patterns = list(patterns)
    lanes = len(patterns)
    if lanes > WORD_WIDTH:
        raise SimulationError(f"batch of {lanes} exceeds word width {WORD_WIDTH}")
    for p in patterns:
        if len(p) != graph.input_count:
            raise SimulationError(
                f"pattern has {len(p)} bits, circuit has {graph.input_count} inputs")
    mask = (1 << lanes) - 1
    words = [0] * graph.node_count
    for position, node in enumerate(graph.primary_inputs):
        w = 0
        for lane, p in enumerate(patterns):
            w |= p[position] << lane
        words[node] = w
    for node in graph.topo_order:
        kind = graph.kinds[node]
        if kind == "INPUT":
            continue
        words[node] = _eval_gate_word(kind, [words[s] for s in graph.fanins[node]], mask)
    return SimBatch(patterns=patterns, words=words)


def _eval_gate_word(kind, ins, mask):
    if kind == "AND" or kind == "NAND":
        acc = mask
        for w in ins:
            acc &= w
        return acc if kind == "AND" else acc ^ mask
    if kind == "OR" or kind == "NOR":
        acc = 0
        for w in ins:
            acc |= w
        return acc if kind == "OR" else acc ^ mask
    if kind == "XOR" or kind == "XNOR":
        acc = 0
        for w in ins:
            acc ^= w
        return acc if kind == "XOR" else acc ^ mask
    if kind == "NOT":
        return ins[0] ^ mask
    if kind == "BUF":
        return ins[0]
    if kind == "CONST0":
        return 0
    if kind == "CONST1":
        return mask
    raise SimulationError(f"cannot simulate node kind {kind!r}")


def iter_batches(graph: CircuitGraph, patterns, width: int = WORD_WIDTH):
    """Yield SimBatch objects covering ``patterns`` in order, ``width`` lanes each."""
    patterns = list(patterns)
    for start in range(0, len(patterns), width):
        yield simulate_batch(graph, patterns[start:start + width])


def dump_valuation(graph: CircuitGraph, valuation) -> str:
    """Debug listing: one ``name=value`` line per node, in topological order."""
    return "\n".join(f"{graph.names[n]}={valuation[n]}" for n in graph.topo_order) + "\n"
