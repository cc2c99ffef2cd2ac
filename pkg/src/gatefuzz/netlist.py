"""Gate-level netlist data model and full-scan conversion.

A :class:`Netlist` is a flat list of gates over named signals, plus ordered
primary input/output lists.  Sequential elements (DFFs) are removed by
:func:`scan_convert`, which models full scan access: every flip-flop output
becomes a directly controllable pseudo-input and every flip-flop input a
directly observable pseudo-output, leaving a purely combinational circuit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

log = logging.getLogger(__name__)

GATE_KINDS = frozenset({
    "AND", "NAND", "OR", "NOR", "XOR", "XNOR",
    "NOT", "BUF", "DFF", "CONST0", "CONST1",
})

UNARY_KINDS = frozenset({"NOT", "BUF", "DFF"})
CONST_KINDS = frozenset({"CONST0", "CONST1"})


class NetlistError(Exception):
    """Base class for netlist construction and parsing failures."""


class NetlistSyntaxError(NetlistError):
    """Malformed source text; carries 1-based line and column."""

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class RawGate:
    """One gate instance: ``output = kind(inputs...)``."""

    output: str
    kind: str
    inputs: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise NetlistError(f"unsupported gate kind {self.kind!r}")
        if not self.output:
            raise NetlistError("gate output name must be nonempty")
        n = len(self.inputs)
        if self.kind in UNARY_KINDS and n != 1:
            raise NetlistError(f"{self.kind} requires exactly 1 input, got {n} for {self.output!r}")
        if self.kind in CONST_KINDS and n != 0:
            raise NetlistError(f"{self.kind} takes no inputs, got {n} for {self.output!r}")
        if self.kind not in UNARY_KINDS and self.kind not in CONST_KINDS and n < 2:
            raise NetlistError(f"{self.kind} requires >= 2 inputs, got {n} for {self.output!r}")


@dataclass
class Netlist:
    """A named gate-level netlist with ordered I/O lists."""

    name: str
    primary_inputs: list[str] = field(default_factory=list)
    primary_outputs: list[str] = field(default_factory=list)
    gates: list[RawGate] = field(default_factory=list)
    scan_converted: bool = False

    def gate_outputs(self) -> set[str]:
        return {g.output for g in self.gates}

    def defined_signals(self) -> set[str]:
        return set(self.primary_inputs) | self.gate_outputs()

    def validate(self) -> None:
        """Check structural invariants; raise :class:`NetlistError` on violation.

        Output names must be unique, nothing may be both a primary input and a
        gate output, and every referenced signal must be defined somewhere.
        """
        seen = set(self.primary_inputs)
        if len(seen) != len(self.primary_inputs):
            raise NetlistError(f"duplicate primary input in {self.name!r}")
        for g in self.gates:
            if g.output in seen:
                raise NetlistError(f"duplicate definition of {g.output!r}")
            seen.add(g.output)
        defined = self.defined_signals()
        for g in self.gates:
            for src in g.inputs:
                if src not in defined:
                    raise NetlistError(f"undefined signal {src!r} feeding gate {g.output!r}")
        for out in self.primary_outputs:
            if out not in defined:
                raise NetlistError(f"undefined primary output {out!r}")

    @property
    def has_dff(self) -> bool:
        return any(g.kind == "DFF" for g in self.gates)


def scan_convert(netlist: Netlist) -> Netlist:
    """Replace every DFF by a pseudo-input (its Q) and pseudo-output (its D).

    The result is purely combinational.  Pseudo-inputs keep the flip-flop's
    output identifier and are appended after the original primary inputs, in
    gate declaration order; the D signals are appended to the primary outputs
    in the same order.  Idempotent: an already converted netlist is returned
    unchanged.
    """
    if netlist.scan_converted:
        return netlist
    pseudo_inputs = []
    pseudo_outputs = []
    kept = []
    for g in netlist.gates:
        if g.kind == "DFF":
            pseudo_inputs.append(g.output)
            pseudo_outputs.append(g.inputs[0])
        else:
            kept.append(g)
    converted = replace(
        netlist,
        primary_inputs=list(netlist.primary_inputs) + pseudo_inputs,
        primary_outputs=list(netlist.primary_outputs) + pseudo_outputs,
        gates=kept,
        scan_converted=True,
    )
    converted.validate()
    return converted
