import random

import pytest

from gatefuzz.netlist import Netlist, RawGate
from gatefuzz.pattern import InputPattern

BINARY_KINDS = ("AND", "NAND", "OR", "NOR", "XOR", "XNOR")
UNARY_KINDS = ("NOT", "BUF")


def random_netlist(rng: random.Random, n_inputs: int, n_gates: int,
                   with_dffs: bool = False) -> Netlist:
    """Random acyclic netlist: gates only read inputs or earlier gates."""
    n = Netlist(name=f"rand{rng.randrange(1 << 30)}")
    n.primary_inputs = [f"x{i}" for i in range(n_inputs)]
    signals = list(n.primary_inputs)
    for g in range(n_gates):
        out = f"g{g}"
        if with_dffs and rng.random() < 0.15:
            n.gates.append(RawGate(out, "DFF", (rng.choice(signals),)))
        elif rng.random() < 0.2:
            n.gates.append(RawGate(out, rng.choice(UNARY_KINDS), (rng.choice(signals),)))
        else:
            kind = rng.choice(BINARY_KINDS)
            arity = rng.choice((2, 2, 2, 3))
            n.gates.append(RawGate(out, kind, tuple(rng.choice(signals) for _ in range(arity))))
        signals.append(out)
    # last gate is always observable; a couple of extra outputs at random
    n.primary_outputs = [n.gates[-1].output]
    for g in n.gates[:-1]:
        if rng.random() < 0.1:
            n.primary_outputs.append(g.output)
    n.validate()
    return n


def all_patterns(width: int):
    """Every input pattern of the given width, counting order, MSB first."""
    return [InputPattern(tuple((v >> (width - 1 - b)) & 1 for b in range(width)))
            for v in range(2 ** width)]


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
