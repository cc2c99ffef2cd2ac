"""Gate-wise Tseitin translation of a circuit graph into CNF.

Literals are nonzero signed integers in the DIMACS convention: ``v`` is the
positive literal of variable ``v >= 1`` and ``-v`` its negation.  Every graph
node gets exactly one variable, assigned in topological order so that the
primary inputs occupy variables ``1..I`` in declaration order.  Wide XOR and
XNOR gates are chained through fresh helper variables that have no node
mapping.  The satisfying assignments of the result, projected onto the node
variables, are exactly the consistent circuit valuations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import CircuitGraph

Clause = tuple[int, ...]


@dataclass
class CnfFormula:
    """CNF clauses plus the bidirectional node/variable map."""

    clauses: list[Clause]
    var_count: int
    node_to_var: dict[int, int]
    var_to_node: dict[int, int]
    input_vars: list[int] = field(default_factory=list)
    node_names: dict[int, str] = field(default_factory=dict)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


def encode(graph: CircuitGraph) -> CnfFormula:
    """Encode a circuit graph as an equisatisfiable CNF formula.

    Clause schemata per gate with k fanins: NOT/BUF 2 clauses, AND/NAND/OR/NOR
    k+1 clauses, XOR/XNOR a chain of 2-input stages with 4 clauses each,
    constants a single unit clause.  Pure and deterministic: the same graph
    always yields the same formula.
    """
    node_to_var = {}
    for position, node in enumerate(graph.topo_order):
        node_to_var[node] = position + 1
    var_to_node = {v: n for n, v in node_to_var.items()}
    next_var = graph.node_count + 1

    clauses: list[Clause] = []
    for node in graph.topo_order:
        kind = graph.kinds[node]
        if kind == "INPUT":
            continue
        y = node_to_var[node]
        ins = [node_to_var[s] for s in graph.fanins[node]]
        if kind == "CONST0":
            clauses.append((-y,))
        elif kind == "CONST1":
            clauses.append((y,))
        elif kind == "BUF":
            clauses += [(-y, ins[0]), (y, -ins[0])]
        elif kind == "NOT":
            clauses += [(y, ins[0]), (-y, -ins[0])]
        elif kind == "AND":
            clauses += _and_clauses(y, ins)
        elif kind == "NAND":
            clauses += _and_clauses(-y, ins)
        elif kind == "OR":
            clauses += _or_clauses(y, ins)
        elif kind == "NOR":
            clauses += _or_clauses(-y, ins)
        elif kind in ("XOR", "XNOR"):
            chain, next_var = _xor_chain(ins, next_var, clauses)
            if kind == "XOR":
                clauses += _xor2_clauses(y, chain[0], chain[1])
            else:
                clauses += _xor2_clauses(-y, chain[0], chain[1])
        else:
            raise ValueError(f"cannot encode node kind {kind!r}")

    return CnfFormula(
        clauses=clauses,
        var_count=next_var - 1,
        node_to_var=node_to_var,
        var_to_node=var_to_node,
        input_vars=[node_to_var[n] for n in graph.primary_inputs],
        node_names={node: graph.names[node] for node in range(graph.node_count)},
    )


def _and_clauses(y, ins):
    """y <-> AND(ins); pass -y for the NAND form."""
    out = [(-y, a) for a in ins]
    out.append(tuple([y] + [-a for a in ins]))
    return out


def _or_clauses(y, ins):
    """y <-> OR(ins); pass -y for the NOR form."""
    out = [(y, -a) for a in ins]
    out.append(tuple([-y] + list(ins)))
    return out


def _xor2_clauses(y, a, b):
    """y <-> a XOR b (negate y for XNOR)."""
    return [(-y, a, b), (-y, -a, -b), (y, -a, b), (y, a, -b)]


def _xor_chain(ins, next_var, clauses):
    """Reduce a k-ary XOR input list to a final pair via fresh helpers.

    Returns ((a, b), next_var) such that a XOR b equals the parity of ins.
    """
    acc = ins[0]
    for mid in ins[1:-1]:
        helper = next_var
        next_var += 1
        clauses += _xor2_clauses(helper, acc, mid)
        acc = helper
    return (acc, ins[-1]), next_var


def write_dimacs(formula: CnfFormula, assumptions: list[int] = ()) -> str:
    """Serialize to DIMACS CNF; assumptions become trailing unit clauses.

    Node map comments (``c node <name> = var <k>``) precede the header, in
    variable order.
    """
    lines = []
    for var in sorted(formula.var_to_node):
        node = formula.var_to_node[var]
        name = formula.node_names.get(node, f"node{node}")
        lines.append(f"c node {name} = var {var}")
    lines.append(f"p cnf {formula.var_count} {formula.clause_count + len(assumptions)}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    for lit in assumptions:
        lines.append(f"{lit} 0")
    return "\n".join(lines) + "\n"
