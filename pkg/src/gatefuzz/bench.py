"""Reader and writer for the line-oriented ISCAS ``.bench`` netlist format.

Grammar (one construct per line, ``#`` starts a comment, blank lines ignored):

    INPUT(<id>)
    OUTPUT(<id>)
    <id> = <KIND>(<id>{, <id>})

``KIND`` is one of AND, NAND, OR, NOR, XOR, XNOR, NOT, BUF (alias BUFF) or
DFF.  Identifiers are case-sensitive; gate keywords are not.
"""

from __future__ import annotations

import re

from .netlist import GATE_KINDS, Netlist, NetlistError, NetlistSyntaxError, RawGate

_ID = r"[^\s(),=#]+"
_INPUT_RE = re.compile(rf"^INPUT\s*\(\s*({_ID})\s*\)$")
_OUTPUT_RE = re.compile(rf"^OUTPUT\s*\(\s*({_ID})\s*\)$")
_GATE_RE = re.compile(rf"^({_ID})\s*=\s*([A-Za-z0-9]+)\s*\(\s*([^()]*)\s*\)$")

_KIND_ALIASES = {"BUFF": "BUF"}


def parse_bench(text: str, name: str = "bench") -> Netlist:
    """Parse ``.bench`` source into a :class:`Netlist`.

    Declaration order of INPUT/OUTPUT lines and gate lines is preserved.
    Raises :class:`NetlistSyntaxError` with line/column on malformed input and
    :class:`NetlistError` on semantic violations (duplicates, undefined
    references, bad arity).
    """
    netlist = Netlist(name=name)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _INPUT_RE.match(line)
        if m:
            netlist.primary_inputs.append(m.group(1))
            continue
        m = _OUTPUT_RE.match(line)
        if m:
            netlist.primary_outputs.append(m.group(1))
            continue
        m = _GATE_RE.match(line)
        if m:
            out, kind_word, arg_text = m.groups()
            kind = kind_word.upper()
            kind = _KIND_ALIASES.get(kind, kind)
            if kind not in GATE_KINDS or kind.startswith("CONST"):
                raise NetlistSyntaxError(
                    f"unsupported gate keyword {kind_word!r}", lineno, line.find(kind_word) + 1
                )
            args = [a.strip() for a in arg_text.split(",")] if arg_text.strip() else []
            if any(not a for a in args):
                raise NetlistSyntaxError("empty argument in gate input list", lineno, line.find("(") + 1)
            try:
                netlist.gates.append(RawGate(out, kind, tuple(args)))
            except NetlistError as exc:
                raise NetlistSyntaxError(str(exc), lineno) from exc
            continue
        raise NetlistSyntaxError(f"unrecognized construct {line!r}", lineno)
    netlist.validate()
    return netlist


def parse_bench_file(path, name=None) -> Netlist:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if name is None:
        name = re.sub(r"\.bench$", "", str(path).rsplit("/", 1)[-1])
    return parse_bench(text, name=name)


def write_bench(netlist: Netlist) -> str:
    """Emit ``.bench`` text; inverse of :func:`parse_bench`.

    ``parse_bench(write_bench(n))`` reproduces the same inputs, outputs and
    gates in the same order.  CONST gates (only producible from BLIF input)
    have no ``.bench`` keyword and are rejected.
    """
    lines = [f"# {netlist.name}"]
    for pi in netlist.primary_inputs:
        lines.append(f"INPUT({pi})")
    for po in netlist.primary_outputs:
        lines.append(f"OUTPUT({po})")
    for g in netlist.gates:
        if g.kind in ("CONST0", "CONST1"):
            raise NetlistError(f"{g.kind} gate {g.output!r} has no .bench representation")
        lines.append(f"{g.output} = {g.kind}({', '.join(g.inputs)})")
    return "\n".join(lines) + "\n"
