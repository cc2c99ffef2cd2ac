import logging

import pytest

from gatefuzz.blif import BlifCoverError, parse_blif
from gatefuzz.netlist import NetlistSyntaxError


def _single_gate(text):
    n = parse_blif(text)
    assert len(n.gates) == 1
    return n.gates[0]


def test_canonical_and():
    g = _single_gate(".model t\n.inputs a b\n.outputs y\n.names a b y\n11 1\n.end")
    assert g.kind == "AND" and g.inputs == ("a", "b") and g.output == "y"


def test_canonical_not():
    g = _single_gate(".model t\n.inputs a\n.outputs y\n.names a y\n0 1\n.end")
    assert g.kind == "NOT"


def test_buf_both_forms():
    assert _single_gate(".inputs a\n.outputs y\n.names a y\n1 1\n.end").kind == "BUF"
    assert _single_gate(".inputs a\n.outputs y\n.names a y\n0 0\n.end").kind == "BUF"


def test_or_one_hot_rows():
    g = _single_gate(".inputs a b c\n.outputs y\n.names a b c y\n1-- 1\n-1- 1\n--1 1\n.end")
    assert g.kind == "OR" and g.inputs == ("a", "b", "c")


def test_nor_offset_single_row():
    g = _single_gate(".inputs a b\n.outputs y\n.names a b y\n00 1\n.end")
    assert g.kind == "NOR"


def test_nand_as_onset_zeros():
    g = _single_gate(".inputs a b\n.outputs y\n.names a b y\n0- 1\n-0 1\n.end")
    assert g.kind == "NAND"


def test_xor_full_rows():
    g = _single_gate(".inputs a b\n.outputs y\n.names a b y\n01 1\n10 1\n.end")
    assert g.kind == "XOR"


def test_xnor_full_rows():
    g = _single_gate(".inputs a b\n.outputs y\n.names a b y\n00 1\n11 1\n.end")
    assert g.kind == "XNOR"


def test_xor3():
    rows = "001 1\n010 1\n100 1\n111 1"
    g = _single_gate(f".inputs a b c\n.outputs y\n.names a b c y\n{rows}\n.end")
    assert g.kind == "XOR"


def test_constants():
    n = parse_blif(".outputs y\n.names y\n1\n.end")
    assert n.gates[0].kind == "CONST1"
    n = parse_blif(".outputs y\n.names y\n.end")
    assert n.gates[0].kind == "CONST0"


def test_inexpressible_cover_reports_rows():
    text = ".inputs a b c\n.outputs y\n.names a b c y\n1-1 1\n-11 1\n.end"
    with pytest.raises(BlifCoverError) as exc:
        parse_blif(text)
    assert "1-1 1" in str(exc.value)
    assert "-11 1" in str(exc.value)


def test_mixed_onset_offset_rejected():
    with pytest.raises(BlifCoverError, match="mixed"):
        parse_blif(".inputs a b\n.outputs y\n.names a b y\n11 1\n00 0\n.end")


def test_latch_becomes_dff_and_init_warns(caplog):
    text = ".model seq\n.inputs d\n.outputs q\n.latch d q re clk 0\n.end"
    with caplog.at_level(logging.WARNING, logger="gatefuzz.blif"):
        n = parse_blif(text)
    assert n.gates[0].kind == "DFF"
    assert n.gates[0].inputs == ("d",)
    assert any("ignored" in r.message for r in caplog.records)


def test_line_continuation():
    n = parse_blif(".inputs a \\\n b\n.outputs y\n.names a b y\n11 1\n.end")
    assert n.primary_inputs == ["a", "b"]


def test_bad_row_width():
    with pytest.raises(NetlistSyntaxError, match="does not match"):
        parse_blif(".inputs a b\n.outputs y\n.names a b y\n111 1\n.end")


def test_unsupported_construct():
    with pytest.raises(NetlistSyntaxError, match="unsupported BLIF construct"):
        parse_blif(".subckt foo a=b\n.end")
