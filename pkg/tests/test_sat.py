import itertools
import random
import sys
from pathlib import Path

import pytest

from gatefuzz.cnf import CnfFormula, encode
from gatefuzz.fixtures import load_circuit
from gatefuzz.graph import build_graph
from gatefuzz.netlist import scan_convert
from gatefuzz.sat import (ExternalSolverSession, InfeasibleConstraintError,
                          SolverBudgetError, SolverSession, at_least_k_clauses)
from gatefuzz.simulate import simulate
from gatefuzz.targets import project_model

from conftest import all_patterns


def formula_of(clauses, nvars):
    return CnfFormula(clauses=[tuple(c) for c in clauses], var_count=nvars,
                      node_to_var={}, var_to_node={})


def brute_force_sat(clauses, nvars, fixed=()):
    """Exhaustive satisfiability oracle over total assignments."""
    fixed_map = {abs(l): l > 0 for l in fixed}
    for bits in itertools.product([False, True], repeat=nvars):
        assignment = {v: bits[v - 1] for v in range(1, nvars + 1)}
        if any(assignment[v] != want for v, want in fixed_map.items()):
            continue
        if all(any(assignment[abs(l)] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def test_single_unit_sat():
    s = SolverSession(formula_of([(1,)], 1))
    r = s.solve()
    assert r.is_sat and r.model[1] is True


def test_contradiction_unsat():
    s = SolverSession(formula_of([(1,), (-1,)], 1))
    assert s.solve().status == "UNSAT"


def test_unconstrained_variables_default_false():
    s = SolverSession(formula_of([(1,)], 4))
    r = s.solve()
    assert r.model[1] is True
    assert r.model[2] is r.model[3] is r.model[4] is False


def test_assumptions_flip_result():
    s = SolverSession(formula_of([(1, 2)], 2))
    assert s.solve(assumptions=[-1, -2]).status == "UNSAT"
    r = s.solve(assumptions=[-1])
    assert r.is_sat and r.model[2] is True
    assert s.solve().is_sat  # session still usable, no pollution


def test_oracle_equivalence_random_formulas():
    rng = random.Random(31)
    for trial in range(120):
        nvars = rng.randint(1, 11)
        n_clauses = rng.randint(1, 4 * nvars)
        clauses = []
        for _ in range(n_clauses):
            width = rng.randint(1, min(4, nvars))
            vs = rng.sample(range(1, nvars + 1), width)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        expected = brute_force_sat(clauses, nvars)
        got = SolverSession(formula_of(clauses, nvars)).solve()
        assert got.is_sat == expected, (trial, clauses)


def test_oracle_equivalence_under_assumptions():
    rng = random.Random(32)
    for _ in range(60):
        nvars = rng.randint(2, 10)
        clauses = []
        for _ in range(rng.randint(2, 3 * nvars)):
            width = rng.randint(1, min(3, nvars))
            vs = rng.sample(range(1, nvars + 1), width)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        assumptions = [v if rng.random() < 0.5 else -v
                       for v in rng.sample(range(1, nvars + 1), rng.randint(0, nvars))]
        session = SolverSession(formula_of(clauses, nvars))
        got = session.solve(assumptions=assumptions)
        assert got.is_sat == brute_force_sat(clauses, nvars, fixed=assumptions)
        if got.is_sat:
            for lit in assumptions:
                assert got.model[abs(lit)] == (lit > 0)


def test_model_satisfies_all_clauses():
    rng = random.Random(33)
    for _ in range(40):
        nvars = rng.randint(1, 12)
        clauses = [tuple(v if rng.random() < 0.5 else -v
                         for v in rng.sample(range(1, nvars + 1), rng.randint(1, min(3, nvars))))
                   for _ in range(rng.randint(1, 3 * nvars))]
        r = SolverSession(formula_of(clauses, nvars)).solve()
        if r.is_sat:
            for c in clauses:
                assert any(r.model[abs(l)] == (l > 0) for l in c)


def test_determinism_same_seed_same_models():
    graph = build_graph(scan_convert(load_circuit("c17")))
    f = encode(graph)

    def model_sequence(seed):
        s = SolverSession(f, decision_seed=seed)
        models = []
        while True:
            r = s.solve()
            if not r.is_sat:
                break
            models.append(tuple(r.model[1:]))
            s.add_clause([-v if r.model[v] else v for v in f.input_vars])
        return models

    first = model_sequence(42)
    second = model_sequence(42)
    assert first == second
    assert len(first) == 32  # one model per input assignment


def test_add_blocking_clause_excludes_model():
    s = SolverSession(formula_of([(1, 2)], 2))
    seen = set()
    while True:
        r = s.solve()
        if not r.is_sat:
            break
        bits = (r.model[1], r.model[2])
        assert bits not in seen
        seen.add(bits)
        s.add_clause([-1 if r.model[1] else 1, -2 if r.model[2] else 2])
    assert seen == {(True, False), (False, True), (True, True)}


def test_add_single_negation_flips():
    s = SolverSession(formula_of([(1, 2)], 2))
    r = s.solve()
    assert r.is_sat
    s.add_clause([-1] if r.model[1] else [1])
    r2 = s.solve()
    assert r2.status == "UNSAT" or r2.model[1] != r.model[1]


def test_at_least_k_one_equals_disjunction():
    clauses = at_least_k_clauses([1, 2], 1, lambda: (_ for _ in ()).throw(AssertionError))
    assert clauses == [[1, 2]]


def test_at_least_k_all_equals_units():
    counter = itertools.count(10)
    clauses = at_least_k_clauses([1, -2, 3], 3, lambda: next(counter))
    assert clauses == [[1], [-2], [3]]


@pytest.mark.parametrize("m,k", [(2, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 4), (6, 3)])
def test_at_least_k_counts_by_enumeration(m, k):
    sat_count = 0
    for bits in itertools.product([0, 1], repeat=m):
        s = SolverSession(formula_of([], m))
        s.encode_at_least_k(list(range(1, m + 1)), k)
        assumptions = [v if bits[v - 1] else -v for v in range(1, m + 1)]
        if s.solve(assumptions=assumptions).is_sat:
            sat_count += 1
    expected = sum(1 for bits in itertools.product([0, 1], repeat=m) if sum(bits) >= k)
    assert sat_count == expected


def test_at_least_2_of_4_is_11_of_16():
    sat_count = 0
    for bits in itertools.product([0, 1], repeat=4):
        s = SolverSession(formula_of([], 4))
        s.encode_at_least_k([1, 2, 3, 4], 2)
        if s.solve(assumptions=[v if bits[v - 1] else -v for v in range(1, 5)]).is_sat:
            sat_count += 1
    assert sat_count == 11


def test_at_least_k_negated_literals():
    s = SolverSession(formula_of([], 3))
    s.encode_at_least_k([-1, -2, -3], 2)
    r = s.solve()
    assert r.is_sat
    assert sum(not r.model[v] for v in (1, 2, 3)) >= 2
    assert s.solve(assumptions=[1, 2]).status == "UNSAT"


def test_at_least_k_infeasible():
    s = SolverSession(formula_of([], 2))
    with pytest.raises(InfeasibleConstraintError):
        s.encode_at_least_k([1, 2], 3)


def test_budget_exhausted_is_distinct_error():
    # 2-variable complete contradiction: needs a decision and conflicts
    clauses = [(1, 2), (1, -2), (-1, 2), (-1, -2)]
    s = SolverSession(formula_of(clauses, 2), conflict_budget=0)
    with pytest.raises(SolverBudgetError):
        s.solve()
    # with room to work it proves UNSAT
    s2 = SolverSession(formula_of(clauses, 2), conflict_budget=100)
    assert s2.solve().status == "UNSAT"


def test_c17_output_assumption_model_simulates():
    netlist = scan_convert(load_circuit("c17"))
    graph = build_graph(netlist)
    f = encode(graph)
    out_var = f.node_to_var[graph.node_id("n22")]
    r = SolverSession(f).solve(assumptions=[out_var])
    assert r.is_sat
    pattern = project_model(r.model, f)
    assert simulate(graph, pattern)[graph.node_id("n22")] == 1
    # cross-check with brute force: some input must set n22=1
    assert any(simulate(graph, p)[graph.node_id("n22")] == 1 for p in all_patterns(5))


def test_grow_vars_through_add_clause():
    s = SolverSession(formula_of([(1,)], 1))
    s.add_clause([2, 3])
    assert s.nvars == 3
    assert s.solve().is_sat


def test_external_solver_round_trip():
    graph = build_graph(scan_convert(load_circuit("c17")))
    f = encode(graph)
    command = [sys.executable, str(Path(__file__).parent / "external_solver.py")]
    ext = ExternalSolverSession(f, command)
    out_var = f.node_to_var[graph.node_id("n22")]
    r = ext.solve(assumptions=[out_var])
    assert r.is_sat
    assert simulate(graph, project_model(r.model, f))[graph.node_id("n22")] == 1
    ext.add_clause([-out_var])
    assert ext.solve(assumptions=[out_var]).status == "UNSAT"
    ext2 = ExternalSolverSession(f, command)
    ext2.encode_at_least_k([f.node_to_var[n] for n in graph.primary_inputs], 5)
    r2 = ext2.solve()
    assert r2.is_sat
    assert all(r2.model[v] for v in f.input_vars)
