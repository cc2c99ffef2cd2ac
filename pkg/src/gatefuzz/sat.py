"""Incremental CDCL SAT solver over CNF formulas.

A :class:`SolverSession` owns a growing clause database seeded from a
:class:`~gatefuzz.cnf.CnfFormula` (the formula object itself is never
mutated).  It decides satisfiability under assumptions, returns total models
(unconstrained variables default to false), and accepts permanently added
clauses and at-least-k cardinality constraints, which is what solution
enumeration with blocking clauses needs.

The engine is a deliberately compact MiniSat-style CDCL: two-watched-literal
propagation, first-UIP conflict learning, activity-driven decisions with
phase-false polarity, and Luby restarts.  Everything is deterministic for a
fixed ``decision_seed``.  A session that outgrows this engine can be swapped
for :class:`ExternalSolverSession`, which speaks DIMACS to any off-the-shelf
solver binary; both expose the same three entry points.
"""

from __future__ import annotations

import os
import random
import subprocess
import tempfile
from dataclasses import dataclass
from heapq import heappop, heappush

from .cnf import CnfFormula

_TRUE = 1
_FALSE = -1
_UNDEF = 0

_RESTART_BASE = 100
_ACTIVITY_DECAY = 0.95
_ACTIVITY_RESCALE = 1e100


class SolverBudgetError(Exception):
    """Conflict budget exhausted before a verdict was reached."""


class InfeasibleConstraintError(Exception):
    """Cardinality constraint that no assignment can satisfy."""


@dataclass
class SatResult:
    status: str  # "SAT" or "UNSAT"
    model: list[bool] | None = None  # indexed by variable, entry 0 unused

    @property
    def is_sat(self) -> bool:
        return self.status == "SAT"


def _luby(x):
    """Luby restart sequence 1,1,2,1,1,2,4,... (0-indexed)."""
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x %= size
    return 1 << seq


class SolverSession:
    """Exclusive-use incremental solver over one formula.

    Clauses only accumulate; the model sequence for a fixed
    ``decision_seed`` and clause/solve sequence is reproducible.
    """

    def __init__(self, formula: CnfFormula, decision_seed: int = 0,
                 conflict_budget: int | None = None):
        self.nvars = 0
        self.decision_seed = decision_seed
        self.conflict_budget = conflict_budget
        self._rng = random.Random(decision_seed)
        self.conflicts = 0
        self.decisions = 0
        self.solve_calls = 0

        self._assign: list[int] = [0]
        self._level: list[int] = [0]
        self._reason: list = [None]
        self._activity: list[float] = [0.0]
        self._watches: list[list] = [[], []]
        self._order: list = []
        self._var_inc = 1.0
        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._qhead = 0
        self._unsat_forever = False
        self._check_clauses: list[tuple[int, ...]] = []

        while self.nvars < formula.var_count:
            self.new_var()
        for clause in formula.clauses:
            self.add_clause(clause)

    # -- variables and values ------------------------------------------------

    def new_var(self) -> int:
        self.nvars += 1
        self._assign.append(_UNDEF)
        self._level.append(0)
        self._reason.append(None)
        self._activity.append(self._rng.random() * 1e-9)
        self._watches.append([])
        self._watches.append([])
        heappush(self._order, (-self._activity[self.nvars], self.nvars))
        return self.nvars

    def _value_lit(self, lit):
        a = self._assign[lit >> 1]
        return -a if lit & 1 else a

    @staticmethod
    def _internal(signed):
        return (signed << 1) if signed > 0 else ((-signed) << 1) | 1

    @staticmethod
    def _signed(internal):
        var = internal >> 1
        return -var if internal & 1 else var

    # -- clause management ---------------------------------------------------

    def add_clause(self, clause) -> None:
        """Permanently conjoin a clause of nonzero signed literals."""
        if not clause:
            raise ValueError("empty clause")
        lits = []
        seen = set()
        for signed in clause:
            if signed == 0:
                raise ValueError("literal 0 is not allowed")
            while abs(signed) > self.nvars:
                self.new_var()
            if -signed in seen:
                return  # tautology, always satisfied
            if signed not in seen:
                seen.add(signed)
                lits.append(signed)
        self._check_clauses.append(tuple(lits))
        if self._unsat_forever:
            return
        assert not self._trail_lim, "add_clause requires the session at decision level 0"
        internal = [self._internal(s) for s in lits]
        # Level-0 assignments are permanent: drop false literals, skip
        # satisfied clauses.
        internal = [l for l in internal if self._value_lit(l) != _FALSE]
        if any(self._value_lit(l) == _TRUE for l in internal):
            return
        if not internal:
            self._unsat_forever = True
            return
        if len(internal) == 1:
            self._enqueue(internal[0], None)
            if self._propagate() is not None:
                self._unsat_forever = True
            return
        self._attach(internal)

    def _attach(self, internal_lits):
        clause = list(internal_lits)
        self._watches[clause[0]].append(clause)
        self._watches[clause[1]].append(clause)

    def encode_at_least_k(self, literals, k: int) -> None:
        """Require at least ``k`` of the signed literals to be true.

        Uses a sequential-counter encoding with fresh helper variables; the
        helpers never appear in any node/variable map.
        """
        literals = list(literals)
        if k > len(literals) or k < 1:
            raise InfeasibleConstraintError(
                f"at-least-{k} over {len(literals)} literals is not satisfiable")
        for signed in literals:
            while abs(signed) > self.nvars:
                self.new_var()
        for c in at_least_k_clauses(literals, k, self.new_var):
            self.add_clause(c)

    # -- assignment machinery --------------------------------------------------

    def _enqueue(self, lit, reason):
        var = lit >> 1
        self._assign[var] = _FALSE if lit & 1 else _TRUE
        self._level[var] = len(self._trail_lim)
        self._reason[var] = reason
        self._trail.append(lit)

    def _propagate(self):
        """Unit propagation; returns a conflicting clause or None."""
        while self._qhead < len(self._trail):
            p = self._trail[self._qhead]
            self._qhead += 1
            false_lit = p ^ 1
            watchers = self._watches[false_lit]
            kept = []
            conflict = None
            for idx, clause in enumerate(watchers):
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self._value_lit(first) == _TRUE:
                    kept.append(clause)
                    continue
                for k in range(2, len(clause)):
                    if self._value_lit(clause[k]) != _FALSE:
                        clause[1], clause[k] = clause[k], clause[1]
                        self._watches[clause[1]].append(clause)
                        break
                else:
                    kept.append(clause)
                    if self._value_lit(first) == _FALSE:
                        conflict = clause
                        kept.extend(watchers[idx + 1:])
                        break
                    self._enqueue(first, clause)
            if conflict is not None:
                self._watches[false_lit] = kept
                self._qhead = len(self._trail)
                return conflict
            self._watches[false_lit] = kept
        return None

    def _decision_level(self):
        return len(self._trail_lim)

    def _new_decision_level(self):
        self._trail_lim.append(len(self._trail))

    def _cancel_until(self, level):
        if self._decision_level() <= level:
            return
        floor = self._trail_lim[level]
        for lit in reversed(self._trail[floor:]):
            var = lit >> 1
            self._assign[var] = _UNDEF
            self._reason[var] = None
            heappush(self._order, (-self._activity[var], var))
        del self._trail[floor:]
        del self._trail_lim[level:]
        self._qhead = len(self._trail)

    def _bump(self, var):
        self._activity[var] += self._var_inc
        if self._activity[var] > _ACTIVITY_RESCALE:
            for v in range(1, self.nvars + 1):
                self._activity[v] *= 1e-100
            self._var_inc *= 1e-100
        heappush(self._order, (-self._activity[var], var))

    def _pick_branch_var(self):
        while self._order:
            act, var = heappop(self._order)
            if self._assign[var] == _UNDEF and -act == self._activity[var]:
                return var
        for var in range(1, self.nvars + 1):  # heap entries can go stale
            if self._assign[var] == _UNDEF:
                return var
        return None

    def _analyze(self, conflict):
        """First-UIP learning; returns (learnt_internal_lits, backtrack_level)."""
        learnt = [0]
        seen = bytearray(self.nvars + 1)
        counter = 0
        p = None
        index = len(self._trail) - 1
        bt_level = 0
        clause = conflict
        current = self._decision_level()
        while True:
            start = 0 if p is None else 1
            for q in clause[start:]:
                var = q >> 1
                if not seen[var] and self._level[var] > 0:
                    seen[var] = 1
                    self._bump(var)
                    if self._level[var] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
                        bt_level = max(bt_level, self._level[var])
            while not seen[self._trail[index] >> 1]:
                index -= 1
            p = self._trail[index]
            index -= 1
            seen[p >> 1] = 0
            counter -= 1
            if counter == 0:
                break
            clause = self._reason[p >> 1]
        learnt[0] = p ^ 1
        return learnt, bt_level

    def _record_learnt(self, learnt, bt_level):
        self._cancel_until(bt_level)
        if len(learnt) == 1:
            self._enqueue(learnt[0], None)
            return
        # position 1 must hold a literal from the backtrack level to keep the
        # watch invariant after the jump
        best = max(range(1, len(learnt)), key=lambda i: self._level[learnt[i] >> 1])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        self._attach(learnt)
        self._enqueue(learnt[0], learnt)

    # -- search ----------------------------------------------------------------

    def solve(self, assumptions=()) -> SatResult:
        """Decide satisfiability under the given signed-literal assumptions.

        Returns a total model on SAT.  Raises :class:`SolverBudgetError` when
        the configured conflict budget runs out.  UNSAT is a result, not an
        error.  The session is left at decision level 0 with all learned
        clauses retained.
        """
        self.solve_calls += 1
        if self._unsat_forever:
            return SatResult("UNSAT")
        for signed in assumptions:
            if abs(signed) > self.nvars:
                raise ValueError(f"assumption {signed} exceeds variable count {self.nvars}")
        assumed = [self._internal(s) for s in assumptions]

        if self._propagate() is not None:
            self._unsat_forever = True
            return SatResult("UNSAT")

        budget = self.conflict_budget
        conflicts_here = 0
        restart_count = 0
        restart_limit = _RESTART_BASE * _luby(0)
        conflicts_since_restart = 0
        try:
            while True:
                conflict = self._propagate()
                if conflict is not None:
                    self.conflicts += 1
                    conflicts_here += 1
                    conflicts_since_restart += 1
                    if self._decision_level() == 0:
                        self._unsat_forever = True
                        return SatResult("UNSAT")
                    if budget is not None and conflicts_here > budget:
                        raise SolverBudgetError(
                            f"conflict budget {budget} exhausted")
                    learnt, bt_level = self._analyze(conflict)
                    self._record_learnt(learnt, bt_level)
                    self._var_inc /= _ACTIVITY_DECAY
                    continue
                if conflicts_since_restart >= restart_limit:
                    restart_count += 1
                    restart_limit = _RESTART_BASE * _luby(restart_count)
                    conflicts_since_restart = 0
                    self._cancel_until(0)
                    continue
                next_lit = None
                while self._decision_level() < len(assumed):
                    lit = assumed[self._decision_level()]
                    val = self._value_lit(lit)
                    if val == _TRUE:
                        self._new_decision_level()
                    elif val == _FALSE:
                        return SatResult("UNSAT")
                    else:
                        next_lit = lit
                        break
                if next_lit is None:
                    var = self._pick_branch_var()
                    if var is None:
                        model = self._extract_model()
                        return SatResult("SAT", model)
                    next_lit = (var << 1) | 1  # phase default: false
                    self.decisions += 1
                self._new_decision_level()
                self._enqueue(next_lit, None)
        finally:
            self._cancel_until(0)

    def _extract_model(self):
        model = [False] * (self.nvars + 1)
        for var in range(1, self.nvars + 1):
            model[var] = self._assign[var] == _TRUE
        if __debug__:
            for clause in self._check_clauses:
                assert any(model[abs(s)] == (s > 0) for s in clause), \
                    f"model violates clause {clause}"
        return model


def at_least_k_clauses(literals, k, new_var):
    """Sequential-counter clauses forcing >= k of ``literals`` true.

    ``new_var`` allocates fresh helper variables.  Helper ``s[i][j]`` reads
    "at least j of the first i literals are true"; the final register bit is
    asserted as a unit clause.
    """
    m = len(literals)
    if k == 1:
        return [list(literals)]
    if k == m:
        return [[lit] for lit in literals]
    clauses = []
    # s[i][j] for 1 <= j <= min(i, k); truth may only flow from evidence
    prev: dict[int, int] = {}
    for i in range(1, m + 1):
        y = literals[i - 1]
        cur: dict[int, int] = {}
        for j in range(1, min(i, k) + 1):
            s = new_var()
            cur[j] = s
            below = prev.get(j)  # s[i-1][j]; absent means false
            carry = prev.get(j - 1)  # s[i-1][j-1]; j==1 means true
            if j == 1:
                if below is None:
                    clauses.append([-s, y])
                else:
                    clauses.append([-s, below, y])
            else:
                if below is None:
                    clauses.append([-s, y])
                    clauses.append([-s, carry])
                else:
                    clauses.append([-s, below, y])
                    clauses.append([-s, below, carry])
        prev = cur
    clauses.append([prev[k]])
    return clauses


class ExternalSolverSession:
    """DIMACS subprocess bridge with the same surface as :class:`SolverSession`.

    ``command`` is the argv prefix of a solver invoked as ``command <cnf
    file>``; its stdout must contain ``SAT``/``UNSAT`` (``s SATISFIABLE`` /
    ``s UNSATISFIABLE`` also accepted) and, on SAT, DIMACS v-lines or a bare
    line of signed literals.  Variables missing from the v-lines default to
    false, matching the built-in phase default.
    """

    def __init__(self, formula: CnfFormula, command, decision_seed: int = 0):
        self.command = list(command)
        self.decision_seed = decision_seed
        self.nvars = formula.var_count
        self._clauses = [list(c) for c in formula.clauses]
        self.solve_calls = 0

    def new_var(self) -> int:
        self.nvars += 1
        return self.nvars

    def add_clause(self, clause) -> None:
        if not clause:
            raise ValueError("empty clause")
        for signed in clause:
            while abs(signed) > self.nvars:
                self.new_var()
        self._clauses.append(list(clause))

    def encode_at_least_k(self, literals, k: int) -> None:
        literals = list(literals)
        if k > len(literals) or k < 1:
            raise InfeasibleConstraintError(
                f"at-least-{k} over {len(literals)} literals is not satisfiable")
        for c in at_least_k_clauses(literals, k, self.new_var):
            self.add_clause(c)

    def solve(self, assumptions=()) -> SatResult:
        self.solve_calls += 1
        lines = [f"p cnf {self.nvars} {len(self._clauses) + len(assumptions)}"]
        for clause in self._clauses:
            lines.append(" ".join(map(str, clause)) + " 0")
        for lit in assumptions:
            lines.append(f"{lit} 0")
        with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
            fh.write("\n".join(lines) + "\n")
            path = fh.name
        try:
            proc = subprocess.run(self.command + [path], capture_output=True, text=True)
        finally:
            os.unlink(path)
        return self._parse_output(proc.stdout)

    def _parse_output(self, text):
        status = None
        value_tokens = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("s ") or line in ("SAT", "UNSAT", "SATISFIABLE", "UNSATISFIABLE"):
                word = line.split()[-1].upper()
                status = "UNSAT" if "UNSAT" in word else "SAT"
                continue
            if line.startswith("v "):
                value_tokens += line[2:].split()
            elif status == "SAT" and all(t.lstrip("-").isdigit() for t in line.split()):
                value_tokens += line.split()
        if status is None:
            raise RuntimeError(f"unparseable solver output: {text!r}")
        if status == "UNSAT":
            return SatResult("UNSAT")
        model = [False] * (self.nvars + 1)
        for tok in value_tokens:
            lit = int(tok)
            if lit != 0 and abs(lit) <= self.nvars:
                model[abs(lit)] = lit > 0
        return SatResult("SAT", model)
