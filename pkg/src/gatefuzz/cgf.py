"""Coverage-guided greybox fuzzing baseline over the same simulator.

The classic mutate/simulate/admit loop: seeds whose valuations exercise a new
(target node, value) pair join the corpus, and future mutants are bred from
uniformly chosen corpus seeds.  Fitness is target-restricted toggle coverage,
which makes the baseline as directed-friendly as a greybox loop can be.
Everything is driven by one seeded RNG, so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coverage import CoverageReport, coverage_curve, measure
from .graph import CircuitGraph
from .pattern import InputPattern
from .simulate import simulate
from .targets import TargetSpec

FULL_RANDOM_PROB = 0.1
MULTI_FLIP_CONTINUE_PROB = 0.5


@dataclass
class CorpusSeed:
    pattern: InputPattern
    fitness: int  # count of (target node, value) pairs that were new at admission


@dataclass
class Corpus:
    seeds: list[CorpusSeed] = field(default_factory=list)
    rng_seed: int = 0


@dataclass
class CgfResult:
    executed: list[InputPattern]
    report: CoverageReport
    curve: list[tuple]
    corpus: Corpus


def run_cgf(graph: CircuitGraph, spec: TargetSpec, budget: int,
            rng_seed: int = 0) -> CgfResult:
    """Run exactly ``budget`` simulations of mutated patterns.

    The corpus starts from one uniform-random pattern.  Mutation picks a
    corpus seed uniformly and either replaces it wholesale (probability 0.1)
    or flips ``w`` distinct bits with ``w`` drawn geometrically (w=1 is the
    plain single-bit flip).  Coverage is reported over all executed patterns,
    not just admitted ones.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = random.Random(rng_seed)
    width = graph.input_count
    corpus = Corpus(rng_seed=rng_seed)
    seen_pairs: set[tuple[int, int]] = set()
    target_nodes = spec.nodes()
    executed: list[InputPattern] = []

    for _ in range(budget):
        if not corpus.seeds:
            candidate = _random_pattern(rng, width)
        else:
            parent = rng.choice(corpus.seeds).pattern
            candidate = _mutate(rng, parent, width)
        executed.append(candidate)
        valuation = simulate(graph, candidate)
        new_pairs = {(n, valuation[n]) for n in target_nodes} - seen_pairs
        if new_pairs:
            seen_pairs |= new_pairs
            corpus.seeds.append(CorpusSeed(pattern=candidate, fitness=len(new_pairs)))

    report = measure(graph, spec, executed)
    curve = coverage_curve(graph, spec, executed)
    return CgfResult(executed=executed, report=report, curve=curve, corpus=corpus)


def _random_pattern(rng, width):
    return InputPattern(tuple(rng.randrange(2) for _ in range(width)))


def _mutate(rng, parent: InputPattern, width):
    if width == 0:
        return parent
    if rng.random() < FULL_RANDOM_PROB:
        return _random_pattern(rng, width)
    w = 1
    while w < width and rng.random() < MULTI_FLIP_CONTINUE_PROB:
        w += 1
    positions = rng.sample(range(width), w)
    bits = list(parent.bits)
    for pos in positions:
        bits[pos] ^= 1
    return InputPattern(tuple(bits))
