"""Priority graphs and the lexicographic world order they induce.

A priority graph is a strict partial order over propositional formulas.
It orders worlds lexicographically: w is at least as good as w' when, for
every graph formula, w matches w' or compensates the loss with a win on a
strictly higher-priority formula. Agent programs pair two graphs (belief
and desire) with a knowledge set and adopted plans, and induce a practical
agent model over the knowledge-consistent valuations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from . import formulas as fm
from . import models as md
from . import plans as pl

MAX_PROGRAM_ATOMS = 16


class GraphError(Exception):
    pass


class ProgramError(Exception):
    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class PriorityGraph:
    """Propositional formulas under a strict partial priority order.

    prec contains (higher, lower) pairs, kept transitively closed; a formula
    beats another when it appears first in such a pair.
    """

    nodes: tuple[fm.Formula, ...]
    prec: frozenset[tuple[fm.Formula, fm.Formula]]

    def outranks(self, phi: fm.Formula, psi: fm.Formula) -> bool:
        return (phi, psi) in self.prec

    def higher_than(self, phi: fm.Formula) -> tuple[fm.Formula, ...]:
        return tuple(n for n in self.nodes if self.outranks(n, phi))


def make_graph(nodes: Iterable[fm.Formula],
               prec: Iterable[tuple[fm.Formula, fm.Formula]] = ()) -> PriorityGraph:
    """Validate and transitively close a priority graph.

    Nodes must be propositional; duplicates are dropped keeping first
    occurrence; a priority cycle is rejected (the order must stay strict).
    """
    seen: list[fm.Formula] = []
    for n in nodes:
        if not fm.is_propositional(n):
            raise GraphError(f"non-propositional node: {fm.render(n)}")
        if n not in seen:
            seen.append(n)
    edges = set()
    for hi, lo in prec:
        if hi not in seen or lo not in seen:
            raise GraphError("priority edge mentions a formula outside the node set")
        edges.add((hi, lo))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(tuple(edges), repeat=2):
            if b == c and (a, d) not in edges:
                edges.add((a, d))
                changed = True
    for hi, lo in edges:
        if hi == lo:
            raise GraphError(f"priority cycle through {fm.render(hi)}")
    return PriorityGraph(tuple(seen), frozenset(edges))


def induced_order(g: PriorityGraph, worlds: Iterable[md.WorldId],
                  valuation: md.Valuation) -> md.Preorder:
    """The lexicographic preorder the graph induces on the given worlds.

    w <= w' iff for every node phi: (w' sat phi implies w sat phi), or some
    strictly higher-priority psi holds at w and fails at w'.
    """
    worlds = frozenset(worlds)
    sat = {n: md.satisfying_worlds(n, worlds, valuation) for n in g.nodes}
    higher = {n: g.higher_than(n) for n in g.nodes}

    def le(w, u):
        for phi in g.nodes:
            if u in sat[phi] and w not in sat[phi]:
                if not any(w in sat[psi] and u not in sat[psi]
                           for psi in higher[phi]):
                    return False
        return True

    pairs = [(w, u) for w in worlds for u in worlds if le(w, u)]
    return md.Preorder.from_pairs(worlds, pairs, close=False)


def extract_graph(m: md.PreferenceModel) -> PriorityGraph:
    """A priority graph whose induced order reproduces m.order exactly.

    Uses the antichain of down-set characteristic formulas: one node per
    world w, true exactly on {u | u <= w}. Requires distinct worlds to have
    distinct valuations, since worlds are picked out by their valuations.
    """
    by_val: dict[str, md.WorldId] = {}
    for w in m.worlds:
        bits = _bits_of(m, w)
        if bits in by_val:
            raise GraphError(
                f"valuation not injective: worlds {by_val[bits]} and {w} agree"
            )
        by_val[bits] = w
    nodes: list[fm.Formula] = []
    for w in sorted(m.worlds, key=lambda w: _bits_of(m, w)):
        down = sorted(m.order.below(w), key=lambda u: _bits_of(m, u))
        node = _disjunction([_characteristic(m, u) for u in down])
        if node not in nodes:
            nodes.append(node)
    return PriorityGraph(tuple(nodes), frozenset())


def _bits_of(m, w) -> str:
    return "".join("1" if w in m.valuation[a] else "0" for a in m.atoms)


def _characteristic(m, w) -> fm.Formula:
    """Conjunction of literals true exactly at w's valuation."""
    lits: list[fm.Formula] = []
    for a in sorted(m.atoms):
        atom = fm.Atom(a)
        lits.append(atom if w in m.valuation[a] else fm.Not(atom))
    return _conjunction(lits)


def _conjunction(fs: list[fm.Formula]) -> fm.Formula:
    if not fs:
        return fm.Top()
    acc = fs[0]
    for f in fs[1:]:
        acc = fm.And(acc, f)
    return acc


def _disjunction(fs: list[fm.Formula]) -> fm.Formula:
    if not fs:
        return fm.Bottom()
    acc = fs[0]
    for f in fs[1:]:
        acc = fm.Or(acc, f)
    return acc


# ---------------------------------------------------------------------------
# Agent structures and programs

@dataclass(frozen=True)
class AgentStructure:
    """Syntactic counterpart of an agent model: one graph per order."""

    plausibility_graph: PriorityGraph
    desirability_graph: PriorityGraph


def extract_structure(m: md.AgentModel) -> AgentStructure:
    return AgentStructure(
        extract_graph(m.plausibility_view()),
        extract_graph(m.desirability_view()),
    )


@dataclass(frozen=True)
class AgentProgram:
    """Knowledge set, belief graph, desire graph, and adopted plans."""

    atoms: tuple[str, ...]
    knowledge: tuple[fm.Formula, ...]
    beliefs: PriorityGraph
    desires: PriorityGraph
    intentions: frozenset[str]


def knowledge_worlds(atoms: tuple[str, ...],
                     knowledge: Iterable[fm.Formula]) -> frozenset[int]:
    """Valuations over the atom set satisfying every knowledge formula.

    World ids double as valuation bit masks: bit i is atom i of the declared
    order.
    """
    if len(atoms) > MAX_PROGRAM_ATOMS:
        raise ProgramError(
            "too-many-atoms",
            f"{len(atoms)} atoms would enumerate {2 ** len(atoms)} worlds",
        )
    worlds = frozenset(range(2 ** len(atoms)))
    valuation = program_valuation(atoms, worlds)
    for f in knowledge:
        worlds = worlds & md.satisfying_worlds(f, worlds, valuation)
    return worlds


def program_valuation(atoms: tuple[str, ...],
                      worlds: frozenset[int]) -> dict[str, frozenset[int]]:
    return {
        a: frozenset(w for w in worlds if w >> i & 1)
        for i, a in enumerate(atoms)
    }


def induce_program(ag: AgentProgram, lib: pl.PlanLibrary,
                   check_intentions: bool = True) -> md.PracticalAgentModel:
    """The practical agent model an agent program stands for.

    Worlds are the knowledge-consistent valuations; each order is induced
    lexicographically from its graph; the intention set must be P-consistent
    unless check_intentions is disabled (used while rebuilding programs whose
    intentions are about to be re-filtered).
    """
    worlds = knowledge_worlds(ag.atoms, ag.knowledge)
    if not worlds:
        raise ProgramError("inconsistent-knowledge",
                           "no valuation satisfies the knowledge set")
    valuation = program_valuation(ag.atoms, worlds)
    plaus = induced_order(ag.beliefs, worlds, valuation)
    des = induced_order(ag.desires, worlds, valuation)
    for symbol in sorted(ag.intentions):
        if symbol not in lib.plans:
            raise ProgramError("unknown-plan", symbol)
    m = md.PracticalAgentModel(ag.atoms, worlds, plaus, des, valuation,
                               frozenset(ag.intentions))
    if check_intentions:
        failure = pl.check_p_consistency(m, lib, m.intentions)
        if failure is not None:
            raise ProgramError("p-inconsistent-intentions", str(failure))
    return m


# ---------------------------------------------------------------------------
# Program documents

def _parse_prop(text: str, what: str) -> fm.Formula:
    f = fm.parse(text)
    if not fm.is_propositional(f):
        raise ProgramError("non-propositional-formula", f"{what}: {text}")
    return f


def load_graph(doc: dict, what: str) -> PriorityGraph:
    """Graph document: nodes plus either explicit edges or integer ranks.

    edges [i, j] reads "node i outranks node j"; ranks compile lower rank to
    higher priority.
    """
    node_texts = doc.get("nodes", [])
    nodes = [_parse_prop(t, f"{what} node") for t in node_texts]
    if "edges" in doc and "ranks" in doc:
        raise ProgramError("bad-graph", f"{what}: give edges or ranks, not both")
    prec: list[tuple[fm.Formula, fm.Formula]] = []
    if "ranks" in doc:
        ranks = doc["ranks"]
        if len(ranks) != len(nodes):
            raise ProgramError("bad-graph", f"{what}: one rank per node required")
        prec = [
            (nodes[i], nodes[j])
            for i in range(len(nodes)) for j in range(len(nodes))
            if ranks[i] < ranks[j]
        ]
    else:
        for i, j in doc.get("edges", []):
            if not (0 <= i < len(nodes) and 0 <= j < len(nodes)):
                raise ProgramError("bad-graph", f"{what}: edge [{i},{j}] out of range")
            prec.append((nodes[i], nodes[j]))
    try:
        return make_graph(nodes, prec)
    except GraphError as exc:
        raise ProgramError("bad-graph", f"{what}: {exc}") from exc


def load_program(doc: dict) -> AgentProgram:
    """Program document: {atoms, K, B, D, I}; checks K consistency on load."""
    try:
        atoms = tuple(doc["atoms"])
    except (KeyError, TypeError) as exc:
        raise ProgramError("bad-program", f"missing field: {exc}") from exc
    if len(set(atoms)) != len(atoms):
        raise ProgramError("bad-program", "duplicate atom names")
    for a in atoms:
        try:
            fm.Atom(a)
        except fm.FormulaError as exc:
            raise ProgramError("bad-program", str(exc)) from exc
    knowledge = tuple(_parse_prop(t, "knowledge") for t in doc.get("K", []))
    beliefs = load_graph(doc.get("B", {}), "B")
    desires = load_graph(doc.get("D", {}), "D")
    intentions = frozenset(doc.get("I", []))
    ag = AgentProgram(atoms, knowledge, beliefs, desires, intentions)
    known = fm.atoms_of(_conjunction(list(knowledge))) \
        | set().union(*(fm.atoms_of(n) for n in beliefs.nodes), frozenset()) \
        | set().union(*(fm.atoms_of(n) for n in desires.nodes), frozenset())
    missing = known - set(atoms)
    if missing:
        raise ProgramError("bad-program",
                           f"formulas use undeclared atoms: {sorted(missing)}")
    if not knowledge_worlds(atoms, knowledge):
        raise ProgramError("inconsistent-knowledge",
                           "no valuation satisfies the knowledge set")
    return ag


def dump_graph(g: PriorityGraph) -> dict:
    index = {n: i for i, n in enumerate(g.nodes)}
    return {
        "nodes": [fm.render(n) for n in g.nodes],
        "edges": sorted([index[a], index[b]] for (a, b) in g.prec),
    }


def dump_program(ag: AgentProgram) -> dict:
    return {
        "atoms": list(ag.atoms),
        "K": [fm.render(f) for f in ag.knowledge],
        "B": dump_graph(ag.beliefs),
        "D": dump_graph(ag.desires),
        "I": sorted(ag.intentions),
    }
