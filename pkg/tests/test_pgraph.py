import random

import pytest
from hypothesis import given, settings

from mindcheck import formulas as fm
from mindcheck import models as md
from mindcheck import pgraph as pg
from mindcheck import plans as pl

import generators
import oracles
import strategies as gen

P, Q = fm.Atom("p"), fm.Atom("q")


def two_atom_world_set():
    """All four pq valuations as valuation-mask ids (p=bit0, q=bit1)."""
    worlds = frozenset(range(4))
    valuation = {"p": frozenset({1, 3}), "q": frozenset({2, 3})}
    return worlds, valuation


def running_library():
    return pl.load_library(
        {"plans": [{"name": "alpha", "pre": "T", "post": "p"}]})


def running_program():
    return pg.AgentProgram(
        atoms=("p", "q"),
        knowledge=(),
        beliefs=pg.make_graph([Q]),
        desires=pg.make_graph([P, Q], [(P, Q)]),
        intentions=frozenset({"alpha"}),
    )


class TestInducedOrder:
    def test_two_node_chain(self):
        worlds, valuation = two_atom_world_set()
        g = pg.make_graph([P, Q], [(P, Q)])
        got = pg.induced_order(g, worlds, valuation)
        # oracle: apply the lexicographic condition to all 16 pairs
        expected = oracles.induced(
            worlds, [frozenset({1, 3}), frozenset({2, 3})], [(0, 1)])
        assert got.pairs == expected
        # 11 < 10 < 01 < 00 in pq bits is ids 3 < 1 < 2 < 0
        strict = got.strict_pairs()
        assert strict == frozenset(
            {(3, 1), (3, 2), (3, 0), (1, 2), (1, 0), (2, 0)})

    def test_empty_graph_is_total(self):
        worlds, valuation = two_atom_world_set()
        got = pg.induced_order(pg.make_graph([]), worlds, valuation)
        assert got.pairs == frozenset((w, u) for w in worlds for u in worlds)

    def test_single_node_two_zones(self):
        worlds, valuation = two_atom_world_set()
        got = pg.induced_order(pg.make_graph([P]), worlds, valuation)
        expected = oracles.induced(worlds, [frozenset({1, 3})], [])
        assert got.pairs == expected
        p_zone, rest = {1, 3}, {0, 2}
        for w in p_zone:
            for u in rest:
                assert got.lt(w, u)
        for w in rest:
            for u in rest:
                assert got.le(w, u)

    def test_non_propositional_node_rejected(self):
        with pytest.raises(pg.GraphError):
            pg.make_graph([fm.A(P)])

    @settings(max_examples=250)
    @given(gen.priority_graphs(names=("p", "q")))
    def test_induced_order_is_preorder(self, g):
        worlds, valuation = two_atom_world_set()
        assert pg.induced_order(g, worlds, valuation).validate() is None

    @settings(max_examples=150)
    @given(gen.priority_graphs(names=("p", "q"), max_nodes=3))
    def test_adding_unordered_node_keeps_agreeing_pairs(self, g):
        worlds, valuation = two_atom_world_set()
        before = pg.induced_order(g, worlds, valuation)
        new_node = fm.Or(P, fm.Not(Q))
        bigger = pg.PriorityGraph(
            g.nodes + (new_node,) if new_node not in g.nodes else g.nodes,
            g.prec)
        after = pg.induced_order(bigger, worlds, valuation)
        sat = md.satisfying_worlds(new_node, worlds, valuation)
        added = after.strict_pairs() - before.strict_pairs()
        assert not any((w in sat) == (u in sat) for (w, u) in added)


class TestExtractGraph:
    def test_identity_order_two_worlds(self):
        worlds = frozenset({0, 3})
        valuation = {"p": frozenset({3}), "q": frozenset({3})}
        m = md.PreferenceModel(("p", "q"), worlds,
                               md.Preorder.identity(worlds), valuation)
        g = pg.extract_graph(m)
        assert g.prec == frozenset()
        assert set(g.nodes) == {
            fm.parse("~p & ~q"), fm.parse("p & q")}
        assert pg.induced_order(g, worlds, valuation) == m.order

    def test_two_world_chain(self):
        worlds = frozenset({3, 1})
        valuation = {"p": frozenset({1, 3}), "q": frozenset({3})}
        order = md.Preorder.from_pairs(worlds, [(3, 1)])
        m = md.PreferenceModel(("p", "q"), worlds, order, valuation)
        g = pg.extract_graph(m)
        # down-set disjuncts are emitted sorted by valuation bits
        assert set(g.nodes) == {
            fm.parse("p & q"), fm.parse("(p & ~q) | (p & q)")}
        assert pg.induced_order(g, worlds, valuation) == order

    def test_single_world(self):
        worlds = frozenset({1})
        valuation = {"p": frozenset({1})}
        m = md.PreferenceModel(("p",), worlds,
                               md.Preorder.identity(worlds), valuation)
        g = pg.extract_graph(m)
        assert g.nodes == (fm.Atom("p"),)
        assert pg.induced_order(g, worlds, valuation) == m.order

    def test_non_injective_valuation_rejected(self):
        worlds = frozenset({0, 1})
        valuation = {"p": frozenset()}
        m = md.PreferenceModel(("p",), worlds,
                               md.Preorder.identity(worlds), valuation)
        with pytest.raises(pg.GraphError, match="injective"):
            pg.extract_graph(m)

    def test_round_trip_fuzz(self):
        rng = random.Random(42)
        for _ in range(300):
            m = generators.random_injective_preference_model(rng)
            g = pg.extract_graph(m)
            assert pg.induced_order(g, m.worlds, m.valuation) == m.order


class TestInduceProgram:
    def test_knowledge_filters_worlds(self):
        ag = pg.AgentProgram(("p", "q"), (fm.parse("p | q"),),
                             pg.make_graph([]), pg.make_graph([]), frozenset())
        m = pg.induce_program(ag, pl.EMPTY_LIBRARY)
        assert m.worlds == frozenset({1, 2, 3})

    def test_inconsistent_knowledge(self):
        ag = pg.AgentProgram(("p",), (fm.parse("p"), fm.parse("~p")),
                             pg.make_graph([]), pg.make_graph([]), frozenset())
        with pytest.raises(pg.ProgramError) as exc:
            pg.induce_program(ag, pl.EMPTY_LIBRARY)
        assert exc.value.reason == "inconsistent-knowledge"

    def test_running_example_accepted(self):
        m = pg.induce_program(running_program(), running_library())
        assert m.worlds == frozenset(range(4))
        assert m.intentions == frozenset({"alpha"})
        # plausibility: q-worlds below the rest, ties inside zones
        assert m.plausibility.min_set(m.worlds) == frozenset({2, 3})
        # desirability: the 11 world is the unique minimum of the chain
        assert m.desirability.min_set(m.worlds) == frozenset({3})

    def test_unknown_plan_symbol(self):
        ag = pg.AgentProgram(("p",), (), pg.make_graph([]), pg.make_graph([]),
                             frozenset({"ghost"}))
        with pytest.raises(pg.ProgramError) as exc:
            pg.induce_program(ag, running_library())
        assert exc.value.reason == "unknown-plan"

    def test_p_inconsistent_intentions_rejected(self):
        # believing q already makes a post-condition of q inadmissible
        lib = pl.load_library(
            {"plans": [{"name": "alpha", "pre": "T", "post": "q"}]})
        ag = pg.AgentProgram(("p", "q"), (), pg.make_graph([Q]),
                             pg.make_graph([Q]), frozenset({"alpha"}))
        with pytest.raises(pg.ProgramError) as exc:
            pg.induce_program(ag, lib)
        assert exc.value.reason == "p-inconsistent-intentions"
        assert "alpha" in exc.value.detail
        assert "postcondition-not-admissible" in exc.value.detail


class TestProgramDocuments:
    DOC = {
        "atoms": ["p", "q"],
        "K": [],
        "B": {"nodes": ["q"], "edges": []},
        "D": {"nodes": ["p", "q"], "ranks": [0, 1]},
        "I": ["alpha"],
    }

    def test_load_running_example(self):
        ag = pg.load_program(self.DOC)
        assert ag == running_program()

    def test_ranks_compile_to_priority_pairs(self):
        g = pg.load_graph({"nodes": ["p", "q", "r"], "ranks": [0, 0, 1]}, "D")
        r = fm.Atom("r")
        assert g.prec == frozenset({(P, r), (Q, r)})

    def test_edges_form(self):
        g = pg.load_graph({"nodes": ["p", "q"], "edges": [[0, 1]]}, "B")
        assert g.prec == frozenset({(P, Q)})

    def test_priority_cycle_rejected(self):
        with pytest.raises(pg.ProgramError):
            pg.load_graph({"nodes": ["p", "q"], "edges": [[0, 1], [1, 0]]}, "B")

    def test_undeclared_atom_rejected(self):
        doc = dict(self.DOC, K=["r"])
        with pytest.raises(pg.ProgramError):
            pg.load_program(doc)

    def test_inconsistent_knowledge_rejected_on_load(self):
        doc = dict(self.DOC, K=["p", "~p"])
        with pytest.raises(pg.ProgramError) as exc:
            pg.load_program(doc)
        assert exc.value.reason == "inconsistent-knowledge"

    def test_dump_round_trips(self):
        ag = pg.load_program(self.DOC)
        assert pg.load_program(pg.dump_program(ag)) == ag
