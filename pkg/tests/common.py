"""The worked running example shared across test modules.

Two atoms p, q; empty knowledge; beliefs prioritize q; desires prioritize p
over q; one adopted plan alpha with trivial precondition achieving p.
World ids are valuation masks: p is bit 0, q is bit 1.
"""

from mindcheck import formulas as fm
from mindcheck import pgraph as pg
from mindcheck import plans as pl

P, Q = fm.Atom("p"), fm.Atom("q")

PROGRAM_DOC = {
    "atoms": ["p", "q"],
    "K": [],
    "B": {"nodes": ["q"], "edges": []},
    "D": {"nodes": ["p", "q"], "ranks": [0, 1]},
    "I": ["alpha"],
}

LIBRARY_DOC = {"plans": [{"name": "alpha", "pre": "T", "post": "p"}]}


def running_library():
    return pl.load_library(LIBRARY_DOC)


def running_program():
    return pg.load_program(PROGRAM_DOC)


def running_model():
    return pg.induce_program(running_program(), running_library())
