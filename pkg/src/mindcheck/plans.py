"""Plan libraries: atomic actions with propositional pre/post conditions.

A post-condition is a consistent conjunction of literals ("T" stands for the
empty conjunction); executing a plan overwrites exactly the atoms it names.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from . import formulas as fm


class LibraryError(Exception):
    pass


@dataclass(frozen=True)
class Plan:
    symbol: str
    pre: fm.Formula
    post: fm.Formula

    def post_literals(self) -> dict[str, bool]:
        """Atom polarities fixed by the post-condition."""
        lits = literal_conjunction(self.post)
        assert lits is not None  # enforced at construction
        return lits


@dataclass(frozen=True)
class PlanLibrary:
    plans: Mapping[str, Plan]

    def __iter__(self):
        return iter(sorted(self.plans))

    def get(self, symbol: str) -> Plan:
        try:
            return self.plans[symbol]
        except KeyError:
            raise LibraryError(f"unknown plan symbol {symbol!r}") from None


EMPTY_LIBRARY = PlanLibrary({})


def literal_conjunction(f: fm.Formula) -> Optional[dict[str, bool]]:
    """Decompose f as a consistent conjunction of literals, else None.

    Top is the empty conjunction; contradictory or non-literal shapes give
    None.
    """
    lits: dict[str, bool] = {}

    def collect(g) -> bool:
        if isinstance(g, fm.Top):
            return True
        if isinstance(g, fm.And):
            return collect(g.left) and collect(g.right)
        if isinstance(g, fm.Atom):
            name, value = g.name, True
        elif isinstance(g, fm.Not) and isinstance(g.child, fm.Atom):
            name, value = g.child.name, False
        else:
            return False
        if lits.get(name, value) != value:
            return False  # both polarities present
        lits[name] = value
        return True

    return lits if collect(f) else None


def make_plan(symbol: str, pre: fm.Formula, post: fm.Formula) -> Plan:
    if not fm.is_propositional(pre):
        raise LibraryError(f"plan {symbol}: precondition must be propositional")
    if literal_conjunction(post) is None:
        raise LibraryError(
            f"plan {symbol}: post-condition must be a consistent "
            f"conjunction of literals"
        )
    return Plan(symbol, pre, post)


def load_library(doc: dict) -> PlanLibrary:
    """Build a library from a document: {"plans": [{name, pre, post}]}."""
    plans: dict[str, Plan] = {}
    for pd in doc.get("plans", ()):
        try:
            name, pre_text, post_text = pd["name"], pd["pre"], pd["post"]
        except (KeyError, TypeError) as exc:
            raise LibraryError(f"plan entry missing field: {exc}") from exc
        if name in plans:
            raise LibraryError(f"duplicate plan symbol {name!r}")
        try:
            pre = fm.parse(pre_text)
            post = fm.parse(post_text)
        except fm.ParseError as exc:
            raise LibraryError(f"plan {name}: {exc}") from exc
        plans[name] = make_plan(name, pre, post)
    return PlanLibrary(plans)


def dump_library(lib: PlanLibrary) -> dict:
    return {
        "plans": [
            {"name": name, "pre": fm.render(lib.plans[name].pre),
             "post": fm.render(lib.plans[name].post)}
            for name in sorted(lib.plans)
        ]
    }


@dataclass(frozen=True)
class ConsistencyFailure:
    """Names the plan and the conjunct that broke P-consistency."""

    plan: str
    reason: str  # "precondition-not-believed" | "postcondition-not-admissible"

    def __str__(self):
        return f"plan {self.plan!r}: {self.reason}"


def check_p_consistency(m, lib: PlanLibrary, intentions) -> Optional[ConsistencyFailure]:
    """First plan in the intention set violating P-consistency, if any.

    Each adopted plan must have a believed precondition and an admissible
    post-condition on the given model.
    """
    from . import checker

    for symbol in sorted(intentions):
        plan = lib.get(symbol)
        if not checker.holds(m, lib, fm.Bel(plan.pre, fm.Top())):
            return ConsistencyFailure(symbol, "precondition-not-believed")
        if not checker.holds(m, lib, fm.AdmInt(plan.post, fm.Top())):
            return ConsistencyFailure(symbol, "postcondition-not-admissible")
    return None
