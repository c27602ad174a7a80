"""Semantic evaluation: the extension of a formula in a finite agent model.

Evaluation is bottom-up over extension sets. Mental-attitude sugar expands
to its defining A/E-prefixed form first, so attitude formulas always come
out globally uniform (extension empty or the whole world set) and the
per-formula memo is sound. Dynamic and plan modalities build the transformed
model and evaluate the body there; worlds the transformation removes satisfy
the modality vacuously.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import dynamics as dy
from . import formulas as fm
from . import models as md
from . import plans as pl


class CheckError(Exception):
    pass


class EmptyModelError(CheckError):
    pass


class UnknownPlanError(CheckError):
    pass


def extension(m: md.AgentModel, lib: pl.PlanLibrary,
              f: fm.Formula) -> frozenset[md.WorldId]:
    """The set of worlds of m at which f holds."""
    if not m.worlds:
        raise EmptyModelError("cannot evaluate formulas on an empty model")
    core = fm.desugar(f, lib)
    return _Evaluator(m, lib).ext(core)


def holds(m: md.AgentModel, lib: pl.PlanLibrary, f: fm.Formula) -> bool:
    """Global truth: f holds at every world of m."""
    return extension(m, lib, f) == m.worlds


class _Evaluator:
    def __init__(self, m: md.AgentModel, lib: pl.PlanLibrary):
        self.m = m
        self.lib = lib
        self.memo: dict[fm.Formula, frozenset[md.WorldId]] = {}

    def ext(self, f: fm.Formula) -> frozenset[md.WorldId]:
        cached = self.memo.get(f)
        if cached is None:
            cached = self.memo[f] = self._ext(f)
        return cached

    def _ext(self, f: fm.Formula) -> frozenset[md.WorldId]:
        m = self.m
        if isinstance(f, fm.Atom):
            if f.name not in m.valuation:
                raise md.UnknownAtomError(f"unknown atom {f.name!r}")
            return m.valuation[f.name] & m.worlds
        if isinstance(f, fm.Top):
            return m.worlds
        if isinstance(f, fm.Bottom):
            return frozenset()
        if isinstance(f, fm.Not):
            return m.worlds - self.ext(f.child)
        if isinstance(f, fm.And):
            return self.ext(f.left) & self.ext(f.right)
        if isinstance(f, fm.Or):
            return self.ext(f.left) | self.ext(f.right)
        if isinstance(f, fm.Implies):
            return (m.worlds - self.ext(f.left)) | self.ext(f.right)
        if isinstance(f, fm.A):
            return m.worlds if self.ext(f.child) == m.worlds else frozenset()
        if isinstance(f, fm.E):
            return m.worlds if self.ext(f.child) else frozenset()
        if isinstance(f, fm.Box):
            sat = self.ext(f.child)
            order = m.order(f.order)
            reach = order.strictly_below if f.strict else order.below
            return frozenset(w for w in m.worlds if reach(w) <= sat)
        if isinstance(f, fm.Diamond):
            sat = self.ext(f.child)
            order = m.order(f.order)
            reach = order.strictly_below if f.strict else order.below
            return frozenset(w for w in m.worlds if reach(w) & sat)
        if isinstance(f, fm.DynMod):
            return self._dynamic(f)
        if isinstance(f, fm.PlanMod):
            return self._plan_step(f)
        if isinstance(f, fm.Intends):
            if f.plan not in self.lib.plans:
                raise UnknownPlanError(f"unknown plan symbol {f.plan!r}")
            intended = f.plan in md.intentions_of(m)
            return m.worlds if intended else frozenset()
        raise CheckError(f"cannot evaluate {f!r}")

    def _dynamic(self, f: fm.DynMod) -> frozenset[md.WorldId]:
        m = self.m
        if f.op == "announce":
            survivors = self.ext(f.argument)
            if not survivors:
                return m.worlds  # nothing to announce truthfully anywhere
            transformed = dy.announce(m, f.argument)
            return (m.worlds - survivors) | extension(transformed, self.lib, f.body)
        if f.op == "upgrade":
            transformed = dy.upgrade(m, f.order, f.argument)
        else:
            transformed = dy.contract(m, f.order, f.argument)
        return extension(transformed, self.lib, f.body)

    def _plan_step(self, f: fm.PlanMod) -> frozenset[md.WorldId]:
        m = self.m
        plan = self.lib.get(f.plan)
        executable = self.ext(plan.pre)
        if not executable:
            return m.worlds  # nowhere executable, vacuously satisfied
        transformed = dy.product_update(m, self.lib, f.plan)
        return (m.worlds - executable) | extension(transformed, self.lib, f.body)


@dataclass(frozen=True)
class Prop1Failure:
    plan: str
    reason: str  # "precondition-not-believed" | "postcondition-not-intended"

    def __str__(self):
        return f"plan {self.plan!r}: {self.reason}"


def check_proposition1(m: md.PracticalAgentModel,
                       lib: pl.PlanLibrary) -> Optional[Prop1Failure]:
    """Adopted plans must be believed executable and their goals intended.

    Returns the first plan whose precondition is not believed or whose
    post-condition is not an intention proper, or None when the connection
    between plans-as-intentions and intentions-to-be is intact.
    """
    for symbol in sorted(md.intentions_of(m)):
        plan = lib.get(symbol)
        if not holds(m, lib, fm.Bel(plan.pre, fm.Top())):
            return Prop1Failure(symbol, "precondition-not-believed")
        if not holds(m, lib, fm.Int(plan.post, fm.Top())):
            return Prop1Failure(symbol, "postcondition-not-intended")
    return None
