"""Finite world sets, valuations, preorders, and agent models.

Worlds are small non-negative integers whose identity is stable within a
model value: restriction keeps surviving ids, and ids are never reused.
Relations are stored densely as per-world bit rows, one int per world.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import formulas as fm

WorldId = int


class ModelError(Exception):
    """Malformed model documents or misused model values."""


class UnknownAtomError(ModelError):
    pass


@dataclass(frozen=True)
class Violation:
    """First reflexivity or transitivity failure found by Preorder.validate."""

    kind: str  # "reflexivity" | "transitivity"
    witness: tuple[WorldId, ...]

    def __str__(self):
        if self.kind == "reflexivity":
            return f"missing reflexive pair for world {self.witness[0]}"
        w, u, x = self.witness
        return f"missing transitive pair ({w},{x}) implied by ({w},{u}),({u},{x})"


def _mask(worlds: Iterable[WorldId]) -> int:
    m = 0
    for w in worlds:
        m |= 1 << w
    return m


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Preorder:
    """A binary relation over a finite carrier, intended reflexive+transitive.

    Values are immutable once built. Constructors do not force the invariants
    (validate() reports the first violation), except from_pairs(close=True),
    which takes generator pairs and closes them reflexively-transitively.
    """

    __slots__ = ("carrier", "_up", "_down", "_sdown")

    def __init__(self, carrier: frozenset[WorldId], up: dict[WorldId, int]):
        object.__setattr__(self, "carrier", frozenset(carrier))
        object.__setattr__(self, "_up", dict(up))
        down = {w: 0 for w in carrier}
        for w in carrier:
            for u in _bits(up[w]):
                down[u] |= 1 << w
        sdown = {
            w: down[w] & ~_mask(u for u in _bits(down[w]) if self.le(w, u))
            for w in carrier
        }
        object.__setattr__(self, "_down", down)
        object.__setattr__(self, "_sdown", sdown)

    def __setattr__(self, name, value):
        raise AttributeError("Preorder is immutable")

    @classmethod
    def from_pairs(cls, carrier: Iterable[WorldId],
                   pairs: Iterable[tuple[WorldId, WorldId]],
                   close: bool = True) -> "Preorder":
        carrier = frozenset(carrier)
        up = {w: 0 for w in carrier}
        for w, u in pairs:
            if w not in carrier or u not in carrier:
                raise ModelError(f"relation pair ({w},{u}) leaves the carrier")
            up[w] |= 1 << u
        if close:
            for w in carrier:
                up[w] |= 1 << w
            changed = True
            while changed:
                changed = False
                for w in carrier:
                    row = up[w]
                    acc = row
                    for u in _bits(row):
                        acc |= up[u]
                    if acc != row:
                        up[w] = acc
                        changed = True
        return cls(carrier, up)

    @classmethod
    def identity(cls, carrier: Iterable[WorldId]) -> "Preorder":
        carrier = frozenset(carrier)
        return cls(carrier, {w: 1 << w for w in carrier})

    @classmethod
    def total(cls, carrier: Iterable[WorldId]) -> "Preorder":
        carrier = frozenset(carrier)
        full = _mask(carrier)
        return cls(carrier, {w: full for w in carrier})

    def le(self, w: WorldId, u: WorldId) -> bool:
        return bool(self._up[w] >> u & 1)

    def lt(self, w: WorldId, u: WorldId) -> bool:
        return self.le(w, u) and not self.le(u, w)

    @property
    def pairs(self) -> frozenset[tuple[WorldId, WorldId]]:
        return frozenset(
            (w, u) for w in self.carrier for u in _bits(self._up[w])
        )

    def strict_pairs(self) -> frozenset[tuple[WorldId, WorldId]]:
        """The strict part: all (w,u) with w <= u and not u <= w."""
        return frozenset(
            (w, u) for w in self.carrier for u in _bits(self._up[w])
            if not self.le(u, w)
        )

    def below(self, w: WorldId) -> frozenset[WorldId]:
        """All u with u <= w."""
        return frozenset(_bits(self._down[w]))

    def strictly_below(self, w: WorldId) -> frozenset[WorldId]:
        return frozenset(_bits(self._sdown[w]))

    def min_set(self, s: Iterable[WorldId]) -> frozenset[WorldId]:
        """Members of s with no strictly smaller member of s."""
        s = frozenset(s)
        if not s <= self.carrier:
            raise ModelError(f"worlds {sorted(s - self.carrier)} outside carrier")
        smask = _mask(s)
        return frozenset(w for w in s if self._sdown[w] & smask == 0)

    def restrict(self, keep: Iterable[WorldId]) -> "Preorder":
        keep = frozenset(keep)
        if not keep <= self.carrier:
            raise ModelError(f"worlds {sorted(keep - self.carrier)} outside carrier")
        kmask = _mask(keep)
        return Preorder(keep, {w: self._up[w] & kmask for w in keep})

    def validate(self) -> Optional[Violation]:
        for w in sorted(self.carrier):
            if not self.le(w, w):
                return Violation("reflexivity", (w,))
        for w in sorted(self.carrier):
            for u in sorted(_bits(self._up[w])):
                for x in sorted(_bits(self._up[u])):
                    if not self.le(w, x):
                        return Violation("transitivity", (w, u, x))
        return None

    def __eq__(self, other):
        return (isinstance(other, Preorder)
                and self.carrier == other.carrier and self._up == other._up)

    def __hash__(self):
        return hash((self.carrier, tuple(sorted(self._up.items()))))

    def __repr__(self):
        nonrefl = sorted((w, u) for (w, u) in self.pairs if w != u)
        return f"Preorder({sorted(self.carrier)}, {nonrefl})"


# ---------------------------------------------------------------------------
# Models

Valuation = Mapping[str, frozenset[WorldId]]


@dataclass(frozen=True)
class PreferenceModel:
    atoms: tuple[str, ...]
    worlds: frozenset[WorldId]
    order: Preorder
    valuation: Valuation


@dataclass(frozen=True)
class AgentModel:
    """One world set with a plausibility and a desirability preorder."""

    atoms: tuple[str, ...]
    worlds: frozenset[WorldId]
    plausibility: Preorder
    desirability: Preorder
    valuation: Valuation

    def order(self, tag: str) -> Preorder:
        if tag == "P":
            return self.plausibility
        if tag == "D":
            return self.desirability
        raise ModelError(f"bad order tag {tag!r}")

    def with_order(self, tag: str, order: Preorder) -> "AgentModel":
        if tag == "P":
            return dataclasses.replace(self, plausibility=order)
        if tag == "D":
            return dataclasses.replace(self, desirability=order)
        raise ModelError(f"bad order tag {tag!r}")

    def true_atoms(self, w: WorldId) -> frozenset[str]:
        return frozenset(a for a in self.atoms if w in self.valuation[a])

    def world_bits(self, w: WorldId) -> str:
        """Valuation of w as a 0/1 string in declared atom order."""
        return "".join("1" if w in self.valuation[a] else "0" for a in self.atoms)

    def restrict(self, keep: Iterable[WorldId]) -> "AgentModel":
        """Intersect worlds, both orders, and the valuation with keep."""
        keep = frozenset(keep)
        if not keep <= self.worlds:
            raise ModelError(f"worlds {sorted(keep - self.worlds)} not in model")
        return dataclasses.replace(
            self,
            worlds=keep,
            plausibility=self.plausibility.restrict(keep),
            desirability=self.desirability.restrict(keep),
            valuation={a: ws & keep for a, ws in self.valuation.items()},
        )

    def plausibility_view(self) -> PreferenceModel:
        return PreferenceModel(self.atoms, self.worlds, self.plausibility,
                               dict(self.valuation))

    def desirability_view(self) -> PreferenceModel:
        return PreferenceModel(self.atoms, self.worlds, self.desirability,
                               dict(self.valuation))


@dataclass(frozen=True)
class PracticalAgentModel(AgentModel):
    """Agent model plus the set of adopted plans.

    P-consistency of the intention set is enforced where models are built
    from programs and restored by filter_intentions; dynamic operations may
    leave it temporarily violated (dropping intentions is a policy choice,
    never implicit).
    """

    intentions: frozenset[str] = frozenset()


def intentions_of(m: AgentModel) -> frozenset[str]:
    return m.intentions if isinstance(m, PracticalAgentModel) else frozenset()


def satisfying_worlds(f: "fm.Formula", worlds: frozenset[WorldId],
                      valuation: Valuation) -> frozenset[WorldId]:
    """Worlds satisfying a propositional formula."""
    if isinstance(f, fm.Atom):
        if f.name not in valuation:
            raise UnknownAtomError(f"unknown atom {f.name!r}")
        return frozenset(valuation[f.name]) & worlds
    if isinstance(f, fm.Top):
        return worlds
    if isinstance(f, fm.Bottom):
        return frozenset()
    if isinstance(f, fm.Not):
        return worlds - satisfying_worlds(f.child, worlds, valuation)
    if isinstance(f, fm.And):
        return (satisfying_worlds(f.left, worlds, valuation)
                & satisfying_worlds(f.right, worlds, valuation))
    if isinstance(f, fm.Or):
        return (satisfying_worlds(f.left, worlds, valuation)
                | satisfying_worlds(f.right, worlds, valuation))
    if isinstance(f, fm.Implies):
        return ((worlds - satisfying_worlds(f.left, worlds, valuation))
                | satisfying_worlds(f.right, worlds, valuation))
    raise ModelError(f"not a propositional formula: {fm.render(f)}")


# ---------------------------------------------------------------------------
# Model documents (JSON-shaped dicts)

def load_model(doc: dict) -> PracticalAgentModel:
    """Build a model from a document.

    Expected fields: atoms, worlds (id + true_atoms), plausibility and
    desirability as generator pair lists (closed reflexively-transitively
    here), and an optional intentions list.
    """
    try:
        atoms = tuple(doc["atoms"])
        world_docs = doc["worlds"]
        p_pairs = doc["plausibility"]
        d_pairs = doc["desirability"]
    except (KeyError, TypeError) as exc:
        raise ModelError(f"model document missing field: {exc}") from exc
    if len(set(atoms)) != len(atoms):
        raise ModelError("duplicate atom names")
    for a in atoms:
        fm.Atom(a)  # name check
    worlds = []
    truths: dict[str, set[WorldId]] = {a: set() for a in atoms}
    for wd in world_docs:
        w = wd["id"]
        if not isinstance(w, int) or w < 0:
            raise ModelError(f"world id must be a non-negative int, got {w!r}")
        if w in worlds:
            raise ModelError(f"duplicate world id {w}")
        worlds.append(w)
        for a in wd.get("true_atoms", ()):
            if a not in truths:
                raise ModelError(f"world {w} lists unknown atom {a!r}")
            truths[a].add(w)
    wset = frozenset(worlds)
    val = {a: frozenset(ws) for a, ws in truths.items()}
    plaus = Preorder.from_pairs(wset, [tuple(p) for p in p_pairs])
    des = Preorder.from_pairs(wset, [tuple(p) for p in d_pairs])
    intentions = frozenset(doc.get("intentions", ()))
    return PracticalAgentModel(atoms, wset, plaus, des, val, intentions)


def dump_model(m: AgentModel) -> dict:
    """Serialize to the model document shape, deterministically ordered."""
    order = sorted(m.worlds, key=lambda w: (m.world_bits(w), w))
    return {
        "atoms": list(m.atoms),
        "worlds": [
            {"id": w, "true_atoms": sorted(m.true_atoms(w))} for w in order
        ],
        "plausibility": sorted([w, u] for (w, u) in m.plausibility.pairs),
        "desirability": sorted([w, u] for (w, u) in m.desirability.pairs),
        "intentions": sorted(intentions_of(m)),
    }
