"""
Global strata model of a binomial hypersurface during its crepant resolution.

The ambient space carries two transversal divisor systems: E-class divisors
on the `y` side of `y_1^a_1 ... y_p^a_p - x_1 ... x_q = 0` and F-class
divisors on the `x` side. A stratum is a set of divisors whose intersection
lies on X; each blow-up of a codimension-2 center `E & F` is a stellar
subdivision of the stratum complex along the edge {E, F}.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable

from cylab.errors import (
    AlreadyResolved,
    DeadStratum,
    InvalidCenter,
    InvalidTuple,
    InvariantBreach,
)
from cylab.resolution.rules import DEFAULT_RULES, ResolutionRules

logger = logging.getLogger(__name__)


class DivisorClass(Enum):
    E = "E"
    F = "F"


class Origin(Enum):
    INITIAL = "initial"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class DivisorRec:
    """
    Attributes:
        id (int): Identifier, also the sort key of the divisor.
        klass (DivisorClass): Side of the binomial equation.
        mult (int): Exponent of the divisor's coordinate; at most 1 for F-class.
        origin (Origin): Initial divisor or exceptional divisor of a blow-up.
        step (int | None): The blow-up step that created an exceptional divisor.
    """

    id: int
    klass: DivisorClass
    mult: int
    origin: Origin = Origin.INITIAL
    step: int | None = None

    def __post_init__(self):
        if self.mult < 0:
            raise InvariantBreach(f"divisor {self.id} has negative multiplicity {self.mult}")

        if self.klass is DivisorClass.F and self.mult > 1:
            raise InvariantBreach(f"F-class divisor {self.id} has multiplicity {self.mult} > 1")

    @property
    def label(self) -> str:
        if self.klass is DivisorClass.F:
            return f"F{self.id}"
        return f"E{self.step or 0}"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "class": self.klass.value,
            "mult": self.mult,
            "origin": self.origin.value,
        }


@dataclass(frozen=True)
class Stratum:
    id: int
    divisors: frozenset[int]
    dim: int
    in_X: bool = True
    alive: bool = True


@dataclass(frozen=True, order=True)
class FValue:
    """The resolution measure `(g1, g2, ncomp)`, compared lexicographically."""

    g1: int
    g2: int
    ncomp: int

    def as_tuple(self) -> tuple[int, int, int]:
        return self.g1, self.g2, self.ncomp


ZERO_F = FValue(0, 0, 0)


@dataclass
class BlowupRecord:
    step: int
    center: tuple[int, int]
    center_labels: tuple[str, str]
    new_divisor: int
    new_label: str
    new_mult: int
    max_f_before: FValue
    max_f_after: FValue = ZERO_F
    killed: tuple[tuple[str, ...], ...] = ()
    spawned: tuple[tuple[str, ...], ...] = ()
    census: tuple[tuple[str, ...], ...] = ()
    new_classes: int = 0
    discrepancy_delta: int = 0

    def to_dict(self, trace: bool = False) -> dict:
        data: dict = {
            "step": self.step,
            "center": list(self.center_labels),
            "new_divisor": self.new_label,
            "new_mult": self.new_mult,
            "max_f_before": list(self.max_f_before.as_tuple()),
            "max_f_after": list(self.max_f_after.as_tuple()),
            "killed": len(self.killed),
            "spawned": len(self.spawned),
            "singular_census": [list(labels) for labels in self.census],
            "new_classes": self.new_classes,
            "discrepancy_delta": self.discrepancy_delta,
        }

        if trace:
            data["killed_strata"] = [list(labels) for labels in self.killed]
            data["spawned_strata"] = [list(labels) for labels in self.spawned]

        return data


@dataclass
class BinomialState:
    """
    Mutable strata model. A resolution run owns and mutates one state; use
    `clone` to branch off an independent copy.
    """

    ambient_dim: int
    divisors: dict[int, DivisorRec] = field(default_factory=dict)
    strata: dict[int, Stratum] = field(default_factory=dict)
    step: int = 0
    discrepancy: int = 0
    history: list[BlowupRecord] = field(default_factory=list)
    cover: tuple[int, int, int] | None = None
    rules: ResolutionRules = DEFAULT_RULES

    _by_set: dict[frozenset[int], int] = field(default_factory=dict, repr=False)
    _by_divisor: dict[int, set[int]] = field(default_factory=lambda: defaultdict(set), repr=False)
    _by_g: dict[tuple[int, int], set[int]] = field(default_factory=lambda: defaultdict(set), repr=False)

    def clone(self) -> "BinomialState":
        other = replace(
            self,
            divisors=dict(self.divisors),
            strata=dict(self.strata),
            history=list(self.history),
            _by_set=dict(self._by_set),
            _by_divisor=defaultdict(set),
            _by_g=defaultdict(set),
        )
        for key, ids in self._by_divisor.items():
            other._by_divisor[key] = set(ids)
        for key, ids in self._by_g.items():
            other._by_g[key] = set(ids)
        return other

    def add_divisor(
        self, klass: DivisorClass, mult: int, origin: Origin = Origin.INITIAL, step: int | None = None
    ) -> DivisorRec:
        divisor = DivisorRec(len(self.divisors), klass, mult, origin, step)
        self.divisors[divisor.id] = divisor
        return divisor

    def label(self, divisor_id: int) -> str:
        return self.divisors[divisor_id].label

    def describe(self, divisors: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.label(d) for d in sorted(divisors))

    def participating(self, divisors: Iterable[int]) -> frozenset[int]:
        return frozenset(d for d in divisors if self.rules.participates(self.divisors[d]))

    def g_value(self, divisors: Iterable[int]) -> tuple[int, int]:
        g1 = g2 = 0
        for d in self.participating(divisors):
            divisor = self.divisors[d]
            if divisor.klass is DivisorClass.F:
                g1 += 1
            else:
                g2 += divisor.mult
        return g1, g2

    def lies_on_X(self, divisors: Iterable[int]) -> bool:
        """Both monomials of the equation vanish on the intersection."""
        classes = {self.divisors[d].klass for d in self.participating(divisors)}
        return classes == {DivisorClass.E, DivisorClass.F}

    def add_stratum(self, divisors: Iterable[int]) -> Stratum:
        """
        Records an intersection of divisors as a stratum, on X or not.

        Raises:
            InvariantBreach: If the set is empty, already present or names unknown divisors.
        """
        key = frozenset(divisors)
        if not key or key - self.divisors.keys():
            raise InvariantBreach(f"bad stratum {sorted(key)}")

        if key in self._by_set:
            raise InvariantBreach(f"stratum {self.describe(key)} already exists")

        stratum = Stratum(
            id=len(self.strata),
            divisors=key,
            dim=self.ambient_dim - len(key),
            in_X=self.lies_on_X(key),
        )
        self.strata[stratum.id] = stratum
        self._by_set[key] = stratum.id
        for d in key:
            self._by_divisor[d].add(stratum.id)
        if stratum.in_X:
            self._by_g[self.g_value(key)].add(stratum.id)
        return stratum

    def kill(self, stratum_id: int) -> None:
        stratum = self.strata[stratum_id]
        self.strata[stratum_id] = replace(stratum, alive=False)
        del self._by_set[stratum.divisors]
        for d in stratum.divisors:
            self._by_divisor[d].discard(stratum_id)
        if stratum.in_X:
            self._by_g[self.g_value(stratum.divisors)].discard(stratum_id)

    def find(self, divisors: Iterable[int]) -> Stratum | None:
        stratum_id = self._by_set.get(frozenset(divisors))
        return None if stratum_id is None else self.strata[stratum_id]

    def alive_strata(self) -> list[Stratum]:
        return [self.strata[i] for i in sorted(self._by_set.values())]

    def strata_containing(self, *divisors: int) -> set[int]:
        ids = set(self._by_divisor[divisors[0]])
        for d in divisors[1:]:
            ids &= self._by_divisor[d]
        return ids

    def strata_with_g(self, g: tuple[int, int]) -> set[int]:
        return self._by_g.get(g, set())

    def g_levels(self) -> list[tuple[int, int]]:
        return [g for g, ids in self._by_g.items() if ids]


def init_cyclic_cover(n: int, m: int, r: int, rules: ResolutionRules = DEFAULT_RULES) -> BinomialState:
    """
    Local model of the r-fold cyclic cover of P^n branched along m hyperplanes
    in general position: `y^r = x_1 ... x_m` with one E-class divisor E0 of
    multiplicity r and m F-class divisors F1..Fm.

    Raises:
        InvalidTuple: Unless r divides m and m = n + 1 + m/r.
    """
    if n < 1 or r < 2 or m % r or m != n + 1 + m // r:
        raise InvalidTuple(f"(n={n}, m={m}, r={r}) is not a Calabi-Yau cyclic cover tuple")

    state = BinomialState(ambient_dim=n + 1, cover=(n, m, r), rules=rules)
    e0 = state.add_divisor(DivisorClass.E, r)
    hyperplanes = [state.add_divisor(DivisorClass.F, 1).id for _ in range(m)]

    for size in range(1, n + 1):
        for subset in itertools.combinations(hyperplanes, size):
            state.add_stratum({e0.id, *subset})

    logger.info("initial model for (n=%d, m=%d, r=%d): %d strata", n, m, r, len(state.strata))
    return state


def _resolve_stratum(state: BinomialState, stratum: Stratum | Iterable[int]) -> Stratum:
    if isinstance(stratum, Stratum):
        current = state.strata.get(stratum.id)
        if current is None or current.divisors != stratum.divisors:
            raise DeadStratum(f"stratum {stratum.id} does not belong to this state")
        return current

    key = frozenset(stratum)
    found = state.find(key)
    if found is None:
        raise DeadStratum(f"no alive stratum {sorted(key)}")
    return found


def f_value(state: BinomialState, stratum: Stratum | Iterable[int]) -> FValue:
    """
    The measure `(g1, g2, ncomp)` at the generic point of a stratum.

    g1 counts participating F-class divisors, g2 sums multiplicities of
    participating E-class divisors and ncomp counts the alive strata sharing
    (g1, g2). Transversal strata get (0, 0, 0).

    Raises:
        DeadStratum: If the stratum was killed or never existed.
    """
    current = _resolve_stratum(state, stratum)
    if not current.alive:
        raise DeadStratum(f"stratum {state.describe(current.divisors)} was blown away")

    g1, g2 = state.g_value(current.divisors)
    if g1 == 0 or g2 == 0 or not current.in_X:
        return ZERO_F

    return FValue(g1, g2, len(state.strata_with_g((g1, g2))))


def max_f(state: BinomialState) -> FValue:
    levels = [g for g in state.g_levels() if g[0] > 0 and g[1] > 0]
    if not levels:
        return ZERO_F

    top = max(levels)
    return FValue(*top, len(state.strata_with_g(top)))


def select_center(state: BinomialState) -> tuple[int, int]:
    """
    Picks the center `(E, F)` at a stratum where f is maximal.

    Ties break on the lowest stratum id, then the lowest E id, then the lowest F id.

    Raises:
        AlreadyResolved: If max f is (0, 0, 0).
    """
    top = max_f(state)
    if top == ZERO_F:
        raise AlreadyResolved("every stratum is transversal")

    stratum = state.strata[min(state.strata_with_g((top.g1, top.g2)))]
    members = sorted(state.participating(stratum.divisors))
    e = next(d for d in members if state.divisors[d].klass is DivisorClass.E and state.divisors[d].mult > 0)
    f = next(d for d in members if state.divisors[d].klass is DivisorClass.F)
    return e, f


def is_singular_set(state: BinomialState, divisors: frozenset[int]) -> bool:
    """Jacobian criterion on the binomial: at least two F's and E-weight at least two."""
    g1, g2 = state.g_value(divisors)
    return g1 >= 2 and g2 >= 2


def is_minimal_singular(state: BinomialState, divisors: frozenset[int]) -> bool:
    return is_singular_set(state, divisors) and not any(
        is_singular_set(state, divisors - {d}) for d in divisors
    )


def singular_locus(state: BinomialState) -> list[Stratum]:
    """
    Components of the singular locus: minimal alive strata of the shapes
    E & F & F with mult(E) >= 2, or E & E & F & F with both E's participating.
    """
    return [
        stratum
        for stratum in state.alive_strata()
        if stratum.in_X and is_minimal_singular(state, stratum.divisors)
    ]


def apply_blow_up(state: BinomialState, e: int, f: int) -> BlowupRecord:
    """
    Blows up the center `e & f` in place and returns the step record.

    Raises:
        InvalidCenter: If e is not an E-class divisor of positive multiplicity,
            f is not an F-class divisor, or `{e, f}` is not an alive stratum on X.
    """
    divisor_e, divisor_f = state.divisors.get(e), state.divisors.get(f)
    if divisor_e is None or divisor_e.klass is not DivisorClass.E or divisor_e.mult == 0:
        raise InvalidCenter(f"{e} is not an E-class divisor of positive multiplicity")

    if divisor_f is None or divisor_f.klass is not DivisorClass.F or divisor_f.mult == 0:
        raise InvalidCenter(f"{f} is not a participating F-class divisor")

    edge = state.find({e, f})
    if edge is None or not edge.in_X:
        raise InvalidCenter(f"{divisor_e.label} and {divisor_f.label} do not meet on X")

    before = max_f(state)
    killed_ids = sorted(state.strata_containing(e, f))
    census = [
        state.strata[i].divisors for i in killed_ids
        if state.strata[i].in_X and is_minimal_singular(state, state.strata[i].divisors)
    ]

    state.step += 1
    exceptional = state.add_divisor(
        DivisorClass.E, state.rules.multiplicity(divisor_e.mult), Origin.EXCEPTIONAL, state.step
    )

    killed = []
    for stratum_id in killed_ids:
        killed.append(state.strata[stratum_id].divisors)
        state.kill(stratum_id)

    spawned = []
    for divisors in killed:
        rest = divisors - {e, f}
        for candidate in state.rules.spawn(e, f, exceptional.id, rest):
            if state.find(candidate) is None and state.lies_on_X(candidate):
                spawned.append(state.add_stratum(candidate).divisors)

    # center of codimension 2, order min(mult e, mult f) = 1
    order = min(divisor_e.mult, divisor_f.mult)
    delta = 2 - order - 1
    state.discrepancy += delta

    record = BlowupRecord(
        step=state.step,
        center=(e, f),
        center_labels=(divisor_e.label, divisor_f.label),
        new_divisor=exceptional.id,
        new_label=exceptional.label,
        new_mult=exceptional.mult,
        max_f_before=before,
        max_f_after=max_f(state),
        killed=tuple(state.describe(d) for d in killed),
        spawned=tuple(state.describe(d) for d in spawned),
        census=tuple(state.describe(d) for d in census),
        new_classes=len(census),
        discrepancy_delta=delta,
    )
    state.history.append(record)

    logger.debug(
        "step %d: blew up %s & %s, killed %d, spawned %d, max f %s -> %s",
        record.step, *record.center_labels, len(killed), len(spawned),
        before.as_tuple(), record.max_f_after.as_tuple(),
    )
    return record


def blow_up(state: BinomialState, e: int, f: int) -> BinomialState:
    """Functional form of `apply_blow_up`: the input state is left untouched."""
    result = state.clone()
    apply_blow_up(result, e, f)
    return result
