"""
The three local rules of the blow-up step.

They are kept apart from the state machine so a run can be driven by
deliberately broken rules; the chart oracle must then catch the fault.
"""

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Callable

if TYPE_CHECKING:
    from cylab.resolution.state import DivisorRec

SpawnRule = Callable[[int, int, int, frozenset[int]], list[frozenset[int]]]


def spawn_sets(e: int, f: int, exceptional: int, rest: frozenset[int]) -> list[frozenset[int]]:
    """
    Images of a killed stratum `{e, f} | rest` after blowing up `e & f`.

    The strict transforms of e and f no longer meet, so `{new, e, f} | rest` never appears.
    """
    return [
        rest | {exceptional},
        rest | {exceptional, e},
        rest | {exceptional, f},
    ]


def new_multiplicity(mult_e: int) -> int:
    """The exceptional coordinate enters the E side with one power less than e."""
    return mult_e - 1


def participates(divisor: "DivisorRec") -> bool:
    return divisor.mult > 0


@dataclass(frozen=True)
class ResolutionRules:
    spawn: SpawnRule = spawn_sets
    multiplicity: Callable[[int], int] = new_multiplicity
    participates: Callable[["DivisorRec"], bool] = participates


DEFAULT_RULES = ResolutionRules()


def _spawn_without_f_side(e: int, f: int, exceptional: int, rest: frozenset[int]) -> list[frozenset[int]]:
    return [rest | {exceptional}, rest | {exceptional, e}]


def _keep_multiplicity(mult_e: int) -> int:
    return mult_e


def _everything_participates(divisor: "DivisorRec") -> bool:
    return True


# Fault injection for mutation testing and `selftest --inject-fault`.
MUTANTS: dict[str, ResolutionRules] = {
    "spawn": replace(DEFAULT_RULES, spawn=_spawn_without_f_side),
    "multiplicity": replace(DEFAULT_RULES, multiplicity=_keep_multiplicity),
    "participation": replace(DEFAULT_RULES, participates=_everything_participates),
}
