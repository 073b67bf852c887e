import logging
import os
from dataclasses import dataclass, field
from typing import Callable

from cylab.errors import InvariantBreach, NonDecreasingMeasure, StepLimitExceeded
from cylab.hodge import euler_characteristic_cy3
from cylab.resolution.oracle import ChartComplex, chart_oracle, oracle_check
from cylab.resolution.state import (
    BinomialState,
    BlowupRecord,
    FValue,
    ZERO_F,
    apply_blow_up,
    max_f,
    select_center,
    singular_locus,
)

logger = logging.getLogger(__name__)

DEFAULT_STEP_LIMIT = 10**6
STEP_LIMIT_ENV = "CYLAB_STEP_LIMIT"

# h^{1,1} of the singular cyclic cover, from Lefschetz on the Kummer complete
# intersection and invariance of its hyperplane class.
H11_SINGULAR = 1

# New classes implied by the known h^{1,1} of the resolved threefold (51).
EXPECTED_NEW_CLASSES: dict[tuple[int, int, int], int] = {(3, 6, 3): 50}


def step_limit_from_env(default: int = DEFAULT_STEP_LIMIT) -> int:
    """
    Reads the resolution step bound from CYLAB_STEP_LIMIT.

    Raises:
        ValueError: If the variable is set but not a positive integer.
    """
    raw = os.environ.get(STEP_LIMIT_ENV)
    if raw is None or not raw.strip():
        return default

    try:
        value = int(raw)
    except ValueError as error:
        raise ValueError(f"{STEP_LIMIT_ENV}={raw!r} is not an integer") from error

    if value <= 0:
        raise ValueError(f"{STEP_LIMIT_ENV} must be positive, got {value}")
    return value


@dataclass
class ResolutionLog:
    cover: tuple[int, int, int] | None
    steps: list[BlowupRecord] = field(default_factory=list)
    discrepancy: int = 0
    final_max_f: FValue = ZERO_F
    oracle_checked: bool = False

    @property
    def exceptional_count(self) -> int:
        return count_new_classes(self)

    def to_dict(self, trace: bool = False) -> dict:
        return {
            "cover": list(self.cover) if self.cover else None,
            "steps": [record.to_dict(trace) for record in self.steps],
            "blowups": len(self.steps),
            "discrepancy": self.discrepancy,
            "exceptional_count": self.exceptional_count,
            "final_max_f": list(self.final_max_f.as_tuple()),
            "oracle_checked": self.oracle_checked,
        }


def run_resolution(
    state: BinomialState,
    step_limit: int | None = None,
    check_oracle: bool = False,
    on_step: Callable[[BinomialState, BlowupRecord], None] | None = None,
) -> ResolutionLog:
    """
    Runs the resolution loop on `state` in place until every stratum is transversal.

    Parameters:
        - state (BinomialState): The state to resolve; it is mutated.
        - step_limit (int, optional): Safety bound on the number of blow-ups.
        - check_oracle (bool, optional): Compare with the chart oracle after every step.
        - on_step (callable, optional): Called with the state and record after each step.

    Returns:
        - ResolutionLog: The records of the blow-ups performed by this call.

    Raises:
        - NonDecreasingMeasure: If max f fails to drop strictly at some step.
        - StepLimitExceeded: If the loop needs more than `step_limit` blow-ups.
        - OracleMismatch: If `check_oracle` is set and the charts disagree.
        - InvariantBreach: If the final state is singular or not crepant.
    """
    limit = DEFAULT_STEP_LIMIT if step_limit is None else step_limit
    log = ResolutionLog(cover=state.cover, oracle_checked=check_oracle)

    charts: ChartComplex | None = None
    if check_oracle:
        charts = chart_oracle(state)
        oracle_check(state, charts)

    current = max_f(state)
    while current != ZERO_F:
        if len(log.steps) >= limit:
            raise StepLimitExceeded(f"no resolution within {limit} blow-ups (max f {current.as_tuple()})")

        e, f = select_center(state)
        record = apply_blow_up(state, e, f)
        log.steps.append(record)

        if record.max_f_after >= current:
            raise NonDecreasingMeasure(
                f"step {record.step}: max f went from {current.as_tuple()} to {record.max_f_after.as_tuple()}"
            )

        if state.strata_containing(e, f):
            raise InvariantBreach(f"step {record.step}: {record.center_labels} still meet on X")

        if state.discrepancy != 0:
            raise InvariantBreach(f"step {record.step}: discrepancy {state.discrepancy}")

        if charts is not None:
            charts.blow_up(e, f, record.new_divisor, record.new_label)
            oracle_check(state, charts)

        if on_step is not None:
            on_step(state, record)

        current = record.max_f_after

    if singular_locus(state):
        raise InvariantBreach("resolution stopped with a nonempty singular locus")

    log.discrepancy = state.discrepancy
    log.final_max_f = current
    logger.info(
        "resolved cover %s in %d blow-ups, %d new classes",
        state.cover, len(log.steps), log.exceptional_count,
    )
    return log


def count_new_classes(log: ResolutionLog) -> int:
    """
    Number of new divisor classes: per step, every alive singular component
    contained in the center at blow-up time.
    """
    return sum(record.new_classes for record in log.steps)


def census_by_size(log: ResolutionLog) -> dict[int, int]:
    """Singular components counted by `count_new_classes`, grouped by number of divisors."""
    sizes: dict[int, int] = {}
    for record in log.steps:
        for component in record.census:
            sizes[len(component)] = sizes.get(len(component), 0) + 1
    return dict(sorted(sizes.items()))


def h11_report(log: ResolutionLog, h21: int | None = None, full_census: bool = False) -> dict:
    """
    h^{1,1} of the resolution under the exceptional-class counting model.

    When the cover has a known count in EXPECTED_NEW_CLASSES and the model
    disagrees with it, a warning is logged and the per-step singular census
    is always attached for audit; `full_census` attaches it unconditionally.
    """
    new_classes = count_new_classes(log)
    report: dict = {
        "new_classes": new_classes,
        "h11_singular": H11_SINGULAR,
        "h11": H11_SINGULAR + new_classes,
        "h21": h21,
        "model_dependent": True,
        "assumptions": [
            "one new (1,1)-class per singular component inside a center",
            "h11 of the singular cover is 1",
        ],
        "census_by_size": census_by_size(log),
    }

    if h21 is not None:
        report["euler_characteristic"] = euler_characteristic_cy3(H11_SINGULAR + new_classes, h21)

    expected = EXPECTED_NEW_CLASSES.get(log.cover) if log.cover else None
    mismatch = expected is not None and expected != new_classes
    if expected is not None:
        report["expected_new_classes"] = expected
        report["matches_expected"] = not mismatch

    if mismatch:
        logger.warning(
            "cover %s: counting model gives %d new classes, expected %d; census attached",
            log.cover, new_classes, expected,
        )

    if full_census or mismatch:
        report["census"] = [
            {"step": record.step, "center": list(record.center_labels), "components": [list(c) for c in record.census]}
            for record in log.steps
            if record.census
        ]
    return report


def strata_dot(state: BinomialState) -> str:
    """Hasse diagram of the alive strata ordered by inclusion, in DOT."""
    alive = state.alive_strata()
    lines = [f"digraph strata_step_{state.step} {{", "  rankdir=BT;"]

    for stratum in alive:
        label = "∩".join(state.describe(stratum.divisors))
        lines.append(f'  s{stratum.id} [label="{label}"];')

    for stratum in alive:
        for d in sorted(stratum.divisors):
            face = state.find(stratum.divisors - {d})
            if face is not None:
                lines.append(f"  s{stratum.id} -> s{face.id};")

    lines.append("}")
    return "\n".join(lines) + "\n"
