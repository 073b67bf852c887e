"""End-to-end report for one dimension n: every module composed, every cross-check asserted."""

import logging
import random
from dataclasses import dataclass, field

from cylab.arrangement import is_general_position, to_standard_form
from cylab.errors import InvariantBreach
from cylab.higgs import (
    COARSE_MODULI_NOTE,
    ETA_ASSUMPTION,
    build_eigen_higgs,
    check_maximality,
    hodge_from_higgs,
    yukawa_length,
)
from cylab.hodge import (
    check_n,
    eigenspace_dims,
    galois_orbit,
    hodge_middle,
    kunneth_middle_dim,
    unit_group_order,
    w_unif_exists,
    w_unif_routes,
)
from cylab.kummer import gale_dual, group_data, is_smooth_Y
from cylab.moduli_iso import (
    gamma_arrangement,
    gamma_inverse,
    gamma_moduli,
    gamma_via_normalization,
    random_moduli_point,
)
from cylab.resolution import (
    h11_report,
    init_cyclic_cover,
    oracle_check,
    run_resolution,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
GAMMA_SAMPLES = 20
# n=3 is always resolved, n=5 on request, larger n never.
RESOLUTION_ALWAYS = 3
RESOLUTION_OPTIONAL = 5


@dataclass
class Report:
    n: int
    seed: int
    gamma_checks: dict = field(default_factory=dict)
    kummer: dict = field(default_factory=dict)
    hodge: dict = field(default_factory=dict)
    higgs: dict = field(default_factory=dict)
    resolution: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return (self.n + 3) // 2

    @property
    def m(self) -> int:
        return self.n + 3

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "seed": self.seed,
            "gamma_checks": self.gamma_checks,
            "kummer": self.kummer,
            "hodge": self.hodge,
            "higgs": self.higgs,
            "resolution": self.resolution,
        }


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvariantBreach(message)


def gamma_section(n: int, rng: random.Random, samples: int = GAMMA_SAMPLES) -> dict:
    agree = 0
    for _ in range(samples):
        point = random_moduli_point(n, rng)
        image = gamma_moduli(point)
        _require(image == gamma_via_normalization(point), f"formula and normalization differ at {point.t}")
        _require(gamma_inverse(image) == point, f"inverse fails at {point.t}")
        _require(to_standard_form(gamma_arrangement(point)).point == image, f"standard form differs at {point.t}")
        agree += 1

    return {"samples": samples, "agree": agree}


def kummer_section(n: int, rng: random.Random) -> dict:
    point = random_moduli_point(n, rng)
    arrangement = gamma_arrangement(point)
    data = gale_dual(arrangement, r=(n + 3) // 2)

    smooth, general = is_smooth_Y(data), is_general_position(arrangement)
    _require(smooth == general, "Gale dual smoothness disagrees with general position")

    return {
        "t": list(point.t),
        **data.to_dict(),
        "smooth": smooth,
        "general_position": general,
        "groups": group_data(data.r, data.m).to_dict(),
    }


def hodge_section(n: int) -> dict:
    r = check_n(n)
    row = hodge_middle(n)
    _require(row.is_palindromic(), f"Hodge row {row.values} is not palindromic")
    _require(row.total == kunneth_middle_dim(n) == 2 * (r - 1) ** 2, "middle sum rule fails")

    routes = w_unif_routes(n)
    _require(len(set(routes.values())) == 1, f"w_unif routes disagree: {routes}")

    return {
        "hodge_row": list(row.values),
        "eigen_table": eigenspace_dims(r).to_dict(),
        "unit_group_order": unit_group_order(r),
        "orbit_of_1": sorted(galois_orbit(r, 1)),
        "w_unif": w_unif_exists(n),
        "kunneth_middle_dim": kunneth_middle_dim(n),
    }


def higgs_section(n: int) -> dict:
    higgs = build_eigen_higgs(n)
    row = hodge_from_higgs(higgs)
    _require(row == hodge_middle(n), f"Higgs ranks {row.values} differ from the Hodge row")

    return {
        "hodge_row": list(row.values),
        "yukawa_length": yukawa_length(higgs),
        "maximal": check_maximality(higgs),
        "summands": [summand.to_dict() for summand in higgs.summands],
        "assumptions": [ETA_ASSUMPTION, COARSE_MODULI_NOTE],
    }


def resolution_section(n: int, resolve_optional: bool, step_limit: int | None) -> dict:
    if n > RESOLUTION_OPTIONAL or (n == RESOLUTION_OPTIONAL and not resolve_optional):
        return {"skipped": f"resolution for n={n} is beyond the desk-scale bound"}

    state = init_cyclic_cover(n, n + 3, (n + 3) // 2)
    per_step = n == RESOLUTION_ALWAYS
    log = run_resolution(state, step_limit=step_limit, check_oracle=per_step)
    if not per_step:
        oracle_check(state)

    h21 = hodge_middle(n).values[1] if n == 3 else None
    model = h11_report(log, h21)
    logger.info("n=%d: %d blow-ups, %d new classes", n, len(log.steps), model["new_classes"])

    return {
        "steps": len(log.steps),
        "discrepancy": log.discrepancy,
        "exceptional_count": log.exceptional_count,
        "final_max_f": list(log.final_max_f.as_tuple()),
        "oracle": "every step" if per_step else "final state",
        "h11_model": model,
    }


def cmd_report(n: int, seed: int = DEFAULT_SEED, resolve_n5: bool = False, step_limit: int | None = None) -> Report:
    """
    Builds the report for dimension n.

    Raises:
        InvalidN: If n is not odd and >= 3.
        InvariantBreach: If any cross-module check fails.
    """
    check_n(n)
    rng = random.Random(seed)
    report = Report(n=n, seed=seed)

    report.gamma_checks = gamma_section(n, rng)
    report.kummer = kummer_section(n, rng)
    report.hodge = hodge_section(n)
    report.higgs = higgs_section(n)
    _require(report.hodge["hodge_row"] == report.higgs["hodge_row"], "Hodge rows differ between sections")
    report.resolution = resolution_section(n, resolve_n5, step_limit)

    return report
