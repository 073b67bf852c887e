from cylab.resolution.oracle import Chart, ChartComplex, chart_oracle, oracle_check
from cylab.resolution.rules import DEFAULT_RULES, MUTANTS, ResolutionRules
from cylab.resolution.runner import (
    DEFAULT_STEP_LIMIT,
    EXPECTED_NEW_CLASSES,
    ResolutionLog,
    census_by_size,
    count_new_classes,
    h11_report,
    run_resolution,
    step_limit_from_env,
    strata_dot,
)
from cylab.resolution.state import (
    BinomialState,
    BlowupRecord,
    DivisorClass,
    DivisorRec,
    FValue,
    Origin,
    Stratum,
    ZERO_F,
    apply_blow_up,
    blow_up,
    f_value,
    init_cyclic_cover,
    max_f,
    select_center,
    singular_locus,
)

__all__ = [
    "BinomialState",
    "BlowupRecord",
    "Chart",
    "ChartComplex",
    "DEFAULT_RULES",
    "DEFAULT_STEP_LIMIT",
    "DivisorClass",
    "DivisorRec",
    "EXPECTED_NEW_CLASSES",
    "FValue",
    "MUTANTS",
    "Origin",
    "ResolutionLog",
    "ResolutionRules",
    "Stratum",
    "ZERO_F",
    "apply_blow_up",
    "blow_up",
    "census_by_size",
    "chart_oracle",
    "count_new_classes",
    "f_value",
    "h11_report",
    "init_cyclic_cover",
    "max_f",
    "oracle_check",
    "run_resolution",
    "select_center",
    "singular_locus",
    "step_limit_from_env",
    "strata_dot",
]
