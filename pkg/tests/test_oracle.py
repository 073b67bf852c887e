from dataclasses import replace

import pytest  # type: ignore

from cylab.errors import OracleMismatch
from cylab.resolution import (
    BinomialState,
    Chart,
    ChartComplex,
    FValue,
    apply_blow_up,
    chart_oracle,
    init_cyclic_cover,
    oracle_check,
)

E0, F1, F2, F3 = 0, 1, 2, 3


@pytest.fixture
def initial_chart():
    return Chart(
        variables=(("E0", E0), ("F1", F1), ("F2", F2), ("F3", F3)),
        lhs=(3, 0, 0, 0),
        rhs=(0, 1, 1, 1),
    )


def test_initial_chart(initial_chart):
    assert initial_chart.equation() == "E0^3 - F1*F2*F3"
    assert initial_chart.strata[frozenset({E0, F1, F2})] == (2, 3, frozenset({E0, F1, F2}))
    assert frozenset({F1, F2}) not in initial_chart.strata

    assert initial_chart.is_jacobian_singular(frozenset({E0, F1, F2}))
    assert not initial_chart.is_jacobian_singular(frozenset({E0, F1}))


def test_chart_blow_up_substitution(initial_chart):
    keep_f, keep_e = initial_chart.blow_up(E0, F1, 7, "E1")

    assert keep_f.equation() == "E1^2 - F1*F2*F3"
    assert keep_e.equation() == "E0^3*E1^2 - F2*F3"
    assert keep_f.centers == keep_e.centers == ((E0, F1),)
    assert initial_chart.center_order(E0, F1) == 1

    assert initial_chart.blow_up(7, 8, 9, "E2") == [initial_chart]


def test_chart_complex_counts():
    complex_ = ChartComplex.initial(3, 6, 3)

    assert len(complex_.charts) == 20
    assert len(complex_.strata()) == 41
    assert len(complex_.singular_strata()) == 15
    assert complex_.max_f() == FValue(3, 3, 20)
    assert complex_.exponents()[E0] == (3, 0)


def test_oracle_follows_blow_ups():
    state = init_cyclic_cover(3, 6, 3)
    assert oracle_check(state)

    record = apply_blow_up(state, E0, F1)
    complex_ = chart_oracle(state)

    assert complex_.exponents()[record.new_divisor] == (2, 0)
    assert complex_.discrepancy == 0
    assert oracle_check(state, complex_)


def test_oracle_detects_wrong_multiplicity():
    state = init_cyclic_cover(3, 6, 3)
    apply_blow_up(state, E0, F1)
    state.divisors[E0] = replace(state.divisors[E0], mult=2)

    with pytest.raises(OracleMismatch) as error:
        oracle_check(state)
    assert error.value.culprit == "E0"


def test_oracle_detects_missing_stratum():
    state = init_cyclic_cover(3, 6, 3)
    state.kill(state.find({E0, F1, F2}).id)

    with pytest.raises(OracleMismatch, match="only in the charts"):
        oracle_check(state)


def test_oracle_limits():
    with pytest.raises(ValueError):
        chart_oracle(BinomialState(ambient_dim=4))

    with pytest.raises(ValueError):
        chart_oracle(init_cyclic_cover(7, 10, 5))
