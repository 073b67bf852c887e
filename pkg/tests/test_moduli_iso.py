import random
from fractions import Fraction

import pytest  # type: ignore
import sympy  # type: ignore

from cylab.arrangement import ModuliPointP1, ModuliPointPn, is_general_position, to_standard_form
from cylab.errors import InvalidModuliPoint
from cylab.moduli_iso import (
    ProjectivePoint1,
    gamma_arrangement,
    gamma_inverse,
    gamma_moduli,
    gamma_via_normalization,
    normalization_trace,
    point_to_hyperplane,
    random_moduli_point,
)

EXPECTED_S = (Fraction(-5, 3), Fraction(-5), Fraction(5))


@pytest.mark.parametrize(
    "point, column",
    [
        (ProjectivePoint1.finite(0), (1, 0, 0, 0)),
        (ProjectivePoint1.infinity(), (0, 0, 0, 1)),
        (ProjectivePoint1.finite(2), (1, 2, 4, 8)),
    ],
)
def test_point_to_hyperplane(point, column):
    assert point_to_hyperplane(point, 3) == column


def test_projective_point_rejects_origin():
    with pytest.raises(InvalidModuliPoint):
        ProjectivePoint1(0, 0)


def test_gamma_arrangement_columns():
    arrangement = gamma_arrangement(ModuliPointP1((2, 3, 5)))

    assert arrangement.matrix.columns() == [
        (1, 0, 0, 0),
        (1, 2, 4, 8),
        (1, 3, 9, 27),
        (0, 0, 0, 1),
        (1, 1, 1, 1),
        (1, 5, 25, 125),
    ]
    assert is_general_position(arrangement)


def test_gamma_worked_example():
    point = ModuliPointP1((2, 3, 5))

    assert gamma_moduli(point).s == EXPECTED_S
    assert gamma_via_normalization(point).s == EXPECTED_S
    assert to_standard_form(gamma_arrangement(point)).s == EXPECTED_S
    assert gamma_inverse(ModuliPointPn(EXPECTED_S)) == point


def test_normalization_trace_is_consistent():
    trace = normalization_trace(ModuliPointP1((2, 3, 5)))
    n = 3

    assert trace.P @ trace.A == trace.PA
    for j in range(n + 1):
        column = trace.PA.column(j)
        assert [i for i, value in enumerate(column) if value != 0] == [j]
    ones = trace.PA.column(n + 1)
    assert len(set(ones)) == 1
    assert trace.to_dict()["s"] == list(EXPECTED_S)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_gamma_agrees_with_normalization(n):
    rng = random.Random(1000 + n)

    for _ in range(100):
        point = random_moduli_point(n, rng)
        image = gamma_moduli(point)

        assert image == gamma_via_normalization(point)
        assert gamma_inverse(image) == point
        assert gamma_moduli(gamma_inverse(image)) == image


def test_gamma_formula_symbolically():
    t1, t2, t3 = sympy.symbols("t1 t2 t3")
    s = [t3 * (t - 1) / (t - t3) for t in (t1, t2)] + [t3]

    inverse = [sympy.simplify(s[2] * (value - 1) / (value - s[2])) for value in s[:2]]
    assert inverse == [t1, t2]


def test_gamma_inverse_rejects_bad_points():
    with pytest.raises(InvalidModuliPoint):
        ModuliPointP1((2, 2, 5))

    with pytest.raises(InvalidModuliPoint):
        gamma_inverse(ModuliPointPn((3, 2, 3)))


@pytest.mark.parametrize("make", [ModuliPointP1, ModuliPointPn])
def test_empty_points_are_rejected(make):
    with pytest.raises(InvalidModuliPoint):
        make(())

    with pytest.raises(InvalidModuliPoint):
        make([])
