import math

import pytest  # type: ignore
from hypothesis import given, strategies as st  # type: ignore

from cylab import hodge
from cylab.errors import InputError, InvalidN, InvariantBreach
from cylab.hodge import (
    check_n,
    eigenspace_dims,
    euler_characteristic_cy3,
    galois_orbit,
    genus_riemann_hurwitz,
    hodge_middle,
    kunneth_middle_dim,
    unit_group_order,
    w_unif_exists,
    w_unif_routes,
)

odd_n = st.integers(min_value=1, max_value=60).map(lambda k: 2 * k + 1)


@pytest.mark.parametrize(
    "n, row",
    [
        (3, (1, 3, 3, 1)),
        (5, (1, 5, 3, 3, 5, 1)),
        (9, (1, 9, 3, 7, 5, 5, 7, 3, 9, 1)),
    ],
)
def test_hodge_middle_examples(n, row):
    assert hodge_middle(n).values == row


@pytest.mark.parametrize("n", [4, 1, 0, -3, 2.0, True])
def test_check_n_rejects(n):
    with pytest.raises(InvalidN, match="n must be odd"):
        check_n(n)


@given(odd_n)
def test_hodge_row_invariants(n):
    row = hodge_middle(n)
    r = (n + 3) // 2

    assert row.is_palindromic()
    assert row.total == 2 * (r - 1) ** 2 == kunneth_middle_dim(n)
    assert row.values[0] == 1


def test_eigenspace_dims_examples():
    eigen = eigenspace_dims(3)
    assert [(entry.dim_10, entry.dim_01) for entry in eigen.dims] == [(1, 3), (3, 1)]
    assert eigen.genus == 4 == genus_riemann_hurwitz(3, 6)

    eigen = eigenspace_dims(4)
    assert [(entry.dim_10, entry.dim_01) for entry in eigen.dims] == [(1, 5), (3, 3), (5, 1)]
    assert eigen.genus == 9 == genus_riemann_hurwitz(4, 8)

    with pytest.raises(InputError):
        eigenspace_dims(1)


@given(st.integers(min_value=2, max_value=40))
def test_eigenspace_conjugation_and_genus(r):
    eigen = eigenspace_dims(r)

    assert eigen.genus == genus_riemann_hurwitz(r, 2 * r) == (r - 1) ** 2
    for entry in eigen.dims:
        assert entry.dim_01 == eigen.by_index(r - entry.i).dim_10


@pytest.mark.parametrize(
    "r, order",
    [(2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (7, 6), (12, 4)],
)
def test_unit_group_order(r, order):
    assert unit_group_order(r) == order


@given(st.integers(min_value=2, max_value=200))
def test_unit_group_order_against_gcd_count(r):
    assert unit_group_order(r) == len([u for u in range(1, r) if math.gcd(u, r) == 1])


@pytest.mark.parametrize(
    "r, i, orbit",
    [(3, 1, {1, 2}), (5, 1, {1, 2, 3, 4}), (6, 1, {1, 5}), (6, 2, {2, 4}), (6, 3, {3})],
)
def test_galois_orbit(r, i, orbit):
    assert galois_orbit(r, i) == orbit


def test_galois_orbit_range():
    with pytest.raises(InputError):
        galois_orbit(5, 5)


@pytest.mark.parametrize(
    "n, exists",
    [(3, True), (5, True), (9, True), (7, False), (11, False), (13, False)],
)
def test_w_unif_exists(n, exists):
    assert w_unif_exists(n) is exists


def test_w_unif_only_for_three_dimensions():
    hits = [n for n in range(3, 200, 2) if w_unif_exists(n)]
    assert hits == [3, 5, 9]

    for n in range(3, 200, 2):
        assert len(set(w_unif_routes(n).values())) == 1


def test_kunneth_middle_dim():
    assert kunneth_middle_dim(3) == 8
    assert kunneth_middle_dim(5) == 18

    with pytest.raises(InvalidN):
        kunneth_middle_dim(6)


def test_kunneth_middle_dim_detects_inconsistent_eigenspaces(monkeypatch):
    broken = hodge.EigenData(r=3, dims=(hodge.EigenDims(1, 1, 1), hodge.EigenDims(2, 3, 1)))
    monkeypatch.setattr(hodge, "eigenspace_dims", lambda r: broken)

    with pytest.raises(InvariantBreach):
        kunneth_middle_dim(3)


def test_euler_characteristic():
    assert euler_characteristic_cy3(51, 3) == 96
