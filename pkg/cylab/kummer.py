"""
The Kummer cover of P^n branched along an arrangement of n+3 hyperplanes.

It is cut out in P^(m-1) by two Fermat-type equations whose coefficient rows
form the Gale dual B of the arrangement.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from cylab.arrangement import Arrangement, is_general_position
from cylab.errors import InputError, NotGeneralPosition, ShapeMismatch
from cylab.exact_linalg import RationalMatrix, all_minors_nonzero, det, left_kernel_basis, rank


@dataclass(frozen=True)
class KummerData:
    """
    Attributes:
        r (int): Degree of the cover.
        A_map (RationalMatrix): The m x (n+1) transpose of the arrangement matrix.
        B (RationalMatrix): 2 x m Gale dual, `B @ A_map == 0`.
    """

    r: int
    A_map: RationalMatrix
    B: RationalMatrix

    @property
    def m(self) -> int:
        return self.A_map.rows

    @property
    def n(self) -> int:
        return self.A_map.cols - 1

    @property
    def equations(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """Coefficients of `sum_j b_ij z_(j-1)^r` for i = 1, 2."""
        return self.B.row(0), self.B.row(1)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "B": self.B.to_rows(),
            "equations": [
                {"coefficients": list(row), "exponent": self.r} for row in self.equations
            ],
        }


@dataclass(frozen=True)
class CoverGroups:
    r: int
    m: int
    order_G1: int
    order_N1: int

    @property
    def index(self) -> int:
        return self.order_G1 // self.order_N1

    def to_dict(self) -> dict:
        return {"r": self.r, "m": self.m, "order_G1": self.order_G1, "order_N1": self.order_N1}


def gale_dual(arrangement: Arrangement, r: int | None = None, strict: bool = False) -> KummerData:
    """
    Computes the Gale dual of an arrangement of n+3 hyperplanes.

    Parameters:
        - arrangement (Arrangement): n+3 hyperplanes with a full-rank matrix.
        - r (int, optional): Cover degree; defaults to (n+3)/2 rounded down.
        - strict (bool, optional): Reject arrangements not in general position.
          The default accepts any full-rank arrangement, so degenerate ones can be
          dualized and recognized as singular by `is_smooth_Y`.

    Raises:
        - ShapeMismatch: If m != n+3.
        - NotGeneralPosition: If the matrix has rank < n+1, or `strict` is set and
          some n+1 hyperplanes meet.
    """
    n, m = arrangement.n, arrangement.m
    if m != n + 3:
        raise ShapeMismatch(f"Kummer cover needs m = n+3 hyperplanes, got m={m}")

    if rank(arrangement.matrix) != n + 1:
        raise NotGeneralPosition("arrangement matrix is rank deficient")

    if strict and not is_general_position(arrangement):
        raise NotGeneralPosition("arrangement is not in general position")

    A_map = arrangement.matrix.transpose()
    B = left_kernel_basis(A_map)
    return KummerData(r=r if r is not None else m // 2, A_map=A_map, B=B)


def complementary_minor(data: KummerData, subset: tuple[int, ...]) -> Fraction:
    """The 2x2 minor of B on the columns not in `subset`."""
    rest = [j for j in range(data.m) if j not in subset]
    if len(rest) != 2:
        raise ShapeMismatch(f"subset {subset} does not leave exactly two columns")

    return det(data.B.submatrix(cols=rest))


def is_smooth_Y(data: KummerData) -> bool:
    """
    Smoothness certificate for the Kummer cover: no 2x2 minor of B vanishes.

    A vanishing minor on columns {j, k} gives a point supported on z_j, z_k
    where the Jacobian of the two Fermat-type equations drops rank.
    """
    return all_minors_nonzero(data.B, 2)


def singular_coordinate_pairs(data: KummerData) -> list[tuple[int, int]]:
    return [
        pair
        for pair in itertools.combinations(range(data.m), 2)
        if det(data.B.submatrix(cols=pair)) == 0
    ]


def group_data(r: int, m: int) -> CoverGroups:
    """
    Orders of G_1 = (Z/r)^m / diagonal and of its index-r subgroup N_1.

    Raises:
        InputError: If r < 2 or m < 3.
    """
    if r < 2 or m < 3:
        raise InputError(f"group data needs r >= 2 and m >= 3, got r={r}, m={m}")

    return CoverGroups(r=r, m=m, order_G1=r ** (m - 1), order_N1=r ** (m - 2))
