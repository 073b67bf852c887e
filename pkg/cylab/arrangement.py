"""Ordered hyperplane arrangements in projective n-space and their standard form."""

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from cylab.errors import InvalidModuliPoint, NotGeneralPosition, ShapeMismatch
from cylab.exact_linalg import RationalMatrix, Scalar, det, invert, rank, to_rational
from cylab.utils import format_rational, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModuliPointPn:
    """Affine coordinates `s` of a point in the moduli of n+3 hyperplanes in P^n."""

    s: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(to_rational(value) for value in self.s)
        object.__setattr__(self, "s", values)

        if not values:
            raise InvalidModuliPoint("a moduli point needs at least one coordinate")

        for i, value in enumerate(values):
            if value in (0, 1):
                raise InvalidModuliPoint(f"s_{i + 1} = {value} lies on the forbidden locus")

        if len(set(values)) != len(values):
            raise InvalidModuliPoint(f"coordinates of {values} are not distinct")

    @property
    def n(self) -> int:
        return len(self.s)

    def to_dict(self) -> dict:
        return {"s": [format_rational(value) for value in self.s]}


@dataclass(frozen=True)
class ModuliPointP1:
    """
    A configuration `(0, t_1, ..., t_{n-1}, inf, 1, t_n)` of n+3 ordered points
    on the projective line, stored by its n free coordinates.
    """

    t: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(to_rational(value) for value in self.t)
        object.__setattr__(self, "t", values)

        if not values:
            raise InvalidModuliPoint("a configuration needs at least one free point")

        for i, value in enumerate(values):
            if value in (0, 1):
                raise InvalidModuliPoint(f"t_{i + 1} = {value} collides with 0 or 1")

        if len(set(values)) != len(values):
            raise InvalidModuliPoint(f"points {values} are not distinct")

    @property
    def n(self) -> int:
        return len(self.t)

    def to_dict(self) -> dict:
        return {"t": [format_rational(value) for value in self.t]}


@dataclass(frozen=True)
class Arrangement:
    """
    An ordered arrangement of m hyperplanes in P^n.

    Attributes:
        n (int): Projective dimension.
        m (int): Number of hyperplanes.
        matrix (RationalMatrix): (n+1) x m matrix, column j holds the coefficients of H_j.
    """

    n: int
    m: int
    matrix: RationalMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.n + 1, self.m):
            raise ShapeMismatch(
                f"arrangement of {self.m} hyperplanes in P^{self.n} "
                f"needs a {self.n + 1}x{self.m} matrix, got {self.matrix.shape}"
            )

        for j, column in enumerate(self.matrix.columns()):
            if not any(column):
                raise ShapeMismatch(f"column {j} is zero and defines no hyperplane")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> "Arrangement":
        matrix = RationalMatrix.from_columns(columns)
        return cls(matrix.rows - 1, matrix.cols, matrix)

    def to_dict(self) -> dict:
        """
        Serializes the arrangement to the JSON file format.

        The first nonzero entry of every column is scaled to 1, so projectively
        equal arrangements serialize identically.
        """
        columns = []
        for column in self.matrix.columns():
            lead = next(value for value in column if value != 0)
            columns.append([format_rational(value / lead) for value in column])

        return {"n": self.n, "m": self.m, "columns": columns}

    @classmethod
    def from_dict(cls, data: dict) -> "Arrangement":
        """
        Reads an arrangement from the JSON file format.

        Raises:
            ShapeMismatch: If the declared n, m disagree with the columns.
            ValueError: If an entry is not a rational literal.
        """
        columns = [[parse_rational(str(value)) for value in column] for column in data["columns"]]
        arrangement = cls.from_columns(columns)

        if (arrangement.n, arrangement.m) != (data["n"], data["m"]):
            raise ShapeMismatch(
                "declared n={}, m={} but columns give n={}, m={}".format(
                    data["n"], data["m"], arrangement.n, arrangement.m
                )
            )

        return arrangement


def dependent_subsets(arrangement: Arrangement) -> list[tuple[int, ...]]:
    """Column subsets of size n+1 whose hyperplanes share a point."""
    size = arrangement.n + 1
    return [
        subset
        for subset in itertools.combinations(range(arrangement.m), size)
        if det(arrangement.matrix.submatrix(cols=subset)) == 0
    ]


def is_general_position(arrangement: Arrangement) -> bool:
    if arrangement.m < arrangement.n + 1:
        raise ShapeMismatch("general position needs at least n+1 hyperplanes")

    return not dependent_subsets(arrangement)


def from_moduli(point: ModuliPointPn) -> Arrangement:
    """
    The standard matrix `[I | 1 | (1, s_1, ..., s_n)]` of a moduli point.

    Raises:
        InvalidModuliPoint: Raised by `ModuliPointPn` itself when built from bad data.
    """
    n = point.n
    columns: list[list[Fraction]] = [
        [Fraction(int(i == j)) for i in range(n + 1)] for j in range(n + 1)
    ]
    columns.append([Fraction(1)] * (n + 1))
    columns.append([Fraction(1), *point.s])
    return Arrangement.from_columns(columns)


@dataclass(frozen=True)
class StandardForm:
    """
    The result of `to_standard_form`.

    `P @ A.matrix @ diag(c)` equals `from_moduli(point).matrix` exactly.
    """

    P: RationalMatrix
    c: tuple[Fraction, ...]
    point: ModuliPointPn

    @property
    def s(self) -> tuple[Fraction, ...]:
        return self.point.s


def to_standard_form(arrangement: Arrangement) -> StandardForm:
    """
    Moves n+3 hyperplanes in general position to the standard frame.

    The first n+1 columns are sent to the coordinate hyperplanes and column
    n+2 to the all-ones column; the last column then reads `(1, s_1, ..., s_n)`.

    Raises:
        ShapeMismatch: If m != n+3.
        NotGeneralPosition: If some n+1 hyperplanes meet.
    """
    n, m = arrangement.n, arrangement.m
    if m != n + 3:
        raise ShapeMismatch(f"standard form needs m = n+3 hyperplanes, got m={m}")

    if not is_general_position(arrangement):
        raise NotGeneralPosition("arrangement is not in general position")

    frame = arrangement.matrix.submatrix(cols=range(n + 1))
    frame_inverse = invert(frame)

    unit = frame_inverse @ arrangement.matrix.submatrix(cols=[n + 1])
    last = frame_inverse @ arrangement.matrix.submatrix(cols=[n + 2])
    lam = unit.column(0)
    mu = last.column(0)

    P = RationalMatrix.diag([1 / value for value in lam]) @ frame_inverse
    ratio = lam[0] / mu[0]
    s = tuple(ratio * mu[i] / lam[i] for i in range(1, n + 1))
    c = (*lam, Fraction(1), ratio)

    logger.debug("standard form of %d hyperplanes in P^%d: s=%s", m, n, s)
    return StandardForm(P=P, c=c, point=ModuliPointPn(s))


def random_arrangement(
    n: int, m: int, rng: random.Random, degenerate: bool = False, bound: int = 9
) -> Arrangement:
    """
    Draws a full-rank arrangement with small integer coefficients.

    With `degenerate` set, one chosen set of n+1 hyperplanes is forced through a
    common point by making one of them a combination of the other n.
    """
    while True:
        columns = [[Fraction(rng.randint(-bound, bound)) for _ in range(n + 1)] for _ in range(m)]

        if degenerate:
            subset = rng.sample(range(m), n + 1)
            weights = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            columns[subset[-1]] = [
                sum((w * columns[j][i] for w, j in zip(weights, subset[:-1])), Fraction(0))
                for i in range(n + 1)
            ]

        if any(not any(column) for column in columns):
            continue

        arrangement = Arrangement.from_columns(columns)
        if rank(arrangement.matrix) != n + 1:
            continue
        if not degenerate or not is_general_position(arrangement):
            return arrangement
