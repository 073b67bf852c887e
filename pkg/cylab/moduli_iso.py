"""
The isomorphism between n+3 ordered points on the line and n+3 ordered
hyperplanes in general position in P^n.

`gamma_moduli` is the closed formula; `gamma_via_normalization` recomputes
the same point by projective normalization of the Vandermonde-type
arrangement and serves as its oracle.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from cylab.arrangement import Arrangement, ModuliPointP1, ModuliPointPn
from cylab.errors import InvalidModuliPoint
from cylab.exact_linalg import RationalMatrix, Scalar, invert, to_rational

logger = logging.getLogger(__name__)

INFINITY = (Fraction(1), Fraction(0))


@dataclass(frozen=True)
class ProjectivePoint1:
    """The point `(a : b)` of the projective line; infinity is `(1 : 0)`."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "b", to_rational(self.b))

        if self.a == 0 and self.b == 0:
            raise InvalidModuliPoint("(0 : 0) is not a point of the line")

    @classmethod
    def finite(cls, t: Scalar) -> "ProjectivePoint1":
        return cls(to_rational(t), Fraction(1))

    @classmethod
    def infinity(cls) -> "ProjectivePoint1":
        return cls(*INFINITY)


def point_to_hyperplane(point: ProjectivePoint1, n: int) -> tuple[Fraction, ...]:
    """
    Degree-n binary forms vanishing at a point form a hyperplane; this returns
    its coefficient column `(b^n, a b^(n-1), ..., a^n)`.
    """
    return tuple(point.a**k * point.b ** (n - k) for k in range(n + 1))


def configuration(point: ModuliPointP1) -> list[ProjectivePoint1]:
    """The ordered points `(0, t_1, ..., t_{n-1}, inf, 1, t_n)`."""
    *head, last = point.t
    return [
        ProjectivePoint1.finite(0),
        *(ProjectivePoint1.finite(t) for t in head),
        ProjectivePoint1.infinity(),
        ProjectivePoint1.finite(1),
        ProjectivePoint1.finite(last),
    ]


def gamma_arrangement(point: ModuliPointP1) -> Arrangement:
    n = point.n
    return Arrangement.from_columns(
        [point_to_hyperplane(p, n) for p in configuration(point)]
    )


def gamma_moduli(point: ModuliPointP1) -> ModuliPointPn:
    """
    Closed formula: `s_i = t_n (t_i - 1) / (t_i - t_n)` for i < n and `s_n = t_n`.

    Raises:
        InvalidModuliPoint: If `point` is degenerate.
    """
    *head, last = point.t
    s = [last * (t - 1) / (t - last) for t in head]
    s.append(last)
    return ModuliPointPn(tuple(s))


def gamma_inverse(point: ModuliPointPn) -> ModuliPointP1:
    """
    Inverse of `gamma_moduli`: `t_n = s_n` and `t_i = s_n (s_i - 1) / (s_i - s_n)`.

    Raises:
        InvalidModuliPoint: If `point` is degenerate.
    """
    *head, last = point.s
    t = [last * (s - 1) / (s - last) for s in head]
    t.append(last)
    return ModuliPointP1(tuple(t))


@dataclass(frozen=True)
class GammaTrace:
    """Every intermediate value of the normalization recipe."""

    A: RationalMatrix
    B: RationalMatrix
    lam: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]
    D: RationalMatrix
    P: RationalMatrix
    PA: RationalMatrix
    point: ModuliPointPn

    @property
    def s(self) -> tuple[Fraction, ...]:
        return self.point.s

    def to_dict(self) -> dict:
        return {
            "A": self.A.to_rows(),
            "B": self.B.to_rows(),
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "D": self.D.to_rows(),
            "P": self.P.to_rows(),
            "PA": self.PA.to_rows(),
            "s": list(self.s),
        }


def normalization_trace(point: ModuliPointP1) -> GammaTrace:
    """
    Normalizes the Vandermonde-type arrangement of a point configuration.

    With B the first n+1 columns, `lam = B^-1 (1, ..., 1)`,
    `mu = B^-1 (1, t_n, ..., t_n^n)`, `D = diag(lam)` and
    `P = lam_1 / mu_1 * D^-1 B^-1`, the matrix `P A` has coordinate columns
    up to scale, an all-ones column and last column `(1, s_1, ..., s_n)`.
    """
    n = point.n
    A = gamma_arrangement(point).matrix
    B = A.submatrix(cols=range(n + 1))
    B_inverse = invert(B)

    lam = (B_inverse @ A.submatrix(cols=[n + 1])).column(0)
    mu = (B_inverse @ A.submatrix(cols=[n + 2])).column(0)

    if any(value == 0 for value in lam) or mu[0] == 0:
        raise InvalidModuliPoint(f"configuration {point.t} is not in general position")

    D = RationalMatrix.diag(lam)
    P = (invert(D) @ B_inverse).scale(lam[0] / mu[0])
    PA = P @ A

    last = PA.column(n + 2)
    s = tuple(last[i] / last[0] for i in range(1, n + 1))
    logger.debug("normalized t=%s to s=%s", point.t, s)

    return GammaTrace(A=A, B=B, lam=lam, mu=mu, D=D, P=P, PA=PA, point=ModuliPointPn(s))


def gamma_via_normalization(point: ModuliPointP1) -> ModuliPointPn:
    return normalization_trace(point).point


def random_moduli_point(n: int, rng: random.Random, bound: int = 9) -> ModuliPointP1:
    """
    Draws a valid configuration with small rational coordinates.

    Parameters:
        - n (int): Number of free coordinates.
        - rng (random.Random): Seeded generator; the only source of randomness.
        - bound (int, optional): Numerators lie in [-bound, bound], denominators in [1, 4].
    """
    while True:
        t = tuple(
            Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(n)
        )
        try:
            return ModuliPointP1(t)
        except InvalidModuliPoint:
            continue
