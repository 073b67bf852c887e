"""
Hodge numbers of the cyclic-cover Calabi-Yau family and the eigenspace
bookkeeping of the underlying curve cover.
"""

import math
from dataclasses import dataclass

from cylab.errors import InputError, InvalidN, InvariantBreach


def check_n(n: int) -> int:
    """
    Validates the dimension and returns the cover degree r = (n+3)/2.

    Raises:
        InvalidN: If n is not an odd integer >= 3.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise InvalidN(n)

    return (n + 3) // 2


@dataclass(frozen=True)
class HodgeRow:
    """
    The middle Hodge row `h^{n,0}, h^{n-1,1}, ..., h^{0,n}`.
    """

    n: int
    values: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.values)

    def is_palindromic(self) -> bool:
        return self.values == self.values[::-1]

    def to_dict(self) -> dict:
        return {"n": self.n, "values": list(self.values)}


@dataclass(frozen=True)
class EigenDims:
    i: int
    dim_10: int
    dim_01: int

    @property
    def total(self) -> int:
        return self.dim_10 + self.dim_01


@dataclass(frozen=True)
class EigenData:
    r: int
    dims: tuple[EigenDims, ...]

    @property
    def m(self) -> int:
        return 2 * self.r

    @property
    def genus(self) -> int:
        return sum(entry.total for entry in self.dims) // 2

    def by_index(self, i: int) -> EigenDims:
        return self.dims[i - 1]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "genus": self.genus,
            "eigenspaces": [
                {"i": entry.i, "dim_10": entry.dim_10, "dim_01": entry.dim_01}
                for entry in self.dims
            ],
        }


def hodge_middle(n: int) -> HodgeRow:
    """
    Middle row of the Hodge diamond: h^{n-q,q} = q+1 for even q and n+1-q for odd q.

    Raises:
        InvalidN: If n is not odd and >= 3.
    """
    check_n(n)
    return HodgeRow(n, tuple(q + 1 if q % 2 == 0 else n + 1 - q for q in range(n + 1)))


def eigenspace_dims(r: int) -> EigenData:
    """
    Dimensions of the eigenspaces V_i, 1 <= i <= r-1, of the cyclic automorphism
    on H^1 of the r-fold cover of the line branched at 2r points.

    dim V_i^{1,0} = 2i - 1 and dim V_i^{0,1} = dim V_{r-i}^{1,0}; V_0 vanishes.
    """
    if r < 2:
        raise InputError(f"cover degree must be at least 2, got {r}")

    return EigenData(
        r=r,
        dims=tuple(EigenDims(i, 2 * i - 1, 2 * (r - i) - 1) for i in range(1, r)),
    )


def genus_riemann_hurwitz(r: int, m: int) -> int:
    """
    Genus of the r-fold cyclic cover of the line totally ramified over m points,
    from 2g - 2 = -2r + m(r - 1).
    """
    twice = -2 * r + m * (r - 1) + 2
    if twice % 2:
        raise InputError(f"no totally ramified {r}-fold cover over {m} points")
    return twice // 2


def unit_group_order(r: int) -> int:
    """Euler totient, counted by brute force."""
    return sum(1 for u in range(1, r) if math.gcd(u, r) == 1) if r > 1 else 1


def galois_orbit(r: int, i: int) -> frozenset[int]:
    if not 1 <= i <= r - 1:
        raise InputError(f"eigen index {i} outside 1..{r - 1}")

    return frozenset(u * i % r for u in range(1, r) if math.gcd(u, r) == 1)


def w_unif_exists(n: int) -> bool:
    """
    Whether the Galois orbit of the wedge of V_1 splits off a further
    uniformizing piece: true iff phi(r) = 2, i.e. r in {3, 4, 6}.
    """
    r = check_n(n)
    return unit_group_order(r) == 2


def w_unif_routes(n: int) -> dict[str, bool]:
    """The three independent ways of deciding `w_unif_exists`."""
    r = check_n(n)
    return {
        "totient": unit_group_order(r) == 2,
        "orbit": galois_orbit(r, 1) == frozenset({1, r - 1}),
        "membership": r in (3, 4, 6),
    }


def kunneth_middle_dim(n: int) -> int:
    r = check_n(n)
    eigen = eigenspace_dims(r)

    total = 0
    for entry in eigen.dims:
        if entry.total != n + 1:
            raise InvariantBreach(f"dim V_{entry.i} = {entry.total}, expected {n + 1}")
        total += math.comb(entry.total, n)

    return total


def euler_characteristic_cy3(h11: int, h21: int) -> int:
    return 2 * (h11 - h21)
