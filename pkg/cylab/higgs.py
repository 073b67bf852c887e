"""
Rank-level skeleton of the graded Higgs bundle of the family and the
Yukawa coupling length computed from labelled block maps.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum

from cylab.errors import Indeterminate, ShapeMismatch
from cylab.hodge import HodgeRow, check_n

logger = logging.getLogger(__name__)

ETA_ASSUMPTION = "eta_{r-1} is an isomorphism (imported from the ball-quotient theory, not verified)"
COARSE_MODULI_NOTE = "Yukawa length is computed over the fine moduli base only; the coarse moduli value is out of model"


class MapLabel(Enum):
    ZERO = "zero"
    ISO = "iso"
    INJECTIVE = "injective"
    SURJECTIVE = "surjective"
    NONZERO_UNKNOWN = "nonzero_unknown"


class Status(Enum):
    """What is known about the iterated Higgs field landing in one piece."""

    ISO = "iso"
    INJ = "injective"
    SURJ = "surjective"
    NONZERO = "nonzero"
    UNKNOWN = "unknown"


_COMPOSE: dict[tuple[Status, MapLabel], Status] = {
    (Status.ISO, MapLabel.ISO): Status.ISO,
    (Status.ISO, MapLabel.INJECTIVE): Status.INJ,
    (Status.ISO, MapLabel.SURJECTIVE): Status.SURJ,
    (Status.INJ, MapLabel.ISO): Status.INJ,
    (Status.INJ, MapLabel.INJECTIVE): Status.INJ,
    (Status.INJ, MapLabel.SURJECTIVE): Status.UNKNOWN,
    (Status.SURJ, MapLabel.ISO): Status.SURJ,
    (Status.SURJ, MapLabel.INJECTIVE): Status.NONZERO,
    (Status.SURJ, MapLabel.SURJECTIVE): Status.SURJ,
    (Status.NONZERO, MapLabel.ISO): Status.NONZERO,
    (Status.NONZERO, MapLabel.INJECTIVE): Status.NONZERO,
    (Status.NONZERO, MapLabel.SURJECTIVE): Status.UNKNOWN,
}


def compose_status(status: Status, label: MapLabel) -> Status | None:
    """
    Status after following one more block map; None means the contribution is zero.
    """
    if label is MapLabel.ZERO:
        return None

    if label is MapLabel.NONZERO_UNKNOWN or status is Status.UNKNOWN:
        return Status.UNKNOWN

    return _COMPOSE[status, label]


@dataclass(frozen=True)
class BlockMap:
    """
    One block of the Higgs field between adjacent Hodge degrees.

    Attributes:
        from_p (int): Hodge degree p of the source piece.
        to_p (int): Always from_p - 1.
        label (MapLabel): What is known about the block.
        source (int): Eigen index of the summand holding the source piece.
        target (int): Eigen index of the summand holding the target piece.
    """

    from_p: int
    to_p: int
    label: MapLabel
    source: int
    target: int

    def __post_init__(self):
        if self.to_p != self.from_p - 1:
            raise ShapeMismatch(f"Higgs block {self.from_p} -> {self.to_p} must drop degree by one")

    @property
    def is_internal(self) -> bool:
        return self.source == self.target

    def to_dict(self) -> dict:
        return {
            "from": [self.source, self.from_p],
            "to": [self.target, self.to_p],
            "label": self.label.value,
        }


@dataclass(frozen=True)
class HiggsSummand:
    eigen_index: int
    pieces: tuple[tuple[int, int], ...]
    maps: tuple[BlockMap, ...] = ()

    def rank(self, p: int) -> int:
        return sum(rank for degree, rank in self.pieces if degree == p)

    def to_dict(self) -> dict:
        return {
            "i": self.eigen_index,
            "pieces": [{"p": p, "rank": rank} for p, rank in self.pieces],
            "maps": [block.to_dict() for block in self.maps],
        }


@dataclass(frozen=True)
class GradedHiggs:
    """
    A Hodge-graded bundle split into eigen summands, with labelled Higgs blocks.

    Labels describe `E^{p,q} (x) T -> E^{p-1,q+1}` where T is the tangent bundle
    of the base, so an `iso` block between pieces of ranks a and b has
    `a * dim_base == b`.
    """

    n: int
    dim_base: int
    summands: tuple[HiggsSummand, ...]
    cross_maps: tuple[BlockMap, ...] = field(default=())

    def __post_init__(self):
        for block in self.all_maps():
            source = self.piece_rank(block.source, block.from_p) * self.dim_base
            target = self.piece_rank(block.target, block.to_p)
            admissible = {
                MapLabel.ISO: source == target and source > 0,
                MapLabel.INJECTIVE: 0 < source <= target,
                MapLabel.SURJECTIVE: source >= target > 0,
            }.get(block.label, True)

            if not admissible:
                raise ShapeMismatch(f"label {block.label.value} impossible for {block}")

    def summand(self, eigen_index: int) -> HiggsSummand:
        for summand in self.summands:
            if summand.eigen_index == eigen_index:
                return summand
        raise KeyError(eigen_index)

    def piece_rank(self, eigen_index: int, p: int) -> int:
        return self.summand(eigen_index).rank(p)

    def all_maps(self) -> list[BlockMap]:
        return [block for summand in self.summands for block in summand.maps] + list(
            self.cross_maps
        )

    def total_rank(self, p: int) -> int:
        return sum(summand.rank(p) for summand in self.summands)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim_base": self.dim_base,
            "summands": [summand.to_dict() for summand in self.summands],
        }


def wedge_ranks(rank_10: int, rank_01: int, n: int) -> tuple[tuple[int, int], ...]:
    """
    Hodge pieces of the n-th exterior power of a two-step bundle F^{1,0} + F^{0,1}.

    Returns:
        tuple: `(p, C(rank_10, p) * C(rank_01, n - p))` for every nonzero rank,
        highest p first.

    Raises:
        ShapeMismatch: If rank_10 + rank_01 != n + 1.
    """
    if rank_10 + rank_01 != n + 1:
        raise ShapeMismatch(f"ranks {rank_10} + {rank_01} do not add up to {n + 1}")

    pieces = ((p, math.comb(rank_10, p) * math.comb(rank_01, n - p)) for p in range(n, -1, -1))
    return tuple((p, rank) for p, rank in pieces if rank)


def build_eigen_higgs(n: int) -> GradedHiggs:
    """
    Assembles the Higgs skeleton as a direct sum over eigen indices 1..r-1.

    Summand i is the n-th wedge of a bundle with ranks (2i-1, n+2-2i); only the
    pieces at p = 2i-1 and p = 2i-2 survive. The block inside summand r-1 is
    flagged iso, the others are unknown but nonzero, and all blocks between
    different summands vanish.
    """
    r = check_n(n)
    summands = []

    for i in range(1, r):
        pieces = wedge_ranks(2 * i - 1, n + 2 - 2 * i, n)
        top = 2 * i - 1
        label = MapLabel.ISO if i == r - 1 else MapLabel.NONZERO_UNKNOWN
        summands.append(
            HiggsSummand(i, pieces, (BlockMap(top, top - 1, label, i, i),))
        )

    cross = tuple(
        BlockMap(p, p - 1, MapLabel.ZERO, source.eigen_index, target.eigen_index)
        for source in summands
        for target in summands
        if source is not target
        for p, _ in source.pieces
        if target.rank(p - 1)
    )

    return GradedHiggs(n=n, dim_base=n, summands=tuple(summands), cross_maps=cross)


def yukawa_length(higgs: GradedHiggs) -> int:
    """
    Length of the Yukawa coupling: the largest L with the iterated Higgs field
    theta^L, started at the (n,0) piece, nonzero.

    Raises:
        ShapeMismatch: If there is no (n,0) piece of positive rank.
        Indeterminate: If some theta^k can only be reached through blocks of
            unknown behaviour.
    """
    current: dict[tuple[int, int], tuple[Status, BlockMap | None]] = {
        (summand.eigen_index, higgs.n): (Status.ISO, None)
        for summand in higgs.summands
        if summand.rank(higgs.n) > 0
    }
    if not current:
        raise ShapeMismatch("the Higgs bundle has no (n,0) piece")

    outgoing: dict[tuple[int, int], list[BlockMap]] = defaultdict(list)
    for block in higgs.all_maps():
        outgoing[block.source, block.from_p].append(block)

    length = 0
    while True:
        following: dict[tuple[int, int], tuple[Status, BlockMap | None]] = {}

        for key, (status, culprit) in current.items():
            for block in outgoing[key]:
                target = (block.target, block.to_p)
                if higgs.piece_rank(*target) == 0:
                    continue

                composed = compose_status(status, block.label)
                if composed is None:
                    continue

                blame = culprit
                if blame is None and block.label is MapLabel.NONZERO_UNKNOWN:
                    blame = block

                if target in following:
                    # two contributions may cancel
                    earlier = following[target][1]
                    following[target] = (Status.UNKNOWN, earlier or blame or block)
                else:
                    following[target] = (composed, blame)

        if any(status is not Status.UNKNOWN for status, _ in following.values()):
            length += 1
            current = following
            continue

        if following:
            raise Indeterminate(next(iter(following.values()))[1])

        logger.debug("Yukawa length of the n=%d skeleton is %d", higgs.n, length)
        return length


def check_maximality(higgs: GradedHiggs) -> bool:
    """
    Whether theta^{n,0} is an isomorphism onto a piece of rank dim_base, i.e. the
    Kodaira-Spencer map of the family is onto.
    """
    n = higgs.n
    if higgs.total_rank(n) != 1 or higgs.total_rank(n - 1) != higgs.dim_base:
        return False

    if higgs.dim_base != n:
        return False

    return any(
        block.from_p == n and block.label is MapLabel.ISO and higgs.piece_rank(block.target, n - 1)
        for block in higgs.all_maps()
    )


def hodge_from_higgs(higgs: GradedHiggs) -> HodgeRow:
    return HodgeRow(higgs.n, tuple(higgs.total_rank(p) for p in range(higgs.n, -1, -1)))
