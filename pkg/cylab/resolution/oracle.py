"""
Local-chart oracle for the strata model.

Every chart is an affine coordinate patch whose coordinates cut out the
divisors of one maximal simplex; the hypersurface is a binomial stored as
two exponent vectors. Blow-ups are replayed by monomial substitution in the
two standard charts followed by division by the exceptional coordinate.
Strata, multiplicities and singular points are then read off the charts and
compared with the global model.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property

from cylab.errors import InputError, OracleMismatch
from cylab.resolution.state import (
    BinomialState,
    DivisorClass,
    FValue,
    ZERO_F,
    max_f,
    singular_locus,
)

logger = logging.getLogger(__name__)

MAX_ORACLE_DIM = 6


@dataclass(frozen=True)
class Chart:
    """
    Attributes:
        variables (tuple): `(name, divisor id)` per coordinate.
        lhs (tuple[int, ...]): Exponents of the E-side monomial.
        rhs (tuple[int, ...]): Exponents of the F-side monomial.
        centers (tuple): Blow-up centers replayed to reach this chart.
    """

    variables: tuple[tuple[str, int], ...]
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    centers: tuple[tuple[int, int], ...] = ()

    @cached_property
    def ids(self) -> tuple[int, ...]:
        return tuple(divisor for _, divisor in self.variables)

    def position(self, divisor: int) -> int | None:
        return self.ids.index(divisor) if divisor in self.ids else None

    def equation(self) -> str:
        def monomial(exponents: tuple[int, ...]) -> str:
            parts = [
                name if power == 1 else f"{name}^{power}"
                for (name, _), power in zip(self.variables, exponents)
                if power
            ]
            return "*".join(parts) or "1"

        return f"{monomial(self.lhs)} - {monomial(self.rhs)}"

    def blow_up(self, e: int, f: int, new_id: int, new_name: str) -> list["Chart"]:
        """
        The two standard charts over this one, or the chart itself when the
        center misses it.

        In the chart keeping f the exceptional coordinate u replaces e's and
        `x_f -> u x_f`; in the chart keeping e it replaces f's and `y_e -> u y_e`.
        """
        i, j = self.position(e), self.position(f)
        if i is None or j is None:
            return [self]

        charts = []
        for replaced in (i, j):
            variables = list(self.variables)
            variables[replaced] = (new_name, new_id)
            lhs, rhs = list(self.lhs), list(self.rhs)
            lhs[replaced] = self.lhs[i] + self.lhs[j]
            rhs[replaced] = self.rhs[i] + self.rhs[j]

            common = min(lhs[replaced], rhs[replaced])
            lhs[replaced] -= common
            rhs[replaced] -= common

            charts.append(
                Chart(tuple(variables), tuple(lhs), tuple(rhs), (*self.centers, (e, f)))
            )
        return charts

    def center_order(self, e: int, f: int) -> int:
        i, j = self.position(e), self.position(f)
        assert i is not None and j is not None
        return min(self.lhs[i] + self.lhs[j], self.rhs[i] + self.rhs[j])

    def _vanishes(self, exponents: tuple[int, ...] | list[int], subset: tuple[int, ...]) -> bool:
        return any(exponents[k] > 0 for k in subset)

    @cached_property
    def strata(self) -> dict[frozenset[int], tuple[int, int, frozenset[int]]]:
        """
        Coordinate strata lying on the hypersurface, with `(g1, g2, participating)`.
        """
        result = {}
        size = len(self.variables)
        for k in range(1, size + 1):
            for subset in itertools.combinations(range(size), k):
                if self._vanishes(self.lhs, subset) and self._vanishes(self.rhs, subset):
                    key = frozenset(self.ids[p] for p in subset)
                    result[key] = (
                        sum(self.rhs[p] for p in subset),
                        sum(self.lhs[p] for p in subset),
                        frozenset(self.ids[p] for p in subset if self.lhs[p] or self.rhs[p]),
                    )
        return result

    def is_jacobian_singular(self, key: frozenset[int]) -> bool:
        """All partial derivatives of `lhs - rhs` vanish at the generic point of the stratum."""
        subset = tuple(p for p in range(len(self.variables)) if self.ids[p] in key)
        for exponents in (self.lhs, self.rhs):
            for k, power in enumerate(exponents):
                if power == 0:
                    continue
                derivative = list(exponents)
                derivative[k] -= 1
                if not self._vanishes(derivative, subset):
                    return False
        return True


@dataclass
class ChartComplex:
    charts: list[Chart]
    labels: dict[int, str]
    discrepancy: int = 0

    @classmethod
    def initial(cls, n: int, m: int, r: int) -> "ChartComplex":
        """Charts of `y^r = x_1 ... x_m` around every n-fold intersection of hyperplanes."""
        labels = {0: "E0", **{j: f"F{j}" for j in range(1, m + 1)}}
        charts = [
            Chart(
                variables=(("E0", 0), *((labels[j], j) for j in subset)),
                lhs=(r, *(0 for _ in subset)),
                rhs=(0, *(1 for _ in subset)),
            )
            for subset in itertools.combinations(range(1, m + 1), n)
        ]
        return cls(charts=charts, labels=labels)

    def blow_up(self, e: int, f: int, new_id: int, new_label: str) -> None:
        orders = {chart.center_order(e, f) for chart in self.charts if {e, f} <= set(chart.ids)}
        if len(orders) != 1:
            raise OracleMismatch("center order is not constant along the center", sorted(orders))

        self.discrepancy += 2 - orders.pop() - 1
        self.labels[new_id] = new_label
        self.charts = [piece for chart in self.charts for piece in chart.blow_up(e, f, new_id, new_label)]

    def strata(self) -> dict[frozenset[int], tuple[int, int, frozenset[int]]]:
        merged: dict[frozenset[int], tuple[int, int, frozenset[int]]] = {}
        for chart in self.charts:
            for key, value in chart.strata.items():
                if merged.setdefault(key, value) != value:
                    raise OracleMismatch("charts disagree on a stratum", self.describe(key))
        return merged

    def singular_strata(self) -> set[frozenset[int]]:
        singular = {
            key
            for chart in self.charts
            for key in chart.strata
            if chart.is_jacobian_singular(key)
        }
        return {key for key in singular if not any(other < key for other in singular)}

    def exponents(self) -> dict[int, tuple[int, int]]:
        """`(lhs, rhs)` exponent of every divisor, checked to be chart independent."""
        found: dict[int, tuple[int, int]] = {}
        for chart in self.charts:
            for position, divisor in enumerate(chart.ids):
                value = (chart.lhs[position], chart.rhs[position])
                if found.setdefault(divisor, value) != value:
                    raise OracleMismatch("exponent differs between charts", chart.equation())
        return found

    def max_f(self) -> FValue:
        counts: dict[tuple[int, int], int] = {}
        for g1, g2, _ in self.strata().values():
            if g1 and g2:
                counts[g1, g2] = counts.get((g1, g2), 0) + 1
        if not counts:
            return ZERO_F
        top = max(counts)
        return FValue(*top, counts[top])

    def describe(self, key: frozenset[int]) -> tuple[str, ...]:
        return tuple(self.labels[d] for d in sorted(key))


def chart_oracle(state: BinomialState) -> ChartComplex:
    """
    Rebuilds the charts of a state by replaying its blow-up history.

    Raises:
        InputError: If the state was not built by `init_cyclic_cover` or is too
            large for exhaustive chart enumeration.
    """
    if state.cover is None:
        raise InputError("chart oracle needs a state created from a cyclic cover tuple")

    if state.ambient_dim > MAX_ORACLE_DIM:
        raise InputError(f"chart oracle is limited to ambient dimension {MAX_ORACLE_DIM}")

    complex_ = ChartComplex.initial(*state.cover)
    for record in state.history:
        complex_.blow_up(*record.center, record.new_divisor, record.new_label)

    logger.debug("replayed %d blow-ups into %d charts", len(state.history), len(complex_.charts))
    return complex_


def oracle_check(state: BinomialState, complex_: ChartComplex | None = None) -> bool:
    """
    Compares the strata model with the chart oracle.

    Checks strata, multiplicities, participation, singular locus, discrepancy
    and the maximum of f.

    Raises:
        OracleMismatch: On the first disagreement, carrying the stratum or chart.
    """
    if complex_ is None:
        complex_ = chart_oracle(state)

    charted = complex_.strata()
    modelled = {stratum.divisors: stratum for stratum in state.alive_strata() if stratum.in_X}

    difference = sorted(charted.keys() ^ modelled.keys(), key=sorted)
    if difference:
        key = difference[0]
        side = "model" if key in modelled else "charts"
        raise OracleMismatch(f"stratum only in the {side}", complex_.describe(key))

    for divisor, (lhs, rhs) in complex_.exponents().items():
        record = state.divisors[divisor]
        expected = (record.mult, 0) if record.klass is DivisorClass.E else (0, record.mult)
        if (lhs, rhs) != expected:
            raise OracleMismatch(
                f"multiplicity of {record.label} is {expected} in the model, {(lhs, rhs)} in charts",
                record.label,
            )

    for key, (_, _, participating) in charted.items():
        if state.participating(key) != participating:
            raise OracleMismatch("participation differs", complex_.describe(key))

    model_singular = {stratum.divisors for stratum in singular_locus(state)}
    chart_singular = complex_.singular_strata()
    if model_singular != chart_singular:
        key = sorted(model_singular ^ chart_singular, key=sorted)[0]
        raise OracleMismatch("singular locus differs", complex_.describe(key))

    if complex_.discrepancy != state.discrepancy:
        raise OracleMismatch(
            "discrepancy differs", (state.discrepancy, complex_.discrepancy)
        )

    if complex_.max_f() != max_f(state):
        raise OracleMismatch("maximum of f differs", (max_f(state), complex_.max_f()))

    return True
