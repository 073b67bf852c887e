"""Desk-scale invariant suite behind the `selftest` subcommand."""

import itertools
import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from cylab.arrangement import (
    ModuliPointPn,
    dependent_subsets,
    from_moduli,
    is_general_position,
    random_arrangement,
    to_standard_form,
)
from cylab.errors import CylabError
from cylab.exact_linalg import (
    RationalMatrix,
    cofactor_det,
    det,
    invert,
    left_kernel_basis,
    rank,
    vandermonde_det,
    vandermonde_matrix,
)
from cylab.higgs import build_eigen_higgs, check_maximality, hodge_from_higgs, yukawa_length
from cylab.hodge import (
    eigenspace_dims,
    genus_riemann_hurwitz,
    hodge_middle,
    kunneth_middle_dim,
    w_unif_routes,
)
from cylab.kummer import complementary_minor, gale_dual, is_smooth_Y
from cylab.moduli_iso import (
    gamma_arrangement,
    gamma_inverse,
    gamma_moduli,
    gamma_via_normalization,
    random_moduli_point,
)
from cylab.resolution import (
    DEFAULT_RULES,
    ResolutionRules,
    h11_report,
    init_cyclic_cover,
    oracle_check,
    run_resolution,
)

logger = logging.getLogger(__name__)

ODD_N = range(3, 22, 2)


class CheckFailed(AssertionError): ...


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


@dataclass
class CheckResult:
    name: str
    passed: bool | None
    detail: str
    seconds: float

    def to_dict(self) -> dict:
        status = "skipped" if self.passed is None else ("pass" if self.passed else "fail")
        return {"name": self.name, "status": status, "detail": self.detail}


def random_matrix(rng: random.Random, rows: int, cols: int) -> RationalMatrix:
    return RationalMatrix(rows, cols, tuple(Fraction(rng.randint(-9, 9)) for _ in range(rows * cols)))


def check_linalg(rng: random.Random, quick: bool) -> str:
    inverted = 0
    while inverted < 20:
        matrix = random_matrix(rng, 5, 5)
        if det(matrix) == 0:
            continue
        inverse = invert(matrix)
        expect(matrix @ inverse == RationalMatrix.identity(5), "M @ invert(M) != I")
        expect(invert(inverse) == matrix, "double inverse differs")
        inverted += 1

    for size in range(1, 7):
        points = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(size)]
        expect(vandermonde_det(points) == cofactor_det(vandermonde_matrix(points)), f"Vandermonde {points}")

    for _ in range(20):
        matrix = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        kernel = left_kernel_basis(matrix)
        expect((kernel @ matrix).is_zero(), "kernel does not annihilate")
        expect(rank(kernel) + rank(matrix) == matrix.rows, "rank-nullity fails")

    return "20 inverses, 6 Vandermonde sizes, 20 kernels"


def check_standard_form(rng: random.Random, quick: bool) -> str:
    samples = 10 if quick else 100
    for n in (3, 5):
        done = 0
        while done < samples:
            s = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))
            try:
                point = ModuliPointPn(s)
            except CylabError:
                continue
            expect(to_standard_form(from_moduli(point)).point == point, f"round trip fails at {s}")
            done += 1
    return f"{samples} points for n=3,5"


def check_gamma(rng: random.Random, quick: bool) -> str:
    samples = 25 if quick else 100
    for n in (3, 4, 5, 6):
        for _ in range(samples):
            point = random_moduli_point(n, rng)
            image = gamma_moduli(point)
            expect(image == gamma_via_normalization(point), f"formula vs normalization at {point.t}")
            expect(gamma_inverse(image) == point, f"inverse at {point.t}")
            expect(gamma_moduli(gamma_inverse(image)) == image, f"forward after inverse at {point.t}")
            expect(to_standard_form(gamma_arrangement(point)).point == image, f"triangle at {point.t}")
    return f"{samples} points for each n in 3..6"


def check_gale(rng: random.Random, quick: bool) -> str:
    degenerate = 0
    for index in range(50):
        arrangement = random_arrangement(3, 6, rng, degenerate=index % 4 == 0)
        data = gale_dual(arrangement)
        general = is_general_position(arrangement)
        degenerate += not general
        expect(is_smooth_Y(data) == general, "smoothness differs from general position")

        dependent = set(dependent_subsets(arrangement))
        for subset in itertools.combinations(range(6), 4):
            expect((complementary_minor(data, subset) == 0) == (subset in dependent), f"subset {subset}")

    expect(degenerate >= 10, f"only {degenerate} degenerate arrangements drawn")
    return f"50 arrangements, {degenerate} degenerate"


def check_hodge(rng: random.Random, quick: bool) -> str:
    for n in ODD_N:
        row = hodge_middle(n)
        r = (n + 3) // 2
        expect(row.is_palindromic(), f"n={n} not palindromic")
        expect(row.total == kunneth_middle_dim(n) == 2 * (r - 1) ** 2, f"n={n} sum rule")

    for r in range(2, 13):
        eigen = eigenspace_dims(r)
        expect(eigen.genus == genus_riemann_hurwitz(r, 2 * r), f"r={r} genus")
        for entry in eigen.dims:
            expect(entry.dim_01 == eigen.by_index(r - entry.i).dim_10, f"r={r} conjugation")

    hits = []
    for n in range(3, 100, 2):
        routes = w_unif_routes(n)
        expect(len(set(routes.values())) == 1, f"n={n} routes {routes}")
        if routes["totient"]:
            hits.append(n)
    expect(hits == [3, 5, 9], f"w_unif holds for {hits}")
    return "sum rule n<=21, genus r<=12, w_unif n<=99"


def check_higgs(rng: random.Random, quick: bool) -> str:
    for n in ODD_N:
        higgs = build_eigen_higgs(n)
        expect(hodge_from_higgs(higgs) == hodge_middle(n), f"n={n} ranks")
        expect(yukawa_length(higgs) == 1, f"n={n} Yukawa length")
        expect(check_maximality(higgs), f"n={n} maximality")
    return "odd n in 3..21"


def _resolution_check(n: int, rules: ResolutionRules, per_step: bool) -> str:
    state = init_cyclic_cover(n, n + 3, (n + 3) // 2, rules=rules)
    log = run_resolution(state, check_oracle=per_step)
    if not per_step:
        oracle_check(state)
    expect(log.discrepancy == 0, "discrepancy")
    model = h11_report(log)
    detail = f"{len(log.steps)} blow-ups, {model['new_classes']} new classes"
    if model.get("matches_expected", True):
        return detail

    expect("census" in model, "mismatched class count without a census")
    return f"{detail} (expected {model['expected_new_classes']}, census attached)"


def run_checks(
    seed: int = 0, quick: bool = False, rules: ResolutionRules = DEFAULT_RULES
) -> list[CheckResult]:
    """
    Runs every check with its own generator seeded from `seed`.

    A check passes when it returns; assertion failures and cylab errors fail it.
    """
    checks: list[tuple[str, Callable[[random.Random, bool], str] | None]] = [
        ("exact linear algebra", check_linalg),
        ("standard form round trip", check_standard_form),
        ("gamma oracle equivalence", check_gamma),
        ("Gale dual smoothness", check_gale),
        ("Hodge numbers", check_hodge),
        ("Higgs skeleton", check_higgs),
        ("resolution n=3 (oracle every step)", lambda rng, q: _resolution_check(3, rules, True)),
        (
            "resolution n=5 (oracle at the end)",
            None if quick else (lambda rng, q: _resolution_check(5, rules, False)),
        ),
    ]

    results = []
    for index, (name, check) in enumerate(checks):
        if check is None:
            results.append(CheckResult(name, None, "skipped by --quick", 0.0))
            continue

        started = time.perf_counter()
        try:
            detail = check(random.Random(seed * 1000 + index), quick)
            passed = True
        except (AssertionError, CylabError) as error:
            detail = f"{type(error).__name__}: {error}"
            passed = False
        elapsed = time.perf_counter() - started

        logger.info("%s: %s in %.2fs", name, "pass" if passed else "FAIL", elapsed)
        results.append(CheckResult(name, passed, detail, elapsed))

    return results
