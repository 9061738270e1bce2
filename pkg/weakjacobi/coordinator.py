"""Runner for the verification suites behind `weakjacobi verify`."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import series as ser
from .config import build_options, prec24
from .const import (
    _LOGGER,
    CONF_EVEN,
    CONF_GRID_SUM,
    CONF_MAX_CONSTRUCTIBLE,
    CONF_REVERIFY_ORDERS,
    CONF_WEIGHT_WINDOW,
    GEN_PHI_0_313,
    GEN_PHI_0_323,
    Q_DENOMINATOR,
)
from .dimension import (
    dim_weak,
    free_module_rank,
    generator_weights,
    hilbert_table,
    min_weight_dims,
    rank_one_hilbert_coefficient,
    rank_one_numerator,
)
from .exceptions import JacobiError, ThetaBlockError
from .forms import (
    eisenstein,
    eta_power,
    heat,
    named_form,
    phi_0_1,
    phi_0_3half,
    phi_m1_half,
    phi_m2_1,
    serre,
    theta,
    theta_block,
    theta_block_min2,
    theta_block_plus,
    theta_product,
)
from .golden_rows import GOLDEN_ROWS
from .index import RankOneIndex
from .structure import (
    FULL_CATALOG,
    catalog_summary,
    phi_identity,
    relation_odd_image,
    relation_pullback_factor,
    relation_split_diagonal,
    relation_twisted_theta,
    span_rank,
    verify_grid,
)

# theta and its Serre derivative are cheap, so the kernel check runs deeper
# than the other identities.
KERNEL_ORDERS = 20
HILBERT_GRID = 6
THETA_BLOCK_SUM = 6
MIN2_SPAN_SUM = 4
LEMMA_OFFSETS = (1, 2, 3)


@dataclass
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    passed: bool
    detail: str

    def __str__(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


class VerificationCoordinator:
    """
    Runs the named suites against one options dict.

    Each suite returns a SuiteResult; a JacobiError inside a suite is logged
    and turned into a failure so the remaining suites still run.
    """

    def __init__(self, options: dict | None = None) -> None:
        self.options = options if options is not None else build_options()
        self.prec24 = prec24(self.options)
        self.identity_prec24 = prec24(self.options, CONF_MAX_CONSTRUCTIBLE)
        self.suites: dict[str, Callable[[], SuiteResult]] = {
            "golden_rows": self.suite_golden_rows,
            "pullbacks": self.suite_pullbacks,
            "phi_identity": self.suite_phi_identity,
            "operator_kernels": self.suite_operator_kernels,
            "hilbert_cross_check": self.suite_hilbert_cross_check,
            "determinant": self.suite_determinant,
            "minimal_weight": self.suite_minimal_weight,
            "structure_grid": self.suite_structure_grid,
            "even_subring": self.suite_even_subring,
            "lemma_dimensions": self.suite_lemma_dimensions,
            "catalog": self.suite_catalog,
            "theta_product": self.suite_theta_product,
            "rank_one_hilbert": self.suite_rank_one_hilbert,
            "parity": self.suite_parity,
            "generator_relations": self.suite_generator_relations,
        }

    def run(self, names: list[str] | None = None) -> list[SuiteResult]:
        results = []
        for name in names or list(self.suites):
            if name not in self.suites:
                results.append(SuiteResult(name, False, "unknown suite"))
                continue
            _LOGGER.info("Running suite %s", name)
            try:
                result = self.suites[name]()
            except JacobiError as err:
                _LOGGER.error("Suite %s raised %s", name, err)
                result = SuiteResult(name, False, f"{type(err).__name__}: {err}")
            _LOGGER.debug("%s", result)
            results.append(result)
        return results

    # -- acceptance suites

    def suite_golden_rows(self) -> SuiteResult:
        wrong = []
        for (gid, n24), expected in GOLDEN_ROWS.items():
            f = named_form(gid, n24 + Q_DENOMINATOR).series
            row = f.slice(n24)
            if row != {key: Fraction(value) for key, value in expected.items()}:
                wrong.append(f"{gid}@q^{n24}/24")
        if wrong:
            return SuiteResult("golden_rows", False, "mismatch in " + ", ".join(wrong))
        return SuiteResult("golden_rows", True, f"{len(GOLDEN_ROWS)} rows match")

    def suite_pullbacks(self) -> SuiteResult:
        prec = self.identity_prec24
        phi01 = phi_0_1(prec)
        phi03 = phi_0_3half(prec)
        phi_323 = named_form(GEN_PHI_0_323, prec).series
        phi_313 = named_form(GEN_PHI_0_313, prec).series
        checks = {
            "P(Phi_323)=phi_0_1": (ser.pullback_P(phi_323), phi01),
            "Q(Phi_323)=6phi_0_3/2": (ser.pullback_Q(phi_323), ser.scale(phi03, 6)),
            "P(Phi_313)=phi_0_1^2": (ser.pullback_P(phi_313), ser.power(phi01, 2)),
            "Q(Phi_313)=72phi_0_3/2": (ser.pullback_Q(phi_313), ser.scale(phi03, 72)),
        }
        failed = [name for name, (left, right) in checks.items() if not ser.equals_to_precision(left, right, prec)]
        orders = prec // Q_DENOMINATOR
        if failed:
            return SuiteResult("pullbacks", False, f"through q^{orders}: " + ", ".join(failed))
        return SuiteResult("pullbacks", True, f"4 identities through q^{orders}")

    def suite_phi_identity(self) -> SuiteResult:
        result = phi_identity(self.identity_prec24)
        expected = [Fraction(1, 12), Fraction(-1, 12)]
        passed = result.success and result.coefficients == expected
        detail = str(result).replace("\n", ", ")
        return SuiteResult("phi_identity", passed, detail)

    def suite_operator_kernels(self) -> SuiteResult:
        deep = KERNEL_ORDERS * Q_DENOMINATOR
        base = theta(deep)
        heat_zero = heat(base, RankOneIndex(1)).is_zero
        serre_zero = serre(base, Fraction(1, 2), 1, RankOneIndex(1)).is_zero
        prec = self.identity_prec24
        e4, e6 = eisenstein(4, prec), eisenstein(6, prec)
        discriminant = ser.linear_combination([(1, ser.power(e4, 3)), (-1, ser.power(e6, 2))])
        delta = ser.scale(eta_power(24, prec), 1728)
        delta_ok = ser.equals_to_precision(discriminant, delta, prec)
        detail = f"heat(theta)=0: {heat_zero}, serre(theta)=0: {serre_zero}, E4^3-E6^2=1728 eta^24: {delta_ok}"
        return SuiteResult("operator_kernels", heat_zero and serre_zero and delta_ok, detail)

    def suite_hilbert_cross_check(self) -> SuiteResult:
        table = hilbert_table(HILBERT_GRID, HILBERT_GRID, HILBERT_GRID)
        problems = []
        for (a, b, c), coefficient in table.items():
            weights = generator_weights(a, b, c)
            if weights != coefficient:
                problems.append(f"F{(a, b, c)}")
            if any(generator_weights(*perm) != weights for perm in ((b, a, c), (a, c, b), (c, b, a))):
                problems.append(f"symmetry{(a, b, c)}")
            if b == 0 and weights != rank_one_numerator(a) * rank_one_numerator(c):
                problems.append(f"diagonal{(a, b, c)}")
        if problems:
            return SuiteResult("hilbert_cross_check", False, ", ".join(problems[:10]))
        return SuiteResult("hilbert_cross_check", True, f"{len(table)} triples")

    def suite_determinant(self) -> SuiteResult:
        wrong = []
        count = 0
        for a, b, c in product(range(HILBERT_GRID + 1), repeat=3):
            det = a * b + a * c + b * c
            if det <= 0:
                continue
            count += 1
            if free_module_rank(a, b, c) != det:
                wrong.append(str((a, b, c)))
        if wrong:
            return SuiteResult("determinant", False, "rank != det at " + ", ".join(wrong[:10]))
        return SuiteResult("determinant", True, f"{count} triples with positive determinant")

    def suite_minimal_weight(self) -> SuiteResult:
        problems = []
        for a, b, c in product(range(HILBERT_GRID + 1), repeat=3):
            weights = generator_weights(a, b, c)
            k_min = -(a + b + c)
            lowest = tuple(weights.coefficient(k_min + i) for i in range(3))
            if lowest != min_weight_dims(a, b, c):
                problems.append(f"lowest{(a, b, c)}")
        prec = self.identity_prec24
        for a, b, c in product(range(THETA_BLOCK_SUM + 1), repeat=3):
            if a + b + c > THETA_BLOCK_SUM:
                continue
            block = theta_block(a, b, c, prec)
            if block.weight != -(a + b + c) or block.index.triple != (a, b, c):
                problems.append(f"metadata{(a, b, c)}")
            if block.valuation24 is not None and block.valuation24 < 0:
                problems.append(f"valuation{(a, b, c)}")
            try:
                theta_block_plus(a, b, c, Q_DENOMINATOR)
                raised = False
            except ThetaBlockError:
                raised = True
            if raised != (a * b * c == 0):
                problems.append(f"plus{(a, b, c)}")
        for a, b, c in product(range(MIN2_SPAN_SUM + 1), repeat=3):
            if a + b + c > MIN2_SPAN_SUM:
                continue
            forms = theta_block_min2(a, b, c, self.prec24)
            d2 = min_weight_dims(a, b, c)[2]
            if len(forms) != d2 or span_rank(forms, self.prec24) != d2:
                problems.append(f"min2{(a, b, c)}")
        if problems:
            return SuiteResult("minimal_weight", False, ", ".join(problems[:10]))
        return SuiteResult("minimal_weight", True, "lowest coefficients, theta blocks and weight k_min+2 spans")

    def _grid(self, name: str, even: bool) -> SuiteResult:
        reports = verify_grid(
            self.options[CONF_GRID_SUM],
            self.options[CONF_WEIGHT_WINDOW],
            self.prec24,
            even=even,
            reverify_orders=self.options[CONF_REVERIFY_ORDERS],
        )
        short = [str(report) for report in reports if not report.equal]
        unstable = [str(report) for report in reports if not report.stable]
        passed = not short and not unstable
        detail = f"{len(reports)} points at q^{self.prec24 // Q_DENOMINATOR}"
        if short:
            detail += "; rank < dim at " + "; ".join(short[:5])
        if unstable:
            detail += "; unstable at " + "; ".join(unstable[:5])
        return SuiteResult(name, passed, detail)

    def suite_structure_grid(self) -> SuiteResult:
        return self._grid("structure_grid", even=self.options[CONF_EVEN])

    def suite_even_subring(self) -> SuiteResult:
        return self._grid("even_subring", even=True)

    def suite_lemma_dimensions(self) -> SuiteResult:
        wrong = []
        count = 0
        for a in LEMMA_OFFSETS:
            k_min = -(2 * a + 2)
            for odd in range(k_min, k_min + self.options[CONF_WEIGHT_WINDOW] + 1):
                if odd % 2 == 0:
                    continue
                count += 1
                if dim_weak(odd, (1, 2 * a, 1)) != dim_weak(odd + 1, (1, 2 * a - 1, 1)):
                    wrong.append(f"a={a} k={odd}")
        if wrong:
            return SuiteResult("lemma_dimensions", False, ", ".join(wrong))
        return SuiteResult("lemma_dimensions", True, f"{count} weight pairs")

    # -- supplements

    def suite_catalog(self) -> SuiteResult:
        summary = catalog_summary(FULL_CATALOG)
        detail = (
            f"{summary['total']} generators: {summary['modular']} modular, "
            f"{summary['rank_one']} rank-one embeddings, {summary['rank_two']} rank-two"
        )
        return SuiteResult("catalog", True, detail)

    def suite_theta_product(self) -> SuiteResult:
        prec = self.identity_prec24
        passed = ser.equals_to_precision(theta(prec), theta_product(prec), prec)
        return SuiteResult("theta_product", passed, f"sum and triple product agree through q^{prec // Q_DENOMINATOR}")

    def suite_rank_one_hilbert(self) -> SuiteResult:
        wrong = [a for a in range(HILBERT_GRID + 1) if rank_one_hilbert_coefficient(a) != rank_one_numerator(a)]
        if wrong:
            return SuiteResult("rank_one_hilbert", False, f"mismatch at a={wrong}")
        return SuiteResult("rank_one_hilbert", True, f"a=0..{HILBERT_GRID}")

    def suite_parity(self) -> SuiteResult:
        failed = []
        for name, builder in (
            ("phi_-1_1/2", phi_m1_half),
            ("phi_-2_1", phi_m2_1),
            ("phi_0_1", phi_0_1),
            ("phi_0_3/2", phi_0_3half),
        ):
            f = builder(self.prec24)
            sign = -1 if f.weight % 2 else 1
            if ser.reflect(f) != ser.scale(f, sign):
                failed.append(name)
        if failed:
            return SuiteResult("parity", False, "reflect(f) != (-1)^k f for " + ", ".join(failed))
        return SuiteResult("parity", True, "4 rank-one generators")

    def suite_generator_relations(self) -> SuiteResult:
        prec = self.prec24
        notes = []
        split = relation_split_diagonal(prec)
        split_ok = split.success and all(split.coefficients)
        notes.append(f"split diagonal {'ok' if split_ok else 'failed'}")
        twisted = relation_twisted_theta(prec)
        notes.append(f"twisted theta {'ok' if twisted.success else 'failed'}")
        factor_ok = relation_pullback_factor(prec)
        notes.append(f"pullback factor {'ok' if factor_ok else 'failed'}")
        image = relation_odd_image(prec)
        image_ok = bool(image)
        notes.append(f"odd image {'x ' + str(image) if image_ok else 'failed'}")
        passed = split_ok and twisted.success and factor_ok and image_ok
        return SuiteResult("generator_relations", passed, ", ".join(notes))
