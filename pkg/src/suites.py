"""Verification suites, one per checked property of the engine, registered by name."""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import TYPE_CHECKING, Callable, Optional

import numpy as np
from sympy.polys.domains import QQ

from . import samples
from .bch import (ChiVariant, chi, chi_closed_multiplicative, chi_components, chi_inverse,
                  decompose_group_element, magnus_omega, picard_solution, uniformize,
                  uniformize_inverse)
from .core import TruncationContext, bch, bernoulli, exp, inverse, log
from .errors import BCHFactorError, ParseError
from .hopf import (birkhoff_decompose, birkhoff_exponent, birkhoff_spitzer, brute_force_even_odd,
                   character, check_hopf_axioms, check_parity_closure, chi_closed_involutive,
                   convolution_inverse, counterterm, delta, even_odd_decompose, grading_involution,
                   is_character, is_pole_free, laurent_target, minimal_subtraction, odd_part_closed,
                   odd_projector, phi_plus_direct, preparation_map, rbar_map, renormalized)
from .laurent import LaurentSeries
from .matrixpoly import MatrixPolyFunction
from .operated import formal_p, generators, lie_bracket, render_brackets
from .polar import instantiate_series, matrix_polar_series, polar_generators, polar_series, render_table
from .report import CheckResult, ReportEntry, check, check_equal
from .rota_baxter import (OperatorDescriptor, antisymmetric_projector, check_direct_sum,
                          check_double_product, check_image_closure, check_lie_form, check_modified,
                          check_rb_identity, coefficientwise_lift, entrywise_lift, evaluation_morphism,
                          formal_p_operator, pole_projection, regular_projection,
                          riemann_integral_operator, rb_residual, scaled)
from .spitzer import (SpitzerProblem, atkinson_check, bogoliubov_pair, geometric_series_verify,
                      solve_inverse_left, solve_left, solve_right, spitzer_classical, spitzer_theta_verify,
                      star_exponential, weight_zero_lemma)
from .trees import LEAF, all_trees, ladder

if TYPE_CHECKING:
    # Avoid circular import.
    from .cli import RunConfig

logger = logging.getLogger(__name__)


SuiteCallback = Callable[['SuiteRun'], None]


REGISTERED_SUITES: dict[str, tuple[str, SuiteCallback]] = {}


class SuiteRun:
    """
    The context of a single suite invocation.
    """

    config: RunConfig
    entry: ReportEntry

    def __init__(self, config: RunConfig, name: str, anchor: str):
        self.config = config
        self.entry = ReportEntry(name, anchor)

    def rng(self, *stream: int) -> np.random.Generator:
        "A generator for one independent stream of the run's seed."
        return np.random.default_rng([self.config.seed, *stream])

    def add(self, *results) -> None:
        "Record CheckResults, or lists of them."
        for result in results:
            if isinstance(result, CheckResult):
                self.entry.checks.append(result)
            else:
                self.entry.checks.extend(result)

    def info(self, key: str, value) -> None:
        self.entry.info[key] = value


def suite(name: str, anchor: str):
    def decorator(fn: SuiteCallback) -> SuiteCallback:
        REGISTERED_SUITES[name] = (anchor, fn)
        return fn
    return decorator


def run_suite(name: str, config: RunConfig) -> ReportEntry:
    """Run one registered suite; domain errors end up in the entry instead of propagating."""
    anchor, fn = REGISTERED_SUITES[name]
    run = SuiteRun(config, name, anchor)
    logger.info("running suite %s", name)
    try:
        fn(run)
    except BCHFactorError as exc:
        logger.info("suite %s raised %s", name, exc)
        run.entry.error = f"{type(exc).__name__}: {exc}"
    return run.entry


# Shared instances.


def _complement_rest(x, op: OperatorDescriptor):
    return x - op(x)


InstanceMaker = Callable[[np.random.Generator, int], object]

# Triangular matrices over Laurent series never grow past this size.
TRIANGULAR_SIZE = 4

# Random pairs per algebra in the operator identity checks.
SAMPLE_PAIRS = 64

# Algebras the defining identity is checked on: label -> (sampler(rng, order), operator).
CHI_FAMILIES: dict[str, tuple[InstanceMaker, Callable[[], OperatorDescriptor]]] = {
    "triangular/laurent": (lambda rng, order: samples.random_triangular(rng, min(order + 1, TRIANGULAR_SIZE)),
                           lambda: entrywise_lift(pole_projection())),
    "matrix-poly": (lambda rng, order: samples.random_matrix_poly(rng, 2, order, density=0.7),
                    riemann_integral_operator),
    "bivariate": (lambda rng, order: samples.random_bivariate(rng, 2, order, density=0.3),
                  antisymmetric_projector),
    "series/matrix-poly": (lambda rng, order: samples.random_matrix_series_in_t(rng, order),
                           evaluation_morphism),
    "operated": (lambda rng, order: samples.random_operated(rng, order, max_terms=2),
                 lambda: formal_p_operator(1)),
}


@lru_cache(maxsize=None)
def chi_instances(order: int, seed: int, count: int, algebra: Optional[str] = None) -> tuple:
    """
    (algebra, a, P) triples for the defining identity: triangular matrices
    over Laurent series with minimal subtraction, matrix polynomials with
    the integral, bivariate matrix series with the antisymmetric projector,
    series over M_2(ℚ[x]) with x ↦ 0, and the free operated algebra.

    ``algebra`` keeps a single family; each family draws from its own
    stream, so the selection does not change the instances.
    """
    if algebra is not None and algebra not in CHI_FAMILIES:
        raise ParseError(f"Unknown algebra {algebra!r}, expected one of {', '.join(CHI_FAMILIES)}")
    result = []
    for family, (label, (make, operator)) in enumerate(CHI_FAMILIES.items()):
        if algebra is not None and label != algebra:
            continue
        rng = np.random.default_rng([seed, 3, family])
        op = operator()
        for _ in range(count):
            result.append((label, make(rng, order), op))
    return tuple(result)


@lru_cache(maxsize=None)
def _chi_of(order: int, seed: int, count: int, algebra: Optional[str] = None) -> tuple:
    return tuple(chi(a, op) for _, a, op in chi_instances(order, seed, count, algebra))


def _chi_instances_with_chi(cfg: RunConfig) -> list:
    "(label, a, P, χ(a)) for the run, χ computed once per instance and shared across suites."
    key = (cfg.order, cfg.seed, cfg.instances, cfg.algebra)
    return [(label, a, op, x) for (label, a, op), x in zip(chi_instances(*key), _chi_of(*key))]


@lru_cache(maxsize=None)
def atkinson_instances(order: int, seed: int, count: int) -> tuple:
    """Spitzer problems over triangular (order+1)×(order+1) matrices with minimal subtraction."""
    rng = np.random.default_rng([seed, 6])
    op = entrywise_lift(pole_projection())
    return tuple(SpitzerProblem(samples.random_triangular(rng, order + 1), op) for _ in range(count))


def _families(instances) -> dict:
    counts: dict = {}
    for label, *_ in instances:
        counts[label] = counts.get(label, 0) + 1
    return counts


# The suites.


@suite("bch-terms", "BCH series of two letters through degree four")
def _bch_terms(run: SuiteRun):
    x, y = generators("x y", TruncationContext(4))
    series = bch(x, y)
    xy = lie_bracket(x, y)
    expected = (xy.scale(QQ(1, 2)) + lie_bracket(x, xy).scale(QQ(1, 12))
                - lie_bracket(y, xy).scale(QQ(1, 12)) - lie_bracket(x, lie_bracket(y, xy)).scale(QQ(1, 24)))
    run.add(check("bch-degree-4", series - expected, x, y))
    run.info("terms", [f"{k}: {render_brackets(series.degree_part(k))}" for k in range(2, 5)])


@suite("chi-expansion", "second and third order terms of the BCH-recursion")
def _chi_expansion(run: SuiteRun):
    (a,) = generators("a", TruncationContext(3))
    op = formal_p_operator(1)
    parts = chi_components(a, op)
    pa = formal_p(a)
    c = lie_bracket(pa, a)
    second = c.scale(QQ(-1, 2))
    third = (lie_bracket(formal_p(c), a).scale(QQ(1, 4))
             + (lie_bracket(pa, c) - lie_bracket(c, a)).scale(QQ(1, 12)))
    run.add(check("chi-degree-2", parts.get(2, a.zero()) - second, a),
            check("chi-degree-3", parts.get(3, a.zero()) - third, a),
            check("chi-degree-1", parts.get(1, a.zero()) - a, a))
    run.info("components", {str(k): render_brackets(v) for k, v in sorted(parts.items())})


@suite("defining-identity", "C(P(χ(a)), P̃(χ(a))) = a")
def _defining_identity(run: SuiteRun):
    instances = _chi_instances_with_chi(run.config)
    for label, a, op, x in instances:
        run.add(check(f"defining-identity[{label}]", chi_inverse(x, op) - a, a))
    run.info("instances", _families(instances))


@suite("variant-agreement", "two-sided, one-sided and weight-theta recursions agree")
def _variant_agreement(run: SuiteRun):
    for label, a, op, x in _chi_instances_with_chi(run.config):
        run.add(check(f"one-sided[{label}]", chi(a, op, ChiVariant.ONE_SIDED) - x, a))
        run.add(check(f"weight-theta[{label}]", chi(a, op, ChiVariant.WEIGHT_THETA, theta=1) - x, a))


@suite("factorization", "exp(a) = exp(P(χ(a))) exp(P̃(χ(a))), unique for idempotent P")
def _factorization(run: SuiteRun):
    decomposed: set = set()
    for label, a, op, x in _chi_instances_with_chi(run.config):
        g_minus, g_plus = op(x), _complement_rest(x, op)
        run.add(check(f"factorization[{label}]", exp(a) - exp(g_minus) * exp(g_plus), a))
        # One full group decomposition per family; it recomputes χ(log exp(a)).
        if op.claims_idempotent and label not in decomposed:
            decomposed.add(label)
            eta = exp(a)
            eta_minus, eta_plus = decompose_group_element(eta, op)
            log_minus, log_plus = log(eta_minus), log(eta_plus)
            run.add(check(f"group-decomposition[{label}]", eta_minus * eta_plus - eta, a),
                    check(f"group-decomposition-left-in-image[{label}]", op(log_minus) - log_minus, a),
                    check(f"group-decomposition-right-in-kernel[{label}]", op(log_plus), a))


@suite("atkinson", "x(1 + θb)x' = 1 for the two Spitzer equations")
def _atkinson(run: SuiteRun):
    cfg = run.config
    order = cfg.order + 1
    for prob in atkinson_instances(order, cfg.seed, cfg.instances):
        run.add(atkinson_check(prob))
    rng = run.rng(6, 1)
    integral = riemann_integral_operator()
    for _ in range(cfg.seeds):
        b = samples.random_matrix_poly(rng, 2, order, density=0.7)
        run.add(atkinson_check(SpitzerProblem(b, integral)))


@suite("spitzer-classical", "exp(-P(log(1 + θb)/θ)) = sum (-1)^n P(P(...P(b)b...)b), commutative")
def _spitzer_classical(run: SuiteRun):
    cfg = run.config
    order = max(cfg.order, 8)
    rng = run.rng(7)
    pole = coefficientwise_lift(pole_projection())
    for _ in range(cfg.seeds):
        b = samples.random_laurent_series_in_t(rng, order)
        for theta in (1, 2, -1):
            run.add(spitzer_classical(b, scaled(pole, theta)))
    run.info("degree", order)


@suite("spitzer-noncommutative", "exp(-P(χ_θ(log(1 + θb)/θ))) = sum (-1)^n P(P(...P(b)b...)b)")
def _spitzer_noncommutative(run: SuiteRun):
    cfg = run.config
    order = max(cfg.order + 1, 6)
    for prob in atkinson_instances(order, cfg.seed, cfg.instances):
        run.add(spitzer_theta_verify(prob.b, prob.op))


@suite("bogoliubov", "u = x⁻¹, u' = x'⁻¹ and the star exponential form of x")
def _bogoliubov(run: SuiteRun):
    cfg = run.config
    order = cfg.order + 1
    for prob in atkinson_instances(order, cfg.seed, cfg.instances):
        op, one = prob.op, prob.b.unit()
        x, x_right = solve_left(prob), solve_right(prob)
        u, u_right = bogoliubov_pair(prob)
        run.add(check("bogoliubov-left", u * x - one, prob.b),
                check("bogoliubov-right", x_right * u_right - one, prob.b),
                check("bogoliubov-fixed-point", solve_inverse_left(prob) - inverse(x), prob.b))
        star = star_exponential(-chi(prob.exponent, op), op)
        run.add(check("star-exponential", x - (one + op(star - one)), prob.b))


@suite("multiplicative-closed-form", "χ(u) = u + BCH(-P(u), u) for an idempotent algebra morphism P")
def _multiplicative(run: SuiteRun):
    cfg = run.config
    rng = run.rng(10)
    op = evaluation_morphism()
    for _ in range(cfg.instances):
        u = samples.random_matrix_series_in_t(rng, cfg.order)
        x = chi(u, op)
        run.add(check("closed-form", chi_closed_multiplicative(u, op) - x, u),
                check("P-chi-is-P", op(x) - op(u), u),
                check("simple-factorization",
                      exp(u) - exp(op(u)) * exp(op.complement(u) + bch(-op(u), u)), u))
        run.add(geometric_series_verify(u, op))


@suite("magnus", "Ω = P(χ₀(a)) and exp(Ω) solves F = 1 + P(aF)")
def _magnus(run: SuiteRun):
    cfg = run.config
    (a,) = generators("a", TruncationContext(3))
    op = formal_p_operator(0)
    pa = formal_p(a)
    c = lie_bracket(pa, a)
    expected = (a - c.scale(QQ(1, 2)) + lie_bracket(formal_p(c), a).scale(QQ(1, 4))
                + lie_bracket(pa, c).scale(QQ(1, 12)))
    chi0 = chi(a, op, ChiVariant.WEIGHT_ZERO)
    run.add(check("weight-zero-chi", chi0 - expected, a),
            check("magnus-omega", magnus_omega(a, op) - formal_p(expected), a))
    run.info("omega", render_brackets(magnus_omega(a, op)))
    rng = run.rng(11)
    integral = riemann_integral_operator()
    for _ in range(cfg.seeds):
        f = samples.random_matrix_poly(rng, 2, 4, low=0, high=1)
        omega = magnus_omega(f, integral)
        run.add(check("magnus-picard", exp(omega) - picard_solution(f, integral), f))
        run.add(weight_zero_lemma(f, integral))


def bernoulli_oracle(n: int) -> list:
    """Coefficients of y/(e^y - 1) by inverting the series (e^y - 1)/y."""
    d = [QQ(1)]
    for k in range(1, n + 1):
        d.append(d[-1] / (k + 1))
    c = [QQ(1)]
    for m in range(1, n + 1):
        c.append(-sum((c[k] * d[m - k] for k in range(m)), QQ(0)))
    return c


@suite("bernoulli", "coefficients b_n = B_n/n! of y/(e^y - 1)")
def _bernoulli(run: SuiteRun):
    printed = [QQ(-1, 2), QQ(1, 12), QQ(0), QQ(-1, 720)]
    for n, value in enumerate(printed, start=1):
        run.add(check_equal(f"b{n}", bernoulli(n), value, n))
    oracle = bernoulli_oracle(10)
    for n in range(5, 11):
        run.add(check_equal(f"b{n}", bernoulli(n), oracle[n], n))
    run.info("values", [f"b{n} = {bernoulli(n)}" for n in range(1, 11)])


@suite("uniformization", "exp(a₊)exp(a₋) = exp(Ψ₋)exp(Ψ₊) and χ(s g⁻ ⊕ t g⁺) ⊆ s g⁻ ⊕ t g⁺")
def _uniformization(run: SuiteRun):
    cfg = run.config
    rng = run.rng(13)
    op = antisymmetric_projector()
    order = min(cfg.order, 4)
    for _ in range(cfg.seeds):
        a_plus, a_minus = samples.random_split_bivariate(rng, 3, order)
        psi_minus, psi_plus = uniformize(a_plus, a_minus, op)
        run.add(check("uniformization", exp(a_plus) * exp(a_minus) - exp(psi_minus) * exp(psi_plus), a_plus, a_minus),
                check("uniformization-minus-in-image", op(psi_minus) - psi_minus, a_plus, a_minus),
                check("uniformization-plus-in-kernel", op(psi_plus), a_plus, a_minus))
        back_plus, back_minus = uniformize_inverse(psi_minus, psi_plus, op)
        run.add(check("uniformization-inverse-plus", back_plus - a_plus, a_plus, a_minus),
                check("uniformization-inverse-minus", back_minus - a_minus, a_plus, a_minus))
        x = chi(a_plus + a_minus, op)
        run.add(check("inclusion-minus", op(x).s_free_part(), a_plus, a_minus),
                check("inclusion-plus", op.complement(x).t_free_part(), a_plus, a_minus))


@suite("even-odd", "φ = φ₋ ⋆ φ₊ with φ₋ odd and φ₊ even, unique")
def _even_odd(run: SuiteRun):
    cfg = run.config
    degree = cfg.degree
    run.add(check_hopf_axioms(degree), check_parity_closure(degree))
    rng = run.rng(14)
    pi_minus = odd_projector()
    for _ in range(cfg.seeds):
        phi = samples.random_character(rng, degree)
        phi_minus, phi_plus = even_odd_decompose(phi)
        z = log(phi)
        x = chi(z, pi_minus)
        brute_minus, brute_plus = brute_force_even_odd(phi)
        run.add(check("product", phi_minus * phi_plus - phi, phi),
                check("odd-factor", grading_involution(phi_minus) - convolution_inverse(phi_minus), phi),
                check("even-factor", grading_involution(phi_plus) - phi_plus, phi),
                check("closed-odd-part", odd_part_closed(z) - pi_minus(x), phi),
                check("closed-chi", chi_closed_involutive(z) - x, phi),
                check("unique-minus", brute_minus - phi_minus, phi),
                check("unique-plus", brute_plus - phi_plus, phi))
    even = character({t: QQ(t.degree) for t in all_trees(degree) if t.degree % 2 == 0}, degree)
    e_minus, e_plus = even_odd_decompose(even)
    run.add(check("even-character", e_minus - even.unit(), even),
            check("even-character-plus", e_plus - even, even))


@suite("connes-kreimer", "φ = φ₋⁻¹ ⋆ φ₊ by minimal subtraction, three ways")
def _connes_kreimer(run: SuiteRun):
    cfg = run.config
    degree = cfg.degree
    rng = run.rng(15)
    op = minimal_subtraction()
    zero = laurent_target(degree)
    for _ in range(cfg.seeds):
        phi = samples.random_character(rng, degree, laurent=True)
        x = birkhoff_exponent(phi)
        phi_minus, phi_plus = birkhoff_decompose(phi, x)
        spitzer_minus, spitzer_plus = birkhoff_spitzer(phi)
        bogoliubov = counterterm(phi)
        rbar = rbar_map(phi, x)
        one = phi.unit()
        run.add(check("birkhoff", convolution_inverse(phi_minus) * phi_plus - phi, phi),
                check("spitzer-route", spitzer_minus - phi_minus, phi),
                check("spitzer-route-plus", spitzer_plus - phi_plus, phi),
                check("bogoliubov-route", bogoliubov - phi_minus, phi),
                check("renormalized", renormalized(phi, bogoliubov) - phi_plus, phi),
                check("counterterm-in-image", op(phi_minus - one) - (phi_minus - one), phi),
                check_equal("plus-pole-free", is_pole_free(phi_plus), True, phi),
                check_equal("minus-character", is_character(phi_minus), True, phi),
                check_equal("plus-character", is_character(phi_plus), True, phi),
                check("rbar-regular", op.complement(rbar) - (one.scale(2) - phi_plus), phi),
                check("rbar-pole", op(rbar) - (phi_minus - one), phi),
                check("rbar-preparation", rbar - (one - preparation_map(phi, bogoliubov)), phi),
                check("phi-plus-direct", phi_plus_direct(phi) - phi_plus, phi))
    primitive = character({LEAF: LaurentSeries({-1: 1, 0: 1}, zero.ctx, zero.pole_cap)}, degree, zero)
    p_minus, p_plus = birkhoff_decompose(primitive)
    run.add(check("primitive-minus", p_minus(LEAF) - LaurentSeries({-1: -1}, zero.ctx, zero.pole_cap), primitive),
            check("primitive-plus", p_plus(LEAF) - zero.unit(), primitive))
    regular = character({LEAF: zero.unit().scale(3), ladder(2): LaurentSeries({1: 1}, zero.ctx, zero.pole_cap)},
                        degree, zero)
    r_minus, r_plus = birkhoff_decompose(regular)
    run.add(check("pole-free-minus", r_minus - regular.unit(), regular),
            check("pole-free-plus", r_plus - regular, regular))


@suite("polar", "exp(tZ) = exp(X₋(t)) exp(X₊(t)) with the printed low order terms")
def _polar(run: SuiteRun):
    cfg = run.config
    order = cfg.order
    series = polar_series(order)
    z_minus, z_plus = polar_generators(order)
    mp = lie_bracket(z_minus, z_plus)
    printed = {
        (1, "-"): z_minus, (1, "+"): z_plus,
        (2, "-"): mp.scale(QQ(-1, 2)), (2, "+"): mp.zero(),
        (3, "-"): lie_bracket(z_plus, mp).scale(QQ(-1, 6)),
        (3, "+"): lie_bracket(z_minus, mp).scale(QQ(-1, 12)),
    }
    for (k, side), expected in printed.items():
        actual = series.minus[k] if side == "-" else series.plus[k]
        run.add(check(f"X{side}({k})", actual - expected, "Z"))
    run.add(check("symbolic-recomposition", series.recompose() - exp(series.z), "Z"))
    run.info("terms", render_table(series))
    rng = run.rng(16)
    for _ in range(cfg.seeds):
        z = samples.random_qmatrix(rng, 3)
        matrix = matrix_polar_series(z, order)
        run.add(check("matrix-recomposition", matrix.recompose() - exp(matrix.z), matrix.z))
        symbolic = instantiate_series(series, z)
        for k in range(1, order + 1):
            run.add(check(f"instantiated-minus({k})", symbolic.minus[k] - matrix.minus[k], matrix.z),
                    check(f"instantiated-plus({k})", symbolic.plus[k] - matrix.plus[k], matrix.z))


@suite("operator-identities", "Rota–Baxter, mixed, Lie, double product and modified identities")
def _operator_identities(run: SuiteRun):
    cfg = run.config
    # Associativity of the double product multiplies three grid elements.
    window = max(cfg.order, 6)
    zero = samples.laurent_zero(window, window)
    grid = samples.laurent_monomials(zero, factors=3)
    pairs = [(x, y) for x in grid for y in grid]
    for op in (pole_projection(), regular_projection()):
        run.add(check_rb_identity(op, pairs), check_lie_form(op, pairs), check_modified(op, pairs),
                check_double_product(op, pairs), check_image_closure(op, pairs), check_direct_sum(op, grid))
    rng = run.rng(17)
    order = cfg.order
    families = [
        ("triangular/laurent", entrywise_lift(pole_projection()),
         lambda: samples.random_triangular(rng, min(order + 1, TRIANGULAR_SIZE))),
        ("matrix-poly/integral", riemann_integral_operator(),
         lambda: samples.random_matrix_poly(rng, 2, order, low=0)),
        ("matrix-poly/evaluation", evaluation_morphism(),
         lambda: samples.random_matrix_poly(rng, 2, order, low=0)),
        ("series/matrix-poly", coefficientwise_lift(evaluation_morphism()),
         lambda: samples.random_adjoined(rng, order, MatrixPolyFunction({}, 2, TruncationContext(2)),
                                         lambda r, n: samples.random_matrix_poly(r, 2, 2, low=0))),
    ]
    counts = {}
    for label, op, make in families:
        sample_pairs = [(make(), make()) for _ in range(SAMPLE_PAIRS)]
        run.add(check_rb_identity(op, sample_pairs), check_lie_form(op, sample_pairs),
                check_modified(op, sample_pairs), check_double_product(op, sample_pairs),
                check_image_closure(op, sample_pairs))
        counts[label] = len(sample_pairs)
    # π₋ on the convolution algebra is not Rota–Baxter: δ_• is a witness.
    witness = delta(LEAF, cfg.degree)
    residual = rb_residual(odd_projector(), witness, witness)
    run.add(CheckResult("odd-projector-not-rota-baxter", f"{witness}, {witness}", str(residual),
                        not residual.is_zero()))
    run.info("grid", [str(x) for x in grid])
    run.info("samples", counts)
