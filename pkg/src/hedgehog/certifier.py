"""Orchestration of the full certificate chain and the random survey.

Stages run in dependency order and short-circuit on the first failure:
condition1 (apolarity shape), condition2 (resolution shape), condition3
(trivial negative tangents at the degree-14 point), tangent (graded Hom
dimensions, decomposition and barycenter traces at the truncated
point), obstruction (kernel and its annihilator), fractal (family
identities, fiber dimensions, relative freeness).
"""

import random
from dataclasses import dataclass, field

from . import fractal as fractal_mod
from .apolarity import ApolarCubic
from .certificate import CERTIFIED, DEGENERATE, Certificate, failed
from .errors import HedgehogError
from .linalg import QQ
from .obstruction import ObstructionCalculus
from .parse import parse_cubic, poly_to_str
from .poly import X, Poly, monomial_coordinates
from .resolution import betti_slice, build_adjusted_presentation
from .tangent import (barycenter_trace, derivative_tangent, hom_degree_piece,
                      perp_presentation, quotient_for_ideal, quotient_for_perp,
                      span_dim, xq_tangent)

DEFAULT_T_SAMPLES = (0, 1, 2, -1, 5)
FIBER_T_SAMPLES = (0, 1, 2)


def certify(F, t_samples=DEFAULT_T_SAMPLES) -> Certificate:
    """Run the whole chain on a cubic (Poly or source text).

    The zero form gets the DEGENERATE_INPUT verdict; any other
    non-cubic input is an input error and raises.
    """
    if isinstance(F, str):
        from .parse import parse_poly

        F = parse_poly(F)
        if not F.is_zero():
            F = parse_cubic(poly_to_str(F))
    cert = Certificate(input=poly_to_str(F),
                       t_samples=[str(QQ(t)) for t in t_samples])
    if F.is_zero():
        cert.verdict = DEGENERATE
        return cert
    apolar = ApolarCubic(F)

    # stage: condition (1)
    c1 = apolar.condition1
    cert.condition1 = {"hf": list(c1.hf), "checks": c1.checks(), "pass": c1.passed}
    if not c1.passed:
        cert.verdict = failed("condition1")
        return cert

    # stage: condition (2)
    betti = betti_slice(apolar)
    ok2 = betti.condition2_ok()
    cert.condition2 = {
        "beta0": {str(d): v for d, v in sorted(betti.beta0.items())},
        "beta1": {str(d): v for d, v in sorted(betti.beta1.items())},
        "bound": betti.bound,
        "pass": ok2,
    }
    if not ok2:
        cert.verdict = failed("condition2")
        return cert

    # stage: condition (3), at the degree-14 point
    try:
        ppres = perp_presentation(apolar, betti)
        pquot = quotient_for_perp(apolar)
        neg_dims = {k: hom_degree_piece(ppres, pquot, k).dim for k in (-1, -2, -3)}
        derivs14 = [derivative_tangent(i, ppres, pquot) for i in range(1, 7)]
        tnt = (neg_dims[-1] == 6 and neg_dims[-2] == 0 and neg_dims[-3] == 0
               and span_dim(derivs14) == 6)
    except HedgehogError:
        tnt = False
        neg_dims = {}
    cert.condition3 = {"neg_tangent_dims": {str(k): v for k, v in
                                            sorted(neg_dims.items())},
                       "pass": tnt}
    if not tnt:
        cert.verdict = failed("condition3")
        return cert

    # stage: tangent structure at the truncated point
    hedgehog = {}
    try:
        pres = build_adjusted_presentation(apolar, betti)
        quot = quotient_for_ideal(apolar, pres)
        hom_dims = {k: hom_degree_piece(pres, quot, k).dim
                    for k in (-3, -2, -1, 0, 1, 2)}
        xs = [xq_tangent(q, pres, quot) for q in apolar.Q_list]
        ds = [derivative_tangent(i, pres, quot) for i in range(1, 7)]
        decomposition_ok = (span_dim(xs) == 6 and span_dim(ds) == 6
                            and span_dim(xs + ds) == 12 and hom_dims[-1] == 12)
        trace_ok = True
        for i in range(1, 7):
            for j in range(1, 7):
                expected = QQ(1) if i == j else QQ(0)
                if barycenter_trace(i, j, apolar, pres, quot) != expected:
                    trace_ok = False
        hedgehog["homI_dims"] = {str(k): v for k, v in sorted(hom_dims.items())}
        hedgehog["negative_pass"] = (hom_dims[-2] == 0 and hom_dims[-3] == 0
                                     and hom_dims[1] == 0 and hom_dims[2] == 0)
        hedgehog["decomposition_ok"] = decomposition_ok
        hedgehog["trace_table_pass"] = trace_ok
        tangent_ok = (hedgehog["negative_pass"] and decomposition_ok and trace_ok)
    except HedgehogError:
        tangent_ok = False
    if not tangent_ok:
        hedgehog["pass"] = False
        cert.hedgehog = hedgehog
        cert.verdict = failed("tangent")
        return cert

    # stage: obstruction kernel and annihilator
    try:
        calc = ObstructionCalculus(apolar, pres, quot)
        kernel = calc.omega_kernel()
        calc.kernel_annihilator_check(kernel)
        hedgehog["kerOmega"] = {"dim": kernel.dim, "matches_partials": True,
                                "annihilator_is_perp2": True}
        obstruction_ok = kernel.dim == 6
    except HedgehogError as exc:
        hedgehog["kerOmega"] = {"error": str(exc)}
        obstruction_ok = False
    hedgehog["pass"] = obstruction_ok
    cert.hedgehog = hedgehog
    if not obstruction_ok:
        cert.verdict = failed("obstruction")
        return cert

    # stage: fractal family
    fr = {}
    try:
        fractal_mod.verify_gamma_identity(apolar)
        fr["gamma_identity"] = True
        fr["gamma_gradings"] = fractal_mod.gamma_grading_report(
            fractal_mod.gamma(apolar))
        pp = fractal_mod.product_perp_check(apolar)
        fr["product_perp"] = {str(d): v for d, v in sorted(pp.degree_dims.items())}
        freeness = fractal_mod.relative_freeness_check(apolar, t_samples)
        fr["freeness_samples"] = freeness.fiber_dims
        fibers = fractal_mod.family_fiber_checks(apolar, FIBER_T_SAMPLES)
        fr["fiber_ranks"] = {k: {"dim": v, "rank": fibers.spanning_rank[k]}
                             for k, v in fibers.dims.items()}
        spike = fractal_mod.spike_certificate(apolar, condition3_ok=True,
                                              annihilator_ok=obstruction_ok,
                                              fiber_report=fibers,
                                              freeness_report=freeness)
        fr["spike"] = {"applicable": spike.applicable,
                       "lower_bound_ok": spike.lower_bound_ok,
                       "family_ok": spike.family_ok,
                       "degree": spike.spike_degree,
                       "verdict": spike.verdict}
        fractal_ok = spike.verdict == "VERIFIED"
    except HedgehogError as exc:
        fr["error"] = str(exc)
        fractal_ok = False
    fr["pass"] = fractal_ok
    cert.fractal = fr
    if not fractal_ok:
        cert.verdict = failed("fractal")
        return cert

    cert.verdict = CERTIFIED
    return cert


@dataclass
class SurveyResult:
    index: int
    cubic: str
    verdict: str
    stages: dict


@dataclass
class SurveyReport:
    seed: int
    count: int
    coeff_range: tuple
    results: list = field(default_factory=list)

    def stage_pass_counts(self) -> dict:
        counts = {}
        for stage in ("condition1", "condition2", "condition3",
                      "hedgehog", "fractal"):
            counts[stage] = sum(1 for r in self.results if r.stages.get(stage))
        counts["certified"] = sum(1 for r in self.results
                                  if r.verdict == CERTIFIED)
        return counts

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "coeff_range": list(self.coeff_range),
            "stage_pass_counts": self.stage_pass_counts(),
            "results": [{"index": r.index, "cubic": r.cubic,
                         "verdict": r.verdict, "stages": r.stages}
                        for r in self.results],
        }


def random_cubic(rng: random.Random, lo: int, hi: int) -> Poly:
    """Dense random cubic: each of the 56 coefficients drawn uniformly."""
    out = Poly.zero()
    for m in monomial_coordinates(X, 3):
        c = rng.randint(lo, hi)
        if c:
            out = out + Poly.monomial(m, c)
    return out


def sample_cubics(seed: int, count: int, coeff_range=(-3, 3),
                  include_paper_example=False,
                  t_samples=DEFAULT_T_SAMPLES) -> SurveyReport:
    """Deterministic random-cubic survey with per-stage pass counts."""
    if count < 1:
        raise ValueError("count must be at least 1")
    lo, hi = coeff_range
    rng = random.Random(seed)
    report = SurveyReport(seed=seed, count=count, coeff_range=(lo, hi))
    inputs = []
    if include_paper_example:
        inputs.append(parse_cubic(
            "x1*x2*x4 - x1*x5^2 + x2*x3^2 + x3*x5*x6 + x4*x6^2"))
    while len(inputs) < count + (1 if include_paper_example else 0):
        inputs.append(random_cubic(rng, lo, hi))
    for idx, F in enumerate(inputs):
        cert = certify(F, t_samples)
        stages = {name: bool(getattr(cert, name).get("pass"))
                  for name in ("condition1", "condition2", "condition3",
                               "hedgehog", "fractal")}
        report.results.append(SurveyResult(idx, poly_to_str(F),
                                           cert.verdict, stages))
    return report
