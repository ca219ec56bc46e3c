"""Command-line front end.

Subcommands: certify, sample, betti, tangent, obstruction, fractal,
perp.  A cubic is given as an expression in the shared grammar or as
@path to read it from a file.  Exit codes: 0 for a certified input (or
a successfully computed report), 1 for a failed verification, 2 for
input errors.
"""

import argparse
import json
import sys

from . import fractal as fractal_mod
from .apolarity import ApolarCubic
from .certificate import CERTIFIED
from .certifier import DEFAULT_T_SAMPLES, certify, sample_cubics
from .errors import HedgehogError, NotHomogeneousCubic, ParseError
from .obstruction import ObstructionCalculus
from .parse import parse_cubic, parse_rational, poly_to_str
from .resolution import betti_slice, build_adjusted_presentation
from .tangent import (hom_degree_piece, perp_presentation,
                      quotient_for_ideal, quotient_for_perp)


def _read_cubic(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    return parse_cubic(text)


def _parse_t_samples(text: str):
    return tuple(parse_rational(part) for part in text.split(","))


def _add_cubic_arg(sub):
    sub.add_argument("--cubic", required=True,
                     help="cubic expression, or @file to read one")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hedgehog",
        description="exact-arithmetic certifier for hedgehog points from cubics")
    subs = ap.add_subparsers(dest="command", required=True)

    c = subs.add_parser("certify", help="run the full certificate chain")
    _add_cubic_arg(c)
    c.add_argument("--json", help="write the JSON certificate to this path")
    c.add_argument("--t-samples", default=None,
                   help="comma-separated rational sample points, e.g. 0,1,2,-1,5")

    s = subs.add_parser("sample", help="seeded random-cubic survey")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--coeff-range", default="-3..3",
                   help="integer coefficient interval lo..hi (default -3..3)")
    s.add_argument("--include-paper-example", action="store_true",
                   help="prepend the reference cubic to the survey")
    s.add_argument("--json", help="write the survey report as JSON")
    s.add_argument("--csv", help="write one CSV row per surveyed cubic")
    s.add_argument("--figure", help="render per-stage pass counts to this image")
    s.add_argument("--t-samples", default=None)

    b = subs.add_parser("betti", help="generator and first-syzygy counts")
    _add_cubic_arg(b)

    t = subs.add_parser("tangent", help="graded tangent dimensions")
    _add_cubic_arg(t)

    o = subs.add_parser("obstruction", help="obstruction kernel and annihilator")
    _add_cubic_arg(o)

    f = subs.add_parser("fractal", help="fractal-family identities and fibers")
    _add_cubic_arg(f)
    f.add_argument("--t-samples", default=None)

    p = subs.add_parser("perp", help="basis of a perp ideal graded piece")
    _add_cubic_arg(p)
    p.add_argument("--degree", type=int, required=True)
    return ap


def cmd_certify(args) -> int:
    text = args.cubic
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    samples = _parse_t_samples(args.t_samples) if args.t_samples else DEFAULT_T_SAMPLES
    cert = certify(text, samples)
    for line in cert.summary_lines():
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(cert.to_json())
    return 0 if cert.verdict == CERTIFIED else 1


def cmd_sample(args) -> int:
    lo_text, _, hi_text = args.coeff_range.partition("..")
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise NotHomogeneousCubic(f"bad coefficient range {args.coeff_range!r}")
    samples = _parse_t_samples(args.t_samples) if args.t_samples else DEFAULT_T_SAMPLES
    report = sample_cubics(args.seed, args.count, (lo, hi),
                           include_paper_example=args.include_paper_example,
                           t_samples=samples)
    counts = report.stage_pass_counts()
    print(f"surveyed {len(report.results)} cubics "
          f"(seed {report.seed}, coefficients {lo}..{hi})")
    for stage, n in counts.items():
        print(f"  {stage:12s}{n}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    if args.csv:
        from .report import write_survey_csv

        write_survey_csv(report, args.csv)
    if args.figure:
        from .report import render_survey_figure

        render_survey_figure(report, args.figure)
    return 0


def cmd_betti(args) -> int:
    apolar = ApolarCubic(_read_cubic(args.cubic))
    bs = betti_slice(apolar)
    print("beta0:", {d: v for d, v in sorted(bs.beta0.items())})
    print("beta1:", {d: v for d, v in sorted(bs.beta1.items())})
    print("bound:", bs.bound)
    print("condition2:", "pass" if bs.condition2_ok() else "FAIL")
    return 0


def cmd_tangent(args) -> int:
    apolar = ApolarCubic(_read_cubic(args.cubic))
    betti = betti_slice(apolar)
    pres = build_adjusted_presentation(apolar, betti)
    quot = quotient_for_ideal(apolar, pres)
    dims = {k: hom_degree_piece(pres, quot, k).dim for k in range(-3, 3)}
    print("Hom(I, S/I) dims:", {k: v for k, v in sorted(dims.items())})
    ppres = perp_presentation(apolar, betti)
    pquot = quotient_for_perp(apolar)
    pdims = {k: hom_degree_piece(ppres, pquot, k).dim for k in (-3, -2, -1)}
    print("Hom(perp, S/perp) negative dims:", {k: v for k, v in sorted(pdims.items())})
    return 0


def cmd_obstruction(args) -> int:
    apolar = ApolarCubic(_read_cubic(args.cubic))
    betti = betti_slice(apolar)
    pres = build_adjusted_presentation(apolar, betti)
    quot = quotient_for_ideal(apolar, pres)
    calc = ObstructionCalculus(apolar, pres, quot)
    kernel = calc.omega_kernel()
    calc.kernel_annihilator_check(kernel)
    print("ker Omega dimension:", kernel.dim)
    print("equals span of substituted partials: yes")
    print("annihilator equals degree-2 perp: yes")
    return 0


def cmd_fractal(args) -> int:
    apolar = ApolarCubic(_read_cubic(args.cubic))
    samples = _parse_t_samples(args.t_samples) if args.t_samples else DEFAULT_T_SAMPLES
    fractal_mod.verify_gamma_identity(apolar)
    print("gamma identity: verified")
    pp = fractal_mod.product_perp_check(apolar)
    print("product perp dims by degree:", pp.degree_dims)
    fr = fractal_mod.relative_freeness_check(apolar, samples)
    print("fiber algebra dims:", fr.fiber_dims)
    fib = fractal_mod.family_fiber_checks(apolar)
    print("family fiber dims:", fib.dims)
    return 0


def cmd_perp(args) -> int:
    apolar = ApolarCubic(_read_cubic(args.cubic))
    piece = apolar.perp(args.degree)
    print(f"dim (perp)_{args.degree} = {piece.dim}")
    for p in piece.polys():
        print(" ", poly_to_str(p))
    return 0


_COMMANDS = {
    "certify": cmd_certify,
    "sample": cmd_sample,
    "betti": cmd_betti,
    "tangent": cmd_tangent,
    "obstruction": cmd_obstruction,
    "fractal": cmd_fractal,
    "perp": cmd_perp,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, NotHomogeneousCubic, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except HedgehogError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
