#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command line front door. Every subcommand reads a field specification, runs
one part of the analysis and prints a human readable summary, or the JSON
report when --json is given (--output FILE also writes the report to a file).

    resopy analyze field.json
    resopy normal-form field.json --degree 4 --json
    resopy flow field.json --z0 1,1 --t 1

Exit codes: 0 success, 1 input error, 2 spectrum outside the Poincaré domain
(the report is still emitted), 3 numeric hazard (small divisor, near
resonance or ambiguous rank).

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from .data.errors import (InvalidFieldSpecError, NotInPoincareDomainError, SmallDivisorError,
                          NumericHazardWarning)
from .data.read_write import FieldSpec, dumps_report, write_report, parse_complex
from .feedback import setup_standard_logger, vprint
from .flow.resonance import (Spectrum, poincare_check, enumerate_resonances, resonance_table,
                             poincare_dulac_support, split_resonant)
from .flow.versal import versal_space, direct_sum_check
from .flow.normal_form import poincare_dulac_normalize
from .flow.flow_geometry import closed_form_flow, numeric_flow, transversality_scan
from .flow.cohomology import (neg_laurent_matrix_sigma, neg_laurent_matrix_theta, h0_sigma_structure,
                              gperp_injectivity)
import argparse
import warnings
import logging
import sys

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_POINCARE = 2
EXIT_HAZARD = 3

DEFAULTS = {"degree": 4,
            "depth": 2,
            "radius": 1.,
            "samples": 1000,
            "seed": 0,
            "t": 1,
            "steps": 1000}


class RunContext:
    """
    Everything a subcommand needs: the parsed specification, the field ξ, its
    spectrum and Poincaré certificate, and the resolved options (command line
    flags override the specification's options, which override DEFAULTS).
    """

    def __init__(self, args: argparse.Namespace, spec: FieldSpec):
        self.args = args
        self.spec = spec
        self.xi = spec.build(exact=True if args.exact else None, tol=args.tol)
        self.spectrum = Spectrum.from_diagonal(self.xi)
        self.cert = poincare_check(self.spectrum)
        self.lines = []

    def option(self, name: str):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        return self.spec.options.get(name, DEFAULTS.get(name))

    def say(self, line: str):
        self.lines.append(line)

    def require_domain(self):
        if not self.cert.in_domain:
            raise NotInPoincareDomainError(f"λ = {self.spectrum!r} is not in the Poincaré domain "
                                           f"(distance from 0 to the hull is {self.cert.delta:g})")


def _certificate_lines(ctx: RunContext):
    c = ctx.cert
    if c.in_domain:
        ctx.say(f"Poincaré domain: yes (δ = {c.delta:.12g}, C = {c.bound_C})")
    else:
        ctx.say("Poincaré domain: no (0 lies in the convex hull of the eigenvalues)")


def run_analyze(ctx: RunContext) -> dict:
    ctx.require_domain()
    resonances = enumerate_resonances(ctx.spectrum, cert=ctx.cert)
    out = {"resonances": [r.to_dict() for r in resonances],
           "dim_g": len(resonances)}
    _, nonresonant = split_resonant(ctx.xi, ctx.spectrum)
    if nonresonant.is_zero():
        versal = versal_space(ctx.xi, ctx.spectrum, cert=ctx.cert)
        out["versal"] = versal.to_dict()
        ctx.say(f"dim g_λ = {versal.dim_g}, rank V = {versal.rank_V}, dim S = {versal.dim_S}")
    else:
        out["versal"] = None
        ctx.say(f"dim g_λ = {len(resonances)}; ξ has non-resonant terms, run normal-form for the versal space")
    return out


def run_resonances(ctx: RunContext) -> dict:
    ctx.require_domain()
    table = resonance_table(ctx.spectrum, cert=ctx.cert)
    support = poincare_dulac_support(ctx.spectrum, cert=ctx.cert)
    for row in table.itertuples(index=False):
        ctx.say(f"λ{row.s} = (m, λ) for m = {row.m}{' (trivial)' if row.trivial else ''}")
    return {"resonances": table.to_dict(orient="records"),
            "dim_g": int(table.shape[0]),
            "support": support.to_dict()}


def run_versal(ctx: RunContext) -> dict:
    ctx.require_domain()
    versal = versal_space(ctx.xi, ctx.spectrum, method=ctx.args.method, cert=ctx.cert)
    degree = ctx.option("degree")
    direct_sum = direct_sum_check(ctx.xi, degree, ctx.spectrum, cert=ctx.cert)
    ctx.say(f"dim g_λ = {versal.dim_g}, rank V = {versal.rank_V}, dim S = {versal.dim_S}")
    for S in versal.complement_basis:
        ctx.say(f"  S: {S.describe()}")
    ctx.say(f"span(ξ) ∩ L_ξ(degree <= {degree}) = 0: {bool(direct_sum)}")
    return {"versal": versal.to_dict(), "direct_sum": direct_sum.to_dict()}


def run_normal_form(ctx: RunContext) -> dict:
    ctx.require_domain()
    degree = ctx.option("degree")
    result = poincare_dulac_normalize(ctx.xi, degree, ctx.spectrum, cert=ctx.cert)
    ctx.say(f"normal form to degree {degree}: {result.normal_form.describe()}")
    ctx.say(f"{result.degree_log.shape[0]} non-resonant terms removed")
    out = result.to_dict()
    out["degree_log"] = result.degree_log.to_dict(orient="records")
    return {"normal_form": out}


def run_flow(ctx: RunContext) -> dict:
    z0 = ctx.option("z0")
    if z0 is None:
        z0 = [1] * ctx.xi.n
    z0 = [parse_complex(z) for z in z0]
    t = parse_complex(ctx.option("t"))
    steps = ctx.option("steps")
    solution = closed_form_flow(ctx.xi, z0, spectrum=ctx.spectrum, cert=ctx.cert)
    value = solution.evaluate(t)
    reference = numeric_flow(ctx.xi, z0, t, steps=steps)
    ctx.say(f"z({t}) = {value.tolist()}")
    ctx.say(f"polynomial degrees: {solution.degrees}")
    return {"flow": {"t": t,
                     "solution": solution.to_dict(),
                     "degrees": solution.degrees,
                     "value": value,
                     "rk4": {"steps": steps, "value": reference,
                             "max_abs_difference": float(abs(value - reference).max())}}}


def run_scan(ctx: RunContext) -> dict:
    report = transversality_scan(ctx.xi, radius=ctx.option("radius"), samples=ctx.option("samples"),
                                 seed=ctx.option("seed"))
    ctx.say(f"sphere r = {report.radius:g}: min |<ξ(z), z>| = {report.min_pairing:.12g}; {report.message}")
    return {"scan": report.to_dict()}


def run_probe(ctx: RunContext) -> dict:
    ctx.require_domain()
    depth, degree = ctx.option("depth"), ctx.option("degree")
    sigma = neg_laurent_matrix_sigma(ctx.xi, depth, ctx.spectrum, cert=ctx.cert)
    theta = neg_laurent_matrix_theta(ctx.xi, depth, ctx.spectrum, cert=ctx.cert)
    h0 = h0_sigma_structure(ctx.xi, degree, ctx.spectrum, cert=ctx.cert)
    gperp = gperp_injectivity(ctx.xi, degree, ctx.spectrum, cert=ctx.cert)
    for probe in (sigma, theta, gperp):
        ctx.say(f"{probe.name}: {probe.verdict} (shape {probe.operator.shape})")
    ctx.say(f"H0: kernel dimension {h0.kernel_dim}, constant unreachable: {h0.constant_unreachable}")
    return {"probe": {"sigma": sigma.to_dict(),
                      "theta": theta.to_dict(),
                      "h0": h0.to_dict(),
                      "gperp": gperp.to_dict()}}


COMMANDS = {"analyze": run_analyze,
            "resonances": run_resonances,
            "versal": run_versal,
            "normal-form": run_normal_form,
            "flow": run_flow,
            "scan": run_scan,
            "probe": run_probe}


def _complex(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"cannot read {text!r} as a complex number") from err


def _complex_list(text: str) -> list:
    return [_complex(part) for part in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="field specification (JSON)")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    common.add_argument("--output", help="also write the JSON report to this file")
    common.add_argument("--exact", action="store_true", help="force exact rational arithmetic")
    common.add_argument("--tol", type=float, default=None, help="purge tolerance in floating point mode")
    common.add_argument("--verbose", action="store_true", help="log progress at INFO level")
    common.add_argument("--log", help="write the log to this file")
    parser = argparse.ArgumentParser(prog="resopy",
                                     description="Resonances, normal forms and versal deformations of "
                                                 "holomorphic vector fields in the Poincaré domain")
    parser.add_argument("--version", action="version", version=f"resopy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="certificate, resonances and versal space")
    sub.add_parser("resonances", parents=[common], help="resonance table and normal form support")
    versal = sub.add_parser("versal", parents=[common], help="versal deformation space")
    versal.add_argument("--method", choices=["coordinate", "orthogonal"], default="coordinate")
    versal.add_argument("--degree", type=int, help="degree of the direct sum check")
    normal_form = sub.add_parser("normal-form", parents=[common], help="Poincaré–Dulac normal form")
    normal_form.add_argument("--degree", type=int, help="truncation degree N")
    flow = sub.add_parser("flow", parents=[common], help="closed form flow")
    flow.add_argument("--z0", type=_complex_list, help="initial point, comma separated")
    flow.add_argument("--t", type=_complex, help="complex time")
    flow.add_argument("--steps", type=int, help="Runge-Kutta steps of the reference solution")
    scan = sub.add_parser("scan", parents=[common], help="sphere transversality scan")
    scan.add_argument("--radius", type=float)
    scan.add_argument("--samples", type=int)
    scan.add_argument("--seed", type=int)
    probe = sub.add_parser("probe", parents=[common], help="cohomology probes")
    probe.add_argument("--depth", type=int, help="depth D of the negative Laurent box")
    probe.add_argument("--degree", type=int, help="degree of the H0 and g_λ^⊥ probes")
    return parser


def _emit(ctx: RunContext or None, report: dict, args: argparse.Namespace):
    if args.output:
        write_report(report, args.output)
    if args.json:
        sys.stdout.write(dumps_report(report))
    elif ctx is not None:
        out = vprint(True)
        for line in ctx.lines:
            out(line)


def main(argv: list or None = None) -> int:
    """
    Run the command line interface.

    Parameters
    ----------
    argv: list, optional
        Arguments (defaults to sys.argv[1:])

    Returns
    -------
    int
        Exit code
    """
    args = build_parser().parse_args(argv)
    setup_standard_logger("resopy", logging.INFO if args.verbose else logging.WARNING, log=args.log)
    try:
        spec = FieldSpec.load(args.path)
        ctx = RunContext(args, spec)
    except InvalidFieldSpecError as err:
        where = f" (key: {err.key})" if err.key else ""
        sys.stderr.write(f"resopy: invalid field specification{where}: {err}\n")
        return EXIT_INPUT
    except (ValueError, AssertionError) as err:
        sys.stderr.write(f"resopy: cannot build the field: {err}\n")
        return EXIT_INPUT
    report = {"tool": "resopy",
              "version": __version__,
              "command": args.command,
              "mode": "exact" if ctx.xi.exact else "float",
              "input": spec.to_dict(),
              "certificate": ctx.cert.to_dict()}
    _certificate_lines(ctx)
    code = EXIT_OK
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NumericHazardWarning)
        try:
            report.update(COMMANDS[args.command](ctx))
        except NotInPoincareDomainError as err:
            report["error"] = {"type": "NotInPoincareDomainError", "message": str(err)}
            ctx.say(str(err))
            code = EXIT_NOT_POINCARE
        except SmallDivisorError as err:
            j, m = err.key
            report["error"] = {"type": "SmallDivisorError", "j": j + 1, "m": list(m), "message": str(err)}
            ctx.say(f"small divisor at z^{m}∂{j + 1}: {err}")
            code = EXIT_HAZARD
        except (ValueError, AssertionError) as err:
            sys.stderr.write(f"resopy {args.command}: {err}\n")
            return EXIT_INPUT
    hazards = [w for w in caught if issubclass(w.category, NumericHazardWarning)]
    if hazards:
        report["warnings"] = [{"category": w.category.__name__, "message": str(w.message)} for w in hazards]
        for w in hazards:
            ctx.say(f"warning: {w.message}")
        code = code or EXIT_HAZARD
    _emit(ctx, report, args)
    return code
