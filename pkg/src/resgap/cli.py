"""Command-line surface.

Subcommands
-----------
sphere   resonances of the ball: one CSV/JSON row per pole
widths   minimal resonance width and the attaining pole
bounds   gap-bound comparison table over a frequency range
verify   numerical certificates for the energy identities (exit 1 on failure)
perturb  boundary-deformation analysis from a JSON config
figure   scatter / curve data (CSV or hand-rolled SVG), byte-deterministic

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
failure, 4 sign violation in a deformation config.

All numbers are serialized with 17 significant digits so that written CSV
round-trips to the exact in-memory doubles; booleans serialize as
``true``/``false``.  Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import bounds as bounds_mod
from . import hadamard, identities, sphere_spectrum
from ._svg import curves_svg, fmt17, scatter_svg
from .bounds import BracketFailure, NonPositiveInput
from .hadamard import InvalidGrid, SignViolation
from .identities import NotAResonance, SingularPoint
from .rootfinder import DegenerateInput, NonConvergence
from .sphere_spectrum import DegreeTooLarge, UnsupportedDimension

SPHERE_HEADER = "ell,re_lambda,im_lambda,multiplicity,residual,highlight"
BOUNDS_HEADER = "kappa,ralston,morawetz,fl_asymptote,fl_nontrivial"
VERIFY_HEADER = "check,ell,re_lambda,im_lambda,lhs,rhs,ratio,passed"

RICHARDSON_LOW, RICHARDSON_HIGH = 12.0, 20.0


class UsageError(ValueError):
    """Invalid flag values detected before dispatch."""


def _bool(v: bool) -> str:
    return "true" if v else "false"


def _write(out: str | None, text: str) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_spectrum_flags(dim: int, lmax: int, radius: float) -> None:
    if dim % 2 == 0 or dim < 3:
        raise UsageError(f"--dim must be odd and >= 3, got {dim}")
    if lmax < 0 or lmax + (dim - 3) // 2 > sphere_spectrum.MAX_DEGREE:
        raise UsageError(f"--lmax out of range for dim {dim} (cap "
                         f"{sphere_spectrum.MAX_DEGREE} on ell + (dim-3)/2)")
    if radius <= 0:
        raise UsageError(f"--radius must be positive, got {radius}")


def _spectrum_rows(dim: int, lmax: int, radius: float, threads: int,
                   highlight_ell: int | None = None):
    """Per-pole rows sorted by (ell, Re lam); optional thread pool per ell."""
    ells = list(range(lmax + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_ell = list(pool.map(
                lambda ell: sphere_spectrum.resonances_for_ell(dim, ell, radius),
                ells))
    else:
        per_ell = [sphere_spectrum.resonances_for_ell(dim, ell, radius)
                   for ell in ells]
    rows = []
    for group in per_ell:
        for res in group:
            rows.append((res, highlight_ell is not None and res.ell == highlight_ell))
    return rows


def _sphere_text(rows, fmt: str) -> str:
    if fmt == "csv":
        lines = [SPHERE_HEADER]
        for res, hl in rows:
            lines.append(",".join([
                str(res.ell), fmt17(res.lam.real), fmt17(res.lam.imag),
                str(res.multiplicity), fmt17(res.residual), _bool(hl),
            ]))
        return "\n".join(lines) + "\n"
    payload = [
        {
            "ell": res.ell,
            "re_lambda": res.lam.real,
            "im_lambda": res.lam.imag,
            "multiplicity": res.multiplicity,
            "residual": res.residual,
            "highlight": hl,
        }
        for res, hl in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def cmd_sphere(args) -> int:
    _check_spectrum_flags(args.dim, args.lmax, args.radius)
    if args.format not in ("csv", "json"):
        raise UsageError(f"--format must be csv or json, got {args.format}")
    rows = _spectrum_rows(args.dim, args.lmax, args.radius, args.threads)
    _write(args.out, _sphere_text(rows, args.format))
    return 0


def cmd_widths(args) -> int:
    _check_spectrum_flags(args.dim, args.lmax, args.radius)
    if args.lmax < 1:
        raise UsageError("--lmax must be at least 1 for widths")
    width, witness = sphere_spectrum.min_width(args.dim, args.lmax, args.radius)
    text = ("width,ell,re_lambda,im_lambda\n"
            + ",".join([fmt17(width), str(witness.ell),
                        fmt17(witness.lam.real), fmt17(witness.lam.imag)])
            + "\n")
    _write(args.out, text)
    return 0


def _bounds_text(curve) -> str:
    lines = [BOUNDS_HEADER]
    for row in curve.samples:
        lines.append(",".join([
            fmt17(row.kappa), fmt17(row.ralston), fmt17(row.morawetz),
            fmt17(row.fl_asymptote), _bool(row.fl_nontrivial),
        ]))
    return "\n".join(lines) + "\n"


def cmd_bounds(args) -> int:
    if args.radius <= 0:
        raise UsageError("--radius must be positive")
    if not (0 < args.kappa_min < args.kappa_max) or args.step <= 0:
        raise UsageError("need 0 < --kappa-min < --kappa-max and --step > 0")
    curve = bounds_mod.bounds_table(args.radius, args.kappa_min,
                                    args.kappa_max, args.step)
    _write(args.out, _bounds_text(curve))
    return 0


# ---------------------------------------------------------------------------
# verify

def _verify_row(check: str, ell, lam, lhs, rhs, ratio, passed) -> str:
    return ",".join([
        check,
        "" if ell is None else str(ell),
        "" if lam is None else fmt17(lam.real),
        "" if lam is None else fmt17(lam.imag),
        fmt17(lhs), fmt17(rhs), fmt17(ratio), _bool(passed),
    ])


def _states_up_to(lmax: int):
    for ell in range(1, lmax + 1):
        for res in sphere_spectrum.resonances_for_ell(3, ell, 1.0):
            yield ell, res.lam


def _verify_identity_rows(which: str, lmax: int, d: float) -> list[str]:
    rows = []
    for ell, lam in _states_up_to(lmax):
        try:
            state = identities.build_resonant_state(ell, lam)
        except NotAResonance:
            rows.append(_verify_row(which, ell, lam, math.nan, math.nan,
                                    math.nan, False))
            continue
        if which == "mor2":
            rep = identities.mor2_check(state, d=d)
        elif which == "delv3":
            rep = identities.delv3_check(state)
        else:
            rep = identities.theorem1_chain_check(state, diam=2.0 * d)
        rows.append(_verify_row(which, ell, lam, rep.lhs, rep.rhs,
                                rep.ratio, rep.passed))
    return rows


def _verify_protter_rows(h: float) -> list[str]:
    rows = []
    fields = [
        ("protter:solution", identities.solution_exponential_field()),
        ("protter:nonsolution", identities.nonsolution_exponential_field()),
    ]
    points = identities.sample_points(20)
    for name, fld in fields:
        for idx, pt in enumerate(points):
            _, _, r1 = identities.protter_residual(fld, pt, h)
            _, _, r2 = identities.protter_residual(fld, pt, h / 2.0)
            ratio = r1 / r2 if r2 > 0 else math.inf
            ok = RICHARDSON_LOW <= ratio <= RICHARDSON_HIGH
            rows.append(_verify_row(name, idx, None, r1, r2, ratio, ok))
        worst = 0.0
        for pt in points:
            lhs, _, _ = identities.protter_residual(fld, pt, h)
            exact = identities.protter_exact_divergence(fld, pt)
            worst = max(worst, abs(lhs - exact) / (1.0 + abs(lhs) + abs(exact)))
        rows.append(_verify_row(name + ":oracle", None, None, worst, 1e-12,
                                worst / 1e-12, worst <= 1e-12))
    return rows


def _verify_hadamard_rows() -> list[str]:
    worst, const, target = hadamard.radial_norm_details()
    rows = [
        _verify_row("hadamard-norm:antiderivative", None, None, worst, 1e-9,
                    worst / 1e-9, worst <= 1e-9),
        _verify_row("hadamard-norm:boundary", None, None, const, target,
                    const / target, abs(const - target) <= 1e-12 * target),
    ]
    return rows


def cmd_verify(args) -> int:
    which = args.which
    if which in ("mor2", "delv3", "chain"):
        if args.lmax < 1 or args.lmax > sphere_spectrum.MAX_DEGREE:
            raise UsageError("--lmax must be in [1, 60]")
        if args.d < 1.0:
            raise UsageError("--d must be at least 1 (unit obstacle inside B(0,d))")
        rows = _verify_identity_rows(which, args.lmax, args.d)
    elif which == "protter":
        if args.h <= 0 or args.h > 0.1:
            raise UsageError("--h must be in (0, 0.1]")
        rows = _verify_protter_rows(args.h)
    elif which == "hadamard-norm":
        rows = _verify_hadamard_rows()
    else:  # pragma: no cover -- argparse choices guard this
        raise UsageError(f"unknown verify selector {which}")
    text = "\n".join([VERIFY_HEADER] + rows) + "\n"
    _write(args.out, text)
    all_passed = all(row.rsplit(",", 1)[1] == "true" for row in rows)
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# perturb

def _variation_from_config(cfg: dict) -> hadamard.NormalVariation:
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    keys = {"preset", "sh_coeffs", "grid"} & set(cfg)
    if len(keys) != 1:
        raise UsageError("config needs exactly one of: preset, sh_coeffs, grid")
    if "preset" in cfg:
        presets = {
            "uniform": hadamard.uniform_variation,
            "translation": hadamard.translation_variation,
            "squash": hadamard.squash_variation,
        }
        name = cfg["preset"]
        if name not in presets:
            raise UsageError(f"unknown preset {name!r}")
        return presets[name]()
    if "sh_coeffs" in cfg:
        try:
            coeffs = [(e["l"], e["m"], e["value"]) for e in cfg["sh_coeffs"]]
            return hadamard.NormalVariation.from_sh_coeffs(coeffs)
        except (TypeError, KeyError, ValueError) as exc:
            raise UsageError(f"bad sh_coeffs entry: {exc}") from exc
    grid = cfg["grid"]
    try:
        return hadamard.NormalVariation.from_grid(
            grid["n_theta"], grid["n_phi"], grid["values"])
    except (TypeError, KeyError, InvalidGrid) as exc:
        raise UsageError(f"bad grid config: {exc}") from exc


def cmd_perturb(args) -> int:
    if args.quad_order < 8:
        raise UsageError("--quad-order must be at least 8")
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON config: {exc}") from exc
    variation = _variation_from_config(cfg)

    matrix = hadamard.variation_matrix(variation, args.quad_order)
    eigs = hadamard.eigenvalues(matrix)
    shifts = [hadamard.resonance_shift(mu, args.epsilon) for mu in eigs]
    violation: str | None = None
    definiteness = None
    try:
        definiteness = hadamard.definiteness_report(variation, args.quad_order)
    except SignViolation as exc:
        violation = str(exc)

    if args.format == "json":
        payload = {
            "matrix": [[matrix.entries[i][j] for j in range(3)] for i in range(3)],
            "eigenvalues": list(eigs),
            "epsilon": args.epsilon,
            "shifts": [{"re": s.real, "im": s.imag} for s in shifts],
        }
        if definiteness is not None:
            payload["definiteness"] = {
                "semidefinite": definiteness[0],
                "strictly": definiteness[1],
            }
        else:
            payload["definiteness"] = {"sign_violation": violation}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = ["matrix:"]
        for i in range(3):
            lines.append("  " + " ".join(fmt17(matrix.entries[i][j])
                                         for j in range(3)))
        lines.append("eigenvalues: " + " ".join(fmt17(e) for e in eigs))
        lines.append("epsilon: " + fmt17(args.epsilon))
        for mu, s in zip(eigs, shifts):
            lines.append(f"shift mu={fmt17(mu)}: dlambda = "
                         f"{fmt17(s.real)} {'+' if s.imag >= 0 else '-'} "
                         f"{fmt17(abs(s.imag))}i")
        if definiteness is not None:
            lines.append(f"definiteness: semidefinite={_bool(definiteness[0])} "
                         f"strictly={_bool(definiteness[1])}")
        else:
            lines.append(f"definiteness: sign-violation ({violation})")
        text = "\n".join(lines) + "\n"
    _write(args.out, text)
    if violation is not None:
        print(f"resgap perturb: {violation}", file=sys.stderr)
        return 4
    return 0


# ---------------------------------------------------------------------------
# figure

def cmd_figure(args) -> int:
    if args.format not in ("csv", "svg"):
        raise UsageError("--format must be csv or svg for figures")
    if args.which == "fig1":
        rows = _spectrum_rows(3, 30, 1.0, args.threads, highlight_ell=20)
        if args.format == "csv":
            text = _sphere_text(rows, "csv")
        else:
            points = [(res.lam.real, res.lam.imag, hl) for res, hl in rows]
            text = scatter_svg(points, title="Resonances of the unit ball (n=3)",
                               xlabel="Re lambda", ylabel="Im lambda")
    else:
        curve = bounds_mod.bounds_table(1.0, 0.01, 5.0, 0.01)
        if args.format == "csv":
            text = _bounds_text(curve)
        else:
            kappas = [row.kappa for row in curve.samples]
            curves = {
                "Ralston 2/diam": ([row.ralston for row in curve.samples],
                                   "#1f77b4"),
                "Morawetz 1/(4 diam)": ([row.morawetz for row in curve.samples],
                                        "#2ca02c"),
                "FL high-frequency": ([row.fl_asymptote for row in curve.samples],
                                      "#bcbd22"),
            }
            text = curves_svg(kappas, curves,
                              title="Resonance-width bounds, obstacle in B(0,1)",
                              xlabel="kappa = Re lambda",
                              ylabel="width bound |Im lambda|")
    _write(args.out, text)
    return 0


# ---------------------------------------------------------------------------
# parser and dispatch

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resgap",
        description="Ball scattering resonances, gap bounds, and identity checks.")
    sub = parser.add_subparsers(dest="command")

    def spectrum_flags(p):
        p.add_argument("--dim", type=int, default=3)
        p.add_argument("--lmax", type=int, default=30)
        p.add_argument("--radius", type=float, default=1.0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", default=None)

    p = sub.add_parser("sphere", help="resonance table")
    spectrum_flags(p)
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.set_defaults(func=cmd_sphere)

    p = sub.add_parser("widths", help="minimal resonance width")
    spectrum_flags(p)
    p.set_defaults(func=cmd_widths)

    p = sub.add_parser("bounds", help="gap-bound table")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--kappa-min", dest="kappa_min", type=float, default=0.01)
    p.add_argument("--kappa-max", dest="kappa_max", type=float, default=5.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="identity certificates")
    p.add_argument("which", choices=["mor2", "delv3", "chain", "protter",
                                     "hadamard-norm"])
    p.add_argument("--lmax", type=int, default=10)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--h", type=float, default=1e-2)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("perturb", help="boundary-deformation analysis")
    p.add_argument("--config", required=True)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--quad-order", dest="quad_order", type=int, default=64)
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("figure", help="figure data emission")
    p.add_argument("which", choices=["fig1", "fig2"])
    p.add_argument("--format", default="csv", choices=["csv", "svg"])
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    """Returns the exit code instead of raising SystemExit (test-friendly)."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return 0 if code in (0, None) else 2
    if not getattr(args, "func", None):
        _parser().print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"resgap: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedDimension, DegreeTooLarge, NonPositiveInput,
            InvalidGrid) as exc:
        print(f"resgap: {exc}", file=sys.stderr)
        return 2
    except SignViolation as exc:
        print(f"resgap: {exc}", file=sys.stderr)
        return 4
    except (NonConvergence, DegenerateInput, BracketFailure, SingularPoint,
            NotAResonance, FloatingPointError) as exc:
        print(f"resgap: numeric failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    """Console-script wrapper."""
    sys.exit(main())
