"""frontlab command-line tool.

Subcommands: simulate (time integration from a JSON config), consistency
(full-equation vs cubic-approximation amplitude sweep), analyze (dispersion,
Stokes, NLS, well-posedness constants, tau-ODE), verify (appendix, kernels,
conservation suites).

Exit codes: 0 success (including a detected-singularity stop), 1 usage or
configuration error, 2 numerical abort, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analysis, contour, evolution, io as flio, kernels
from .spectral import FrontState, Grid, SymbolTable

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VERIFICATION = 3


def _print(*parts):
    sys.stdout.write(" ".join(str(p) for p in parts) + "\n")


def sig12(x: float) -> str:
    return format(float(x), ".12g")


class UsageError(Exception):
    pass


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
    try:
        flio.validate_config(doc)
    except Exception as exc:  # jsonschema.ValidationError
        field = "/".join(str(p) for p in getattr(exc, "absolute_path", []))
        msg = getattr(exc, "message", str(exc))
        raise UsageError(f"config {path} invalid at '{field or '<root>'}': {msg}") from exc
    return doc


def _build_simulation(doc: dict) -> evolution.SimulationConfig:
    grid = Grid(doc["n_modes"])
    alpha = kernels.AlphaFamily.from_alpha(doc["alpha"])
    init = evolution.InitialData(doc["initial_data"]["kind"],
                                 tuple(doc["initial_data"].get("parameters", [])))
    vdoc = doc.get("viscosity", {"kind": "exp_filter", "strength": 36.0, "order": 36})
    viscosity = evolution.ViscositySpec(
        kind=vdoc["kind"],
        order=vdoc.get("order", 36),
        strength=vdoc.get("strength", 0.0 if vdoc["kind"] == "none" else 36.0),
        cutoff_fraction=vdoc.get("cutoff_fraction", 0.5),
    )
    dt = doc.get("dt") or evolution.default_dt(grid, alpha)
    return evolution.SimulationConfig(
        grid=grid,
        alpha=alpha,
        dt=dt,
        t_end=doc["t_end"],
        initial_data=init,
        viscosity=viscosity,
        output_every=doc.get("output_every", 100),
        output_dir=doc["output_dir"],
        sobolev_orders=tuple(doc.get("sobolev_orders", [])),
        snapshot_every=doc.get("snapshot_every", 1),
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    doc = _load_config(args.config)
    config = _build_simulation(doc)
    if args.dry_run:
        manifest = flio.build_manifest(
            command="simulate", config=doc,
            outcomes={"dry_run": True,
                      "dt": config.dt,
                      "stability_proxy": evolution.stability_proxy(
                          config.grid, config.alpha, config.dt)},
        )
        os.makedirs(config.output_dir, exist_ok=True)
        flio.write_manifest(os.path.join(config.output_dir, "manifest.json"), manifest)
        _print(f"dry run: manifest written to {config.output_dir}/manifest.json")
        return EXIT_OK
    result = evolution.run(config, echo_config=doc)
    out = result.manifest["outcomes"]
    _print(f"stop_reason={result.stop_reason} final_time={sig12(out['final_time'])}")
    if result.singularity_time is not None:
        _print(f"singularity_time={sig12(result.singularity_time)} "
               f"location={sig12(result.singularity_location)}")
    return EXIT_NUMERICAL if result.stop_reason == "aborted" else EXIT_OK


def cmd_consistency(args) -> int:
    doc = _load_config_consistency(args.config)
    grid = Grid(doc["n_modes"])
    alpha = kernels.AlphaFamily.from_alpha(doc["alpha"])
    init = evolution.InitialData(doc["profile"]["kind"],
                                 tuple(doc["profile"].get("parameters", [])))
    base = init.build(grid)
    amplitudes = doc["amplitudes"]
    quad = contour.QuadratureSpec(
        n_eta=doc.get("n_eta", 0),
        gp_tolerance=doc.get("gp_tolerance", 1e-10),
        tail_terms=doc.get("tail_terms", 64),
    )
    try:
        report = contour.consistency_report(base, amplitudes, alpha, quad)
    except ValueError as exc:
        _print(f"error: {exc}")
        return EXIT_USAGE
    out_dir = doc.get("output_dir")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "consistency.csv")
        with open(path, "w") as fh:
            fh.write("amplitude,discrepancy,fitted_slope\n")
            for row in report.rows:
                fh.write(f"{flio.fmt(row.amplitude)},{flio.fmt(row.discrepancy)},"
                         f"{flio.fmt(report.slope)}\n")
        manifest = flio.build_manifest(
            command="consistency", config=doc,
            outcomes={"slope": report.slope, "passes": report.passes},
        )
        flio.write_manifest(os.path.join(out_dir, "manifest.json"), manifest)
    for row in report.rows:
        _print(f"amplitude={sig12(row.amplitude)} discrepancy={sig12(row.discrepancy)}")
    _print(f"slope={sig12(report.slope)} pass={report.passes}")
    return EXIT_OK if report.passes else EXIT_VERIFICATION


def _load_config_consistency(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    required = {"n_modes", "alpha", "profile", "amplitudes"}
    allowed = required | {"n_eta", "gp_tolerance", "tail_terms", "output_dir"}
    missing = required - doc.keys()
    unknown = doc.keys() - allowed
    if missing:
        raise UsageError(f"consistency config missing fields: {sorted(missing)}")
    if unknown:
        raise UsageError(f"consistency config has unknown fields: {sorted(unknown)}")
    return doc


def cmd_analyze(args) -> int:
    alpha = kernels.AlphaFamily.from_alpha(args.alpha) if args.alpha is not None else None
    rows = []
    if args.what == "dispersion":
        if alpha is None:
            raise UsageError("dispersion needs --alpha")
        for k in args.k or [1.0]:
            rows.append(("omega0", k, analysis.dispersion_omega0(k, alpha)))
            _print(f"k={sig12(k)} omega0={sig12(rows[-1][2])} "
                   f"a={sig12(kernels.symbol_a(k, alpha))} "
                   f"b={sig12(kernels.symbol_b(k, alpha))}")
    elif args.what == "stokes":
        if alpha is None:
            raise UsageError("stokes needs --alpha")
        k = int(args.k[0]) if args.k else 1
        res = analysis.stokes_expansion(k, args.psi1, alpha)
        _print(f"omega0={sig12(res.omega0)} sigma2={sig12(res.sigma2)} "
               f"omega2={sig12(res.omega2)} psi3={sig12(abs(res.psi3_ratio * args.psi1 ** 3))}")
    elif args.what == "nls":
        if alpha is None:
            raise UsageError("nls needs --alpha")
        k = args.k[0] if args.k else 1.0
        res = analysis.nls_coefficients(k, alpha)
        _print(f"omega0_pp={sig12(res.omega0_pp)} sigma2={sig12(res.sigma2)} "
               f"focusing={str(res.focusing).lower()}")
    elif args.what == "constants":
        s = args.s
        s0 = analysis.s0_root()
        _print(f"s0={sig12(s0)}")
        if s is not None:
            _print(f"C0({sig12(s)})={sig12(analysis.c0_constant(s))}")
            if s > 0.5:
                _print(f"Z({sig12(s)})={sig12(analysis.zeta_Z(s))}")
            if s > 2.5:
                _print(f"C3({sig12(s)})={sig12(analysis.c3_constant(s))}")
        c4, at = analysis.c4_infimum()
        _print(f"C4={sig12(c4)} attained_at_s={sig12(at)}")
    elif args.what == "tau":
        res = analysis.tau_existence(args.tau0, args.E0, args.M)
        tstar = "inf" if math.isinf(res.t_star) else sig12(res.t_star)
        _print(f"T_star={tstar} reached_horizon={str(res.reached_horizon).lower()}")
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write("t,tau\n")
                for t, tau in zip(res.times, res.taus):
                    fh.write(f"{flio.fmt(t)},{flio.fmt(tau)}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    failures = []
    report_doc = {}
    if args.suite == "appendix":
        s = args.s
        rep = analysis.verify_f_bound(s)
        report_doc["f_bound"] = {
            "s": s, "sup": rep.sup, "argmax": list(rep.argmax),
            "boundary_layer_limit": rep.boundary_layer_limit, "C0": rep.c0,
        }
        _print(f"f bound: sup|f|={sig12(rep.sup)} at {rep.argmax} C0={sig12(rep.c0)} "
               f"layer_limit={sig12(rep.boundary_layer_limit)}")
        if s >= analysis.s0_root():
            if not rep.within_c0:
                failures.append(f"sup|f|={rep.sup} exceeds C0={rep.c0}")
            if abs(rep.argmax[0] - 1 / 3) > 1e-4 or abs(rep.argmax[1] - 1 / 3) > 1e-4:
                failures.append(f"argmax {rep.argmax} is not (1/3, 1/3)")
        hrep = analysis.verify_h_bound(kernels.sqg(), n_samples=250_000)
        report_doc["h_bound"] = {"C": hrep.c_fit, "C_refined": hrep.c_fit_refined}
        _print(f"h bound: C={sig12(hrep.c_fit)} refined={sig12(hrep.c_fit_refined)}")
        if not hrep.stable:
            failures.append("h-bound constant unstable under refinement")
    elif args.suite == "kernels":
        alpha = kernels.AlphaFamily.from_alpha(args.alpha)
        rep = analysis.verify_kernel_bounds(alpha, n_trials=args.trials,
                                            k_max=args.kmax, seed=args.seed)
        report_doc["kernel_bounds"] = {
            "alpha": alpha.alpha, "worst_ratio": rep.worst_ratio,
            "worst_quadruple": list(rep.worst_quadruple),
            "fitted_constant": rep.fitted_constant,
            "fitted_constant_doubled_kmax": rep.fitted_constant_doubled_kmax,
            "seed": rep.seed,
        }
        _print(f"worst ratio={sig12(rep.worst_ratio)} at {rep.worst_quadruple}")
        if not rep.passes:
            failures.append(f"kernel bound violated: ratio {rep.worst_ratio} "
                            f"at {rep.worst_quadruple}")
    elif args.suite == "conservation":
        drift = _conservation_drift()
        report_doc["conservation"] = drift
        _print(f"dH/H={sig12(drift['dH'])} dP/P={sig12(drift['dP'])}")
        if drift["dH"] > 1e-8:
            failures.append(f"Hamiltonian drift {drift['dH']} > 1e-8")
        if drift["dP"] > 1e-10:
            failures.append(f"momentum drift {drift['dP']} > 1e-10")
    if args.report:
        echo = {k: v for k, v in vars(args).items()
                if k not in ("func", "report") and v is not None}
        manifest = flio.build_manifest(
            command=f"verify {args.suite}", config=echo,
            outcomes=report_doc | {"failures": failures},
            seeds=[args.seed] if hasattr(args, "seed") else (),
        )
        flio.write_manifest(args.report, manifest)
    if failures:
        for f in failures:
            _print("FAIL:", f)
        return EXIT_VERIFICATION
    _print("pass")
    return EXIT_OK


def _conservation_drift() -> dict:
    grid = Grid(512)
    alpha = kernels.sqg()
    table = SymbolTable.build(grid, alpha)
    x = grid.points
    state = FrontState.from_values(grid, 0.07 * (np.cos(6 * x) + 0.5 * np.cos(7 * x + 0.7)))
    h0 = evolution.hamiltonian(state, table)
    p0 = evolution.momentum(state)
    stepper = evolution._Stepper(grid, table, evolution.ViscositySpec.none(), 1e-3)
    c = np.asarray(state.coeffs)
    for _ in range(1000):
        c = stepper.step_full(c)
    final = FrontState(grid, c, 1.0)
    return {
        "dH": abs(evolution.hamiltonian(final, table) - h0) / abs(h0),
        "dP": abs(evolution.momentum(final) - p0) / p0,
    }


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frontlab",
        description="simulate and verify sharp-front dynamics in the gSQG family",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="integrate the cubic front equation")
    p.add_argument("config", help="JSON configuration path")
    p.add_argument("--dry-run", action="store_true", help="write the manifest only")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("consistency", help="full-equation cubic-consistency sweep")
    p.add_argument("config", help="JSON configuration path")
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("analyze", help="closed-form quantities")
    p.add_argument("what", choices=["dispersion", "stokes", "nls", "constants", "tau"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--k", type=float, nargs="+")
    p.add_argument("--psi1", type=complex, default=0.1)
    p.add_argument("--s", type=float)
    p.add_argument("--tau0", type=float, default=3.0)
    p.add_argument("--E0", type=float, default=1.0)
    p.add_argument("--M", type=float, default=2.0)
    p.add_argument("--csv", help="optional CSV output path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="numerical verification suites")
    p.add_argument("suite", choices=["appendix", "kernels", "conservation"])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--kmax", type=int, default=1000)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=2023)
    p.add_argument("--report", help="manifest/report JSON path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        _print(f"error: {exc}")
        return EXIT_USAGE
    except (kernels.DomainError, ValueError) as exc:
        _print(f"error: {exc}")
        return EXIT_USAGE
    except evolution.NumericalAbort as exc:
        _print(f"numerical abort: {exc}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
