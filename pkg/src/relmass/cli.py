"""Command-line entry point: reproducible experiments with CSV outputs.

Every CSV starts with a '#' header embedding the exact invocation (and seed,
for Monte Carlo runs), so re-running the command in the header regenerates
the file byte for byte.  Exit codes: 0 success with a finding, 2 clean
"no witness found", 1 error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import hypercube, lamplighter, monotonicity, montecarlo
from .errors import RelmassError
from .graphs import (
    GroupTable,
    WeightedGeneratorSet,
    build_cycle,
    build_hypercube,
    build_pyramid_cube,
)
from .heatkernel import sample_curve, spectral_decompose

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_WITNESS = 2


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _write_csv(path, invocation, columns, rows):
    lines = [f"# relmass {invocation}"]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _parse_int_list(text):
    return [int(tok) for tok in text.split(",") if tok]


def _parse_float_list(text):
    return [float(tok) for tok in text.split(",") if tok]


def _grid(t_max, step):
    return np.arange(0.0, t_max + step / 2, step)


# -- subcommands -------------------------------------------------------------


def cmd_figure1(args, invocation):
    d_list = _parse_int_list(args.d)
    grid = _grid(args.t_max, args.step)
    grid_arr, columns = hypercube.figure1_table(d_list, grid)
    names = list(columns)
    rows = [
        [t] + [columns[name][i] for name in names] for i, t in enumerate(grid_arr)
    ]
    _write_csv(args.out, invocation, ["t"] + names, rows)
    return EXIT_OK


def cmd_witness(args, invocation):
    grid = _grid(args.t_max, args.step)
    witness = hypercube.find_witness(args.d, grid, margin=args.margin)
    if witness is None:
        print(f"d={args.d}: no decreasing pair above margin {args.margin:g}")
        return EXIT_NO_WITNESS
    print(
        f"d={args.d}: origin time decreases from t1={witness.t1:.6f} "
        f"(value {witness.value1:.9f}) to t2={witness.t2:.6f} "
        f"(value {witness.value2:.9f}), margin {witness.margin:.3e}"
    )
    if args.out:
        _write_csv(
            args.out,
            invocation,
            ["d", "t1", "t2", "value1", "value2", "margin"],
            [[args.d, witness.t1, witness.t2, witness.value1, witness.value2, witness.margin]],
        )
    return EXIT_OK


def cmd_appendix(args, invocation):
    graph = build_pyramid_cube()
    dec = spectral_decompose(graph)
    u, v = 1, 0  # top-face vertex, top apex
    report = monotonicity.spectral_criterion_check(dec, u, v)
    lam2 = report.lambda2
    apex_entry = 3.0 - 4.0 * lam2
    print(f"lambda2 = {lam2:.9f} (gap to lambda3: {report.gap:.6f})")
    print(f"eigenvector apex entry c = {apex_entry:.9f}")
    print(f"f2(u) = {report.f2_u:.9f}, f2(v) = {report.f2_v:.9f}")
    print(f"hypotheses met: {report.hypotheses_met}")
    grid = monotonicity.default_scan_grid(t_max=args.t_max, points=args.points)
    t_star = monotonicity.find_r_exceeds_one(dec, u, v, grid)
    if t_star is None:
        print("no time with r > 1 found on the grid")
        return EXIT_NO_WITNESS
    from .heatkernel import relative_mass

    crossing = monotonicity.locate_r_crossing(dec, u, v, grid)
    print(f"r exceeds 1 at t = {t_star:.6f} (r = {relative_mass(dec, u, v, t_star):.9f}; "
          f"upcrossing near t = {crossing:.6f})")
    if args.out:
        curve = sample_curve(dec, u, v, grid, quantity="relative_mass")
        rows = [[t, val] for t, val in zip(curve.grid, curve.values)]
        _write_csv(args.out, invocation, ["t", "value"], rows)
    return EXIT_OK


def cmd_verify_claim(args, invocation):
    times = _parse_float_list(args.t)
    params = lamplighter.LamplighterParams(d=args.d, eps=args.eps)
    dec = spectral_decompose(lamplighter.build_lamplighter(params))
    rows = []
    all_ok = True
    for t in times:
        rep = lamplighter.rare_toggle_residuals(args.d, args.eps, t, dec=dec)
        rows.append(
            [args.d, args.eps, t, rep.puu, rep.puv, rep.residual_uu, rep.residual_uv, rep.bound]
        )
        all_ok = all_ok and rep.passed
        print(
            f"d={args.d} eps={args.eps:g} t={t:g}: residual_uu={rep.residual_uu:.3e} "
            f"residual_uv={rep.residual_uv:.3e} bound={rep.bound:.3e} "
            f"{'ok' if rep.passed else 'VIOLATED'}"
        )
    _write_csv(
        args.out,
        invocation,
        ["d", "epsilon", "t", "puu", "puv", "residual_uu", "residual_uv", "bound"],
        rows,
    )
    return EXIT_OK if all_ok else EXIT_ERROR


def _mc_rows_header():
    return [
        "quantity",
        "d",
        "epsilon",
        "t",
        "estimate",
        "stderr",
        "n",
        "n_conditioned",
        "seed",
        "chunks",
    ]


def cmd_mc(args, invocation):
    if args.mc_command == "occupation":
        est = montecarlo.estimate_origin_time(
            args.d, args.t, args.samples, seed=args.seed, chunks=args.chunks
        )
        rows = [
            [
                "origin_time",
                args.d,
                0.0,
                args.t,
                est.mean,
                est.stderr,
                est.n,
                est.n_conditioned,
                est.seed,
                est.chunks,
            ]
        ]
        _write_csv(args.out, invocation, _mc_rows_header(), rows)
        print(f"origin time estimate at t={args.t:g}: {est.mean:.6f} +- {est.stderr:.6f}")
        return EXIT_OK
    if args.mc_command == "puv":
        est = montecarlo.estimate_lamplighter_puv(
            args.d, args.eps, args.t, args.samples, seed=args.seed, chunks=args.chunks
        )
        rows = [
            [
                "puv",
                args.d,
                args.eps,
                args.t,
                est.mean,
                est.stderr,
                est.n,
                est.n_conditioned,
                est.seed,
                est.chunks,
            ]
        ]
        _write_csv(args.out, invocation, _mc_rows_header(), rows)
        print(
            f"direct p_uv estimate at t={args.t:g}: {est.mean:.3e} +- {est.stderr:.3e} "
            f"({est.n_conditioned} hits; note: O(eps) target, statistically expensive)"
        )
        return EXIT_OK
    if args.mc_command == "demo":
        if args.t1 is None or args.t2 is None:
            witness = hypercube.find_witness(args.d)
            if witness is None:
                print(f"d={args.d}: no witness pair on the default grid")
                return EXIT_NO_WITNESS
            t1, t2 = witness.t1, witness.t2
        else:
            t1, t2 = args.t1, args.t2
        report = montecarlo.nonmonotonicity_demo(
            args.d, args.eps, t1, t2, args.samples, seed=args.seed, chunks=args.chunks
        )
        rows = []
        for label, est, t in (
            ("origin_time_t1", report.estimate1, t1),
            ("origin_time_t2", report.estimate2, t2),
        ):
            rows.append(
                [
                    label,
                    args.d,
                    args.eps,
                    t,
                    est.mean,
                    est.stderr,
                    est.n,
                    est.n_conditioned,
                    est.seed,
                    est.chunks,
                ]
            )
        _write_csv(args.out, invocation, _mc_rows_header(), rows)
        q1, q2 = report.quadrature_sigmas()
        print(
            f"estimates: {report.estimate1.mean:.5f} (t1={t1:.4f}), "
            f"{report.estimate2.mean:.5f} (t2={t2:.4f}); gap {report.gap:.5f} "
            f"= {report.sigmas:.1f} combined sigma"
        )
        print(f"quadrature agreement: {q1:.2f} / {q2:.2f} sigma")
        print(report.verdict)
        return EXIT_OK if report.supported else EXIT_NO_WITNESS
    raise RelmassError(f"unknown mc subcommand {args.mc_command!r}")


def cmd_blowup(args, invocation):
    group = GroupTable.cyclic(6)
    gens = WeightedGeneratorSet([(1, 2.0), (5, 2.0), (2, 1.0), (4, 1.0)])
    sizes = _parse_int_list(args.N)
    t_grid = np.linspace(0.0, args.t_max, args.points)
    rows = monotonicity.blowup_convergence(group, gens, args.u, args.v, sizes, t_grid)
    table = [[row.clique_size, row.degree, row.sup_r_dev, row.sup_p_dev] for row in rows]
    _write_csv(args.out, invocation, ["N", "deg", "sup_r_dev", "sup_p_dev"], table)
    for row in rows:
        print(
            f"N={row.clique_size}: deg={row.degree} sup_r_dev={row.sup_r_dev:.6f} "
            f"sup_p_dev={row.sup_p_dev:.6f}"
        )
    return EXIT_OK


def _parse_graph_spec(spec):
    parts = spec.split(":")
    kind = parts[0]
    if kind == "cycle":
        return build_cycle(int(parts[1]))
    if kind == "hypercube":
        return build_hypercube(int(parts[1]))
    if kind == "pyramid":
        return build_pyramid_cube()
    if kind == "lamplighter":
        d = int(parts[1])
        eps = float(parts[2]) if len(parts) > 2 else 1e-3
        return lamplighter.build_lamplighter(lamplighter.LamplighterParams(d=d, eps=eps))
    raise RelmassError(
        f"unknown graph spec {spec!r}; expected cycle:N, hypercube:D, pyramid, "
        "or lamplighter:D[:EPS]"
    )


def cmd_scan(args, invocation):
    graph = _parse_graph_spec(args.graph)
    dec = spectral_decompose(graph)
    grid = monotonicity.default_scan_grid(t_max=args.t_max, points=args.points)
    pair = monotonicity.monotonicity_scan(dec, args.u, args.v, grid, margin=args.margin)
    if pair is None:
        print(
            f"{args.graph} u={args.u} v={args.v}: no decrease above margin "
            f"{args.margin:g} on (0, {args.t_max:g}]"
        )
        return EXIT_NO_WITNESS
    t1, t2 = pair
    from .heatkernel import relative_mass

    print(
        f"{args.graph} u={args.u} v={args.v}: r decreases from "
        f"r({t1:.6f})={relative_mass(dec, args.u, args.v, t1):.9f} to "
        f"r({t2:.6f})={relative_mass(dec, args.u, args.v, t2):.9f}"
    )
    if args.out:
        curve = sample_curve(dec, args.u, args.v, grid, quantity="relative_mass")
        rows = [[t, val] for t, val in zip(curve.grid, curve.values)]
        _write_csv(args.out, invocation, ["t", "value"], rows)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="relmass",
        description="Heat kernels, relative mass, and non-monotonicity experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("figure1", help="origin-time curves for several dimensions, as CSV")
    p.add_argument("--d", default="4,5,6,7", help="comma-separated dimensions")
    p.add_argument("--t-max", type=float, default=30.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--out", default="figure1.csv")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("witness", help="search the origin-time curve for a decrease")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t-max", type=float, default=30.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--margin", type=float, default=hypercube.DEFAULT_WITNESS_MARGIN)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("appendix", help="pyramid-cube spectral counterexample report")
    p.add_argument("--t-max", type=float, default=200.0)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--out", default=None, help="write the r curve as CSV")
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("verify-claim", help="exact rare-toggle residuals on the lamplighter")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--t", default="0.5,1,2,4", help="comma-separated times")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify_claim)

    p = sub.add_parser("mc", help="Monte Carlo estimators")
    mc_sub = p.add_subparsers(dest="mc_command", required=True)

    q = mc_sub.add_parser("occupation", help="conditioned origin time on the cube")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--samples", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--chunks", type=int, default=16)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_mc)

    q = mc_sub.add_parser("demo", help="two-horizon comparison resolving the decrease")
    q.add_argument("--d", type=int, default=5)
    q.add_argument("--eps", type=float, default=1e-3)
    q.add_argument("--t1", type=float, default=None)
    q.add_argument("--t2", type=float, default=None)
    q.add_argument("--samples", type=int, default=4_000_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--chunks", type=int, default=16)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_mc)

    q = mc_sub.add_parser("puv", help="direct lamplighter p_uv estimate (expensive)")
    q.add_argument("--d", type=int, default=2)
    q.add_argument("--eps", type=float, default=1e-2)
    q.add_argument("--t", type=float, default=1.0)
    q.add_argument("--samples", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--chunks", type=int, default=8)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_mc)

    p = sub.add_parser("blowup", help="clique-blowup convergence table for weighted Z_6")
    p.add_argument("--N", default="16,32,64", help="comma-separated clique sizes")
    p.add_argument("--u", type=int, default=0)
    p.add_argument("--v", type=int, default=1)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("scan", help="monotonicity scan of r_uv on a named graph")
    p.add_argument("--graph", required=True, help="cycle:N | hypercube:D | pyramid | lamplighter:D[:EPS]")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--t-max", type=float, default=200.0)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--margin", type=float, default=1e-6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    invocation = " ".join(argv)
    try:
        return args.func(args, invocation)
    except RelmassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
