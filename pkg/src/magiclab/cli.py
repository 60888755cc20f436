"""Command-line entry point.

Subcommands: wigner, monotones, stab, audit, sweep, scatter-coherence,
scatter-entanglement, run-all. Exit codes: 0 success, 1 assertion or
violation, 2 usage error (argparse's default).
"""

import argparse
import sys

import numpy as np

from . import channels, experiments, monotones, stabilizer, stateio
from .experiments import ExperimentConfig
from .linalg import dm_from_pure
from .phasespace import wigner


def _load_dm(path):
    state = stateio.load_state(path)
    return dm_from_pure(state) if state.ndim == 1 else state


def _fmt(x):
    return format(float(x), ".17g")


def _build_config(args):
    overrides = {}
    for key in ("seed", "samples", "outdir", "tolerance"):
        if getattr(args, key, None) is not None:
            overrides[key] = getattr(args, key)
    if getattr(args, "config", None):
        return ExperimentConfig.from_file(args.config, **overrides)
    return ExperimentConfig(**overrides)


def cmd_wigner(args):
    rho = _load_dm(args.state)
    w = wigner(rho)
    lines = [",".join(_fmt(x) for x in row) for row in w]
    msn = monotones.sum_negativity_grid(w)
    mana = np.log(1.0 + msn)
    if args.mana_base:
        mana /= np.log(args.mana_base)
    lines.append(f"# sum_negativity={_fmt(msn)} mana={_fmt(mana)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_monotones(args):
    rho = _load_dm(args.state)
    dims = tuple(int(x) for x in args.dims.split(",")) if args.dims else None
    for report in monotones.all_monotones(rho, dims=dims):
        print(f"{report.name}={_fmt(report.value)}")
    return 0


def cmd_stab(args):
    vset = stabilizer.stabilizer_pure_states(args.dim)
    if args.list:
        blocks = []
        for i, (ket, word) in enumerate(zip(vset.kets, vset.words)):
            blocks.append(f"# vertex {i} word={word}\n" + stateio.dumps_state(ket))
        sys.stdout.write("\n".join(blocks))
        return 0
    if args.distance:
        rho = _load_dm(args.distance)
        res = stabilizer.polytope_distance(rho, vset)
        print(f"distance={_fmt(res.distance)}")
        print(f"converged={res.converged}")
        print(f"iterations={res.iterations}")
        print("weights=" + ",".join(_fmt(w) for w in res.weights))
        return 0
    print("stab: nothing to do (use --list or --distance)", file=sys.stderr)
    return 2


def cmd_audit(args):
    fn = channels.AUDIT_SUITES[args.suite]
    report = fn(n_trials=args.n, seed=args.seed)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def _emit(args, text, default_name):
    out = args.out or default_name
    experiments.write_csv(out, text)
    print(f"wrote {out}")


def cmd_sweep(args):
    cfg = _build_config(args)
    data = experiments.noise_sweep(cfg)
    _emit(args, data.csv(), "sweep.csv")
    print(f"max_abs_residual={data.max_abs_residual:.3e}")
    return 0 if data.max_abs_residual < cfg.tolerance else 1


def cmd_scatter_coherence(args):
    cfg = _build_config(args)
    data = experiments.coherence_magic_scatter(cfg)
    _emit(args, data.csv(), "coherence_scatter.csv")
    print(f"min_slack_pure={data.min_slack_pure:.6e}")
    return 0 if data.min_slack_pure >= -cfg.tolerance else 1


def cmd_scatter_entanglement(args):
    cfg = _build_config(args)
    data = experiments.entanglement_magic_scatter(cfg)
    _emit(args, data.csv(), "entanglement_scatter.csv")
    print(f"max_lhs={data.max_lhs:.12f}")
    return 0 if data.max_lhs <= 4.0 + cfg.tolerance else 1


def cmd_run_all(args):
    cfg = _build_config(args)
    report = experiments.run_all(cfg)
    for line in report.lines():
        print(line)
    return 0 if report.all_pass else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magiclab",
        description="Discrete-Wigner magic and coherence laboratory for small qudits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wigner", help="print the discrete Wigner grid of a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--out")
    p.add_argument("--mana-base", dest="mana_base", type=float,
                   help="log base for the mana trailer (default: natural log)")
    p.set_defaults(fn=cmd_wigner)

    p = sub.add_parser("monotones", help="print all applicable monotones of a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--dims", help="subsystem dims like 3,2 to enable negativity")
    p.set_defaults(fn=cmd_monotones)

    p = sub.add_parser("stab", help="stabilizer vertices and polytope distances")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--list", action="store_true")
    p.add_argument("--distance", metavar="STATEFILE")
    p.set_defaults(fn=cmd_stab)

    p = sub.add_parser("audit", help="randomized hierarchy audits")
    p.add_argument("--suite", required=True, choices=sorted(channels.AUDIT_SUITES))
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_audit)

    for name, fn, with_samples in (("sweep", cmd_sweep, False),
                                   ("scatter-coherence", cmd_scatter_coherence, True),
                                   ("scatter-entanglement", cmd_scatter_entanglement, True),
                                   ("run-all", cmd_run_all, True)):
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--seed", type=int)
        p.add_argument("--config")
        p.add_argument("--tol", dest="tolerance", type=float)
        if with_samples:
            p.add_argument("--samples", type=int)
        if name == "run-all":
            p.add_argument("--out", dest="outdir")
        else:
            p.add_argument("--out")
        p.set_defaults(fn=fn)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
