"""Command-line interface.

    pure-eof gen --kind bell --out bell.json
    pure-eof direct --in bell.json
    pure-eof reconstruct --in bell.json --mode paper
    pure-eof measure --in bell.json --shots 1000000 --seed 2
    pure-eof verify --m 3 --n 3 --count 100 --seed 1
    pure-eof census --kind schmidt_diag --lambda 0.5,0.3,0.2

Reports are JSON on stdout (or ``--out``). Exit status: 0 success,
1 validation failure, 2 usage error.
"""

import argparse
import json
import sys

import numpy as np

from .errors import EoFError
from .measurement import ShotPlan, estimate_eof
from .projections import normalization, spectrum_census
from .reconstruction import reconstruct_eof, verify_theorem
from .states import (
    eof_direct,
    gen_state,
    schmidt,
    schmidt_diag,
    state_from_dict,
    state_to_dict,
    to_schmidt_basis,
)

KINDS = ("haar_random", "schmidt_diag", "bell", "max_entangled", "product", "rotated")
COMMANDS = ("gen", "direct", "reconstruct", "measure", "verify", "census")


class UsageError(Exception):
    pass


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pure-eof",
        description="Entanglement of formation of bipartite pure states.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--in", dest="in_path", help="state file (JSON)")
    parser.add_argument("--out", help="write the state/report here instead of stdout")
    parser.add_argument("--kind", choices=KINDS, help="generate the input state inline")
    parser.add_argument("--m", type=int, help="dimension of side A (or d for max_entangled)")
    parser.add_argument("--n", type=int, help="dimension of side B")
    parser.add_argument("--lambda", dest="lambdas", help="comma separated Schmidt values")
    parser.add_argument("--mode", choices=("paper", "rect"), default="rect")
    parser.add_argument("--basis", choices=("schmidt", "raw"), default="schmidt")
    parser.add_argument("--shots", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--allow-uncertified", action="store_true")
    return parser


def _parse_lambdas(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--lambda must be a comma separated list of numbers: {exc}") from None


def _generate(args):
    kind = args.kind
    if kind in ("haar_random", "product"):
        if args.m is None or args.n is None:
            raise UsageError(f"--kind {kind} needs --m and --n")
        return gen_state(kind, seed=args.seed, m=args.m, n=args.n)
    if kind in ("schmidt_diag", "rotated"):
        if not args.lambdas:
            raise UsageError(f"--kind {kind} needs --lambda")
        base = schmidt_diag(_parse_lambdas(args.lambdas), args.n)
        if kind == "schmidt_diag":
            return base
        return gen_state("rotated", seed=args.seed, base=base)
    if kind == "max_entangled":
        if args.m is None:
            raise UsageError("--kind max_entangled needs --m (the local dimension d)")
        return gen_state(kind, d=args.m)
    return gen_state(kind)


def _load_state(args):
    if args.in_path and args.kind:
        raise UsageError("--in and --kind are mutually exclusive")
    if args.in_path:
        try:
            with open(args.in_path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise EoFError(f"malformed JSON in {args.in_path}: {exc}") from None
        except OSError as exc:
            raise EoFError(f"cannot read {args.in_path}: {exc}") from None
        return state_from_dict(data)
    if args.kind:
        return _generate(args)
    raise UsageError(f"{args.command} needs an input state: --in FILE or --kind KIND")


def _config(args):
    cfg = dict(vars(args))
    cfg["in"] = cfg.pop("in_path")
    cfg["lambda"] = cfg.pop("lambdas")
    return cfg


def _to_json(obj):
    def default(o):
        if isinstance(o, np.generic):
            return o.item()
        if isinstance(o, np.ndarray):
            return o.tolist()
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return json.dumps(obj, indent=2, default=default) + "\n"


def _cmd_gen(args, state):
    return state_to_dict(state), 0


def _cmd_direct(args, state):
    report = {
        "eof_bits": eof_direct(state),
        "schmidt_values": schmidt(state).values.tolist(),
        "m": state.m,
        "n": state.n,
    }
    return report, 0


def _cmd_reconstruct(args, state):
    report = reconstruct_eof(state, args.mode, args.basis).to_dict()
    if args.basis == "raw":
        report["note"] = (
            "raw-basis reconstruction is basis dependent and not guaranteed to equal the EoF"
        )
    return report, 0


def _cmd_measure(args, state):
    if args.shots < 1:
        raise UsageError("--shots must be >= 1")
    if args.seed < 0:
        raise UsageError("--seed must be nonnegative")
    plan = ShotPlan(args.shots, args.seed)
    return estimate_eof(state, plan, args.mode, args.basis).to_dict(), 0


def _cmd_verify(args, state):
    if args.m is None or args.n is None:
        raise UsageError("verify needs --m and --n")
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    ss = np.random.SeedSequence(args.seed)
    residuals = []
    for child in ss.spawn(args.count):
        st = gen_state("haar_random", seed=child, m=args.m, n=args.n)
        residuals.append(verify_theorem(st, args.mode))
    worst = max(residuals)
    report = {
        "m": args.m,
        "n": args.n,
        "count": args.count,
        "max_residual": worst,
        "mean_residual": float(np.mean(residuals)),
        "tolerance": args.tol,
        "passed": worst <= args.tol,
    }
    return report, 0 if report["passed"] else 1


def _cmd_census(args, state):
    work = to_schmidt_basis(state)
    counts = spectrum_census(work, args.mode)
    expected = round(1.0 / normalization(state.m, state.n, args.mode))
    lam = np.abs(np.diagonal(work.amplitudes)) ** 2
    return {
        "m": state.m,
        "n": state.n,
        "schmidt_values": lam.tolist(),
        "multiplicities": {str(k): v for k, v in counts.items()},
        "expected_multiplicity": expected,
    }, 0


HANDLERS = {
    "gen": _cmd_gen,
    "direct": _cmd_direct,
    "reconstruct": _cmd_reconstruct,
    "measure": _cmd_measure,
    "verify": _cmd_verify,
    "census": _cmd_census,
}


def run(argv=None):
    """Run one command; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.basis == "raw" and not args.allow_uncertified:
            raise UsageError("--basis raw requires --allow-uncertified")
        if args.command == "verify":
            if args.in_path or args.kind:
                raise UsageError("verify generates its own states; drop --in/--kind")
            state = None
        else:
            state = _load_state(args)
        payload, status = HANDLERS[args.command](args, state)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pure-eof: error: {exc}", file=sys.stderr)
        return 2
    except EoFError as exc:
        print(f"pure-eof: validation failed: {exc}", file=sys.stderr)
        return 1

    if args.command != "gen":
        payload = {"command": args.command, **payload, "config": _config(args)}
    text = _to_json(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
