"""Command-line interface.

Subcommands: ``bounds`` (intervals from measured purities), ``analyze``
(exact values plus bounds from a state file), ``simulate`` (finite-shot
purity estimation, optionally propagated into bound intervals),
``figure`` (CSV datasets: scatter comparisons and bound surfaces), and
``make-state`` (write reference or random states as JSON files).

Exit codes: 0 success, 2 bad input (argparse usage errors and validation
failures), 3 internal invariant violation (a bug, not user error).
Floats in output are rendered at 12 significant digits.  The env var
PURITY_BOUNDS_THREADS sets the sampling worker count (default 1).
"""

import argparse
import dataclasses
import json
import math
import os
import sys

import numpy as np

from .bounds import (
    coherence_bounds,
    coherent_info_bounds,
    exact_multi_information,
    multi_information_bounds,
)
from .errors import (
    DimMismatch,
    BadMethod,
    InvariantViolation,
    ProjectionFailed,
    PurityBoundsError,
    SandwichViolation,
)
from .matrices import (
    load_state_json,
    partial_trace,
    save_state_json,
    validate_density,
)
from .measurement import simulate_dephased_overlap_shots, simulate_shots
from .sampling import (
    SCATTER_HEADER,
    SURFACE_HEADER,
    ScatterConfig,
    emit_bound_scatter,
    grid_bound_surface,
    make_stream,
    random_mixed_state,
    random_pure_state,
    sample_record,
    search_min_coherent_info,
    write_scatter_csv,
    write_surface_csv,
)

CONFIDENCE_SIGMA = 1.96


def _round12(x) -> float:
    return float(f"{float(x):.12g}")


def _dims_arg(text: str) -> tuple:
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; want e.g. 2,2")
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; want e.g. 2,2")
    return dims


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _interval_payload(interval) -> dict:
    inputs = {}
    for key, value in interval.inputs.items():
        if isinstance(value, float):
            inputs[key] = _round12(value)
        elif isinstance(value, (list, tuple)):
            inputs[key] = [_round12(v) if isinstance(v, float) else v
                           for v in value]
        else:
            inputs[key] = value
    return {
        "quantity": interval.quantity,
        "lower": _round12(interval.lower),
        "upper": _round12(interval.upper),
        "inputs": inputs,
    }


def cmd_bounds(args) -> int:
    marginals = list(args.gamma_marginal)
    if args.quantity == "coherent-info":
        if len(args.dims) != 2:
            raise DimMismatch("coherent-info needs --dims A,B (two subsystems)")
        if len(marginals) != 1:
            raise DimMismatch("coherent-info takes exactly one marginal purity")
        interval = coherent_info_bounds(args.gamma_global, marginals[0],
                                        args.dims[0], args.dims[1])
    elif args.quantity == "coherence":
        if len(marginals) != 1:
            raise DimMismatch("coherence takes exactly one dephased purity")
        dim = int(np.prod(args.dims))
        interval = coherence_bounds(args.gamma_global, marginals[0], dim)
    else:
        interval = multi_information_bounds(args.gamma_global, marginals,
                                            args.dims)
    _print_json(_interval_payload(interval))
    return 0


def cmd_analyze(args) -> int:
    rho = load_state_json(args.state)
    payload = {
        "state": str(args.state),
        "dims": list(rho.dims),
        "quantity": args.quantity,
        "basis": args.basis,
    }
    if args.quantity in ("coherent-info", "coherence"):
        record = sample_record(rho, args.quantity, seed=0, index=0)
        payload["gamma_global"] = _round12(record.gamma_global)
        payload["gamma_marginal"] = _round12(record.gamma_marginal)
        payload["exact"] = _round12(record.exact)
        payload["lower"] = _round12(record.lower)
        payload["upper"] = _round12(record.upper)
        if args.quantity == "coherent-info":
            payload["renyi"] = _round12(record.renyi)
    else:
        gamma_global = rho.purity
        marginals = [partial_trace(rho, keep=i).purity
                     for i in range(len(rho.dims))]
        interval = multi_information_bounds(gamma_global, marginals, rho.dims)
        exact = exact_multi_information(rho)
        if not (interval.lower - 1e-9 <= exact <= interval.upper + 1e-9):
            raise SandwichViolation(
                f"exact {exact!r} outside [{interval.lower!r}, {interval.upper!r}]"
            )
        payload["gamma_global"] = _round12(gamma_global)
        payload["gamma_marginals"] = [_round12(g) for g in marginals]
        payload["exact"] = _round12(exact)
        payload["lower"] = _round12(interval.lower)
        payload["upper"] = _round12(interval.upper)
    _print_json(payload)
    return 0


def _estimator_payload(result) -> dict:
    return {
        "method": result.method,
        "shots": result.shots,
        "estimate": _round12(result.estimate),
        "std_error": _round12(result.std_error),
        "estimate_clamped": _round12(result.estimate_clamped),
        "clamped": result.clamped,
    }


def _widest_interval(evaluate, global_corners, marginal_corners) -> dict:
    lows, highs = [], []
    for g in global_corners:
        for m in marginal_corners:
            interval = evaluate(g, m)
            lows.append(interval.lower)
            highs.append(interval.upper)
    return {"lower": _round12(min(lows)), "upper": _round12(max(highs))}


def cmd_simulate(args) -> int:
    rho = load_state_json(args.state)
    seq = np.random.SeedSequence(args.seed)

    if args.propagate and args.method not in ("ancilla-swap", "bell-basis",
                                              "shift-2"):
        raise BadMethod(
            "--propagate needs a purity estimator: ancilla-swap, bell-basis, "
            "or shift-2"
        )

    if args.propagate:
        child_main, child_side = seq.spawn(2)
        rng = np.random.default_rng(child_main)
    else:
        rng = np.random.default_rng(seq)

    if args.method == "ancilla-dephased":
        result = simulate_dephased_overlap_shots(rho, args.shots, rng)
    else:
        result = simulate_shots(rho, args.method, args.shots, rng)
    payload = _estimator_payload(result)

    if args.propagate == "coherent-info":
        if len(rho.dims) != 2:
            raise DimMismatch(
                f"coherent-info propagation needs two subsystems, got {rho.dims}"
            )
        dim_a, dim_b = rho.dims
        marginal_state = partial_trace(rho, keep=1)
        side = simulate_shots(marginal_state, args.method, args.shots,
                              np.random.default_rng(child_side))
        interval = coherent_info_bounds(result.estimate_clamped,
                                        side.estimate_clamped, dim_a, dim_b)

        joint_floor = 1.0 / (dim_a * dim_b)
        g_corners = [
            min(1.0, max(joint_floor,
                         result.estimate + s * CONFIDENCE_SIGMA * result.std_error))
            for s in (-1.0, 1.0)
        ]
        m_corners = [
            min(1.0, max(1.0 / dim_b,
                         side.estimate + s * CONFIDENCE_SIGMA * side.std_error))
            for s in (-1.0, 1.0)
        ]
        sensitivity = _widest_interval(
            lambda g, m: coherent_info_bounds(g, m, dim_a, dim_b),
            g_corners, m_corners)
        payload["propagate"] = {
            "quantity": "coherent-info",
            "secondary": _estimator_payload(side),
            "interval": {"lower": _round12(interval.lower),
                         "upper": _round12(interval.upper)},
            "sensitivity_interval": sensitivity,
        }
    elif args.propagate == "coherence":
        dim = rho.dim
        side = simulate_dephased_overlap_shots(rho, args.shots,
                                               np.random.default_rng(child_side))
        # estimation noise can invert the dephased-vs-state purity order;
        # evaluation clamps it back and flags that it did
        gamma_state = result.estimate_clamped
        gamma_dephased = min(side.estimate_clamped, gamma_state)
        interval = coherence_bounds(gamma_state, gamma_dephased, dim)

        g_corners = [
            min(1.0, max(1.0 / dim,
                         result.estimate + s * CONFIDENCE_SIGMA * result.std_error))
            for s in (-1.0, 1.0)
        ]
        d_corners = [
            min(1.0, max(1.0 / dim,
                         side.estimate + s * CONFIDENCE_SIGMA * side.std_error))
            for s in (-1.0, 1.0)
        ]
        sensitivity = _widest_interval(
            lambda g, m: coherence_bounds(g, min(m, g), dim),
            g_corners, d_corners)
        payload["propagate"] = {
            "quantity": "coherence",
            "secondary": _estimator_payload(side),
            "interval": {"lower": _round12(interval.lower),
                         "upper": _round12(interval.upper)},
            "sensitivity_interval": sensitivity,
            "consistency_clamped": bool(side.estimate_clamped > gamma_state),
        }
    _print_json(payload)
    return 0


def _header_only(path: str, header: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")


def cmd_figure(args) -> int:
    workers = _worker_count()
    if args.which in ("1a", "1b"):
        n = args.samples if args.samples is not None else 2000
        if n == 0:
            _header_only(args.out, SCATTER_HEADER)
            _print_json({"out": args.out, "which": args.which, "rows": 0})
            return 0
        config = ScatterConfig(dims=(2, 2), n_samples=n,
                               quantity="coherent-info")
        records = emit_bound_scatter(config, args.seed, workers=workers)
        if args.search_budget > 0:
            records = [_searched_record(r, args.seed, args.search_budget)
                       for r in records]
        write_scatter_csv(records, args.out)
        rows = len(records)
    elif args.which in ("2", "3"):
        grid_n = args.samples if args.samples is not None else 40
        if grid_n == 0:
            _header_only(args.out, SURFACE_HEADER)
            _print_json({"out": args.out, "which": args.which, "rows": 0})
            return 0
        if args.which == "2":
            table = grid_bound_surface("coherent-info", (4, 4), grid_n)
        else:
            table = grid_bound_surface("coherence", (4,), grid_n)
        write_surface_csv(table, args.out)
        rows = len(table)
    else:
        raise BadMethod(f"unknown figure {args.which!r}")
    _print_json({"out": args.out, "which": args.which, "rows": rows})
    return 0


def _searched_record(record, seed, budget):
    """Replace the exact value with the searched minimum at its purities.

    The sampled state itself witnesses feasibility, so a failed or worse
    search falls back to the record's own exact value.
    """
    rng = np.random.default_rng(np.random.SeedSequence([int(seed),
                                                        int(record.index)]))
    try:
        _, found = search_min_coherent_info(record.gamma_global,
                                            record.gamma_marginal,
                                            record.dims, budget, rng)
    except ProjectionFailed:
        return record
    if found >= record.exact:
        return record
    return dataclasses.replace(record, exact=found)


def cmd_make_state(args) -> int:
    kind = args.kind
    rng = make_stream(args.seed)
    if kind == "bell":
        dims = args.dims or (2, 2)
        if tuple(dims) != (2, 2):
            raise DimMismatch("bell states live on dims 2,2")
        psi = np.zeros(4, dtype=np.complex128)
        psi[0] = psi[3] = 1.0 / math.sqrt(2.0)
        rho = validate_density(np.outer(psi, psi.conj()), dims)
    elif kind == "ghz":
        dims = args.dims or (2, 2, 2)
        if len(dims) < 2 or any(d != 2 for d in dims):
            raise DimMismatch("ghz states need at least two qubit factors")
        total = int(np.prod(dims))
        psi = np.zeros(total, dtype=np.complex128)
        psi[0] = psi[-1] = 1.0 / math.sqrt(2.0)
        rho = validate_density(np.outer(psi, psi.conj()), dims)
    elif kind == "plus":
        dims = args.dims or (4,)
        total = int(np.prod(dims))
        psi = np.full(total, 1.0 / math.sqrt(total), dtype=np.complex128)
        rho = validate_density(np.outer(psi, psi.conj()), dims)
    elif kind == "maximally-mixed":
        dims = args.dims or (2,)
        total = int(np.prod(dims))
        rho = validate_density(np.eye(total) / total, dims)
    elif kind == "random-pure":
        rho = random_pure_state(args.dims or (2, 2), rng)
    elif kind == "random-mixed":
        rho = random_mixed_state(args.dims or (2, 2), args.ancilla_dim, rng)
    else:
        raise BadMethod(f"unknown state kind {kind!r}")
    save_state_json(rho, args.out)
    _print_json({
        "out": args.out,
        "kind": kind,
        "dims": list(rho.dims),
        "purity": _round12(rho.purity),
    })
    return 0


def _worker_count() -> int:
    raw = os.environ.get("PURITY_BOUNDS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purity-bounds",
        description="Two-sided bounds on information quantities from purities, "
                    "plus measurement simulation and dataset emission.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="bound interval from measured purities")
    b.add_argument("--quantity", required=True,
                   choices=["coherent-info", "coherence", "multi-info"])
    b.add_argument("--gamma-global", type=float, required=True,
                   help="global (joint) purity")
    b.add_argument("--gamma-marginal", type=float, nargs="+", required=True,
                   help="marginal purity; dephased purity for coherence; "
                        "one value per subsystem for multi-info")
    b.add_argument("--dims", type=_dims_arg, required=True,
                   help="subsystem dims, e.g. 2,2")
    b.set_defaults(func=cmd_bounds)

    a = sub.add_parser("analyze", help="exact value and bounds from a state file")
    a.add_argument("--state", required=True)
    a.add_argument("--quantity", required=True,
                   choices=["coherent-info", "coherence", "multi-info"])
    a.add_argument("--basis", choices=["computational"], default="computational",
                   help="dephasing reference basis")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="finite-shot purity estimation")
    s.add_argument("--state", required=True)
    s.add_argument("--method", required=True,
                   choices=["ancilla-swap", "bell-basis", "shift-2", "shift-3",
                            "shift-4", "ancilla-dephased"])
    s.add_argument("--shots", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--propagate", choices=["coherent-info", "coherence"],
                   help="also bound the quantity from the estimated purities")
    s.set_defaults(func=cmd_simulate)

    f = sub.add_parser("figure", help="emit a CSV dataset")
    f.add_argument("--which", required=True, choices=["1a", "1b", "2", "3"])
    f.add_argument("--samples", type=int, default=None,
                   help="scatter sample count (1a/1b) or grid points per axis "
                        "(2/3); 0 writes a header-only file")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out", required=True)
    f.add_argument("--search-budget", type=int, default=0,
                   help="when > 0, replace the exact column of 1a/1b with a "
                        "stochastic search minimum at each record's purities")
    f.set_defaults(func=cmd_figure)

    m = sub.add_parser("make-state", help="write a state file")
    m.add_argument("--kind", required=True,
                   choices=["bell", "ghz", "plus", "maximally-mixed",
                            "random-pure", "random-mixed"])
    m.add_argument("--dims", type=_dims_arg, default=None)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--ancilla-dim", type=int, default=2)
    m.add_argument("--out", required=True)
    m.set_defaults(func=cmd_make_state)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except PurityBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
