"""Command-line front end.

Subcommands
-----------
hom
    Two identical mode-n photons through the frequency beam splitter; emits
    a JSON report with the (n, n) coincidence probability and both arm
    marginals.
metrology
    Phase-precision sweep; emits CSV rows ``n_photons,phi,estimator,
    delta_phi``. ``--photons`` accepts a single even integer or a range
    ``A..B`` (step 2). Without ``--phase`` the operating point minimizing
    delta-phi is chosen per row.
fgbs prob / fgbs sample
    Pattern probability, or seeded pattern samples as JSON lines, for the
    Gaussian state prepared by a circuit file.
wigner
    Single-mode Wigner field of a circuit's output state as CSV.

Outputs are byte-deterministic for identical inputs and seed: JSON is
emitted with sorted keys and CSV numbers with 17 significant digits. Errors
are reported as a JSON object on stderr and a distinct exit code:
2 file-not-found, 3 schema violation, 4 cost guard, 5 insufficient sampling
mass, 1 anything else. The TFSIM_MAX_COST environment variable relaxes or
tightens the cost guards.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fgbs, metrology, twophoton
from .circuit import parse_circuit, run_circuit
from .exceptions import (
    CostGuardError,
    InsufficientMassError,
    SchemaError,
    TfsimError,
    UnknownGateError,
)
from .gaussian import PhaseSpaceGrid, wigner_csv_text

__all__ = ["main"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FILE_NOT_FOUND = 2
EXIT_SCHEMA = 3
EXIT_COST_GUARD = 4
EXIT_INSUFFICIENT_MASS = 5


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _load_circuit(path):
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def _parse_pattern(text):
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"pattern must be comma-separated integers, got {text!r}") from exc
    if any(v < 0 for v in values):
        raise ValueError("pattern entries must be nonnegative")
    return tuple(values)


def _parse_photons(text):
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if lo > hi:
            raise ValueError(f"empty photon range {text!r}")
        return list(range(lo, hi + 1, 2))
    return [int(text)]


def _parse_grid(text):
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise ValueError(
            "grid must be 'wmin:wmax:count,tmin:tmax:count[,origin]'"
        )
    axes = []
    for part in parts[:2]:
        lo_text, hi_text, count_text = part.split(":")
        axes.append((float(lo_text), float(hi_text), int(count_text)))
    origin = float(parts[2]) if len(parts) == 3 else 0.0
    (wmin, wmax, wcount), (tmin, tmax, tcount) = axes
    return PhaseSpaceGrid(
        omega_min=wmin,
        omega_max=wmax,
        omega_count=wcount,
        t_min=tmin,
        t_max=tmax,
        t_count=tcount,
        origin=origin,
    )


def _cmd_hom(args):
    jsa = twophoton.hom_output(args.n)
    payload = {
        "command": "hom",
        "n": args.n,
        "coincidence": {
            "n": args.n,
            "m": args.n,
            "probability": twophoton.coincidence_probability(jsa, args.n, args.n),
        },
        "marginal_a": twophoton.mode_marginal(jsa, "a").tolist(),
        "marginal_b": twophoton.mode_marginal(jsa, "b").tolist(),
        "cutoff": jsa.cutoff,
    }
    return _json_text(payload)


def _cmd_metrology(args):
    values = _parse_photons(args.photons)
    rows = metrology.precision_sweep(values, args.estimator, phi=args.phase)
    return metrology.sweep_csv_text(rows)


def _cmd_fgbs_prob(args):
    spec = _load_circuit(args.circuit)
    dist = fgbs.build_distribution(run_circuit(spec))
    pattern = _parse_pattern(args.pattern)
    payload = {
        "command": "fgbs-prob",
        "modes": spec.modes,
        "pattern": list(pattern),
        "probability": fgbs.probability(dist, pattern),
    }
    return _json_text(payload)


def _cmd_fgbs_sample(args):
    spec = _load_circuit(args.circuit)
    dist = fgbs.build_distribution(run_circuit(spec))
    samples = fgbs.sample(dist, args.shots, args.seed, args.cutoff)
    return fgbs.samples_to_jsonl(samples)


def _cmd_wigner(args):
    spec = _load_circuit(args.circuit)
    state = run_circuit(spec)
    return wigner_csv_text(state, _parse_grid(args.grid), mode=args.mode)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tfsim",
        description="Time-frequency single-photon simulator: HOM interference, "
        "phase metrology, Gaussian boson sampling over spectral modes, and "
        "Wigner phase-space maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    hom = sub.add_parser("hom", help="two identical photons through the beam splitter")
    hom.add_argument("--n", type=int, default=1, help="HG order of both input photons")
    hom.add_argument("--out", default=None, help="output file (default stdout)")
    hom.set_defaults(handler=_cmd_hom)

    met = sub.add_parser("metrology", help="phase-precision sweep as CSV")
    met.add_argument(
        "--photons", required=True, help="total index N, or an even range like 2..20"
    )
    met.add_argument(
        "--estimator",
        choices=sorted(metrology.ESTIMATORS),
        default="fisher",
        help="precision estimator (default fisher)",
    )
    met.add_argument(
        "--phase",
        type=float,
        default=None,
        help="operating point in (0, pi); omit to optimize per row",
    )
    met.add_argument("--out", default=None, help="output file (default stdout)")
    met.set_defaults(handler=_cmd_metrology)

    fgbs_parser = sub.add_parser("fgbs", help="Gaussian boson sampling over HG patterns")
    fgbs_sub = fgbs_parser.add_subparsers(dest="fgbs_command", required=True)

    prob = fgbs_sub.add_parser("prob", help="probability of one detection pattern")
    prob.add_argument("--circuit", required=True, help="circuit JSON file")
    prob.add_argument("--pattern", required=True, help="comma-separated mode orders")
    prob.add_argument("--out", default=None, help="output file (default stdout)")
    prob.set_defaults(handler=_cmd_fgbs_prob)

    samp = fgbs_sub.add_parser("sample", help="draw seeded detection-pattern samples")
    samp.add_argument("--circuit", required=True, help="circuit JSON file")
    samp.add_argument("--shots", type=int, default=1000, help="number of samples")
    samp.add_argument("--seed", type=int, default=0, help="RNG seed")
    samp.add_argument("--cutoff", type=int, default=8, help="per-mode index cutoff")
    samp.add_argument("--out", default=None, help="output file (default stdout)")
    samp.set_defaults(handler=_cmd_fgbs_sample)

    wig = sub.add_parser("wigner", help="single-mode Wigner field as CSV")
    wig.add_argument("--circuit", required=True, help="circuit JSON file")
    wig.add_argument("--mode", type=int, default=0, help="mode to reduce to")
    wig.add_argument(
        "--grid",
        default="-4:4:81,-4:4:81",
        help="grid spec wmin:wmax:count,tmin:tmax:count[,origin]",
    )
    wig.add_argument("--out", default=None, help="output file (default stdout)")
    wig.set_defaults(handler=_cmd_wigner)

    return parser


def _emit_error(kind, message, code):
    sys.stderr.write(
        _json_text({"error": {"type": kind, "message": message, "exit_code": code}})
    )
    return code


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        text = args.handler(args)
    except FileNotFoundError as exc:
        return _emit_error("file-not-found", str(exc), EXIT_FILE_NOT_FOUND)
    except UnknownGateError as exc:
        return _emit_error("unknown-gate", str(exc), EXIT_SCHEMA)
    except SchemaError as exc:
        return _emit_error("schema-violation", str(exc), EXIT_SCHEMA)
    except CostGuardError as exc:
        return _emit_error("cost-guard", str(exc), EXIT_COST_GUARD)
    except InsufficientMassError as exc:
        return _emit_error("insufficient-mass", str(exc), EXIT_INSUFFICIENT_MASS)
    except (TfsimError, ValueError, ArithmeticError) as exc:
        return _emit_error("error", str(exc), EXIT_ERROR)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
