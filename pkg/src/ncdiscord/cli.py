"""Command-line entry point: ``ncdiscord {compute,sweep,surface,make-state,crossover}``."""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .discord import discord_numeric, pure_state_crossovers
from .io import SweepRecord, fmt, read_state, write_csv, write_state, write_sweep
from .measures import (
    NormKind,
    bell_diagonal_closed,
    bell_diagonal_closed_grid,
    d_n,
    d_n_prime,
    d_n_pure_closed,
    d_n_symmetric,
    isotropic_closed_paper,
    werner_closed_paper,
)
from .numerics import NumericalError
from .states import (
    RNG_ALGORITHM,
    BELL_SIGNS,
    BellCoefficients,
    SchmidtVector,
    StateValidationError,
    TetrahedronViolation,
    bell_coefficients_of,
    bell_diagonal,
    isotropic,
    max_entangled,
    pure_from_schmidt,
    random_density,
    rho_family,
    werner,
)

EXIT_OK, EXIT_INVALID_STATE, EXIT_BAD_ARGS, EXIT_NUMERIC = 0, 1, 2, 3

FAMILY_PARAM = {
    "werner": "alpha",
    "isotropic": "beta",
    "rho1": "p",
    "rho2": "p",
    "rho3": "p",
    "rho4": "p",
    "pure2": "lambda1",
}


class BadArguments(ValueError):
    pass


def compute_report(rho, seed=None, with_discord=True) -> dict:
    report = {
        "dims": list(rho.dims),
        "d_n": d_n(rho).value,
        "d_n_prime": d_n_prime(rho).value,
        "d_n_symmetric_trace": d_n_symmetric(rho, NormKind.TRACE).value,
        "d_n_symmetric_hs": d_n_symmetric(rho, NormKind.HS).value,
        "method": "direct",
        "metadata": {"version": __version__, "rng": RNG_ALGORITHM, "seed": seed},
    }
    if with_discord and rho.dim_b == 2:
        res = discord_numeric(rho)
        report["discord"] = res.value
        report["discord_meta"] = {
            "method": "numeric_minimization",
            "converged": res.converged,
            "iterations": res.iterations,
            "argmin_theta": res.argmin_axis.theta,
            "argmin_phi": res.argmin_axis.phi,
        }
    return report


def _family_state(family: str, d: int, x: float):
    if family == "werner":
        return werner(d, x)
    if family == "isotropic":
        return isotropic(d, x)
    if family == "pure2":
        return pure_from_schmidt(SchmidtVector.normalized([x, math.sqrt(max(0.0, 1 - x * x))]), 2)
    return rho_family(int(family[3:]), x)


def _closed_paper(family: str, d: int, x: float, rho):
    if family == "werner":
        return werner_closed_paper(d, x)
    if family == "isotropic":
        return isotropic_closed_paper(d, x)
    if family == "pure2":
        return d_n_pure_closed(SchmidtVector.normalized([x, math.sqrt(max(0.0, 1 - x * x))]), variant="printed")
    c = np.clip(bell_coefficients_of(rho), -1.0, 1.0)
    return bell_diagonal_closed(BellCoefficients(*c))


def sweep_records(family: str, d: int, steps: int, with_discord: bool = False) -> list[SweepRecord]:
    if family not in FAMILY_PARAM:
        raise BadArguments(f"unknown family {family!r}")
    if family in ("werner", "isotropic"):
        if d not in (2, 3, 4):
            raise BadArguments(f"{family} sweeps support d in 2, 3, 4 (got {d})")
    elif d != 2:
        raise BadArguments(f"{family} is a two-qubit family; d must be 2 (got {d})")
    if steps < 1:
        raise BadArguments("steps must be >= 1")
    out = []
    for k in range(steps + 1):
        x = k / steps
        rho = _family_state(family, d, x)
        disc = discord_numeric(rho).value if (with_discord and rho.dim_b == 2) else None
        out.append(
            SweepRecord(
                family, d, FAMILY_PARAM[family], x,
                d_n(rho).value, d_n_prime(rho).value,
                _closed_paper(family, d, x, rho), disc,
            )
        )
    return out


def surface_points(measure: str, value: float, tol: float, grid: int):
    """Lattice points of the Bell tetrahedron with ``|measure - value| <= tol``."""
    if measure not in ("dn", "dnp"):
        raise BadArguments(f"measure must be 'dn' or 'dnp', got {measure!r}")
    if value < 0 or tol < 0 or grid < 2:
        raise BadArguments("need value >= 0, tol >= 0 and grid >= 2")
    axis = np.linspace(-1.0, 1.0, grid)
    c1, c2, c3 = (a.ravel() for a in np.meshgrid(axis, axis, axis, indexing="ij"))
    lam = np.stack([0.25 * (1 + s[0] * c1 + s[1] * c2 + s[2] * c3) for s in BELL_SIGNS.values()])
    inside = np.all(lam >= -1e-12, axis=0)
    norm = NormKind.TRACE if measure == "dn" else NormKind.HS
    vals = bell_diagonal_closed_grid(c1, c2, c3, norm)
    keep = inside & (np.abs(vals - value) <= tol)
    return np.stack([c1[keep], c2[keep], c3[keep], vals[keep]], axis=1)


def make_state(args):
    fam = args.family
    if fam == "maxent":
        return max_entangled(args.d)
    if fam == "werner":
        return werner(args.d, args.alpha)
    if fam == "isotropic":
        return isotropic(args.d, args.beta)
    if fam == "pure":
        if not args.schmidt:
            raise BadArguments("--schmidt is required for the pure family")
        return pure_from_schmidt(SchmidtVector(tuple(args.schmidt)), args.d)
    if fam == "bell":
        if not args.c:
            raise BadArguments("--c c1 c2 c3 is required for the bell family")
        return bell_diagonal(args.c)
    if fam in ("rho1", "rho2", "rho3", "rho4"):
        return rho_family(int(fam[3:]), args.p)
    if fam == "random":
        return random_density(args.dims[0], args.dims[1], args.seed)
    raise BadArguments(f"unknown family {fam!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncdiscord", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="all measures for one state file")
    p.add_argument("--state", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-discord", action="store_true", help="skip the numeric discord (qubit B only)")

    p = sub.add_parser("sweep", help="one-parameter family sweep to CSV")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_PARAM))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out", required=True)
    p.add_argument("--with-discord", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("surface", help="Bell-tetrahedron level-set point cloud to CSV")
    p.add_argument("--measure", required=True, choices=("dn", "dnp"))
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--tol", type=float, required=True)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--out", required=True)

    p = sub.add_parser("make-state", help="write a named state as a state file")
    p.add_argument("--family", required=True,
                   choices=("maxent", "werner", "isotropic", "pure", "bell", "rho1", "rho2", "rho3", "rho4", "random"))
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--c", type=float, nargs=3)
    p.add_argument("--schmidt", type=float, nargs="+")
    p.add_argument("--dims", type=int, nargs=2, default=(2, 2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("crossover", help="two-qubit pure-state crossover of D_N and the discord")
    p.add_argument("--json", action="store_true")
    return ap


def _run(args) -> int:
    if args.command == "compute":
        rho = read_state(args.state)
        report = compute_report(rho, seed=args.seed, with_discord=not args.no_discord)
        if args.json:
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            for key in ("d_n", "d_n_prime", "d_n_symmetric_trace", "d_n_symmetric_hs", "discord"):
                if key in report:
                    print(f"{key}: {fmt(report[key])}")
            print(f"dims: {report['dims'][0]}x{report['dims'][1]}  version: {__version__}  rng: {RNG_ALGORITHM}")
    elif args.command == "sweep":
        write_sweep(sweep_records(args.family, args.d, args.steps, args.with_discord), args.out)
    elif args.command == "surface":
        pts = surface_points(args.measure, args.value, args.tol, args.grid)
        write_csv(args.out, ("c1", "c2", "c3", "measure_value"), (",".join(fmt(v) for v in row) for row in pts))
    elif args.command == "make-state":
        write_state(make_state(args), args.out)
    elif args.command == "crossover":
        out = {
            f"{norm.value}_log{base}": pure_state_crossovers(norm, b)
            for norm in NormKind
            for base, b in (("2", 2.0), ("e", math.e))
        }
        if args.json:
            print(json.dumps(out, indent=2))
        else:
            for k, v in out.items():
                print(f"{k}: {', '.join(fmt(x) for x in v) if v else 'none'}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except StateValidationError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE if args.command == "compute" else EXIT_BAD_ARGS
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (BadArguments, TetrahedronViolation, ValueError) as exc:
        code = EXIT_INVALID_STATE if args.command == "compute" else EXIT_BAD_ARGS
        print(f"error: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
