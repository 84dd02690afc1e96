"""State files and sweep CSV records."""
from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .states import DensityMatrix, validate

SWEEP_FIELDS = ("family", "d", "param_name", "param_value", "d_n", "d_n_prime", "closed_paper", "discord")


def fmt(x) -> str:
    """Decimal text at 17 significant digits; ``None`` becomes an empty field."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def state_to_dict(rho: DensityMatrix) -> dict:
    m = rho.matrix
    return {
        "dim_a": rho.dim_a,
        "dim_b": rho.dim_b,
        "re": [[float(format(v, ".17g")) for v in row] for row in m.real],
        "im": [[float(format(v, ".17g")) for v in row] for row in m.imag],
    }


def write_state(rho: DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(rho), indent=1) + "\n")


def parse_state(doc: dict) -> DensityMatrix:
    """Build and validate a state from a decoded state-file document.

    Raises ``ValueError`` for structural problems and
    :class:`~ncdiscord.states.StateValidationError` for invalid states.
    """
    try:
        dA, dB = int(doc["dim_a"]), int(doc["dim_b"])
        re = np.array(doc["re"], dtype=float)
        im = np.array(doc["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed state file: {exc}") from exc
    n = dA * dB
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(f"re/im must both be {n}x{n} arrays, got {re.shape} and {im.shape}")
    return validate(re + 1j * im, dA, dB)


def read_state(path) -> DensityMatrix:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not a state file ({exc})") from exc
    return parse_state(doc)


@dataclass(frozen=True)
class SweepRecord:
    family: str
    d: int
    param_name: str
    param_value: float
    d_n: float
    d_n_prime: float
    closed_paper: float | None = None
    discord: float | None = None

    def row(self) -> str:
        return ",".join(fmt(getattr(self, f.name)) for f in fields(self))


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for r in rows:
            fh.write(r + "\n")


def write_sweep(records, path) -> None:
    write_csv(path, SWEEP_FIELDS, (r.row() for r in records))
