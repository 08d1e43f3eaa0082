"""Configuration-driven command line front end.

Subcommands:

* ``sweep``    -- distance, current and charge-fluctuation table over an
  (E_J/E_C, alpha) grid at fixed frustration.
* ``spectrum`` -- lowest energy levels versus frustration, plus the
  ground-state current distribution at f = 0.5 as a separate table.
* ``distance`` -- a single flux-qubit distance run.
* ``oracles``  -- machine-readable verification report of the
  closed-form reference cases.

Options may come from a flat TOML config file (``--config``), with
command line flags overriding individual keys; flag names mirror config
keys exactly.  CSV output carries the full configuration echo in
``#``-prefixed comment lines and 17-significant-digit floats, so
re-running a command reproduces the bytes exactly (excluding the
timestamp header line).  Exit codes: 0 success, 1 parameter error,
2 oracle failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .basis import charge_basis, inner
from .distance import (
    DEFAULT_D_MAX,
    DEFAULT_RANK_TOL,
    DEFAULT_WEIGHT_TOL,
    distance,
)
from .errors import (
    CatsizeError,
    DegenerateCurrentError,
    InsufficientWeightError,
    ParameterError,
    UnreachableTargetError,
)
from .operators import (
    FLUX_QUBIT_OPERATOR_SETS,
    FluxQubitParams,
    current_operator,
    fermion_operator_set,
    flux_qubit_hamiltonian,
    flux_qubit_operator_set,
    two_mode_operator_set,
)
from .oracles import (
    GhzParams,
    asymmetric_pair,
    bec_pair,
    ghz_lambda,
    persistent_current_pair,
)
from .spectra import (
    charge_fluctuation,
    current_distribution,
    current_states_2d,
    current_states_filter,
    eig_hermitian,
    spectrum_vs_frustration,
)

EXTRACTION_METHODS = ("two_level", "filter")
FORMATS = ("csv", "json")

EXIT_OK = 0
EXIT_PARAMETER = 1
EXIT_ORACLE = 2
EXIT_IO = 3


@dataclass(frozen=True)
class SweepConfig:
    """Reproducible description of one sweep run."""

    ej_over_ec: tuple[float, ...]
    alpha: tuple[float, ...]
    f: float = 0.5
    delta_n: int = 6
    d_max: int = DEFAULT_D_MAX
    rank_tol: float = DEFAULT_RANK_TOL
    weight_tol: float = DEFAULT_WEIGHT_TOL
    operator_set: str = "hops_and_numbers"
    extraction: str = "two_level"
    format: str = "csv"
    output: str | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.ej_over_ec:
            raise ParameterError("ej_over_ec grid must not be empty")
        if not self.alpha:
            raise ParameterError("alpha grid must not be empty")
        if self.delta_n < 1:
            raise ParameterError(f"delta_n must be >= 1, got {self.delta_n}")
        if self.operator_set not in FLUX_QUBIT_OPERATOR_SETS:
            raise ParameterError(
                f"operator_set must be one of {FLUX_QUBIT_OPERATOR_SETS}"
            )
        if self.extraction not in EXTRACTION_METHODS:
            raise ParameterError(
                f"extraction must be one of {EXTRACTION_METHODS}"
            )
        if self.format not in FORMATS:
            raise ParameterError(f"format must be one of {FORMATS}")
        if self.jobs < 1:
            raise ParameterError(f"jobs must be >= 1, got {self.jobs}")


def sweep_columns(d_max: int) -> list[str]:
    return (
        ["ej_over_ec", "alpha", "d_mean"]
        + [f"p_{d}" for d in range(d_max + 1)]
        + ["residual", "current", "charge_fluctuation", "gap", "chain_dims", "error"]
    )


def compute_sweep_row(config: SweepConfig, ej_over_ec: float, alpha: float) -> dict:
    """One (E_J/E_C, alpha) grid point; extraction errors land in 'error'."""
    row: dict = {name: "" for name in sweep_columns(config.d_max)}
    row["ej_over_ec"] = ej_over_ec
    row["alpha"] = alpha
    try:
        params = FluxQubitParams(ej_over_ec, alpha, config.f, config.delta_n)
        basis = charge_basis(config.delta_n)
        hamiltonian = flux_qubit_hamiltonian(params, basis)
        eig = eig_hermitian(hamiltonian)
        i_op = current_operator(params, basis)
        if config.extraction == "two_level":
            pair = current_states_2d(eig, i_op)
        else:
            pair = current_states_filter(eig.eigenvectors[0], i_op)
        ops = flux_qubit_operator_set(basis, config.operator_set)
        dist = distance(
            pair.plus,
            pair.minus,
            ops,
            d_max=config.d_max,
            rank_tol=config.rank_tol,
            weight_tol=config.weight_tol,
        )
    except (
        DegenerateCurrentError,
        InsufficientWeightError,
        UnreachableTargetError,
    ) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row["d_mean"] = dist.mean
    for d in range(config.d_max + 1):
        row[f"p_{d}"] = dist.weights[d] if d < len(dist.weights) else 0.0
    row["residual"] = dist.residual
    row["current"] = pair.current
    row["charge_fluctuation"] = charge_fluctuation(eig.eigenvectors[0])
    row["gap"] = float(eig.eigenvalues[1] - eig.eigenvalues[0])
    row["chain_dims"] = ";".join(str(n) for n in dist.chain_dims)
    return row


def _row_star(args) -> dict:
    return compute_sweep_row(*args)


def run_sweep(config: SweepConfig) -> list[dict]:
    """All grid rows, in grid order (E_J/E_C outer, alpha inner)."""
    points = [
        (config, ej, alpha) for ej in config.ej_over_ec for alpha in config.alpha
    ]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_row_star, points))
    return [_row_star(point) for point in points]


def run_spectrum(
    ej_over_ec: float,
    alpha: float,
    delta_n: int,
    f_grid,
    k_levels: int,
) -> tuple[np.ndarray, list[tuple[float, float]]]:
    """Spectrum table plus the ground-state current distribution at f = 0.5."""
    table = spectrum_vs_frustration(ej_over_ec, alpha, delta_n, f_grid, k_levels)
    params = FluxQubitParams(ej_over_ec, alpha, 0.5, delta_n)
    basis = charge_basis(delta_n)
    eig = eig_hermitian(flux_qubit_hamiltonian(params, basis))
    inset = current_distribution(
        eig.eigenvectors[0], current_operator(params, basis)
    )
    return table, inset


def run_oracle_suite() -> dict:
    """Verify the closed-form reference cases; one entry per check."""
    checks: list[dict] = []

    def add(name: str, value: float, bound: float, comparison: str) -> None:
        passed = value < bound if comparison == "<" else value > bound
        checks.append(
            {
                "name": name,
                "value": float(value),
                "bound": float(bound),
                "comparison": comparison,
                "passed": bool(passed),
            }
        )

    thetas = np.linspace(0.0, math.pi / 2, 20)
    worst_norm = 0.0
    worst_mean = 0.0
    for n in range(1, 31):
        for theta in thetas:
            lam = ghz_lambda(GhzParams(n, float(theta)))
            weights = lam**2
            worst_norm = max(worst_norm, abs(weights.sum() - 1.0))
            mean = float(np.dot(np.arange(n + 1), weights))
            worst_mean = max(worst_mean, abs(mean - n * math.sin(theta) ** 2))
    add("ghz_lambda_normalization", worst_norm, 1e-12, "<")
    add("ghz_lambda_mean_n_sin2", worst_mean, 1e-10, "<")

    worst_overlap = 0.0
    for n in (1, 4, 10):
        for theta in (0.1, 0.7, 1.3):
            a, b = bec_pair(GhzParams(n, theta))
            worst_overlap = max(
                worst_overlap, abs(inner(a, b) - math.cos(theta) ** n)
            )
    add("bec_overlap_cos_pow_n", worst_overlap, 1e-12, "<")

    for theta in (0.1, 0.3, math.pi / 4, 1.0, math.pi / 2):
        params = GhzParams(10, theta)
        a, b = bec_pair(params)
        ops = two_mode_operator_set(a.basis)
        dist = distance(a, b, ops, d_max=10, weight_tol=1e-12)
        expected = ghz_lambda(params) ** 2
        computed = np.zeros(11)
        computed[: len(dist.weights)] = dist.weights
        deviation = float(np.max(np.abs(computed - expected)))
        add(f"bec_pipeline_n10_theta_{theta:.4f}", deviation, 1e-8, "<")

    a, b = persistent_current_pair(6, (1, 2, 3), (4, 5, 6))
    dist = distance(a, b, fermion_operator_set(a.basis), d_max=6, weight_tol=1e-12)
    add("fermion_three_mode_swap_p3", abs(dist.weights[3] - 1.0), 1e-10, "<")

    a, b = asymmetric_pair(3)
    ops = two_mode_operator_set(a.basis)
    forward = distance(a, b, ops, d_max=3, weight_tol=1e-12)
    backward = distance(b, a, ops, d_max=3, weight_tol=1e-12)
    add("asymmetric_forward_p1", abs(forward.weights[1] - 1.0), 1e-10, "<")
    add("asymmetric_backward_p1_below_one", backward.weights[1], 1.0 - 1e-6, "<")
    add("asymmetric_backward_p2_nonzero", backward.weights[2], 1e-6, ">")

    return {
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


# ---------------------------------------------------------------------------
# Output formatting


def format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_table_csv(
    stream, title: str, config_echo: dict, columns: list[str], rows: list[dict]
) -> None:
    stream.write(f"# {title}\n")
    for key, value in config_echo.items():
        stream.write(f"# {key} = {value}\n")
    stream.write(f"# generated: {datetime.now(timezone.utc).isoformat()}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[name]) for name in columns])


def write_table_json(
    stream, title: str, config_echo: dict, columns: list[str], rows: list[dict]
) -> None:
    payload = {
        "command": title,
        "config": config_echo,
        "columns": columns,
        "rows": rows,
    }
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _write_output(path: str | None, render) -> None:
    """Render into the output path, or stdout when no path is given."""
    if path is None:
        render(sys.stdout)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        render(handle)


def _sibling_path(path: str | None, tag: str) -> str | None:
    if path is None:
        return None
    stem, dot, suffix = path.rpartition(".")
    if not dot:
        return f"{path}.{tag}"
    return f"{stem}.{tag}.{suffix}"


# ---------------------------------------------------------------------------
# Argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise ParameterError(message)


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise ParameterError(f"expected comma-separated reals, got {text!r}") from None


def build_parser() -> _Parser:
    parser = _Parser(
        prog="catsize",
        description="Many-body distance between quantum states of a flux qubit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grids: bool) -> None:
        p.add_argument("--config", help="flat TOML config file")
        if grids:
            p.add_argument("--ej-over-ec", type=_float_list, dest="ej_over_ec")
            p.add_argument("--alpha", type=_float_list, dest="alpha")
        else:
            p.add_argument("--ej-over-ec", type=float, dest="ej_over_ec")
            p.add_argument("--alpha", type=float, dest="alpha")
        p.add_argument("--f", type=float)
        p.add_argument("--delta-n", type=int, dest="delta_n")
        p.add_argument("--d-max", type=int, dest="d_max")
        p.add_argument("--rank-tol", type=float, dest="rank_tol")
        p.add_argument("--weight-tol", type=float, dest="weight_tol")
        p.add_argument("--operator-set", choices=FLUX_QUBIT_OPERATOR_SETS,
                       dest="operator_set")
        p.add_argument("--extraction", choices=EXTRACTION_METHODS)
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--output")
        p.add_argument("--jobs", type=int)

    sweep = sub.add_parser("sweep", help="distance table over an (E_J/E_C, alpha) grid")
    common(sweep, grids=True)

    spectrum = sub.add_parser("spectrum", help="energy levels versus frustration")
    common(spectrum, grids=False)
    spectrum.add_argument("--f-min", type=float, dest="f_min")
    spectrum.add_argument("--f-max", type=float, dest="f_max")
    spectrum.add_argument("--f-points", type=int, dest="f_points")
    spectrum.add_argument("--k-levels", type=int, dest="k_levels")

    single = sub.add_parser("distance", help="one flux-qubit distance run")
    common(single, grids=False)

    oracles = sub.add_parser("oracles", help="verify the closed-form reference cases")
    oracles.add_argument("--output")

    return parser


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, "rb") as handle:
        try:
            return tomllib.load(handle)
        except tomllib.TOMLDecodeError as exc:
            raise ParameterError(f"cannot parse config file {path}: {exc}") from None


def _merged(args: argparse.Namespace, file_config: dict, key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in file_config:
        return file_config[key]
    return default


def _as_grid(value) -> tuple[float, ...]:
    if isinstance(value, (int, float)):
        return (float(value),)
    return tuple(float(v) for v in value)


def build_sweep_config(args: argparse.Namespace) -> SweepConfig:
    file_config = _load_config_file(args.config)
    ej = _merged(args, file_config, "ej_over_ec")
    alpha = _merged(args, file_config, "alpha")
    if ej is None:
        raise ParameterError("an ej_over_ec grid is required (flag or config)")
    if alpha is None:
        raise ParameterError("an alpha grid is required (flag or config)")
    return SweepConfig(
        ej_over_ec=_as_grid(ej),
        alpha=_as_grid(alpha),
        f=float(_merged(args, file_config, "f", 0.5)),
        delta_n=int(_merged(args, file_config, "delta_n", 6)),
        d_max=int(_merged(args, file_config, "d_max", DEFAULT_D_MAX)),
        rank_tol=float(_merged(args, file_config, "rank_tol", DEFAULT_RANK_TOL)),
        weight_tol=float(
            _merged(args, file_config, "weight_tol", DEFAULT_WEIGHT_TOL)
        ),
        operator_set=str(
            _merged(args, file_config, "operator_set", "hops_and_numbers")
        ),
        extraction=str(_merged(args, file_config, "extraction", "two_level")),
        format=str(_merged(args, file_config, "format", "csv")),
        output=_merged(args, file_config, "output"),
        jobs=int(_merged(args, file_config, "jobs", 1)),
    )


def config_echo(config: SweepConfig) -> dict:
    echo = asdict(config)
    echo["ej_over_ec"] = list(config.ej_over_ec)
    echo["alpha"] = list(config.alpha)
    return echo


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = build_sweep_config(args)
    rows = run_sweep(config)
    columns = sweep_columns(config.d_max)
    writer = write_table_csv if config.format == "csv" else write_table_json
    _write_output(
        config.output,
        lambda stream: writer(stream, "sweep", config_echo(config), columns, rows),
    )
    return EXIT_OK


def _cmd_distance(args: argparse.Namespace) -> int:
    file_config = _load_config_file(args.config)
    ej = _merged(args, file_config, "ej_over_ec")
    alpha = _merged(args, file_config, "alpha")
    if ej is None or alpha is None:
        raise ParameterError("distance needs --ej-over-ec and --alpha")
    config = build_sweep_config(args)
    row = compute_sweep_row(config, float(_as_grid(ej)[0]), float(_as_grid(alpha)[0]))
    columns = sweep_columns(config.d_max)
    writer = write_table_csv if config.format == "csv" else write_table_json
    _write_output(
        config.output,
        lambda stream: writer(
            stream, "distance", config_echo(config), columns, [row]
        ),
    )
    return EXIT_OK


def _cmd_spectrum(args: argparse.Namespace) -> int:
    file_config = _load_config_file(args.config)
    ej = float(_merged(args, file_config, "ej_over_ec", 20.0))
    alpha = float(_merged(args, file_config, "alpha", 1.0))
    delta_n = int(_merged(args, file_config, "delta_n", 6))
    f_min = float(_merged(args, file_config, "f_min", 0.0))
    f_max = float(_merged(args, file_config, "f_max", 1.0))
    f_points = int(_merged(args, file_config, "f_points", 41))
    k_levels = int(_merged(args, file_config, "k_levels", 5))
    fmt = str(_merged(args, file_config, "format", "csv"))
    output = _merged(args, file_config, "output")
    if f_points < 1:
        raise ParameterError(f"f_points must be >= 1, got {f_points}")

    f_grid = np.linspace(f_min, f_max, f_points)
    table, inset = run_spectrum(ej, alpha, delta_n, f_grid, k_levels)

    echo = {
        "ej_over_ec": ej,
        "alpha": alpha,
        "delta_n": delta_n,
        "f_min": f_min,
        "f_max": f_max,
        "f_points": f_points,
        "k_levels": k_levels,
        "format": fmt,
        "output": output,
    }
    spectrum_columns = ["f"] + [f"e_{k}" for k in range(k_levels)]
    spectrum_rows = [
        {name: float(value) for name, value in zip(spectrum_columns, row)}
        for row in table
    ]
    inset_columns = ["current", "weight"]
    inset_rows = [
        {"current": value, "weight": weight} for value, weight in inset
    ]
    writer = write_table_csv if fmt == "csv" else write_table_json
    _write_output(
        output,
        lambda stream: writer(stream, "spectrum", echo, spectrum_columns, spectrum_rows),
    )
    _write_output(
        _sibling_path(output, "current"),
        lambda stream: writer(
            stream, "spectrum_current_distribution", echo, inset_columns, inset_rows
        ),
    )
    return EXIT_OK


def _cmd_oracles(args: argparse.Namespace) -> int:
    report = run_oracle_suite()

    def render(stream) -> None:
        json.dump(report, stream, indent=2)
        stream.write("\n")

    _write_output(getattr(args, "output", None), render)
    return EXIT_OK if report["passed"] else EXIT_ORACLE


_COMMANDS = {
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
    "distance": _cmd_distance,
    "oracles": _cmd_oracles,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except CatsizeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
