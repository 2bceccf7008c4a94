"""Config-driven scenario runner.

Subcommands:
    tgk specfun eval --config FILE
    tgk solve spectral --config FILE
    tgk solve fourier --config FILE
    tgk verify --suite full|bounds|residuals --out DIR
    tgk demo illposed --alpha A --xi X [--threshold T] [--out FILE]

Scenario files are JSON documents; every run prints a report with the
scenario echo, wall time, and a sha256 manifest of the files written.  The
written files themselves carry no timestamps, so identical scenarios produce
byte-identical outputs.  Exit codes: 1 configuration, 2 domain/precondition,
3 numeric overflow, 4 ill-posedness.

The environment variable TGK_THREADS caps the thread pools of the numerical
backends; it must be read before the array libraries initialize, which is why
the heavy imports happen inside the command bodies.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import sys
import time
from pathlib import Path

import click

from .errors import (
    ConfigError,
    DomainError,
    IllPosedDecayError,
    PrecisionError,
    SeriesOverflowError,
    TgkError,
)

_EXIT_CONFIG = 1
_EXIT_DOMAIN = 2
_EXIT_OVERFLOW = 3
_EXIT_ILLPOSED = 4


def _apply_thread_cap() -> None:
    cap = os.environ.get("TGK_THREADS")
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                    "NUMEXPR_NUM_THREADS"):
            os.environ.setdefault(var, cap)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def _load_scenario(path: str, expected_command: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"scenario file {path} does not exist")
    try:
        scenario = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario file {path} is not valid JSON: {exc}") from exc
    if not isinstance(scenario, dict):
        raise ConfigError("scenario must be a JSON object")
    got = scenario.get("command")
    if got != expected_command:
        raise ConfigError(f"scenario command {got!r} does not match {expected_command!r}")
    return scenario


def _require(scenario: dict, key: str):
    if key not in scenario:
        raise ConfigError(f"scenario is missing the required key {key!r}")
    return scenario[key]


def _grid_from(spec, what: str):
    import numpy as np

    if isinstance(spec, list):
        return np.asarray([float(v) for v in spec])
    if isinstance(spec, dict):
        try:
            return np.linspace(float(spec["start"]), float(spec["stop"]), int(spec["count"]))
        except KeyError as exc:
            raise ConfigError(f"{what}: grid object needs start/stop/count") from exc
    raise ConfigError(f"{what}: expected a list or a start/stop/count object")


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _emit_report(scenario: dict, outputs: list[Path], t0: float) -> None:
    report = {
        "scenario": scenario,
        "outputs": [{"path": str(p), "sha256": _sha256(p)} for p in outputs],
        "wall_time_s": round(time.time() - t0, 3),
    }
    click.echo(json.dumps(report, indent=2))


def _run(body):
    """Execute a command body, mapping package errors to exit codes."""
    try:
        body()
    except ConfigError as exc:
        click.echo(f"error[config]: {exc}", err=True)
        sys.exit(_EXIT_CONFIG)
    except (SeriesOverflowError, PrecisionError) as exc:
        click.echo(f"error[overflow]: {exc}", err=True)
        sys.exit(_EXIT_OVERFLOW)
    except IllPosedDecayError as exc:
        click.echo(f"error[ill-posed]: {exc}", err=True)
        sys.exit(_EXIT_ILLPOSED)
    except TgkError as exc:
        click.echo(f"error[domain]: {exc}", err=True)
        sys.exit(_EXIT_DOMAIN)


# --------------------------------------------------------------------------

@click.group()
def main() -> None:
    """Special functions, solvers, and claim verification for degenerate
    fractional elliptic problems."""
    _apply_thread_cap()


@main.group()
def specfun() -> None:
    """Special-function evaluation."""


@specfun.command("eval")
@click.option("--config", "config_path", required=True, type=click.Path())
def specfun_eval(config_path: str) -> None:
    """Evaluate a special function over a grid of arguments into CSV."""

    def body():
        t0 = time.time()
        scenario = _load_scenario(config_path, "specfun-eval")
        from .specfun import KSParams, airy_ai, bessel_k, kilbas_saigo, log_gamma, mittag_leffler

        fn = _require(scenario, "function")
        pars = scenario.get("params", {})
        zs = _grid_from(_require(scenario, "z"), "z")
        rows = []
        if fn == "kilbas_saigo":
            p = KSParams(float(_require(pars, "alpha")), float(_require(pars, "m")),
                         float(_require(pars, "n")))
            header = "z,value,abs_error_estimate,terms_used,cancellation_index"
            for z in zs:
                r = kilbas_saigo(p, float(z))
                rows.append(f"{_fmt(z)},{_fmt(r.value)},{_fmt(r.abs_error_estimate)},"
                            f"{r.terms_used},{_fmt(r.cancellation_index)}")
        elif fn == "mittag_leffler":
            a, b = float(_require(pars, "alpha")), float(_require(pars, "beta"))
            header = "z,value,abs_error_estimate,terms_used,cancellation_index"
            for z in zs:
                r = mittag_leffler(a, b, float(z))
                rows.append(f"{_fmt(z)},{_fmt(r.value)},{_fmt(r.abs_error_estimate)},"
                            f"{r.terms_used},{_fmt(r.cancellation_index)}")
        elif fn in ("log_gamma", "airy_ai", "bessel_k"):
            header = "z,value"
            for z in zs:
                if fn == "log_gamma":
                    v = log_gamma(float(z))
                elif fn == "airy_ai":
                    v = airy_ai(float(z))
                else:
                    v = bessel_k(float(_require(pars, "nu")), float(z))
                rows.append(f"{_fmt(z)},{_fmt(v)}")
        else:
            raise ConfigError(f"unknown function {fn!r}")
        out = Path(_require(scenario, "out"))
        _write_text(out, header + "\n" + "\n".join(rows) + "\n")
        _emit_report(scenario, [out], t0)

    _run(body)


@main.group()
def solve() -> None:
    """Boundary value problem solvers."""


def _make_data_callable(spec: dict, op):
    """Named boundary-data shapes for expansion scenarios."""
    import numpy as np

    kind = spec.get("kind")
    if kind == "sin_mode":
        k = int(_require(spec, "k"))
        return lambda y, edge=0: op.eigenfunction(k, y, edge)
    if kind == "gaussian":
        c = float(spec.get("center", 0.5 * (op.y_lo + op.y_hi)))
        w = float(spec.get("width", 0.1 * (op.y_hi - op.y_lo)))
        return lambda y, edge=0: np.exp(-(((np.asarray(y) - c) / w) ** 2))
    if kind == "bump":
        lo, hi = op.y_lo, op.y_hi
        return lambda y, edge=0: (np.asarray(y) - lo) * (hi - np.asarray(y)) / (hi - lo) ** 2
    raise ConfigError(f"unknown data kind {spec.get('kind')!r}")


@solve.command("spectral")
@click.option("--config", "config_path", required=True, type=click.Path())
def solve_spectral_cmd(config_path: str) -> None:
    """Eigenfunction-expansion solve; field written as x-major CSV."""

    def body():
        t0 = time.time()
        scenario = _load_scenario(config_path, "solve-spectral")
        import numpy as np

        from .operators import CoefficientVector, make_operator, project_boundary_data
        from .solver_spectral import (InfinityCondition, ProblemSpec, evaluate_field,
                                      solve_spectral)

        opspec = dict(_require(scenario, "operator"))
        kind = opspec.pop("kind", None)
        if kind is None:
            raise ConfigError("operator block needs a kind")
        op = make_operator(kind, **opspec)
        K = int(_require(scenario, "K"))
        dspec = _require(scenario, "data")
        if dspec.get("kind") == "coefficients":
            data = CoefficientVector(np.asarray([float(v) for v in _require(dspec, "values")]))
        else:
            data = project_boundary_data(_make_data_callable(dspec, op), op, K)
        cond = InfinityCondition(scenario.get("infinity_condition", "bounded"))
        prob = ProblemSpec(float(_require(scenario, "alpha")), float(_require(scenario, "beta")),
                           op, data, cond)
        sol = solve_spectral(prob, K)
        xg = _grid_from(_require(scenario, "x"), "x")
        y_count = int(scenario.get("y_count", 64))
        yg = np.linspace(op.y_lo, op.y_hi, y_count)
        field = evaluate_field(sol, xg, yg)
        lines = ["x,y,u"]
        for i, x in enumerate(xg):
            for j, y in enumerate(yg):
                lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(field[i, j])}")
        out = Path(_require(scenario, "out"))
        _write_text(out, "\n".join(lines) + "\n")
        _emit_report(scenario, [out], t0)

    _run(body)


@solve.command("fourier")
@click.option("--config", "config_path", required=True, type=click.Path())
def solve_fourier_cmd(config_path: str) -> None:
    """Multiplier solve on the periodic box; slices written as CSV columns."""

    def body():
        t0 = time.time()
        scenario = _load_scenario(config_path, "solve-fourier")
        import numpy as np

        from .operators import make_symbol
        from .solver_fourier import FourierProblem, solve_fourier

        sspec = dict(_require(scenario, "symbol"))
        kind = sspec.pop("kind", None)
        if kind is None:
            raise ConfigError("symbol block needs a kind")
        dim = int(sspec.pop("dimension", 1))
        sym = make_symbol(kind, dimension=dim, **sspec)
        L = float(_require(scenario, "L"))
        M = int(_require(scenario, "M"))
        h = 2.0 * L / M
        y = -L + h * np.arange(M)
        dspec = _require(scenario, "data")
        if dspec.get("kind") != "gaussian":
            raise ConfigError("fourier scenarios support gaussian data blocks")
        sig = float(dspec.get("sigma", 1.0))
        c = float(dspec.get("center", 0.0))
        if dim == 1:
            phi = np.exp(-((y - c) ** 2) / (2.0 * sig**2))
        else:
            phi = np.exp(-((y[:, None] - c) ** 2 + (y[None, :] - c) ** 2) / (2.0 * sig**2))
        pad = scenario.get("pad_factor")
        prob = FourierProblem(float(_require(scenario, "alpha")),
                              float(_require(scenario, "beta")), sym, L, M, phi,
                              pad_factor=int(pad) if pad is not None else None)
        xs = [float(v) for v in _require(scenario, "x_slices")]
        sol = solve_fourier(prob, xs)
        slice_names = [f"u_x={_fmt(x)}" for x in xs]
        lines = []
        if dim == 1:
            lines.append("y," + ",".join(slice_names))
            for j in range(M):
                vals = ",".join(_fmt(sol.fields[i][j]) for i in range(len(xs)))
                lines.append(f"{_fmt(y[j])},{vals}")
        else:
            lines.append("y1,y2," + ",".join(slice_names))
            for j1 in range(M):
                for j2 in range(M):
                    vals = ",".join(_fmt(sol.fields[i][j1, j2]) for i in range(len(xs)))
                    lines.append(f"{_fmt(y[j1])},{_fmt(y[j2])},{vals}")
        out = Path(_require(scenario, "out"))
        _write_text(out, "\n".join(lines) + "\n")
        _emit_report(scenario, [out], t0)

    _run(body)


@main.command("verify")
@click.option("--suite", type=click.Choice(["full", "bounds", "residuals"]), default="bounds")
@click.option("--out", "out_dir", required=True, type=click.Path())
def verify_cmd(suite: str, out_dir: str) -> None:
    """Run a verification suite; writes ledger.json and ledger.csv."""

    def body():
        t0 = time.time()
        from .verify import run_suite

        ledger = run_suite(suite)
        out = Path(out_dir)
        jpath = out / "ledger.json"
        cpath = out / "ledger.csv"
        _write_text(jpath, ledger.to_json() + "\n")
        lines = ["claim_id,anchor,status,tolerance,measured"]
        for e in ledger.entries:
            tol = "" if e.tolerance is None else _fmt(e.tolerance)
            measured = json.dumps(e.measured, sort_keys=True).replace('"', "'")
            lines.append(f"\"{e.claim_id}\",\"{e.anchor}\",{e.status},{tol},\"{measured}\"")
        _write_text(cpath, "\n".join(lines) + "\n")
        scenario = {"command": "verify", "suite": suite, "out": out_dir}
        counts = ledger.counts()
        click.echo(f"suite={suite} pass={counts['pass']} fail={counts['fail']} "
                   f"report={counts['report']}")
        _emit_report(scenario, [jpath, cpath], t0)
        if counts["fail"]:
            sys.exit(_EXIT_DOMAIN)

    _run(body)


@main.group()
def demo() -> None:
    """Demonstrations."""


@demo.command("illposed")
@click.option("--alpha", type=float, required=True)
@click.option("--xi", "xi_mag", type=float, required=True)
@click.option("--threshold", type=float, default=1e8, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def demo_illposed(alpha: float, xi_mag: float, threshold: float, out_path: str | None) -> None:
    """Growth demonstration for the non-sequential frequency equation."""

    def body():
        t0 = time.time()
        from .verify import illposed_demo

        result = illposed_demo(alpha, xi_mag, threshold=threshold)
        scenario = {"command": "demo-illposed", "alpha": alpha, "xi": xi_mag,
                    "threshold": threshold}
        payload = json.dumps({"scenario": scenario, "result": result}, indent=2)
        if out_path is not None:
            _write_text(Path(out_path), payload + "\n")
            _emit_report(scenario, [Path(out_path)], t0)
        else:
            click.echo(payload)

    _run(body)


if __name__ == "__main__":
    main()
