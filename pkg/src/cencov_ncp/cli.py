"""Command-line surface for validating, transforming, and reporting on
groupoids, states, kernels, and statistical models.

Exit codes: 0 success, 1 validation failure, 2 I/O or schema error,
3 numerical failure.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import fileio
from .channels import (
    compose as compose_kernels,
    cp_verdict,
    pull_observable,
    push_state,
    validate_kernel,
)
from .errors import (
    CencovNcpError,
    FoliumViolation,
    NoConvergence,
    SchemaError,
    ZeroInformation,
)
from .estimation import (
    Estimator,
    classical_fisher_rao,
    cramer_rao_audit,
    cramer_rao_bound,
    fisher_metric,
)
from .gns import build_gns
from .states import check_state

EXIT_VALIDATION = 1
EXIT_SCHEMA = 2
EXIT_NUMERICAL = 3

_NUMERICAL = (NoConvergence, FoliumViolation, ZeroInformation)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guard(fn, *args, **kwargs):
    """Run a library call, translating exceptions into exit codes."""
    try:
        return fn(*args, **kwargs)
    except SchemaError as exc:
        _fail(EXIT_SCHEMA, str(exc))
    except _NUMERICAL as exc:
        _fail(EXIT_NUMERICAL, str(exc))
    except CencovNcpError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    except OSError as exc:
        _fail(EXIT_SCHEMA, str(exc))


def _json_default(obj):
    if isinstance(obj, (np.bool_, np.integer, np.floating)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _emit(ctx, data: dict) -> None:
    if ctx.obj["json"]:
        click.echo(json.dumps(data, sort_keys=True, default=_json_default))
    else:
        for key in sorted(data):
            click.echo(f"{key}: {data[key]}")


def _ref_for_output(input_file: str, ref: str, out: str) -> str:
    """Re-target a groupoid reference from one referencing file to another."""
    resolved = Path(ref)
    if not resolved.is_absolute():
        resolved = (Path(input_file).parent / resolved).resolve()
    try:
        return os.path.relpath(resolved, Path(out).resolve().parent)
    except ValueError:
        return str(resolved)


@click.group()
@click.option("--tol", type=float, default=1e-9, show_default=True,
              help="Validation tolerance.")
@click.option("--h", "hstep", type=float, default=1e-5, show_default=True,
              help="Finite-difference step for model derivatives.")
@click.option("--json", "json_out", is_flag=True, help="Machine-readable output.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for randomized corpus generation.")
@click.pass_context
def main(ctx, tol, hstep, json_out, seed):
    """Finite groupoid algebras, states, kernels, and Cramer-Rao reports."""
    ctx.obj = {"tol": tol, "h": hstep, "json": json_out, "seed": seed}


@main.command()
@click.argument("file", type=click.Path())
@click.pass_context
def validate(ctx, file):
    """Validate a groupoid, state, kernel, or model file."""
    tol = ctx.obj["tol"]
    kind = _guard(fileio.detect_kind, file)
    data = {"file": file, "kind": kind}

    if kind == "groupoid":
        G = _guard(fileio.load_groupoid, file)
        data.update(outcomes=len(G.outcomes), elements=len(G.elements), passed=True)
    elif kind == "state":
        G, phi, _ = _guard(fileio.load_state_file, file)
        report = _guard(check_state, phi, G, tol=tol)
        data.update(
            passed=report.passed,
            normalization_deficit=report.normalization_deficit,
            symmetry_deficit=report.symmetry_deficit,
            min_fiber_eigenvalue=min(report.fiber_min_eigenvalue.values()),
        )
    elif kind == "kernel":
        Pi = _guard(fileio.load_kernel, file)
        report = _guard(validate_kernel, Pi, tol=tol)
        data.update(
            passed=report.passed,
            normalization_deficit=report.normalization_deficit,
            hermiticity_deficit=report.hermiticity_deficit,
            min_fiber_eigenvalue=min(report.positivity_min_eigenvalue.values()),
        )
    elif kind == "classical_kernel":
        K = _guard(fileio.load_classical_kernel, file)
        data.update(passed=True, shape=list(K.K.shape))
    elif kind == "kraus":
        ops = _guard(fileio.load_kraus, file)
        comp = sum(a.conj().T @ a for a in ops)
        dev = float(np.abs(comp - np.eye(comp.shape[0])).max())
        if dev > tol:
            _emit(ctx, {**data, "passed": False, "completeness_deficit": dev})
            _fail(EXIT_VALIDATION,
                  f"Kraus completeness sum deviates from identity by {dev:.3e}")
        data.update(passed=True, completeness_deficit=dev, operators=len(ops))
    elif kind == "model":
        model, grid = _guard(fileio.load_model, file)
        for s in [model.s0, *grid]:
            _guard(model.at, s)
        data.update(passed=True, s0=model.s0, grid_points=len(grid))
    else:  # algebra
        a = _guard(fileio.load_algebra_element, file)
        data.update(passed=True, support=int(np.count_nonzero(a.coeff)))
    _emit(ctx, data)
    if not data.get("passed", False):
        sys.exit(EXIT_VALIDATION)


@main.command()
@click.argument("k1", type=click.Path())
@click.argument("k2", type=click.Path())
@click.option("-o", "--out", type=click.Path(), default=None)
@click.pass_context
def compose(ctx, k1, k2, out):
    """Compose two kernel files (first applied first)."""
    Pi12 = _guard(fileio.load_kernel, k1)
    Pi23 = _guard(fileio.load_kernel, k2)
    Pi = _guard(compose_kernels, Pi12, Pi23)
    report = _guard(validate_kernel, Pi, tol=ctx.obj["tol"])
    data = {
        "passed": report.passed,
        "normalization_deficit": report.normalization_deficit,
        "hermiticity_deficit": report.hermiticity_deficit,
    }
    if out:
        src = _ref_for_output(k1, json.load(open(k1))["source_groupoid"], out)
        dst = _ref_for_output(k2, json.load(open(k2))["target_groupoid"], out)
        _guard(fileio.save_kernel, Pi, out, src, dst)
        data["out"] = out
    _emit(ctx, data)


@main.command()
@click.argument("state", type=click.Path())
@click.argument("kernel", type=click.Path())
@click.option("-o", "--out", type=click.Path(), default=None)
@click.pass_context
def push(ctx, state, kernel, out):
    """Push a state forward through a kernel."""
    rho = _guard(fileio.load_state, state)
    Pi = _guard(fileio.load_kernel, kernel)
    pushed = _guard(push_state, rho, Pi)
    report = check_state(pushed.phi, pushed.groupoid, tol=ctx.obj["tol"])
    data = {
        "passed": report.passed,
        "normalization_deficit": report.normalization_deficit,
        "min_fiber_eigenvalue": min(report.fiber_min_eigenvalue.values()),
    }
    if out:
        ref = _ref_for_output(kernel, json.load(open(kernel))["target_groupoid"], out)
        _guard(fileio.save_state, pushed, out, ref)
        data["out"] = out
    _emit(ctx, data)


@main.command()
@click.argument("kernel", type=click.Path())
@click.argument("observable", type=click.Path())
@click.option("-o", "--out", type=click.Path(), default=None)
@click.pass_context
def pull(ctx, kernel, observable, out):
    """Pull an observable back through a kernel."""
    Pi = _guard(fileio.load_kernel, kernel)
    f2 = _guard(fileio.load_algebra_element, observable)
    pulled = _guard(pull_observable, Pi, f2)
    data = {"support": int(np.count_nonzero(pulled.coeff))}
    if out:
        ref = _ref_for_output(kernel, json.load(open(kernel))["source_groupoid"], out)
        _guard(fileio.save_algebra_element, pulled, out, ref)
        data["out"] = out
    _emit(ctx, data)


@main.command()
@click.argument("config", type=click.Path())
@click.option("-o", "--out", type=click.Path(), default=None)
@click.pass_context
def pipeline(ctx, config, out):
    """Run an ordered kernel pipeline on an initial state.

    Config file: {"fmt": ..., "initial_state": path, "kernels": [paths]}.
    """
    cfg_path = Path(config)
    cfg = _guard(fileio._read_json, cfg_path)
    try:
        state_path = cfg_path.parent / cfg["initial_state"]
        kernel_paths = [cfg_path.parent / k for k in cfg["kernels"]]
    except (KeyError, TypeError) as exc:
        _fail(EXIT_SCHEMA, f"{config}: malformed pipeline config: {exc}")
    rho = _guard(fileio.load_state, state_path)
    stages = []
    last_kernel = None
    for kp in kernel_paths:
        Pi = _guard(fileio.load_kernel, kp)
        rho = _guard(push_state, rho, Pi)
        report = check_state(rho.phi, rho.groupoid, tol=ctx.obj["tol"])
        stages.append({
            "kernel": str(kp),
            "normalization_deficit": report.normalization_deficit,
            "min_fiber_eigenvalue": min(report.fiber_min_eigenvalue.values()),
        })
        last_kernel = kp
    data = {"stages": stages, "passed": True}
    if out:
        if last_kernel is None:
            ref = json.load(open(state_path))["groupoid"]
            ref = _ref_for_output(str(state_path), ref, out)
        else:
            ref = json.load(open(last_kernel))["target_groupoid"]
            ref = _ref_for_output(str(last_kernel), ref, out)
        _guard(fileio.save_state, rho, out, ref)
        data["out"] = out
    _emit(ctx, data)


@main.command()
@click.argument("state", type=click.Path())
@click.pass_context
def gns(ctx, state):
    """Report the GNS dimension, ideal dimension, and Gram spectrum."""
    rho = _guard(fileio.load_state, state)
    S = _guard(build_gns, rho)
    _emit(ctx, {
        "dim": S.dim,
        "ideal_dim": int(len(S.groupoid.elements) - S.dim),
        "gram_spectrum": [float(w) for w in S.gram_eigenvalues],
    })


@main.command()
@click.argument("model", type=click.Path())
@click.pass_context
def fisher(ctx, model):
    """Fisher metric of a model; classical value when applicable."""
    M, _ = _guard(fileio.load_model, model)
    S = _guard(build_gns, _guard(M.at, M.s0))
    gf = _guard(fisher_metric, M, S, h=ctx.obj["h"])
    data = {"fisher": gf}
    if len(M.groupoid.elements) == len(M.groupoid.outcomes):
        classical = _guard(classical_fisher_rao, M, h=ctx.obj["h"])
        data["classical_fisher"] = classical
        data["agreement_deficit"] = abs(gf - classical)
    _emit(ctx, data)


@main.command()
@click.argument("model", type=click.Path())
@click.option("--estimator", type=click.Path(), default=None)
@click.pass_context
def crb(ctx, model, estimator):
    """Cramer-Rao bound; audit a self-adjoint estimator when given."""
    M, _ = _guard(fileio.load_model, model)
    S = _guard(build_gns, _guard(M.at, M.s0))
    bound = _guard(cramer_rao_bound, M, S, h=ctx.obj["h"])
    data = {"bound": bound}
    if estimator:
        a = _guard(fileio.load_algebra_element, estimator)
        A = _guard(Estimator, a)
        audit = _guard(cramer_rao_audit, M, A, S, h=ctx.obj["h"])
        data.update(
            second_moment=audit.second_moment,
            slack=audit.slack,
            saturated=audit.saturated,
        )
    _emit(ctx, data)


@main.command()
@click.argument("kernel", type=click.Path())
@click.pass_context
def cp(ctx, kernel):
    """Choi complete-positivity verdict for a pair-groupoid kernel."""
    Pi = _guard(fileio.load_kernel, kernel)
    is_cp, min_eig = _guard(cp_verdict, Pi)
    _emit(ctx, {"is_cp": bool(is_cp), "min_choi_eigenvalue": float(min_eig)})


if __name__ == "__main__":
    main()
