from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import pandas as pd
from pydantic import ValidationError

from ..bell import equivalence_classes, orbit
from ..bounds import (
    ENS2_SET,
    Ens2Params,
    Ensemble,
    ens2_closed_form_bound,
    ens2_post_ensemble,
    holevo_like_bound,
)
from ..constraints import Verdict, VerdictKind, condition_r_verdict
from ..protocols import ClassReport, classify_all, find_protocol, reports_frame, summarize
from ..protocols.classify import CSV_COLUMNS
from ..settings import RunConfig, build_run_config, load_config
from ..utils.io import df_to_csv_text, dumps_json, round_floats
from ..utils.setspec import format_set, parse_set

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INDISTINGUISHABLE = 3
EXIT_NO_PROTOCOL = 4

SCHEMA_CLASSES = "locc-classes/1"
SCHEMA_CHECK = "locc-check/1"
SCHEMA_CLASSIFY = "locc-classify/1"
SCHEMA_BOUND = "locc-bound/1"

_USER_ERRORS = (ValueError, ValidationError, NotImplementedError)


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INVALID)


def _emit(text: str, out: Optional[Path]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _run_config(ctx: click.Context, **overrides: Any) -> RunConfig:
    try:
        return build_run_config(ctx.obj["config"], **overrides)
    except _USER_ERRORS as e:
        _fail(str(e))


def _format_option(f):
    return click.option(
        "--format", "output_format", type=click.Choice(["json", "csv", "text"]), default=None,
        help="Output format (default from config)",
    )(f)


def _out_option(f):
    return click.option(
        "--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
        help="Write output to this file instead of stdout",
    )(f)


def _tol_option(f):
    return click.option(
        "--tol", type=float, default=None,
        help="Relative rank tolerance (overrides LOCC_TOL and config)",
    )(f)


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path),
              default=None, help="Alternative config.yml")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], log_level: Optional[str]):
    """LOCC discrimination of maximally entangled states: condition R and one-way protocols."""
    cfg = load_config(config_path)
    log_cfg = cfg.get("logging", {})
    logging.basicConfig(
        level=(log_level or log_cfg.get("level", "WARNING")).upper(),
        format=log_cfg.get("format", "%(levelname)s %(name)s: %(message)s"),
        stream=sys.stderr,
    )
    ctx.ensure_object(dict)
    ctx.obj["config"] = cfg


@cli.command()
@click.option("--d", type=int, default=None, help="Local dimension")
@click.option("--k", type=int, default=None, help="Set size")
@_format_option
@_out_option
@click.pass_context
def classes(ctx: click.Context, d: Optional[int], k: Optional[int],
            output_format: Optional[str], out: Optional[Path]):
    """Partition all k-subsets of Bell indices into translation classes."""
    cfg = _run_config(ctx, d=d, k=k, format=output_format, out=out)
    found = equivalence_classes(cfg.d, cfg.k)
    total = sum(c.size for c in found)
    rows = [
        {"representative": format_set(c.representative), "member_count": c.size}
        for c in found
    ]

    if cfg.format == "json":
        payload = {
            "schema": SCHEMA_CLASSES,
            "d": cfg.d,
            "k": cfg.k,
            "classes": len(found),
            "total_sets": total,
            "representatives": [
                {**row, "indices": [list(p) for p in c.representative.pairs]}
                for row, c in zip(rows, found)
            ],
        }
        _emit(dumps_json(payload), cfg.out)
    elif cfg.format == "csv":
        _emit(df_to_csv_text(pd.DataFrame(rows, columns=["representative", "member_count"])), cfg.out)
        click.echo(f"classes: {len(found)}, total_sets: {total}", err=True)
    else:
        lines = [f"classes: {len(found)}, total_sets: {total}"]
        lines.extend(f"{row['representative']}\t{row['member_count']}" for row in rows)
        _emit("\n".join(lines), cfg.out)


def _protocol_settings(ctx: click.Context) -> Dict[str, float]:
    section = ctx.obj["config"].get("protocols", {})
    return {
        "verify_tol": float(section.get("verify_tol", 1e-9)),
        "zero_probability": float(section.get("zero_probability", 1e-12)),
    }


def _check_exit_code(verdict: Verdict, protocol) -> int:
    if verdict.kind is VerdictKind.PASSES_R:
        return EXIT_OK if protocol is not None else EXIT_NO_PROTOCOL
    return EXIT_INDISTINGUISHABLE


def _dims_text(label: str, dims) -> str:
    if dims is None:
        return f"{label}: not computed"
    return f"{label}: op_only={dims.op_only} op_plus_r={dims.op_plus_r}"


@cli.command()
@click.argument("set_spec")
@click.option("--d", type=int, default=None, help="Local dimension")
@_tol_option
@_format_option
@_out_option
@click.pass_context
def check(ctx: click.Context, set_spec: str, d: Optional[int], tol: Optional[float],
          output_format: Optional[str], out: Optional[Path]):
    """Decide condition R for one set, e.g. 00,11,31,32, and search for a protocol."""
    base = _run_config(ctx, d=d)
    try:
        s = parse_set(set_spec, base.d)
    except ValueError as e:
        _fail(str(e))
    cfg = _run_config(ctx, d=base.d, k=len(s), tol=tol, format=output_format, out=out)

    try:
        verdict = condition_r_verdict(s, cfg.tol)
    except _USER_ERRORS as e:
        _fail(str(e))
    protocol = None
    if verdict.kind is VerdictKind.PASSES_R and s.d == 4:
        settings = _protocol_settings(ctx)
        protocol = find_protocol(s, settings["verify_tol"], settings["zero_probability"])

    report = ClassReport(
        representative=s, verdict=verdict, protocol=protocol, member_count=len(orbit(s))
    )
    if cfg.format == "json":
        payload = {"schema": SCHEMA_CHECK, "set": format_set(s), **report.to_dict()}
        payload.pop("representative")
        _emit(dumps_json(payload), cfg.out)
    elif cfg.format == "csv":
        _emit(df_to_csv_text(reports_frame([report])), cfg.out)
    else:
        lines = [
            f"set: {format_set(s)}",
            f"verdict: {verdict.kind.value}",
            _dims_text("alice", verdict.alice_dims),
            _dims_text("bob", verdict.bob_dims),
        ]
        if protocol is not None:
            dn, dm = protocol.translation.pair
            lines.append(f"protocol: {protocol.provenance.value} (translation {dn},{dm})")
        elif verdict.kind is VerdictKind.PASSES_R:
            lines.append("protocol: none found")
        _emit("\n".join(lines), cfg.out)
    sys.exit(_check_exit_code(verdict, protocol))


def _classify_text(reports: List[ClassReport], counts: Dict[str, int]) -> str:
    header = "  ".join(CSV_COLUMNS)
    lines = [header]
    for r in reports:
        row = r.to_row()
        lines.append("  ".join("-" if row[c] in (None, "") else str(row[c]) for c in CSV_COLUMNS))
    lines.append(f"fails_r={counts['fails_r']} passes_r={counts['passes_r']}")
    return "\n".join(lines)


@cli.command(name="classify-all")
@click.option("--d", type=int, default=None, help="Local dimension (only 4 is supported)")
@click.option("--k", type=int, default=None, help="Set size (only 4 is supported)")
@_tol_option
@_format_option
@_out_option
@click.option("--threads", type=int, default=None, help="Worker threads (default: all cores)")
@click.pass_context
def classify_all_cmd(ctx: click.Context, d: Optional[int], k: Optional[int], tol: Optional[float],
                     output_format: Optional[str], out: Optional[Path], threads: Optional[int]):
    """Condition R and protocol search for every equivalence class at d=4, k=4."""
    cfg = _run_config(ctx, d=d, k=k, tol=tol, format=output_format, out=out, threads=threads)
    if (cfg.d, cfg.k) != (4, 4):
        _fail(f"classify-all supports only d=4, k=4 (got d={cfg.d}, k={cfg.k})")

    reports = classify_all(
        cfg.d, cfg.k, tol_rel=cfg.tol, threads=cfg.threads, **_protocol_settings(ctx)
    )
    counts = summarize(reports)
    summary_line = f"fails_r={counts['fails_r']} passes_r={counts['passes_r']}"

    if cfg.format == "json":
        payload = {
            "schema": SCHEMA_CLASSIFY,
            "d": cfg.d,
            "k": cfg.k,
            "summary": {"fails_r": counts["fails_r"], "passes_r": counts["passes_r"],
                        "with_protocol": counts["with_protocol"]},
            "classes": [r.to_dict() for r in reports],
        }
        _emit(dumps_json(payload), cfg.out)
    elif cfg.format == "csv":
        _emit(df_to_csv_text(reports_frame(reports)), cfg.out)
        click.echo(summary_line, err=True)
    else:
        _emit(_classify_text(reports, counts), cfg.out)


@cli.command()
@click.argument("set_spec")
@click.option("--d", type=int, default=None, help="Local dimension")
@click.option("--a0", type=float, default=None)
@click.option("--mu0", type=float, default=None)
@click.option("--mu1", type=float, default=None)
@click.option("--zeta", type=float, default=0.0, show_default=True)
@click.option("--eta", type=float, default=0.0, show_default=True)
@_format_option
@_out_option
@click.pass_context
def bound(ctx: click.Context, set_spec: str, d: Optional[int], a0: Optional[float],
          mu0: Optional[float], mu1: Optional[float], zeta: float, eta: float,
          output_format: Optional[str], out: Optional[Path]):
    """Holevo-like bound before and, with --a0/--mu0/--mu1, after Alice's measurement."""
    base = _run_config(ctx, d=d)
    try:
        s = parse_set(set_spec, base.d)
    except ValueError as e:
        _fail(str(e))
    cfg = _run_config(ctx, d=base.d, k=len(s), format=output_format, out=out)

    result: Dict[str, Any] = {
        "set": format_set(s),
        "pre_measurement": holevo_like_bound(Ensemble(s.states())),
    }
    given = [x is not None for x in (a0, mu0, mu1)]
    if any(given):
        if not all(given):
            _fail("--a0, --mu0 and --mu1 must be given together")
        if s != ENS2_SET:
            _fail(f"measurement parameters apply only to {format_set(ENS2_SET)}")
        try:
            params = Ens2Params(a0=a0, mu0=mu0, mu1=mu1, zeta=zeta, eta=eta)
        except ValueError as e:
            _fail(str(e))
        result["params"] = {"a0": a0, "mu0": mu0, "mu1": mu1, "zeta": zeta, "eta": eta}
        result["post_measurement"] = holevo_like_bound(ens2_post_ensemble(params))
        result["closed_form"] = ens2_closed_form_bound(params)

    if cfg.format == "json":
        _emit(dumps_json({"schema": SCHEMA_BOUND, **round_floats(result)}), cfg.out)
    elif cfg.format == "csv":
        flat = {k: v for k, v in result.items() if k != "params"}
        flat.update(result.get("params", {}))
        _emit(df_to_csv_text(pd.DataFrame([round_floats(flat)])), cfg.out)
    else:
        lines = [f"set: {result['set']}", f"pre_measurement: {result['pre_measurement']:.10f} bits"]
        if "post_measurement" in result:
            lines.append(f"post_measurement: {result['post_measurement']:.10f} bits")
            lines.append(f"closed_form: {result['closed_form']:.10f} bits")
        _emit("\n".join(lines), cfg.out)


if __name__ == "__main__":
    cli()
