from __future__ import annotations
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

# Add src to Python path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pandas as pd
from dotenv import load_dotenv

from loccdisc.bell import BellSet, orbit
from loccdisc.constraints import VerdictKind
from loccdisc.protocols import classify_all, reports_frame, summarize
from loccdisc.settings import build_run_config, load_config
from loccdisc.utils.io import ensure_dir, write_df_csv, write_json, write_md
from loccdisc.utils.setspec import format_set

TABLE_GROUPS = [((0, 0), (0, 1)), ((0, 0), (0, 2))]


def table_entry(rep: BellSet) -> Tuple[str, str]:
    """Group label ("00,01" or "00,02") and the two remaining states, from some translate."""
    members = orbit(rep)
    for shared in TABLE_GROUPS:
        for member in members:
            if all(p in member.pairs for p in shared):
                rest = [p for p in member.pairs if p not in shared]
                label = ",".join(f"{n}{m}" for n, m in shared)
                return label, ",".join(f"{n}{m}" for n, m in rest)
    return "other", format_set(rep)


def main(config_path: Optional[Path] = None) -> int:
    try:
        load_dotenv()
        cfg = load_config(config_path)
        run = build_run_config(cfg)
        output_root = Path(cfg["run"]["output_root"]).resolve()
        outdir = output_root / pd.Timestamp.now().strftime("%Y-%m-%d")
        ensure_dir(outdir)
        print(f"Output directory: {outdir}")
    except Exception as e:
        print(f"Error during initialization: {e}")
        return 1

    print(f"Classifying all {run.k}-sets at d={run.d} (tol={run.tol:g})...")
    protocols = cfg.get("protocols", {})
    reports = classify_all(
        run.d,
        run.k,
        tol_rel=run.tol,
        threads=run.threads,
        verify_tol=protocols.get("verify_tol", 1e-9),
        zero_probability=protocols.get("zero_probability", 1e-12),
    )
    counts = summarize(reports)
    write_df_csv(outdir / "classes.csv", reports_frame(reports))

    disagreements = [format_set(r.representative) for r in reports
                     if r.diagnostics and not r.diagnostics.get("sides_agree", True)]
    not_subsumed = [format_set(r.representative) for r in reports
                    if r.diagnostics and not (r.diagnostics.get("op_subsumed_alice", True)
                                              and r.diagnostics.get("op_subsumed_bob", True))]
    missing = [format_set(r.representative) for r in reports
               if r.verdict.kind is VerdictKind.PASSES_R and r.protocol is None]

    summary = {
        "timestamp": pd.Timestamp.now().isoformat(),
        "d": run.d,
        "k": run.k,
        "tol": run.tol,
        **counts,
        "side_disagreements": disagreements,
        "op_not_subsumed": not_subsumed,
        "passes_without_protocol": missing,
    }
    write_json(outdir / "package_summary.json", summary)

    groups: Dict[str, List[str]] = {}
    for r in reports:
        if r.verdict.kind is not VerdictKind.FAILS_R:
            continue
        label, rest = table_entry(r.representative)
        groups.setdefault(label, []).append(rest)

    report_lines = ["# Condition R tables\n"]
    report_lines.append(f"- classes: {counts['classes']}")
    report_lines.append(f"- fails_r: {counts['fails_r']}")
    report_lines.append(f"- passes_r: {counts['passes_r']} ({counts['with_protocol']} with protocol)")
    for label in sorted(groups):
        report_lines.append(f"\n## Failing sets containing {label} ({len(groups[label])})\n")
        for rest in sorted(groups[label]):
            report_lines.append(f"- {label} + {rest}")
    write_md(outdir / "tables_report.md", "\n".join(report_lines) + "\n")

    print(f"Wrote tables package to {outdir}")
    print(f"Summary: fails_r={counts['fails_r']} passes_r={counts['passes_r']}")
    if missing:
        print(f"Warning: {len(missing)} passing classes without a verified protocol")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
