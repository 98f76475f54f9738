from typing import Any, Iterable, Sequence

import pandas as pd

from domain import CheckResult, Report
from formparam.closure import ClosedSet
from formparam.parameters import FormParameter, points_digest


def checks_to_dataframe(checks: Iterable[CheckResult]) -> pd.DataFrame:
    """
    One row per check.

    Args:
        checks: The check results to tabulate.

    Returns:
        pd.DataFrame: Name, verdict, case and failure counts and whether the check was exhaustive.
    """
    data: list[dict[str, Any]] = []

    for check in checks:
        data.append(
            {
                "Check": check.name,
                "Verdict": check.verdict.value,
                "Cases": check.cases,
                "Failures": check.failures,
                "Exhaustive": check.exhaustive,
            }
        )

    return pd.DataFrame(data, columns=["Check", "Verdict", "Cases", "Failures", "Exhaustive"])


def parameters_to_dataframe(parameters: Sequence[FormParameter | ClosedSet]) -> pd.DataFrame:
    """
    One row per (relative) form parameter, in enumeration order.

    Returns:
        pd.DataFrame: Index, size, digest and generator count.
    """
    data = [
        {
            "Index": k,
            "Size": len(p),
            "Digest": points_digest(p.elements),
            "Generators": len(p.generators),
        }
        for k, p in enumerate(parameters)
    ]
    return pd.DataFrame(data, columns=["Index", "Size", "Digest", "Generators"])


def orbits_to_dataframe(partition) -> pd.DataFrame:
    """One row per lattice entry with the block it falls in"""
    data = []
    for b, block in enumerate(partition.blocks):
        for k in block:
            parameter = partition.lattice.parameters[k]
            data.append(
                {
                    "Block": b,
                    "Index": k,
                    "Size": len(parameter),
                    "Digest": points_digest(parameter.elements),
                    "Block Size": len(block),
                }
            )

    df = pd.DataFrame(data, columns=["Block", "Index", "Size", "Digest", "Block Size"])
    return df.sort_values(by=["Block", "Index"]).reset_index(drop=True)


def report_to_text(report: Report) -> str:
    """Human-readable rendering of a report for --pretty"""
    lines = [f"{report.command}  instance={report.instance.get('digest', '-')}  seed={report.seed}"]

    if report.error is not None:
        lines.append(f"error: {report.error.get('code')}: {report.error.get('message')}")

    if report.checks:
        lines.append(checks_to_dataframe(report.checks).to_string(index=False))

    for key, table in report.data.get("tables", {}).items():
        lines.append(f"\n{key}")
        lines.append(pd.DataFrame(table).to_string(index=False))

    for warning in report.warnings:
        lines.append(f"warning: {warning}")

    return "\n".join(lines)
