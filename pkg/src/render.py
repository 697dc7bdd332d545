"""
Text and JSON renderings of bounds, graphs, latency reports and plans
"""

from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from .coloring import Coloring
from .latency import LatencyReport, decoding_plan_text, short_labels
from .network import LambdaProfile, avg_latency_lower_bound, format_rational
from .schemes import AnyScheme


def ms(value: Fraction) -> str:
    """Dual rendering: exact value plus two-decimal milliseconds"""
    value = Fraction(value)
    if value.denominator == 1:
        return f"{value.numerator} ms"
    return f"{value.numerator}/{value.denominator} ({float(value):.2f} ms)"


def rational_json(value: Fraction) -> Dict[str, Any]:
    value = Fraction(value)
    return {"exact": format_rational(value), "ms": round(float(value), 2)}


def bounds_to_json(profile: LambdaProfile, k: int) -> Dict[str, Any]:
    return {
        "format": 1,
        "k": k,
        "worst_case": {
            name: rational_json(profile.rows[i][k - 1]) for i, name in enumerate(profile.node_names)
        },
        "average": rational_json(avg_latency_lower_bound(profile, k)),
        "lambda": {
            name: [format_rational(value) for value in row]
            for name, row in zip(profile.node_names, profile.rows)
        },
    }


def bounds_text(profile: LambdaProfile, k: int) -> str:
    width = max(len(name) for name in profile.node_names)
    lines = [f"Latency lower bounds for k={k}"]
    for i, name in enumerate(profile.node_names):
        lines.append(f"  {name:<{width}}  worst case >= {ms(profile.rows[i][k - 1])}")
    lines.append(f"  average >= {ms(avg_latency_lower_bound(profile, k))}")
    return "\n".join(lines)


def coloring_to_json(coloring: Optional[Coloring], node_names: Sequence[str]) -> Optional[Dict[str, int]]:
    if coloring is None:
        return None
    return {name: color for name, color in zip(node_names, coloring.colors)}


def report_to_json(report: LatencyReport) -> Dict[str, Any]:
    labels = short_labels(report.node_names)
    document: Dict[str, Any] = {
        "format": 1,
        "k": report.k,
        "nodes": list(report.node_names),
        "latencies": {
            name: [format_rational(value) for value in row]
            for name, row in zip(report.node_names, report.latencies)
        },
        "worst_case": {name: format_rational(v) for name, v in zip(report.node_names, report.worst_case)},
        "worst_case_bounds": {
            name: format_rational(v) for name, v in zip(report.node_names, report.worstcase_bounds)
        },
        "worst_case_optimal": {
            name: flag for name, flag in zip(report.node_names, report.worstcase_optimal)
        },
        "average": rational_json(report.average),
        "average_bound": rational_json(report.average_bound),
        "average_optimal": report.average_optimal,
        "admissible": report.admissible,
        "admissibility_failures": [
            [report.node_names[i], f"W{j}"] for i, j in report.admissibility_failures
        ],
    }
    if report.plan is not None:
        document["decoding"] = {
            name: [decoding_plan_text(report.plan[(i, j)], labels) for j in range(1, report.k + 1)]
            for i, name in enumerate(report.node_names)
        }
    return document


def latency_table_text(report: LatencyReport, scheme: Optional[AnyScheme] = None) -> str:
    """Per-node decode latencies with stored content, maxima and bounds"""
    names = report.node_names
    header = ["Node"]
    if scheme is not None:
        header.append("Stores")
    header += [f"W{j}" for j in range(1, report.k + 1)] + ["max", "bound", ""]

    rows = []
    for i, name in enumerate(names):
        row = [name]
        if scheme is not None:
            row.append(scheme.formula(i))
        row += [str(format_rational(v)) for v in report.latencies[i]]
        row += [
            str(format_rational(report.worst_case[i])),
            str(format_rational(report.worstcase_bounds[i])),
            "optimal" if report.worstcase_optimal[i] else "",
        ]
        rows.append(row)

    widths = [max(len(str(cell)) for cell in column) for column in zip(header, *rows)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in [header] + rows]
    lines.append("")
    lines.append(f"Average latency: {ms(report.average)}")
    lines.append(f"Average bound:   {ms(report.average_bound)}{'  (met)' if report.average_optimal else ''}")
    if report.admissible is not None:
        lines.append(f"Admissible on G_{report.k - 1}: {'yes' if report.admissible else 'no'}")
    return "\n".join(lines)


def decoding_text(report: LatencyReport) -> str:
    if report.plan is None:
        return ""
    labels = short_labels(report.node_names)
    lines = []
    for i, name in enumerate(report.node_names):
        equations = ", ".join(decoding_plan_text(report.plan[(i, j)], labels) for j in range(1, report.k + 1))
        lines.append(f"{name}: {equations}")
    return "\n".join(lines)
