"""
XLSX export of plan documents
"""

import logging
from datetime import datetime
from pathlib import Path

try:
    import pandas as pd
    from openpyxl import Workbook
    from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
    from openpyxl.utils.dataframe import dataframe_to_rows
    XLSX_AVAILABLE = True
except ImportError:
    XLSX_AVAILABLE = False

from .network import format_rational
from .planner import PlanDocument

logger = logging.getLogger(__name__)


class XlsxReportWriter:
    """Writes a plan as a workbook with Summary, RTT, Latency and Scheme sheets"""

    def __init__(self):
        if not XLSX_AVAILABLE:
            logger.warning("XLSX libraries not available. Install with: pip install openpyxl pandas")

    async def write_plan(self, document: PlanDocument, file_path: str) -> str:
        if not XLSX_AVAILABLE:
            return "Error: openpyxl and pandas libraries not available. Install with: pip install openpyxl pandas"

        try:
            path = Path(file_path)
            path.parent.mkdir(parents=True, exist_ok=True)

            wb = Workbook()
            summary_ws = wb.active
            summary_ws.title = "Summary"
            await self._write_summary(summary_ws, document)

            for sheet_name, df in self._frames(document).items():
                ws = wb.create_sheet(title=sheet_name)
                for row in dataframe_to_rows(df, index=True, header=True):
                    ws.append(row)
                # dataframe_to_rows emits an empty row for the index name
                if ws.max_row > 1 and all(cell.value is None for cell in ws[2]):
                    ws.delete_rows(2)
                await self._apply_default_formatting(ws)

            wb.save(file_path)
            wb.close()

            logger.info(f"Plan workbook written: {file_path}")
            return f"XLSX plan report created successfully: {file_path}"

        except Exception as e:
            logger.error(f"Error creating XLSX plan report: {str(e)}")
            return f"Error creating XLSX plan report: {str(e)}"

    def _frames(self, document: PlanDocument):
        network, report, scheme = document.network, document.report, document.scheme
        names = list(network.node_names)
        rtt = pd.DataFrame(
            [[format_rational(v) for v in row] for row in network.rtt], index=names, columns=names
        )
        latency = pd.DataFrame(
            [
                [format_rational(v) for v in report.latencies[i]]
                + [format_rational(report.worst_case[i]), format_rational(report.worstcase_bounds[i])]
                for i in range(network.n)
            ],
            index=names,
            columns=[f"W{j}" for j in range(1, report.k + 1)] + ["max", "bound"],
        )
        stored = pd.DataFrame({"stores": [scheme.formula(i) for i in range(network.n)]}, index=names)
        return {"RTT": rtt, "Latency": latency, "Scheme": stored}

    async def _write_summary(self, worksheet, document: PlanDocument):
        report = document.report
        worksheet['A1'] = f"Storage plan for k={document.k}"
        worksheet['A1'].font = Font(size=16, bold=True)
        worksheet['A2'] = f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}"
        rows = [
            ("Network", document.network_ref or "-"),
            ("Verdict", document.verdict),
            ("Average latency (ms)", str(format_rational(report.average))),
            ("Average bound (ms)", str(format_rational(report.average_bound))),
            ("Average optimal", "yes" if report.average_optimal else "no"),
            ("Admissible", "-" if report.admissible is None else ("yes" if report.admissible else "no")),
        ]
        for offset, (key, value) in enumerate(rows, start=4):
            worksheet.cell(row=offset, column=1, value=key).font = Font(bold=True)
            worksheet.cell(row=offset, column=2, value=value)
        worksheet.column_dimensions['A'].width = 24
        worksheet.column_dimensions['B'].width = 30

    async def _apply_default_formatting(self, worksheet):
        try:
            header_font = Font(bold=True, color="FFFFFF")
            header_fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")

            for cell in worksheet[1]:
                cell.font = header_font
                cell.fill = header_fill
                cell.alignment = Alignment(horizontal="center")

            for column in worksheet.columns:
                max_length = 0
                for cell in column:
                    if cell.value is not None:
                        max_length = max(max_length, len(str(cell.value)))
                worksheet.column_dimensions[column[0].column_letter].width = min(max_length + 2, 50)  # Cap at 50

            thin_border = Border(
                left=Side(style='thin'),
                right=Side(style='thin'),
                top=Side(style='thin'),
                bottom=Side(style='thin')
            )
            for row in worksheet.iter_rows():
                for cell in row:
                    if cell.value is not None:
                        cell.border = thin_border

        except Exception as e:
            logger.warning(f"Error applying formatting: {str(e)}")
