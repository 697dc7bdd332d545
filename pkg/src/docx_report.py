"""
DOCX placement report: stored content per node and decoding equations
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

try:
    from docx import Document
    from docx.enum.text import WD_ALIGN_PARAGRAPH
    from docx.shared import Inches, Pt
    DOCX_AVAILABLE = True
except ImportError:
    DOCX_AVAILABLE = False

from .latency import decoding_plan_text, short_labels
from .network import format_rational
from .planner import PlanDocument
from .render import ms

logger = logging.getLogger(__name__)

DEFAULT_STYLE = {
    "font_name": "Calibri",
    "font_size": 11,
    "margins": 1.0,  # inch
}


class DocxReportWriter:
    """Word report of a plan document"""

    def __init__(self):
        if not DOCX_AVAILABLE:
            logger.warning("python-docx not available. Install with: pip install python-docx")

    async def write_plan(
        self, document: PlanDocument, file_path: str, style_config: Optional[Dict[str, Any]] = None
    ) -> str:
        if not DOCX_AVAILABLE:
            return "Error: python-docx library not available. Install with: pip install python-docx"

        try:
            style_config = {**DEFAULT_STYLE, **(style_config or {})}
            Path(file_path).parent.mkdir(parents=True, exist_ok=True)

            doc = Document()
            self._setup_page_settings(doc, style_config)
            self._add_title(doc, f"Storage plan for k={document.k}", style_config)

            report = document.report
            summary = doc.add_paragraph()
            summary.add_run("Verdict: ").bold = True
            summary.add_run(document.verdict)
            doc.add_paragraph(f"Average latency {ms(report.average)}, lower bound {ms(report.average_bound)}")
            for note in document.notes:
                doc.add_paragraph(note, style='List Bullet')

            doc.add_heading("Stored content", level=2)
            table = doc.add_table(rows=1, cols=4)
            table.style = 'Table Grid'
            for cell, text in zip(table.rows[0].cells, ("Node", "Stores", "Worst case (ms)", "Bound (ms)")):
                cell.text = text
                cell.paragraphs[0].runs[0].bold = True
            for i, name in enumerate(document.network.node_names):
                cells = table.add_row().cells
                cells[0].text = name
                cells[1].text = document.scheme.formula(i)
                cells[2].text = str(format_rational(report.worst_case[i]))
                cells[3].text = str(format_rational(report.worstcase_bounds[i]))

            if report.plan is not None:
                doc.add_heading("Decoding", level=2)
                labels = short_labels(report.node_names)
                for i, name in enumerate(report.node_names):
                    heading = doc.add_paragraph()
                    heading.add_run(name).bold = True
                    for j in range(1, report.k + 1):
                        entry = report.plan[(i, j)]
                        doc.add_paragraph(
                            f"{decoding_plan_text(entry, labels)}  ({ms(entry.latency)})", style='List Bullet'
                        )

            doc.save(file_path)
            logger.info(f"DOCX plan report written: {file_path}")
            return f"DOCX plan report created successfully: {file_path}"

        except Exception as e:
            error_msg = f"Error creating DOCX plan report: {str(e)}"
            logger.error(error_msg)
            return error_msg

    def _setup_page_settings(self, doc, style_config: Dict[str, Any]):
        margin = Inches(style_config.get("margins", 1.0))
        for section in doc.sections:
            section.top_margin = margin
            section.bottom_margin = margin
            section.left_margin = margin
            section.right_margin = margin
        normal = doc.styles['Normal']
        normal.font.name = style_config.get("font_name", "Calibri")
        normal.font.size = Pt(style_config.get("font_size", 11))

    def _add_title(self, doc, title: str, style_config: Dict[str, Any]):
        title_paragraph = doc.add_heading(title, level=1)
        title_paragraph.alignment = WD_ALIGN_PARAGRAPH.CENTER
        run = title_paragraph.runs[0]
        run.font.name = style_config.get("font_name", "Calibri")
        run.font.size = Pt(16)
        run.bold = True
