"""Pass/fail table of an acceptance run as a one-page PDF."""

import logging
from datetime import datetime
from typing import Sequence

from reportlab.lib import colors
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
from reportlab.lib.units import cm
from reportlab.platypus import SimpleDocTemplate, Paragraph, Spacer, Table, TableStyle

_LOGGER = logging.getLogger(__name__)

PASS_COLOR = colors.HexColor("#2e7d32")
FAIL_COLOR = colors.HexColor("#c62828")


def write_report_pdf(output_path: str, criteria: Sequence, seed: int, version: str, quick: bool = False) -> None:
    """
    Writes one row per criterion (id, title, result, seconds) with a summary line below.

    Args:
        output_path: Path of the PDF to create
        criteria: ``CriterionResult`` objects in run order
        seed: Seed of the run, printed in the header
        version: Lab version, printed in the header
        quick: Whether the reduced sizes were used
    """
    doc = SimpleDocTemplate(
        output_path,
        pagesize=A4,
        rightMargin=2*cm,
        leftMargin=2*cm,
        topMargin=2*cm,
        bottomMargin=2*cm
    )

    styles = getSampleStyleSheet()
    title_style = ParagraphStyle(
        'Title',
        parent=styles['Heading1'],
        fontSize=16,
        spaceAfter=12,
    )
    cell_style = ParagraphStyle(
        'Cell',
        parent=styles['Normal'],
        fontSize=9,
        leading=11,
    )

    story = [Paragraph("cclab acceptance run", title_style)]
    run_mode = "quick" if quick else "full"
    story.append(Paragraph(
        f"Version {version}, seed {seed}, {run_mode} sizes, {datetime.now():%Y-%m-%d %H:%M}",
        styles['Normal'],
    ))
    story.append(Spacer(1, 0.5*cm))

    table_data = [['#', 'Criterion', 'Result', 'Seconds']]
    for criterion in criteria:
        table_data.append([
            str(criterion.id),
            Paragraph(criterion.title, cell_style),
            "PASS" if criterion.passed else "FAIL",
            f"{criterion.seconds:.1f}",
        ])

    table = Table(table_data, colWidths=[1*cm, 11*cm, 2*cm, 2*cm], repeatRows=1)
    style = [
        ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
        ('ALIGN', (3, 0), (3, -1), 'RIGHT'),
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, 0), 11),
        ('BOTTOMPADDING', (0, 0), (-1, 0), 8),
        ('LINEBELOW', (0, 0), (-1, -2), 0.5, colors.black),
        ('LINEBELOW', (0, -1), (-1, -1), 1, colors.black),
        ('VALIGN', (0, 0), (-1, -1), 'MIDDLE'),
    ]
    for row, criterion in enumerate(criteria, start=1):
        style.append(('TEXTCOLOR', (2, row), (2, row), PASS_COLOR if criterion.passed else FAIL_COLOR))
        style.append(('FONTNAME', (2, row), (2, row), 'Helvetica-Bold'))
    table.setStyle(TableStyle(style))
    story.append(table)
    story.append(Spacer(1, 0.5*cm))

    passed = sum(1 for criterion in criteria if criterion.passed)
    story.append(Paragraph(f"<b>{passed} of {len(criteria)} criteria passed.</b>", styles['Normal']))

    doc.build(story)
    _LOGGER.info(f"Acceptance table written to {output_path}")
