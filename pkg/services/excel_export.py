import logging
from pathlib import Path
from typing import Dict

import openpyxl
import pandas as pd
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils import get_column_letter

logger = logging.getLogger(__name__)

HEADER_FILL = PatternFill(start_color="0066CC", end_color="0066CC", fill_type="solid")
HEADER_FONT = Font(bold=True, color="FFFFFF", size=11)
HEADER_ALIGNMENT = Alignment(horizontal="center", vertical="center", wrap_text=True)

# Excel caps sheet titles at 31 characters
MAX_TITLE = 31


def _cell_value(value):
    if isinstance(value, (list, tuple, dict)):
        return str(value)
    if hasattr(value, "item"):
        value = value.item()
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return None
    return value


def write_frames(path, frames: Dict[str, pd.DataFrame]) -> Path:
    """Write one sheet per frame with a styled header row and auto-sized columns."""
    path = Path(path)
    wb = openpyxl.Workbook()
    wb.remove(wb.active)

    for title, frame in frames.items():
        ws = wb.create_sheet(title=str(title)[:MAX_TITLE])
        headers = [str(c) for c in frame.columns]
        for col_num, header in enumerate(headers, 1):
            cell = ws.cell(row=1, column=col_num)
            cell.value = header
            cell.fill = HEADER_FILL
            cell.font = HEADER_FONT
            cell.alignment = HEADER_ALIGNMENT

        widths = [len(h) for h in headers]
        for row_num, row in enumerate(frame.itertuples(index=False), 2):
            for col_num, value in enumerate(row, 1):
                value = _cell_value(value)
                ws.cell(row=row_num, column=col_num).value = value
                widths[col_num - 1] = max(widths[col_num - 1], len(str(value)) if value is not None else 0)

        for i, width in enumerate(widths, 1):
            ws.column_dimensions[get_column_letter(i)].width = min(max(width + 2, 8), 80)
        ws.freeze_panes = "A2"

    if not frames:
        wb.create_sheet(title="empty")
    wb.save(path)
    logger.info("Wrote %d sheet(s) to %s", len(frames), path)
    return path
