"""
Report emission service.

Reports are UTF-8 JSON with sorted keys, a fixed indent and a trailing
newline, so identical inputs give identical bytes.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from tpsbench.app.core.config import settings
from tpsbench.app.core.exceptions import UsageError
from tpsbench.app.domain.algebra.basis import Window
from tpsbench.app.schemas.report import AlgebraIdentity, ReportDocument, WindowModel

logger = logging.getLogger("tpsbench.services")


def build_report(
    verb: str,
    result: Dict[str, Any],
    passed: bool = True,
    algebra: Optional[AlgebraIdentity] = None,
    window: Optional[Window] = None,
    inputs: Optional[Dict[str, Any]] = None,
) -> ReportDocument:
    return ReportDocument(
        tool_version=settings.tool_version,
        verb=verb,
        algebra=algebra,
        window=WindowModel(**window.as_dict()) if window is not None else None,
        inputs=inputs or {},
        result=result,
        passed=passed,
    )


def emit_report(doc: ReportDocument) -> bytes:
    data = doc.model_dump(mode="json")
    return (json.dumps(data, sort_keys=True, indent=settings.report_indent, ensure_ascii=False) + "\n").encode("utf-8")


def write_report(doc: ReportDocument, out: Optional[str] = None, stream=None) -> None:
    """Write the report to `out`, or to the given binary stream.

    Raises:
        UsageError: when the output file cannot be written.
    """
    raw = emit_report(doc)
    if out is None:
        stream.write(raw)
        stream.flush()
        return
    try:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(raw)
    except OSError as exc:
        raise UsageError(f"Cannot write report to {out}: {exc}", details={"out": out})
    logger.info("Report written", extra={"path": out, "bytes": len(raw), "verb": doc.verb})
