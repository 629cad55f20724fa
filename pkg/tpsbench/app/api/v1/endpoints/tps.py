"""
Transposed Poisson API Endpoints.
"""

from fastapi import APIRouter

from tpsbench.app.api.v1.endpoints._common import resolve
from tpsbench.app.schemas.report import ReportDocument, TpsCheckRequest
from tpsbench.app.services import workbench
from tpsbench.app.services.reports import build_report

router = APIRouter(prefix="/tps", tags=["Transposed Poisson"])


@router.post("/check", response_model=ReportDocument)
async def check(request: TpsCheckRequest):
    """Check a product against the bracket on a window; violations are report data, not errors."""
    loaded = resolve(request.algebra)
    window = request.window.to_window()
    product = workbench.select_product(loaded.algebra, request.product, request.w, loaded.declared_product)
    result, passed = workbench.run_tps_check(loaded.algebra, product, window)
    return build_report(
        "tps-check", result, passed, loaded.identity, window,
        inputs={"product": request.product, "w": request.w},
    )
