"""
Algebra API Endpoints.

Catalog listing, bracket evaluation and Jacobi scans.
"""

from fastapi import APIRouter

from tpsbench.app.api.v1.endpoints._common import resolve
from tpsbench.app.schemas.report import AlgebraCatalogResponse, BracketRequest, ReportDocument, WindowRequest
from tpsbench.app.services import workbench
from tpsbench.app.services.algebra_loader import catalog_listing
from tpsbench.app.services.reports import build_report

router = APIRouter(prefix="/algebras", tags=["Algebras"])


@router.get("", response_model=AlgebraCatalogResponse)
async def list_algebras():
    """List catalog algebras with their required parameters."""
    return {"algebras": catalog_listing()}


@router.post("/bracket", response_model=ReportDocument)
async def bracket(request: BracketRequest):
    """Bracket of two element literals."""
    loaded = resolve(request.algebra)
    result, passed = workbench.run_bracket(loaded.algebra, request.x, request.y)
    return build_report("bracket", result, passed, loaded.identity, inputs={"x": request.x, "y": request.y})


@router.post("/jacobi", response_model=ReportDocument)
async def jacobi(request: WindowRequest):
    """Jacobi identity scan over a window."""
    loaded = resolve(request.algebra)
    window = request.window.to_window()
    result, passed = workbench.run_jacobi(loaded.algebra, window)
    return build_report("jacobi", result, passed, loaded.identity, window)
