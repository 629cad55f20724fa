"""
Half-derivation API Endpoints.
"""

from fastapi import APIRouter

from tpsbench.app.api.v1.endpoints._common import resolve
from tpsbench.app.schemas.report import HalfDerivationSolveRequest, ReportDocument
from tpsbench.app.services import workbench
from tpsbench.app.services.reports import build_report

router = APIRouter(prefix="/half-derivations", tags=["Half-derivations"])


@router.post("/solve", response_model=ReportDocument)
async def solve(request: HalfDerivationSolveRequest):
    """
    Solve one grade shift on a window and classify the interior.

    The output window is the input window padded by out_pad.
    """
    loaded = resolve(request.algebra)
    window = request.window.to_window()
    result, passed = workbench.run_halfder_solve(loaded.algebra, [request.shift], window, request.out_pad)
    return build_report(
        "halfder-solve", result, passed, loaded.identity, window,
        inputs={"shifts": [request.shift], "out_pad": request.out_pad},
    )
