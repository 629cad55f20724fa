"""
API v1 Router.

Aggregates all v1 API endpoints.
"""

from fastapi import APIRouter

from tpsbench.app.api.v1.endpoints import algebras, half_derivations, tps

router = APIRouter()

router.include_router(algebras.router)
router.include_router(half_derivations.router)
router.include_router(tps.router)
