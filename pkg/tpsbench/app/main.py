"""
FastAPI Application Entry Point.

Read-only JSON front end over the workbench services.
"""

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError

from tpsbench.app.api.v1.router import router as api_v1_router
from tpsbench.app.core.config import settings
from tpsbench.app.core.exceptions import (
    AppException,
    app_exception_handler,
    generic_exception_handler,
    http_exception_handler,
    validation_exception_handler,
)
from tpsbench.app.core.observability import ObservabilityMiddleware, configure_logging

configure_logging()

app = FastAPI(
    title=settings.app_name,
    version=settings.api_version,
    debug=settings.debug,
    description="Exact checks and window solvers for Witt-type Lie algebras",
)

app.add_middleware(ObservabilityMiddleware)

# Register global exception handlers
app.add_exception_handler(AppException, app_exception_handler)
app.add_exception_handler(HTTPException, http_exception_handler)
app.add_exception_handler(RequestValidationError, validation_exception_handler)
app.add_exception_handler(Exception, generic_exception_handler)


@app.get("/health", tags=["Health"])
async def health_check():
    """
    Health check endpoint.

    Returns:
        dict: Status and application information
    """
    return {
        "status": "healthy",
        "app_name": settings.app_name,
        "version": settings.tool_version,
    }


app.include_router(api_v1_router, prefix=f"/{settings.api_version}")
