"""Shared request helpers for the v1 endpoints."""

from typing import Any, Dict

from tpsbench.app.schemas.report import AlgebraSelector
from tpsbench.app.services.algebra_loader import LoadedAlgebra, load_algebra


def resolve(selector: AlgebraSelector) -> LoadedAlgebra:
    params: Dict[str, Any] = dict(selector.params)
    if selector.generators:
        params["generators"] = list(selector.generators)
    return load_algebra(name=selector.name, params=params, source=selector.source)
