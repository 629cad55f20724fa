"""
Algebra resolution service.

Turns a catalog name with parameters, a `.liealg` file, or `.liealg` source
text into an AlgebraDef (plus the product the file declares, if any) and the
identity record that goes into every report.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from tpsbench.app.core.exceptions import UsageError
from tpsbench.app.domain.algebra.catalog import REQUIRED_PARAMS, catalog, catalog_names
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.dsl.parser import parse_document
from tpsbench.app.domain.exactnum import render_scalar
from tpsbench.app.domain.tps.products import CommProduct
from tpsbench.app.schemas.report import AlgebraIdentity

logger = logging.getLogger("tpsbench.services")


@dataclass
class LoadedAlgebra:
    algebra: AlgebraDef
    declared_product: Optional[CommProduct]
    identity: AlgebraIdentity


def identity_of(alg: AlgebraDef, source: str) -> AlgebraIdentity:
    return AlgebraIdentity(
        name=alg.name,
        source=source,
        parameters={k: render_scalar(v) for k, v in sorted(alg.params.items())},
        generators=[render_scalar(g) for g in alg.generators],
    )


def load_algebra(
    name: Optional[str] = None,
    params: Optional[Mapping[str, Any]] = None,
    file: Optional[str] = None,
    source: Optional[str] = None,
) -> LoadedAlgebra:
    """Resolve exactly one algebra selector.

    Args:
        name: Catalog name.
        params: Parameters; for files and sources they override declared values.
        file: Path of a `.liealg` file.
        source: `.liealg` text.

    Raises:
        UsageError: when zero or several selectors are given or the file is unreadable.
    """
    selectors = [s for s in (name, file, source) if s is not None]
    if len(selectors) != 1:
        raise UsageError("Give exactly one of an algebra name, a file or a source text")
    params = {k: v for k, v in (params or {}).items() if v is not None and v != []}

    if name is not None:
        alg = catalog(name, params)
        loaded = LoadedAlgebra(alg, None, identity_of(alg, "catalog"))
    else:
        if file is not None:
            try:
                source = Path(file).read_text(encoding="utf-8")
            except OSError as exc:
                raise UsageError(f"Cannot read {file}: {exc}", details={"file": file})
        alg, product = parse_document(source, params or None)
        loaded = LoadedAlgebra(alg, product, identity_of(alg, f"file:{file}" if file else "source"))

    logger.debug("Algebra loaded", extra={"algebra": loaded.algebra.name, "source": loaded.identity.source})
    return loaded


def catalog_listing() -> List[Dict[str, Any]]:
    return [{"name": n, "required_params": REQUIRED_PARAMS[n]} for n in catalog_names()]
