"""
Jacobi identity scan over a window.

Evaluates [x,[y,z]] + [y,[z,x]] + [z,[x,y]] on every basis triple of a window
(unordered, with repetition, in enumeration order) and collects the triples
with a nonzero residual.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, List, Tuple

from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window, accumulate
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.exactnum import GaussianRational

logger = logging.getLogger("tpsbench.domain.jacobi")


@dataclass(frozen=True)
class JacobiViolation:
    triple: Tuple[BasisIndex, BasisIndex, BasisIndex]
    residual: Element


@dataclass
class JacobiReport:
    violations: List[JacobiViolation] = field(default_factory=list)
    triples_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def _nested(alg: AlgebraDef, x: BasisIndex, y: BasisIndex, z: BasisIndex,
            acc: Dict[BasisIndex, GaussianRational]) -> None:
    """acc += [x, [y, z]]"""
    for b, c in alg.pair(y, z):
        for b2, c2 in alg.pair(x, b):
            accumulate(acc, b2, c * c2)


def jacobi_residual(alg: AlgebraDef, x: BasisIndex, y: BasisIndex, z: BasisIndex) -> Element:
    acc: Dict[BasisIndex, GaussianRational] = {}
    _nested(alg, x, y, z, acc)
    _nested(alg, y, z, x, acc)
    _nested(alg, z, x, y, acc)
    return Element.from_dict(acc)


def check_jacobi(alg: AlgebraDef, window: Window) -> JacobiReport:
    """Scan all basis triples of the window for Jacobi violations.

    Args:
        alg: Algebra to check.
        window: Basis window; brackets may leave it, only inputs are bounded.

    Returns:
        JacobiReport with violations in enumeration order (empty for Lie algebras).
    """
    report = JacobiReport()
    domain = alg.enumerate_basis(window)
    for x, y, z in combinations_with_replacement(domain, 3):
        report.triples_checked += 1
        residual = jacobi_residual(alg, x, y, z)
        if residual:
            report.violations.append(JacobiViolation((x, y, z), residual))

    logger.info(
        "Jacobi scan finished",
        extra={
            "algebra": alg.name,
            "basis_size": len(domain),
            "triples": report.triples_checked,
            "violations": len(report.violations),
        },
    )
    return report
