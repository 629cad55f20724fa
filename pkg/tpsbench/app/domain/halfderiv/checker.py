"""
Exact check of the half-derivation identity

    phi([x, y]) = 1/2 ([phi(x), y] + [x, phi(y)])

on basis pairs. In formal-family mode (output_window given) residuals are
compared only on basis elements inside the output window.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from tpsbench.app.core.config import settings
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window, accumulate
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.exactnum import HALF, GaussianRational
from tpsbench.app.domain.halfderiv.maps import LinearMap

logger = logging.getLogger("tpsbench.domain.halfderiv")

BasisPair = Tuple[BasisIndex, BasisIndex]


@dataclass(frozen=True)
class PairResidual:
    pair: BasisPair
    residual: Element


@dataclass
class HalfDerivationReport:
    residuals: List[PairResidual] = field(default_factory=list)
    pairs_checked: int = 0
    pairs_skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.residuals


def half_derivation_residual(alg: AlgebraDef, phi: LinearMap, x: BasisIndex, y: BasisIndex) -> Optional[Element]:
    """phi([x,y]) - 1/2([phi x, y] + [x, phi y]); None when phi is undefined on a needed element."""
    phi_x = phi.apply_basis(x)
    phi_y = phi.apply_basis(y)
    if phi_x is None or phi_y is None:
        return None

    acc: Dict[BasisIndex, GaussianRational] = {}
    for z, cz in alg.pair(x, y):
        image = phi.apply_basis(z)
        if image is None:
            return None
        for b, c in image.terms:
            accumulate(acc, b, cz * c)
    for b, c in phi_x.terms:
        for b2, c2 in alg.pair(b, y):
            accumulate(acc, b2, -HALF * c * c2)
    for b, c in phi_y.terms:
        for b2, c2 in alg.pair(x, b):
            accumulate(acc, b2, -HALF * c * c2)
    return Element.from_dict(acc)


def check_half_derivation(
    alg: AlgebraDef,
    phi: LinearMap,
    pairs: Iterable[BasisPair],
    output_window: Optional[Window] = None,
) -> HalfDerivationReport:
    """Check the identity on each pair and collect nonzero residuals.

    Args:
        alg: Algebra supplying the bracket.
        phi: Map to check.
        pairs: Basis pairs.
        output_window: Formal-family mode; only residual coefficients on basis
            elements inside this window count.

    Returns:
        HalfDerivationReport with residuals in pair order.
    """
    report = HalfDerivationReport()
    for x, y in pairs:
        residual = half_derivation_residual(alg, phi, x, y)
        if residual is None:
            report.pairs_skipped += 1
            continue
        report.pairs_checked += 1
        if output_window is not None and residual:
            residual = Element.from_dict(
                {b: c for b, c in residual.terms if alg.in_window(b, output_window)}
            )
        if residual:
            report.residuals.append(PairResidual((x, y), residual))

    logger.debug(
        "Half-derivation check finished",
        extra={
            "algebra": alg.name,
            "pairs": report.pairs_checked,
            "skipped": report.pairs_skipped,
            "failures": len(report.residuals),
        },
    )
    return report


def all_pairs(basis: Sequence[BasisIndex]) -> List[BasisPair]:
    """Unordered distinct pairs in enumeration order."""
    return list(combinations(basis, 2))


def sample_pairs(alg: AlgebraDef, window: Window, count: Optional[int] = None,
                 rng: Optional[random.Random] = None) -> List[BasisPair]:
    """Random ordered basis pairs from a window, reproducible from settings.random_seed."""
    rng = rng or random.Random(settings.random_seed)
    count = settings.default_pair_samples if count is None else count
    domain = alg.enumerate_basis(window)
    return [(rng.choice(domain), rng.choice(domain)) for _ in range(count)]
