"""
Transposed Poisson checks on a window.

    commutative   x.y = y.x
    associative   (x.y).z = x.(y.z)
    compatible    2 z.[x,y] = [z.x, y] + [x, z.y]
    leibniz       [x.y, z] = x.[y,z] + [x,z].y

All scans run over basis tuples in enumeration order and keep the first
failing tuple as witness. Tuples that need a product the table does not
define are skipped and counted.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window, accumulate
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.exactnum import GaussianRational
from tpsbench.app.domain.halfderiv.maps import LinearMap

logger = logging.getLogger("tpsbench.domain.tps")

Terms = Iterable[Tuple[BasisIndex, GaussianRational]]


class _Undefined(Exception):
    pass


@dataclass(frozen=True)
class Witness:
    tuple: Tuple[BasisIndex, ...]
    residual: Element


@dataclass
class PropertyCheck:
    name: str
    witness: Optional[Witness] = None
    violations: int = 0
    tuples_checked: int = 0
    tuples_skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.witness is None


@dataclass
class TpsReport:
    commutative: PropertyCheck
    associative: PropertyCheck
    compatible: PropertyCheck
    leibniz: PropertyCheck

    @property
    def is_tps(self) -> bool:
        return self.commutative.ok and self.associative.ok and self.compatible.ok

    def checks(self) -> List[PropertyCheck]:
        return [self.commutative, self.associative, self.compatible, self.leibniz]


def _pmul(p, bx: BasisIndex, by: BasisIndex) -> Terms:
    terms = p.pair(bx, by)
    if terms is None:
        raise _Undefined()
    return terms


def _mul_right(p, terms: Terms, by: BasisIndex, scale, acc: Dict[BasisIndex, GaussianRational]) -> None:
    """acc += scale * (terms . by)"""
    for b, c in terms:
        for b2, c2 in _pmul(p, b, by):
            accumulate(acc, b2, scale * c * c2)


def commutativity_residual(p, alg: AlgebraDef, x: BasisIndex, y: BasisIndex) -> Element:
    acc: Dict[BasisIndex, GaussianRational] = {}
    for b, c in _pmul(p, x, y):
        accumulate(acc, b, c)
    for b, c in _pmul(p, y, x):
        accumulate(acc, b, -c)
    return Element.from_dict(acc)


def associativity_residual(p, alg: AlgebraDef, x: BasisIndex, y: BasisIndex, z: BasisIndex) -> Element:
    acc: Dict[BasisIndex, GaussianRational] = {}
    _mul_right(p, _pmul(p, x, y), z, 1, acc)
    for b, c in _pmul(p, y, z):
        for b2, c2 in _pmul(p, x, b):
            accumulate(acc, b2, -(c * c2))
    return Element.from_dict(acc)


def compatibility_residual(p, alg: AlgebraDef, x: BasisIndex, y: BasisIndex, z: BasisIndex) -> Element:
    """2 z.[x,y] - [z.x, y] - [x, z.y] on basis elements."""
    acc: Dict[BasisIndex, GaussianRational] = {}
    for b, c in alg.pair(x, y):
        for b2, c2 in _pmul(p, z, b):
            accumulate(acc, b2, 2 * c * c2)
    for b, c in _pmul(p, z, x):
        for b2, c2 in alg.pair(b, y):
            accumulate(acc, b2, -(c * c2))
    for b, c in _pmul(p, z, y):
        for b2, c2 in alg.pair(x, b):
            accumulate(acc, b2, -(c * c2))
    return Element.from_dict(acc)


def leibniz_residual(p, alg: AlgebraDef, x: BasisIndex, y: BasisIndex, z: BasisIndex) -> Element:
    """[x.y, z] - x.[y,z] - [x,z].y on basis elements."""
    acc: Dict[BasisIndex, GaussianRational] = {}
    for b, c in _pmul(p, x, y):
        for b2, c2 in alg.pair(b, z):
            accumulate(acc, b2, c * c2)
    for b, c in alg.pair(y, z):
        for b2, c2 in _pmul(p, x, b):
            accumulate(acc, b2, -(c * c2))
    _mul_right(p, alg.pair(x, z), y, -1, acc)
    return Element.from_dict(acc)


def compatibility_residual_elements(p, alg: AlgebraDef, x: Element, y: Element, z: Element) -> Element:
    """Element form of the compatibility residual (products defined everywhere)."""
    return p.mul(z, alg.bracket(x, y)).scale(2) - alg.bracket(p.mul(z, x), y) - alg.bracket(x, p.mul(z, y))


def _scan(name: str, tuples: Iterable[Tuple[BasisIndex, ...]], residual: Callable[..., Element]) -> PropertyCheck:
    check = PropertyCheck(name)
    for tup in tuples:
        try:
            value = residual(*tup)
        except _Undefined:
            check.tuples_skipped += 1
            continue
        check.tuples_checked += 1
        if value:
            check.violations += 1
            if check.witness is None:
                check.witness = Witness(tuple(tup), value)
    return check


def check_poisson(p, alg: AlgebraDef, window: Window) -> PropertyCheck:
    """Leibniz rule [x.y, z] = x.[y,z] + [x,z].y on basis triples of the window."""
    domain = alg.enumerate_basis(window)
    triples = ((x, y, z) for x, y in combinations_with_replacement(domain, 2) for z in domain)
    check = _scan("leibniz", triples, lambda x, y, z: leibniz_residual(p, alg, x, y, z))
    logger.debug("Leibniz scan finished", extra={"product": p.name, "violations": check.violations})
    return check


def check_tps(p, alg: AlgebraDef, window: Window) -> TpsReport:
    """Scan commutativity, associativity, compatibility and the Leibniz rule.

    Args:
        p: Commutative product sharing the algebra's families.
        alg: The Lie algebra.
        window: Basis window for the scanned tuples.

    Returns:
        TpsReport; each flag carries the first failing tuple as witness.
    """
    domain = alg.enumerate_basis(window)
    commutative = _scan("commutative", combinations(domain, 2), lambda x, y: commutativity_residual(p, alg, x, y))
    associative = _scan("associative", product(domain, repeat=3),
                        lambda x, y, z: associativity_residual(p, alg, x, y, z))
    compatible = _scan(
        "compatible",
        ((x, y, z) for x, y in combinations(domain, 2) for z in domain),
        lambda x, y, z: compatibility_residual(p, alg, x, y, z),
    )
    report = TpsReport(commutative, associative, compatible, check_poisson(p, alg, window))
    logger.info(
        "TPS scan finished",
        extra={
            "algebra": alg.name,
            "product": p.name,
            "basis_size": len(domain),
            **{c.name: c.ok for c in report.checks()},
        },
    )
    return report


class LeftMultMap(LinearMap):
    """x -> z.x"""

    def __init__(self, p, z: Element):
        self.p = p
        self.z = z

    def apply_basis(self, b: BasisIndex) -> Optional[Element]:
        acc: Dict[BasisIndex, GaussianRational] = {}
        try:
            _mul_right(self.p, self.z.terms, b, 1, acc)
        except _Undefined:
            return None
        return Element.from_dict(acc)


def left_mult_map(p, z: Element) -> LeftMultMap:
    return LeftMultMap(p, z)
