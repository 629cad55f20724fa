"""
Commutative products on the basis of an algebra.

CommProduct   rule-declared, symmetrized by the engine.
MutationProduct  x o y = (x . w) . y over a base product.
TableProduct  explicit table on window basis pairs, as reconstructed by the solver.

Every product answers `pair(bx, by)` with (index, coefficient) pairs, or None
when the table does not define that pair.
"""

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from tpsbench.app.core.exceptions import AlgebraDefinitionError, WindowError
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, accumulate, linear_extend
from tpsbench.app.domain.algebra.definition import AlgebraDef, PairTerms, RuleSystem
from tpsbench.app.domain.algebra.rules import BracketRule, term
from tpsbench.app.domain.exactnum import GaussianRational


class CommProduct(RuleSystem):
    """Commutative product declared by one-sided rules over an algebra's families."""

    kind = "product"

    def __init__(self, name: str, algebra: AlgebraDef, rules: Sequence[BracketRule]):
        super().__init__(
            name,
            algebra.families,
            rules,
            params=algebra.params,
            reverse_sign=1,
            lattice=algebra.lattice,
        )
        self.algebra_name = algebra.name

    def mul(self, x: Element, y: Element) -> Element:
        return self.evaluate(x, y)


class MutationProduct:
    """Mutation of a base product by a fixed element w."""

    kind = "mutation"

    def __init__(self, base: RuleSystem, w: Element):
        for b, _ in w.terms:
            base.check_index(b)
        self.base = base
        self.w = w
        self.name = f"mutation({base.name})"
        self._pair_cache: Dict[Tuple[BasisIndex, BasisIndex], PairTerms] = {}

    def check_index(self, b: BasisIndex) -> None:
        self.base.check_index(b)

    def pair(self, bx: BasisIndex, by: BasisIndex) -> PairTerms:
        key = (bx, by)
        cached = self._pair_cache.get(key)
        if cached is not None:
            return cached
        acc: Dict[BasisIndex, GaussianRational] = {}
        for bw, cw in self.w.terms:
            for b1, c1 in self.base.pair(bx, bw):
                for b2, c2 in self.base.pair(b1, by):
                    accumulate(acc, b2, cw * c1 * c2)
        result = tuple(Element.from_dict(acc).terms)
        self._pair_cache[key] = result
        return result

    def mul(self, x: Element, y: Element) -> Element:
        return linear_extend(x, y, self.pair)


class TableProduct:
    """Product given explicitly on basis pairs; undefined pairs return None."""

    kind = "table"

    def __init__(self, name: str, algebra: AlgebraDef, table: Mapping[Tuple[BasisIndex, BasisIndex], Element]):
        self.name = name
        self.algebra = algebra
        self._table: Dict[Tuple[BasisIndex, BasisIndex], PairTerms] = {}
        for (bx, by), value in table.items():
            self._table[(bx, by)] = value.terms
            self._table[(by, bx)] = value.terms

    def check_index(self, b: BasisIndex) -> None:
        self.algebra.check_index(b)

    def defines(self, bx: BasisIndex, by: BasisIndex) -> bool:
        return (bx, by) in self._table

    def pair(self, bx: BasisIndex, by: BasisIndex) -> Optional[PairTerms]:
        return self._table.get((bx, by))

    def mul(self, x: Element, y: Element) -> Element:
        def lookup(bx, by):
            terms = self.pair(bx, by)
            if terms is None:
                raise WindowError(
                    f"Product table does not define {bx} . {by}",
                    details={"left": str(bx), "right": str(by)},
                )
            return terms

        return linear_extend(x, y, lookup)

    def items(self) -> Iterable[Tuple[Tuple[BasisIndex, BasisIndex], PairTerms]]:
        return self._table.items()


def mul(p, x: Element, y: Element) -> Element:
    """Bilinear symmetric product of two elements."""
    return p.mul(x, y)


def w_plain(alg: AlgebraDef) -> CommProduct:
    """The commutative algebra W matching the algebra's families.

    L.L = L, L.F = F for every other family F, and Y.Y = I (index shifted by 1)
    when the algebra has the half-offset family Y.
    """
    names = alg.family_names
    if "L" not in names:
        raise AlgebraDefinitionError(
            f"Algebra {alg.name!r} has no family L to build the plain product on",
            details={"families": names},
        )
    rules = [BracketRule("L", "L", (term("L", 1),))]
    for other in names:
        if other != "L":
            rules.append(BracketRule("L", other, (term(other, 1),)))
    if "Y" in names and "I" in names:
        rules.append(BracketRule("Y", "Y", (term("I", 1, i_shift=1),)))
    return CommProduct("plain-W", alg, rules)


def zero_product(alg: AlgebraDef) -> CommProduct:
    return CommProduct("zero", alg, [])


def mutation(base: RuleSystem, w: Element) -> MutationProduct:
    return MutationProduct(base, w)
