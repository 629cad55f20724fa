"""
Rule-driven graded algebras.

RuleSystem evaluates structure-constant rules on basis pairs and extends them
bilinearly. AlgebraDef is the Lie case: rules are stored for one ordering of
each family pair and the reverse ordering is derived by antisymmetry.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from tpsbench.app.core.exceptions import (
    AlgebraDefinitionError,
    ParameterError,
    UnknownFamilyError,
)
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window, linear_extend
from tpsbench.app.domain.algebra.group import GroupLattice
from tpsbench.app.domain.algebra.rules import (
    INDEX_VARIABLES,
    BracketRule,
    FamilyDecl,
    Polynomial,
    evaluate_compiled,
)
from tpsbench.app.domain.exactnum import GaussianRational, ZERO, coerce, render_scalar

logger = logging.getLogger("tpsbench.domain.algebra")

PairTerms = Tuple[Tuple[BasisIndex, GaussianRational], ...]


class RuleSystem:
    """Families plus one-sided rules, evaluated with memoization per basis pair.

    Args:
        name: Identifier used in reports.
        families: Declared families in declaration order.
        rules: One rule per unordered family pair at most.
        params: Instantiated named parameters.
        generators: Group generators (empty for integer-indexed algebras).
        reverse_sign: Sign applied when a rule is used in the reverse order
            (-1 for brackets, +1 for commutative products).
    """

    kind = "rule system"

    def __init__(
        self,
        name: str,
        families: Sequence[FamilyDecl],
        rules: Sequence[BracketRule],
        params: Optional[Mapping[str, GaussianRational]] = None,
        generators: Sequence[GaussianRational] = (),
        reverse_sign: int = -1,
        lattice: Optional[GroupLattice] = None,
    ):
        self.name = name
        self.params: Dict[str, GaussianRational] = {k: coerce(v) for k, v in (params or {}).items()}
        self.lattice = lattice if lattice is not None else GroupLattice(generators)
        self.generators = self.lattice.generators
        self.families: Tuple[FamilyDecl, ...] = tuple(families)
        self.rules: Tuple[BracketRule, ...] = tuple(rules)
        self._reverse_sign = reverse_sign
        self._family_map = self._index_families(self.families)
        self._compiled = self._compile_rules()
        self._pair_cache: Dict[Tuple[BasisIndex, BasisIndex], PairTerms] = {}
        self._checked: set = set()

    # Construction

    def _index_families(self, families: Sequence[FamilyDecl]) -> Dict[str, FamilyDecl]:
        family_map: Dict[str, FamilyDecl] = {}
        for decl in families:
            if decl.name in family_map:
                raise AlgebraDefinitionError(
                    f"Family {decl.name!r} declared twice in {self.name!r}",
                    details={"family": decl.name},
                )
            family_map[decl.name] = decl
        return family_map

    def _compile_rules(self) -> Dict[Tuple[str, str], list]:
        allowed = set(INDEX_VARIABLES) | set(self.params)
        compiled: Dict[Tuple[str, str], list] = {}
        for index, rule in enumerate(self.rules):
            # 1. Name resolution
            for fam in (rule.left, rule.right):
                if fam not in self._family_map:
                    raise AlgebraDefinitionError(
                        f"Rule [{rule.left}, {rule.right}] uses undeclared family {fam!r}",
                        details={"rule_index": index, "family": fam},
                    )
            key = (rule.left, rule.right)
            if key in compiled or (rule.right, rule.left) in compiled:
                raise AlgebraDefinitionError(
                    f"Family pair ({rule.left}, {rule.right}) has more than one rule",
                    details={"rule_index": index},
                )

            entries = []
            for t in rule.terms:
                if t.target not in self._family_map:
                    raise AlgebraDefinitionError(
                        f"Rule [{rule.left}, {rule.right}] targets undeclared family {t.target!r}",
                        details={"rule_index": index, "family": t.target},
                    )
                unknown = t.coeff.variables() - allowed
                if unknown:
                    raise AlgebraDefinitionError(
                        f"Rule [{rule.left}, {rule.right}] uses undeclared names {sorted(unknown)}",
                        details={"rule_index": index, "names": sorted(unknown)},
                    )
                for pname, _ in t.i_params:
                    if pname not in self.params:
                        raise AlgebraDefinitionError(
                            f"Index shift uses undeclared parameter {pname!r}",
                            details={"rule_index": index, "names": [pname]},
                        )
                    if not self.params[pname].is_integer():
                        raise ParameterError(
                            f"Parameter {pname!r} shifts an integer index and must be an integer",
                            details={"name": pname, "value": render_scalar(self.params[pname])},
                        )
                self.lattice.coordinates(t.alpha_shift)

                coeff = t.coeff.substitute(self.params)
                i_shift = t.total_i_shift(self.params)

                # 2. Grading homogeneity
                self._check_homogeneous(index, rule, t.target, t.alpha_shift, i_shift, coeff)
                entries.append((t.target, t.alpha_shift, i_shift, coeff.compile()))
            compiled[key] = entries
        return compiled

    def _check_homogeneous(self, index: int, rule: BracketRule, target: str,
                           alpha_shift: GaussianRational, i_shift: int, coeff: Polynomial) -> None:
        if coeff.is_zero():
            return
        f, g, h = (self._family_map[rule.left], self._family_map[rule.right], self._family_map[target])
        alpha, beta, i, j = (Polynomial.var(v) for v in INDEX_VARIABLES)
        lhs = h.grade_coeffs[0] * (alpha + beta + alpha_shift) + h.grade_coeffs[1] * (
            i + j + i_shift + h.index_offset)
        rhs = (f.grade_coeffs[0] * alpha + f.grade_coeffs[1] * (i + f.index_offset)
               + g.grade_coeffs[0] * beta + g.grade_coeffs[1] * (j + g.index_offset))
        diff = lhs - rhs
        if self.lattice.rank == 0:
            diff = diff.substitute({"alpha": 0, "beta": 0})
        if not diff.is_zero():
            raise AlgebraDefinitionError(
                f"Rule [{rule.left}, {rule.right}] term {target} is not homogeneous for the grading",
                details={"rule_index": index, "target": target},
            )

    # Basis bookkeeping

    @property
    def family_names(self) -> List[str]:
        return [f.name for f in self.families]

    def max_index_shift(self) -> int:
        """Largest |i + j - k| over rule terms producing index k from indices i and j."""
        return max((abs(entry[2]) for entries in self._compiled.values() for entry in entries), default=0)

    def family(self, name: str) -> FamilyDecl:
        decl = self._family_map.get(name)
        if decl is None:
            raise UnknownFamilyError(name, self.name)
        return decl

    def check_index(self, b: BasisIndex) -> None:
        if b in self._checked:
            return
        self.family(b.family)
        self.lattice.coordinates(b.alpha)
        self._checked.add(b)

    def grade(self, b: BasisIndex) -> GaussianRational:
        """u*alpha + v*(i + offset) for the family's grading coefficients."""
        self.check_index(b)
        decl = self._family_map[b.family]
        u, v = decl.grade_coeffs
        return u * b.alpha + v * (b.i + decl.index_offset)

    def enumerate_basis(self, window: Window) -> List[BasisIndex]:
        """Window basis in family order, then group coordinates, then i."""
        alphas = self.lattice.enumerate(window.alpha_coeff_bound)
        out = []
        for decl in self.families:
            for alpha in alphas:
                for i in range(window.i_min, window.i_max + 1):
                    out.append(BasisIndex(decl.name, alpha, i))
        return out

    def in_window(self, b: BasisIndex, window: Window) -> bool:
        if not window.i_min <= b.i <= window.i_max:
            return False
        return self.lattice.height(b.alpha) <= window.alpha_coeff_bound

    # Evaluation

    def _apply(self, entries, bx: BasisIndex, by: BasisIndex, sign: int) -> PairTerms:
        values = (bx.alpha, by.alpha, bx.i, by.i)
        out = []
        for target, alpha_shift, i_shift, compiled in entries:
            coeff = evaluate_compiled(compiled, values)
            if not coeff:
                continue
            if sign < 0:
                coeff = -coeff
            out.append((BasisIndex(target, bx.alpha + by.alpha + alpha_shift, bx.i + by.i + i_shift), coeff))
        merged: Dict[BasisIndex, GaussianRational] = {}
        for b, c in out:
            merged[b] = merged.get(b, ZERO) + c
        return tuple((b, c) for b, c in merged.items() if c)

    def pair(self, bx: BasisIndex, by: BasisIndex) -> PairTerms:
        """Rule value on two basis indices as (index, coefficient) pairs."""
        key = (bx, by)
        cached = self._pair_cache.get(key)
        if cached is not None:
            return cached
        self.check_index(bx)
        self.check_index(by)
        entries = self._compiled.get((bx.family, by.family))
        if entries is not None:
            result = self._apply(entries, bx, by, 1)
        else:
            entries = self._compiled.get((by.family, bx.family))
            result = self._apply(entries, by, bx, self._reverse_sign) if entries is not None else ()
        self._pair_cache[key] = result
        return result

    def evaluate(self, x: Element, y: Element) -> Element:
        return linear_extend(x, y, self.pair)

    def describe(self) -> Dict:
        return {
            "name": self.name,
            "parameters": {k: render_scalar(v) for k, v in sorted(self.params.items())},
            "generators": [render_scalar(g) for g in self.generators],
            "families": [
                {
                    "name": f.name,
                    "offset": str(f.index_offset),
                    "grade": [render_scalar(f.grade_coeffs[0]), render_scalar(f.grade_coeffs[1])],
                }
                for f in self.families
            ],
        }


class AlgebraDef(RuleSystem):
    """A graded Lie algebra declared by bracket rules."""

    kind = "algebra"

    def __init__(
        self,
        name: str,
        families: Sequence[FamilyDecl],
        rules: Sequence[BracketRule],
        params: Optional[Mapping[str, GaussianRational]] = None,
        generators: Sequence[GaussianRational] = (),
    ):
        super().__init__(name, families, rules, params, generators, reverse_sign=-1)
        logger.debug(
            "Algebra constructed",
            extra={"algebra": name, "families": len(self.families), "rules": len(self.rules)},
        )

    def bracket(self, x: Element, y: Element) -> Element:
        return self.evaluate(x, y)


def bracket(alg: AlgebraDef, x: Element, y: Element) -> Element:
    """Bilinear antisymmetric extension of the algebra's rules."""
    return alg.bracket(x, y)


def grade(alg: RuleSystem, b: BasisIndex) -> GaussianRational:
    return alg.grade(b)


def enumerate_basis(alg: RuleSystem, window: Window) -> List[BasisIndex]:
    return alg.enumerate_basis(window)
