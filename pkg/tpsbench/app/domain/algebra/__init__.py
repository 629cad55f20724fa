from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window, ZERO_ELEMENT, basis
from tpsbench.app.domain.algebra.catalog import catalog, catalog_names
from tpsbench.app.domain.algebra.definition import AlgebraDef, RuleSystem, bracket, enumerate_basis, grade
from tpsbench.app.domain.algebra.group import GroupLattice
from tpsbench.app.domain.algebra.jacobi import JacobiReport, check_jacobi
from tpsbench.app.domain.algebra.rules import BracketRule, FamilyDecl, Polynomial, RuleTerm

__all__ = [
    "AlgebraDef",
    "BasisIndex",
    "BracketRule",
    "Element",
    "FamilyDecl",
    "GroupLattice",
    "JacobiReport",
    "Polynomial",
    "RuleSystem",
    "RuleTerm",
    "Window",
    "ZERO_ELEMENT",
    "basis",
    "bracket",
    "catalog",
    "catalog_names",
    "check_jacobi",
    "enumerate_basis",
    "grade",
]
