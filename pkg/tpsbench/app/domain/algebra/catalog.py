"""
Built-in algebras.

w_abs   W(a,b,1/2): families L, I, Y (Y carries index offset 1/2), graded by index.
w_ab    W(a,b): families L, I, graded by index.
witt    Witt algebra: family L.
wn_g    W_n(G): family L over a group G, graded by the group part.
hwn_g   HW_n(G): families L, H over a group G, graded by the group part.
"""

from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Sequence

from tpsbench.app.core.exceptions import ParameterError, UnknownAlgebraError
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.algebra.rules import BracketRule, FamilyDecl, term, var
from tpsbench.app.domain.exactnum import GaussianRational, ONE, ZERO, coerce, parse_scalar, render_scalar

INDEX_GRADING = (ZERO, ONE)
GROUP_GRADING = (ONE, ZERO)

REQUIRED_PARAMS: Dict[str, List[str]] = {
    "w_abs": ["a", "b"],
    "w_ab": ["a", "b"],
    "witt": [],
    "wn_g": ["n", "generators"],
    "hwn_g": ["n", "generators"],
}


def _scalar(params: Mapping[str, Any], name: str) -> GaussianRational:
    if name not in params or params[name] is None:
        raise ParameterError(f"Missing required parameter {name!r}", details={"name": name})
    value = params[name]
    if isinstance(value, str):
        return parse_scalar(value)
    try:
        return coerce(value)
    except TypeError:
        raise ParameterError(f"Parameter {name!r} is not a Gaussian rational", details={"name": name})


def _integer(params: Mapping[str, Any], name: str) -> GaussianRational:
    value = _scalar(params, name)
    if not value.is_integer():
        raise ParameterError(
            f"Parameter {name!r} must be an integer",
            details={"name": name, "value": render_scalar(value)},
        )
    return value


def _generators(params: Mapping[str, Any]) -> List[GaussianRational]:
    gens = params.get("generators")
    if not gens:
        raise ParameterError("At least one group generator is required", details={"name": "generators"})
    return [_scalar({"g": g}, "g") for g in gens]


def build_w_abs(params: Mapping[str, Any]) -> AlgebraDef:
    a, b = _scalar(params, "a"), _scalar(params, "b")
    i, j = var("i"), var("j")
    half = Fraction(1, 2)
    families = [
        FamilyDecl("L", Fraction(0), INDEX_GRADING),
        FamilyDecl("I", Fraction(0), INDEX_GRADING),
        FamilyDecl("Y", half, INDEX_GRADING),
    ]
    rules = [
        BracketRule("L", "L", (term("L", j - i),)),
        BracketRule("L", "I", (term("I", j + var("b") * i + var("a")),)),
        # Y_{j+1/2} is stored with integer part j
        BracketRule("L", "Y", (term("Y", j + half + ((var("b") - 1) * i + var("a")) * half),)),
        BracketRule("Y", "Y", (term("I", j - i, i_shift=1),)),
    ]
    return AlgebraDef("w_abs", families, rules, params={"a": a, "b": b})


def build_w_ab(params: Mapping[str, Any]) -> AlgebraDef:
    a, b = _scalar(params, "a"), _scalar(params, "b")
    i, j = var("i"), var("j")
    families = [FamilyDecl("L", Fraction(0), INDEX_GRADING), FamilyDecl("I", Fraction(0), INDEX_GRADING)]
    rules = [
        BracketRule("L", "L", (term("L", j - i),)),
        BracketRule("L", "I", (term("I", j + var("b") * i + var("a")),)),
    ]
    return AlgebraDef("w_ab", families, rules, params={"a": a, "b": b})


def build_witt(params: Mapping[str, Any]) -> AlgebraDef:
    families = [FamilyDecl("L", Fraction(0), INDEX_GRADING)]
    rules = [BracketRule("L", "L", (term("L", var("j") - var("i")),))]
    return AlgebraDef("witt", families, rules)


def _wn_rule() -> BracketRule:
    alpha, beta, i, j = var("alpha"), var("beta"), var("i"), var("j")
    return BracketRule("L", "L", (
        term("L", beta - alpha),
        term("L", j - i, i_params=(("n", 1),)),
    ))


def build_wn_g(params: Mapping[str, Any]) -> AlgebraDef:
    n = _integer(params, "n")
    families = [FamilyDecl("L", Fraction(0), GROUP_GRADING)]
    return AlgebraDef("wn_g", families, [_wn_rule()], params={"n": n}, generators=_generators(params))


def build_hwn_g(params: Mapping[str, Any]) -> AlgebraDef:
    n = _integer(params, "n")
    families = [FamilyDecl("L", Fraction(0), GROUP_GRADING), FamilyDecl("H", Fraction(0), GROUP_GRADING)]
    rules = [
        _wn_rule(),
        BracketRule("L", "H", (
            term("H", var("beta")),
            term("H", var("j"), i_params=(("n", 1),)),
        )),
    ]
    return AlgebraDef("hwn_g", families, rules, params={"n": n}, generators=_generators(params))


BUILDERS: Dict[str, Callable[[Mapping[str, Any]], AlgebraDef]] = {
    "w_abs": build_w_abs,
    "w_ab": build_w_ab,
    "witt": build_witt,
    "wn_g": build_wn_g,
    "hwn_g": build_hwn_g,
}


def catalog_names() -> List[str]:
    return list(BUILDERS)


def catalog(name: str, params: Mapping[str, Any] = None) -> AlgebraDef:
    """Build a validated catalog algebra.

    Args:
        name: One of w_abs, w_ab, witt, wn_g, hwn_g.
        params: a, b for w_abs/w_ab; n and generators for wn_g/hwn_g. Values
            may be GaussianRational, int, Fraction or scalar text.

    Raises:
        UnknownAlgebraError: for unknown names.
        ParameterError: for missing or ill-typed parameters.
    """
    builder = BUILDERS.get(name)
    if builder is None:
        raise UnknownAlgebraError(name, BUILDERS)
    return builder(params or {})
