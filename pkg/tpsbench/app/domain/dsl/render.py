"""
Render algebras, products and elements back to `.liealg` text.

Index variables are written `al, i` for the left operand and `be, j` for the
right one. Scalars always carry explicit digits (`1i`, never a bare `i`,
which the DSL reads as an identifier).
"""

from fractions import Fraction
from typing import Dict, List, Optional

from tpsbench.app.domain.algebra.basis import Element
from tpsbench.app.domain.algebra.definition import AlgebraDef, RuleSystem
from tpsbench.app.domain.algebra.rules import BracketRule, Polynomial, RuleTerm
from tpsbench.app.domain.exactnum import GaussianRational, coerce

RULE_NAMES = {"alpha": "al", "beta": "be", "i": "i", "j": "j"}


def _rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_dsl_scalar(value) -> str:
    """Scalar as a DSL expression, parenthesized unless it is a plain nonnegative rational."""
    value = coerce(value)
    if not value.im:
        text = _rational(value.re)
        return text if value.re >= 0 else f"({text})"
    im_text = _rational(abs(value.im)) + "i"
    if not value.re:
        return im_text if value.im > 0 else f"(-{im_text})"
    sign = "-" if value.im < 0 else "+"
    return f"({_rational(value.re)}{sign}{im_text})"


def render_polynomial(poly: Polynomial, names: Optional[Dict[str, str]] = None) -> str:
    names = names or {}
    if poly.is_zero():
        return "0"
    parts: List[str] = []
    for mono, coeff in poly.sorted_terms():
        factors = []
        for var, exp in mono:
            factors.extend([names.get(var, var)] * exp)
        if not factors:
            parts.append(render_dsl_scalar(coeff))
        elif coeff == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([render_dsl_scalar(coeff)] + factors))
    return " + ".join(parts)


def _index_shift(base: str, shift: int, params=()) -> str:
    text = base
    if shift > 0:
        text += f" + {shift}"
    elif shift < 0:
        text += f" - {-shift}"
    for name, multiplier in params:
        if multiplier == 1:
            text += f" + {name}"
        elif multiplier == -1:
            text += f" - {name}"
        elif multiplier > 0:
            text += f" + {multiplier}*{name}"
        else:
            text += f" - {-multiplier}*{name}"
    return text


def _render_term(t: RuleTerm, grouped: bool) -> str:
    i_text = _index_shift("i + j", t.i_shift, t.i_params)
    if grouped:
        alpha_text = "al + be"
        if t.alpha_shift:
            alpha_text += f" + {render_dsl_scalar(t.alpha_shift)}"
        target = f"{t.target}({alpha_text}, {i_text})"
    else:
        target = f"{t.target}({i_text})"
    return f"({render_polynomial(t.coeff, RULE_NAMES)}) * {target}"


def _render_rule(keyword: str, rule: BracketRule, grouped: bool) -> str:
    left = f"{rule.left}(al, i)" if grouped else f"{rule.left}(i)"
    right = f"{rule.right}(be, j)" if grouped else f"{rule.right}(j)"
    rhs = " + ".join(_render_term(t, grouped) for t in rule.terms) if rule.terms else "0"
    return f"  {keyword} [{left}, {right}] = {rhs};"


def render(alg: AlgebraDef, product: Optional[RuleSystem] = None) -> str:
    """Render an algebra (and optionally a rule-declared product on it) as `.liealg` text."""
    grouped = alg.lattice.rank > 0
    params = [f"{name} = {render_dsl_scalar(value)}" for name, value in alg.params.items()]
    if grouped:
        params.append("generators = [" + ", ".join(render_dsl_scalar(g) for g in alg.generators) + "]")

    lines = [f"algebra {alg.name}({', '.join(params)}) {{"]
    for decl in alg.families:
        u, v = decl.grade_coeffs
        grade = Polynomial.var("i") * v + v * decl.index_offset
        if grouped:
            grade = grade + Polynomial.var("alpha") * u
        var_list = "al, i" if grouped else "i"
        lines.append(
            f"  family {decl.name}({var_list}) offset {_rational(decl.index_offset)} "
            f"grade {render_polynomial(grade, {'alpha': 'al'})};"
        )
    for rule in alg.rules:
        lines.append(_render_rule("bracket", rule, grouped))
    if product is not None:
        for rule in product.rules:
            lines.append(_render_rule("product", rule, grouped))
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_element(elem: Element, alg: Optional[RuleSystem] = None) -> str:
    """Element literal accepted by parse_element; `0` for the zero element."""
    if elem.is_zero():
        return "0"
    if alg is not None:
        grouped = alg.lattice.rank > 0
    else:
        grouped = any(not b.alpha.is_zero() for b, _ in elem.terms)
    parts = []
    for b, c in elem.terms:
        index = f"{render_dsl_scalar(b.alpha)}, {b.i}" if grouped else f"{b.i}"
        parts.append(f"{render_dsl_scalar(c)}*{b.family}({index})")
    return " + ".join(parts)
