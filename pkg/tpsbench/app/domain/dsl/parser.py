"""
Recursive-descent parser for `.liealg` sources.

    document   = 'algebra' NAME '(' [param {',' param}] ')' '{' family* rule* '}'
    param      = NAME '=' expr | 'generators' '=' '[' [expr {',' expr}] ']'
    family     = 'family' NAME '(' vars ')' 'offset' ['-'] NUMBER 'grade' expr ';'
    rule       = ('bracket' | 'product') '[' NAME '(' vars ')' ',' NAME '(' vars ')' ']' '=' sum ';'
    sum        = '0' | ['+'|'-'] summand {('+'|'-') summand}
    summand    = factor {'*' factor}        (exactly one factor is a family term)
    expr       = term {('+'|'-') term};  term = unary {'*' unary}
    unary      = ('+'|'-') unary | NUMBER | NAME | '(' expr ')'

Name resolution, index-expression shape and grading homogeneity are checked
while parsing, so every error carries the span of the offending token.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from tpsbench.app.core.exceptions import (
    AlgebraDefinitionError,
    AppException,
    ParameterError,
    ParseError,
    SourceSpan,
)
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, accumulate
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.algebra.group import GroupLattice
from tpsbench.app.domain.algebra.rules import BracketRule, FamilyDecl, Polynomial, RuleTerm
from tpsbench.app.domain.dsl.lexer import Token, tokenize
from tpsbench.app.domain.exactnum import GaussianRational, ZERO, ONE, coerce, parse_scalar, render_scalar
from tpsbench.app.domain.tps.products import CommProduct

logger = logging.getLogger("tpsbench.domain.dsl")


def _number_value(text: str) -> GaussianRational:
    if text.endswith("i"):
        return GaussianRational(0, Fraction(text[:-1]))
    return GaussianRational(Fraction(text))


@dataclass
class _Summand:
    coeff: Polynomial
    family: Token
    args: List[Polynomial]


@dataclass
class _RuleDecl:
    keyword: Token
    rule: BracketRule


@dataclass
class _Document:
    name: Token
    params: Dict[str, GaussianRational] = field(default_factory=dict)
    param_tokens: Dict[str, Token] = field(default_factory=dict)
    generators: List[GaussianRational] = field(default_factory=list)
    families: List[FamilyDecl] = field(default_factory=list)
    brackets: List[_RuleDecl] = field(default_factory=list)
    products: List[_RuleDecl] = field(default_factory=list)


class Parser:
    """Single-use parser over one source text.

    Args:
        text: UTF-8 source.
        params: Optional overrides for declared parameters (and `generators`).
    """

    def __init__(self, text: str, params: Optional[Mapping[str, Any]] = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.overrides = dict(params or {})
        self.family_names: Set[str] = set()

    # Token handling

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def lookahead(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def peek(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.token
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        if self.peek(kind, text):
            tok = self.token
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, text: Optional[str] = None, what: Optional[str] = None) -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            wanted = what or (repr(text) if text else kind.lower())
            self.fail("syntax", f"expected {wanted}, found {self.token.describe()}")
        return tok

    def fail(self, kind: str, message: str, token: Optional[Token] = None, **details):
        tok = token or self.token
        raise ParseError(tok.span, kind, message, details=details or None)

    # Document

    def parse_document(self) -> Tuple[AlgebraDef, Optional[CommProduct]]:
        self.expect("KEYWORD", "algebra")
        doc = _Document(name=self.expect("IDENT", what="algebra name"))
        self.expect("PUNCT", "(")
        if not self.peek("PUNCT", ")"):
            self.parse_param(doc)
            while self.accept("PUNCT", ","):
                self.parse_param(doc)
        self.expect("PUNCT", ")")
        self.apply_overrides(doc)
        lattice = self.build_lattice(doc)

        self.expect("PUNCT", "{")
        while self.peek("KEYWORD", "family"):
            doc.families.append(self.parse_family(doc))
        while self.peek("KEYWORD", "bracket") or self.peek("KEYWORD", "product"):
            self.parse_rule(doc, lattice)
        if not self.peek("PUNCT", "}"):
            if self.peek("KEYWORD", "family"):
                self.fail("syntax", "family declarations must precede rules")
            self.fail("syntax", f"expected 'family', 'bracket', 'product' or '}}', found {self.token.describe()}")
        self.expect("PUNCT", "}")
        self.expect("EOF", what="end of input")

        algebra = self.build_algebra(doc, lattice)
        product = self.build_product(doc, algebra)
        logger.debug(
            "Parsed algebra source",
            extra={"algebra": algebra.name, "families": len(doc.families), "rules": len(doc.brackets)},
        )
        return algebra, product

    def parse_param(self, doc: _Document) -> None:
        name_tok = self.expect("IDENT", what="parameter name")
        name = name_tok.text
        if name in doc.param_tokens:
            self.fail("semantic", f"parameter {name!r} declared twice", name_tok)
        self.expect("PUNCT", "=")
        doc.param_tokens[name] = name_tok
        if name == "generators":
            self.expect("PUNCT", "[")
            if not self.peek("PUNCT", "]"):
                doc.generators.append(self.parse_constant())
                while self.accept("PUNCT", ","):
                    doc.generators.append(self.parse_constant())
            self.expect("PUNCT", "]")
        else:
            doc.params[name] = self.parse_constant()

    def apply_overrides(self, doc: _Document) -> None:
        for name, value in self.overrides.items():
            if name not in doc.param_tokens:
                self.fail("semantic", f"override for undeclared parameter {name!r}", doc.name, declared=sorted(doc.param_tokens))
            try:
                if name == "generators":
                    doc.generators = [self._override_value(v) for v in value]
                else:
                    doc.params[name] = self._override_value(value)
            except (TypeError, AppException):
                self.fail("semantic", f"override for {name!r} is not a Gaussian rational", doc.param_tokens[name])

    @staticmethod
    def _override_value(value: Any) -> GaussianRational:
        if isinstance(value, str):
            return parse_scalar(value)
        return coerce(value)

    def build_lattice(self, doc: _Document) -> GroupLattice:
        try:
            return GroupLattice(doc.generators)
        except ParameterError as exc:
            self.fail("semantic", exc.message, doc.param_tokens.get("generators", doc.name))

    # Declarations

    def parse_vars(self, arity: int, family_tok: Token, taken: Dict[str, Token], params: Mapping) -> List[str]:
        names = [self.expect("IDENT", what="index variable")]
        while self.accept("PUNCT", ","):
            names.append(self.expect("IDENT", what="index variable"))
        if len(names) != arity:
            self.fail("semantic", f"family {family_tok.text} takes {arity} index variable(s), got {len(names)}", family_tok)
        for tok in names:
            if tok.text in params or tok.text == "generators":
                self.fail("semantic", f"index variable {tok.text!r} shadows a parameter", tok)
            if tok.text in taken:
                self.fail("semantic", f"index variable {tok.text!r} bound twice", tok)
            taken[tok.text] = tok
        return [tok.text for tok in names]

    def parse_family(self, doc: _Document) -> FamilyDecl:
        self.expect("KEYWORD", "family")
        name_tok = self.expect("IDENT", what="family name")
        if name_tok.text in self.family_names:
            self.fail("semantic", f"family {name_tok.text!r} declared twice", name_tok)
        if name_tok.text in doc.params:
            self.fail("semantic", f"family {name_tok.text!r} clashes with a parameter", name_tok)
        grouped = bool(doc.generators)
        self.expect("PUNCT", "(")
        names = self.parse_vars(2 if grouped else 1, name_tok, {}, doc.params)
        self.expect("PUNCT", ")")

        self.expect("KEYWORD", "offset")
        negative = bool(self.accept("PUNCT", "-"))
        off_tok = self.expect("NUMBER", what="rational offset")
        if off_tok.text.endswith("i"):
            self.fail("semantic", "family offset must be rational", off_tok)
        offset = -Fraction(off_tok.text) if negative else Fraction(off_tok.text)

        grade_tok = self.expect("KEYWORD", "grade")
        scope = {names[-1]: "i"}
        if grouped:
            scope[names[0]] = "alpha"
        expr = self.parse_expr(scope)
        self.expect("PUNCT", ";")

        u = expr.linear_coefficient("alpha")
        v = expr.linear_coefficient("i")
        rest = expr - Polynomial.var("alpha") * u - Polynomial.var("i") * v
        if not rest.is_constant():
            self.fail("semantic", "grade must be affine in the family's index variables", grade_tok)
        if rest.constant_term() != v * offset:
            self.fail(
                "semantic",
                f"grade constant must equal {render_scalar(v * offset)} (coefficient of the index times the offset)",
                grade_tok,
            )
        self.family_names.add(name_tok.text)
        return FamilyDecl(name_tok.text, offset, (u, v))

    def parse_rule(self, doc: _Document, lattice: GroupLattice) -> None:
        keyword = self.token
        self.pos += 1
        self.expect("PUNCT", "[")
        grouped = bool(doc.generators)
        arity = 2 if grouped else 1
        taken: Dict[str, Token] = {}

        left = self.expect("IDENT", what="family name")
        self.require_family(left)
        self.expect("PUNCT", "(")
        left_vars = self.parse_vars(arity, left, taken, doc.params)
        self.expect("PUNCT", ")")
        self.expect("PUNCT", ",")
        right = self.expect("IDENT", what="family name")
        self.require_family(right)
        self.expect("PUNCT", "(")
        right_vars = self.parse_vars(arity, right, taken, doc.params)
        self.expect("PUNCT", ")")
        self.expect("PUNCT", "]")

        decls = doc.products if keyword.text == "product" else doc.brackets
        for existing in decls:
            if {existing.rule.left, existing.rule.right} == {left.text, right.text}:
                self.fail("semantic", f"{keyword.text} for ({left.text}, {right.text}) declared twice", left)

        self.expect("PUNCT", "=")
        scope = {name: name for name in doc.params}
        scope[left_vars[-1]] = "i"
        scope[right_vars[-1]] = "j"
        if grouped:
            scope[left_vars[0]] = "alpha"
            scope[right_vars[0]] = "beta"
        summands = self.parse_sum(scope)
        self.expect("PUNCT", ";")

        terms = [self.rule_term(s, grouped, doc, lattice) for s in summands]
        decls.append(_RuleDecl(keyword, BracketRule(left.text, right.text, tuple(terms))))

    def require_family(self, tok: Token) -> None:
        if tok.text not in self.family_names:
            self.fail("semantic", f"undeclared family {tok.text!r}", tok, declared=sorted(self.family_names))

    def rule_term(self, s: _Summand, grouped: bool, doc: _Document, lattice: GroupLattice) -> RuleTerm:
        self.require_family(s.family)
        arity = 2 if grouped else 1
        if len(s.args) != arity:
            self.fail("semantic", f"family {s.family.text} takes {arity} index expression(s)", s.family)

        # 1. group part: al + be + constant
        alpha_shift = ZERO
        if grouped:
            rest = s.args[0] - Polynomial.var("alpha") - Polynomial.var("beta")
            if not rest.is_constant():
                self.fail("semantic", "group index must be the sum of both group variables plus a constant", s.family)
            alpha_shift = rest.constant_term()
            if not lattice.contains(alpha_shift):
                self.fail("semantic", f"group shift {render_scalar(alpha_shift)} is outside the declared group", s.family)

        # 2. integer part: i + j + integer + integer multiples of parameters
        rest = s.args[-1] - Polynomial.var("i") - Polynomial.var("j")
        i_params = []
        for mono, coeff in rest.sorted_terms():
            if not mono:
                continue
            if len(mono) != 1 or mono[0][1] != 1 or mono[0][0] not in doc.params or not coeff.is_integer():
                self.fail("semantic", "integer index must be i + j plus integer multiples of parameters", s.family)
            i_params.append((mono[0][0], coeff.to_int()))
        if not rest.constant_term().is_integer():
            self.fail("semantic", "integer index shift must be an integer", s.family)
        return RuleTerm(
            target=s.family.text,
            coeff=s.coeff,
            alpha_shift=alpha_shift,
            i_shift=rest.constant_term().to_int(),
            i_params=tuple(i_params),
        )

    # Sums of family terms

    def parse_sum(self, scope: Mapping[str, str]) -> List[_Summand]:
        if self.peek("NUMBER", "0") and self.lookahead().kind in ("PUNCT", "EOF") and self.lookahead().text in (";", ""):
            self.pos += 1
            return []
        sign = -1 if self.accept("PUNCT", "-") else 1
        if sign > 0:
            self.accept("PUNCT", "+")
        summands = [self.parse_summand(scope, sign)]
        while True:
            if self.accept("PUNCT", "+"):
                sign = 1
            elif self.accept("PUNCT", "-"):
                sign = -1
            else:
                break
            summands.append(self.parse_summand(scope, sign))
        return summands

    def is_family_call(self) -> bool:
        return (self.token.kind == "IDENT" and self.token.text in self.family_names
                and self.lookahead().kind == "PUNCT" and self.lookahead().text == "(")

    def parse_summand(self, scope: Mapping[str, str], sign: int) -> _Summand:
        coeff = Polynomial.constant(sign)
        family: Optional[Token] = None
        args: List[Polynomial] = []
        while True:
            if self.is_family_call():
                if family is not None:
                    self.fail("syntax", "a term may contain only one family symbol")
                family = self.token
                self.pos += 1
                self.expect("PUNCT", "(")
                args.append(self.parse_expr(scope))
                while self.accept("PUNCT", ","):
                    args.append(self.parse_expr(scope))
                self.expect("PUNCT", ")")
            else:
                coeff = coeff * self.parse_unary(scope)
            if not self.accept("PUNCT", "*"):
                break
        if family is None:
            self.fail("syntax", f"expected a family term, found {self.token.describe()}")
        return _Summand(coeff, family, args)

    # Coefficient expressions

    def parse_constant(self) -> GaussianRational:
        start = self.token
        expr = self.parse_expr({})
        if not expr.is_constant():
            self.fail("semantic", "expected a constant expression", start)
        return expr.constant_term()

    def parse_expr(self, scope: Mapping[str, str]) -> Polynomial:
        value = self.parse_term(scope)
        while True:
            if self.accept("PUNCT", "+"):
                value = value + self.parse_term(scope)
            elif self.accept("PUNCT", "-"):
                value = value - self.parse_term(scope)
            else:
                return value

    def parse_term(self, scope: Mapping[str, str]) -> Polynomial:
        value = self.parse_unary(scope)
        while self.accept("PUNCT", "*"):
            value = value * self.parse_unary(scope)
        return value

    def parse_unary(self, scope: Mapping[str, str]) -> Polynomial:
        if self.accept("PUNCT", "-"):
            return -self.parse_unary(scope)
        if self.accept("PUNCT", "+"):
            return self.parse_unary(scope)
        return self.parse_atom(scope)

    def parse_atom(self, scope: Mapping[str, str]) -> Polynomial:
        tok = self.token
        if tok.kind == "NUMBER":
            self.pos += 1
            return Polynomial.constant(_number_value(tok.text))
        if tok.kind == "IDENT":
            if self.is_family_call():
                self.fail("syntax", "unbalanced parenthesis: expected ')' before family term")
            self.pos += 1
            if tok.text in scope:
                return Polynomial.var(scope[tok.text])
            if tok.text in self.family_names:
                self.fail("semantic", f"family {tok.text!r} used as a value", tok)
            self.fail("semantic", f"undeclared name {tok.text!r}", tok, declared=sorted(scope))
        if self.accept("PUNCT", "("):
            value = self.parse_expr(scope)
            if self.is_family_call():
                self.fail("syntax", "unbalanced parenthesis: expected ')' before family term")
            self.expect("PUNCT", ")")
            return value
        self.fail("syntax", f"expected a number, name or '(', found {tok.describe()}")

    # Model construction

    def build_algebra(self, doc: _Document, lattice: GroupLattice) -> AlgebraDef:
        rules = [d.rule for d in doc.brackets]
        try:
            return AlgebraDef(doc.name.text, doc.families, rules, params=doc.params, generators=doc.generators)
        except AlgebraDefinitionError as exc:
            index = exc.details.get("rule_index")
            tok = doc.brackets[index].keyword if index is not None else doc.name
            self.fail("semantic", exc.message, tok)
        except ParameterError as exc:
            tok = doc.param_tokens.get(exc.details.get("name"), doc.name)
            self.fail("semantic", exc.message, tok)

    def build_product(self, doc: _Document, algebra: AlgebraDef) -> Optional[CommProduct]:
        if not doc.products:
            return None
        try:
            return CommProduct(f"{algebra.name}.product", algebra, [d.rule for d in doc.products])
        except AlgebraDefinitionError as exc:
            index = exc.details.get("rule_index")
            tok = doc.products[index].keyword if index is not None else doc.name
            self.fail("semantic", exc.message, tok)

    # Element literals

    def parse_element(self, alg: AlgebraDef) -> Element:
        self.family_names = set(alg.family_names)
        grouped = alg.lattice.rank > 0
        if self.peek("NUMBER", "0") and self.lookahead().kind == "EOF":
            self.pos += 1
            return Element()
        acc: Dict[BasisIndex, GaussianRational] = {}
        for s in self.parse_sum({}):
            if not s.coeff.is_constant():
                self.fail("semantic", "element coefficients must be constants", s.family)
            if len(s.args) != (2 if grouped else 1) or not all(a.is_constant() for a in s.args):
                self.fail("semantic", f"family {s.family.text} needs {2 if grouped else 1} constant index(es)", s.family)
            i_value = s.args[-1].constant_term()
            if not i_value.is_integer():
                self.fail("semantic", "integer index must be an integer", s.family)
            b = BasisIndex(s.family.text, s.args[0].constant_term() if grouped else ZERO, i_value.to_int())
            try:
                alg.check_index(b)
            except AppException as exc:
                self.fail("semantic", exc.message, s.family)
            accumulate(acc, b, s.coeff.constant_term())
        self.expect("EOF", what="end of input")
        return Element.from_dict(acc)


def parse_document(text: str, params: Optional[Mapping[str, Any]] = None) -> Tuple[AlgebraDef, Optional[CommProduct]]:
    """Parse an algebra and its optional commutative product.

    Raises:
        ParseError: first lexical, syntactic or semantic error in document order.
    """
    return Parser(text, params).parse_document()


def parse(text: str, params: Optional[Mapping[str, Any]] = None) -> AlgebraDef:
    """Parse a `.liealg` source into a validated AlgebraDef."""
    algebra, _ = parse_document(text, params)
    return algebra


def parse_element(text: str, alg: AlgebraDef) -> Element:
    """Parse an element literal such as `2*L(1, 3) - 1/2i*H(0, -1)` or `L(2) + I(0)`."""
    return Parser(text).parse_element(alg)
