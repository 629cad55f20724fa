"""
Structure-constant rules.

A rule declares the bracket (or product) of two basis families as a sum of
terms H_{alpha+beta+shift, i+j+shift'} with a polynomial coefficient in the
index variables alpha, beta, i, j and the algebra's named parameters.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from tpsbench.app.domain.exactnum import GaussianRational, ZERO, ONE, Scalarish, coerce

Monomial = Tuple[Tuple[str, int], ...]

# Canonical index variables: left (alpha, i) and right (beta, j) operands.
INDEX_VARIABLES = ("alpha", "beta", "i", "j")


def _merge(m1: Monomial, m2: Monomial) -> Monomial:
    powers: Dict[str, int] = dict(m1)
    for name, exp in m2:
        powers[name] = powers.get(name, 0) + exp
    return tuple(sorted(powers.items()))


class Polynomial:
    """Sparse polynomial with Gaussian-rational coefficients over named variables."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalarish]] = None):
        cleaned: Dict[Monomial, GaussianRational] = {}
        for mono, coeff in (terms or {}).items():
            coeff = coerce(coeff)
            if coeff:
                key = tuple(sorted((n, e) for n, e in mono if e))
                cleaned[key] = cleaned.get(key, ZERO) + coeff
                if not cleaned[key]:
                    del cleaned[key]
        self._terms = cleaned

    @classmethod
    def constant(cls, value: Scalarish) -> "Polynomial":
        return cls({(): value})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): ONE})

    @property
    def terms(self) -> Dict[Monomial, GaussianRational]:
        return dict(self._terms)

    def sorted_terms(self) -> List[Tuple[Monomial, GaussianRational]]:
        return sorted(self._terms.items(), key=lambda item: (sum(e for _, e in item[0]), item[0]))

    def variables(self) -> set:
        return {name for mono in self._terms for name, _ in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((), ZERO)

    def degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self._terms), default=0)

    def linear_coefficient(self, name: str) -> GaussianRational:
        return self._terms.get(((name, 1),), ZERO)

    @staticmethod
    def _lift(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, ZERO) + coeff
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._lift(other)
        terms: Dict[Monomial, GaussianRational] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _merge(m1, m2)
                terms[mono] = terms.get(mono, ZERO) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def substitute(self, env: Mapping[str, Scalarish]) -> "Polynomial":
        """Replace the variables named in env by values; others stay symbolic."""
        terms: Dict[Monomial, GaussianRational] = {}
        for mono, coeff in self._terms.items():
            value = coeff
            rest = []
            for name, exp in mono:
                if name in env:
                    value = value * (coerce(env[name]) ** exp)
                else:
                    rest.append((name, exp))
            key = tuple(rest)
            terms[key] = terms.get(key, ZERO) + value
        return Polynomial(terms)

    def evaluate(self, env: Mapping[str, Scalarish]) -> GaussianRational:
        missing = self.variables() - set(env)
        if missing:
            raise KeyError(f"Unbound polynomial variables: {sorted(missing)}")
        return self.substitute(env).constant_term()

    def compile(self, order: Tuple[str, ...] = INDEX_VARIABLES) -> Tuple[Tuple[GaussianRational, Tuple[int, ...]], ...]:
        """Exponent-vector form over a fixed variable order, for fast evaluation."""
        position = {name: k for k, name in enumerate(order)}
        compiled = []
        for mono, coeff in self._terms.items():
            exps = [0] * len(order)
            for name, exp in mono:
                exps[position[name]] = exp
            compiled.append((coeff, tuple(exps)))
        return tuple(compiled)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"Polynomial({self.sorted_terms()!r})"


def evaluate_compiled(compiled, values: Tuple) -> GaussianRational:
    total = ZERO
    for coeff, exps in compiled:
        term = coeff
        for value, exp in zip(values, exps):
            if exp:
                term = term * (value ** exp)
        total = total + term
    return total


@dataclass(frozen=True)
class FamilyDecl:
    """A basis family with its index offset and grading coefficients (u, v)."""
    name: str
    index_offset: Fraction = Fraction(0)
    grade_coeffs: Tuple[GaussianRational, GaussianRational] = (ZERO, ONE)


@dataclass(frozen=True)
class RuleTerm:
    """One summand target_{alpha+beta+alpha_shift, i+j+i_shift+sum(m*param)} with coefficient coeff."""
    target: str
    coeff: Polynomial
    alpha_shift: GaussianRational = ZERO
    i_shift: int = 0
    i_params: Tuple[Tuple[str, int], ...] = ()

    def total_i_shift(self, params: Mapping[str, GaussianRational]) -> int:
        shift = self.i_shift
        for name, multiplier in self.i_params:
            shift += multiplier * params[name].to_int()
        return shift


@dataclass(frozen=True)
class BracketRule:
    """Rule for the ordered family pair (left, right); the reverse order is derived."""
    left: str
    right: str
    terms: Tuple[RuleTerm, ...] = field(default_factory=tuple)

    @property
    def source(self) -> Tuple[str, str]:
        return (self.left, self.right)


def var(name: str) -> Polynomial:
    return Polynomial.var(name)


def const(value: Scalarish) -> Polynomial:
    return Polynomial.constant(value)


def term(target: str, coeff, alpha_shift: Scalarish = 0, i_shift: int = 0,
         i_params: Iterable[Tuple[str, int]] = ()) -> RuleTerm:
    """Convenience constructor; coeff may be a Polynomial or a scalar."""
    if not isinstance(coeff, Polynomial):
        coeff = Polynomial.constant(coeff)
    return RuleTerm(target=target, coeff=coeff, alpha_shift=coerce(alpha_shift),
                    i_shift=int(i_shift), i_params=tuple(i_params))
