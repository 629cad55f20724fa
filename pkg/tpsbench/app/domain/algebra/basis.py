"""
Basis indices, sparse elements and windows.

An Element is a finitely supported linear combination of basis indices with
Gaussian-rational coefficients. Elements are immutable and always canonical:
no zero coefficients, terms sorted by (family, alpha, i).
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Tuple, Union

from tpsbench.app.core.exceptions import WindowError
from tpsbench.app.domain.exactnum import GaussianRational, ZERO, ONE, Scalarish, coerce, render_scalar


class BasisIndex(NamedTuple):
    """Basis symbol F_{alpha, i}; alpha is 0 for algebras without a group part."""
    family: str
    alpha: GaussianRational
    i: int

    def sort_key(self):
        return (self.family, self.alpha.sort_key(), self.i)

    def __str__(self) -> str:
        if self.alpha.is_zero():
            return f"{self.family}({self.i})"
        return f"{self.family}({render_scalar(self.alpha)}, {self.i})"


def basis(family: str, i: int, alpha: Scalarish = 0) -> BasisIndex:
    return BasisIndex(family, coerce(alpha), int(i))


def accumulate(acc: Dict[BasisIndex, GaussianRational], b: BasisIndex, coeff: GaussianRational) -> None:
    """Add coeff*b into a mutable coefficient dict, dropping cancelled terms."""
    current = acc.get(b)
    if current is None:
        if coeff:
            acc[b] = coeff
        return
    total = current + coeff
    if total:
        acc[b] = total
    else:
        del acc[b]


class Element:
    """Immutable canonical linear combination of basis indices."""

    __slots__ = ("_terms", "_index")

    def __init__(self, terms: Union[Mapping[BasisIndex, Scalarish], Iterable[Tuple[BasisIndex, Scalarish]]] = ()):
        acc: Dict[BasisIndex, GaussianRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            accumulate(acc, b, coerce(c))
        self._set(acc)

    def _set(self, acc: Dict[BasisIndex, GaussianRational]) -> None:
        ordered = tuple(sorted(acc.items(), key=lambda item: item[0].sort_key()))
        object.__setattr__(self, "_terms", ordered)
        object.__setattr__(self, "_index", dict(ordered))

    @classmethod
    def from_dict(cls, acc: Dict[BasisIndex, GaussianRational]) -> "Element":
        """Wrap a dict built with `accumulate` (no zero coefficients) without re-checking."""
        obj = object.__new__(cls)
        obj._set(acc)
        return obj

    @classmethod
    def of(cls, b: BasisIndex, coeff: Scalarish = ONE) -> "Element":
        return cls([(b, coeff)])

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @property
    def terms(self) -> Tuple[Tuple[BasisIndex, GaussianRational], ...]:
        return self._terms

    def support(self) -> List[BasisIndex]:
        return [b for b, _ in self._terms]

    def coeff(self, b: BasisIndex) -> GaussianRational:
        return self._index.get(b, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def canonical(self) -> "Element":
        return Element(self._terms)

    def to_dict(self) -> Dict[BasisIndex, GaussianRational]:
        return dict(self._index)

    def __iter__(self) -> Iterator[Tuple[BasisIndex, GaussianRational]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self._index)
        for b, c in other._terms:
            accumulate(acc, b, c)
        return Element.from_dict(acc)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self._index)
        for b, c in other._terms:
            accumulate(acc, b, -c)
        return Element.from_dict(acc)

    def __neg__(self) -> "Element":
        return Element.from_dict({b: -c for b, c in self._terms})

    def scale(self, scalar: Scalarish) -> "Element":
        scalar = coerce(scalar)
        if scalar.is_zero():
            return ZERO_ELEMENT
        return Element.from_dict({b: c * scalar for b, c in self._terms})

    def __mul__(self, scalar: Scalarish) -> "Element":
        if isinstance(scalar, Element):
            return NotImplemented
        return self.scale(scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({render_scalar(c)})*{b}" for b, c in self._terms)


ZERO_ELEMENT = Element()


def linear_extend(x: Element, y: Element, pair_fn) -> Element:
    """Bilinear extension of a basis-pair function returning (index, coeff) pairs."""
    acc: Dict[BasisIndex, GaussianRational] = {}
    for bx, cx in x.terms:
        for by, cy in y.terms:
            pairs = pair_fn(bx, by)
            if not pairs:
                continue
            c = cx * cy
            for bz, cz in pairs:
                accumulate(acc, bz, c * cz)
    return Element.from_dict(acc)


@dataclass(frozen=True)
class Window:
    """Finite truncation: group coordinates in [-alpha_coeff_bound, bound], i in [i_min, i_max]."""
    i_min: int
    i_max: int
    alpha_coeff_bound: int = 0

    def __post_init__(self):
        if self.i_min > self.i_max:
            raise WindowError(
                f"Empty window: i_min={self.i_min} > i_max={self.i_max}",
                details={"i_min": self.i_min, "i_max": self.i_max},
            )
        if self.alpha_coeff_bound < 0:
            raise WindowError(
                "Window alpha_coeff_bound must be nonnegative",
                details={"alpha_coeff_bound": self.alpha_coeff_bound},
            )

    def pad(self, i_pad: int = 0, alpha_pad: int = 0) -> "Window":
        return Window(self.i_min - i_pad, self.i_max + i_pad, self.alpha_coeff_bound + alpha_pad)

    def shrink(self, i_amount: int) -> "Window":
        return Window(self.i_min + i_amount, self.i_max - i_amount, self.alpha_coeff_bound)

    def contains_window(self, other: "Window") -> bool:
        return (
            self.i_min <= other.i_min
            and other.i_max <= self.i_max
            and other.alpha_coeff_bound <= self.alpha_coeff_bound
        )

    def strictly_contains(self, other: "Window") -> bool:
        return self.contains_window(other) and other != self

    def as_dict(self) -> Dict[str, int]:
        return {"alpha_coeff_bound": self.alpha_coeff_bound, "i_max": self.i_max, "i_min": self.i_min}
