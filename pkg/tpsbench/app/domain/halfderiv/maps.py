"""
Linear maps on algebra elements.

ShiftMap is the structured form used by closed-form families: every term
sends F_{alpha,i} to coeff * G_{alpha+alpha_shift, i+i_shift}. The stored
i_shift acts on integer parts, so it already absorbs any offset difference
between F and G (L -> Y by t is i_shift t, Y -> I landing on I_{m+t+1} is
i_shift t+1).

WindowMap is the raw form produced by the window solver: explicit images of
finitely many basis elements.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from tpsbench.app.core.exceptions import WindowError
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, accumulate
from tpsbench.app.domain.algebra.definition import RuleSystem
from tpsbench.app.domain.exactnum import GaussianRational, ONE, ZERO, Scalarish, coerce, render_scalar

ShiftKey = Tuple[str, str, GaussianRational, int]


class LinearMap(ABC):
    """Anything that can be evaluated on basis elements and extended linearly."""

    @abstractmethod
    def apply_basis(self, b: BasisIndex) -> Optional[Element]:
        """Image of one basis element, or None when the map does not define it."""

    def apply(self, x: Element) -> Element:
        """Linear extension; raises WindowError on basis elements outside the map's domain."""
        acc: Dict[BasisIndex, GaussianRational] = {}
        for b, c in x.terms:
            image = self.apply_basis(b)
            if image is None:
                raise WindowError(f"Map is not defined on {b}", details={"index": str(b)})
            for b2, c2 in image.terms:
                accumulate(acc, b2, c * c2)
        return Element.from_dict(acc)

    def try_apply(self, x: Element) -> Optional[Element]:
        try:
            return self.apply(x)
        except WindowError:
            return None


def apply(linear_map: LinearMap, x: Element) -> Element:
    return linear_map.apply(x)


@dataclass(frozen=True)
class ShiftTerm:
    source_family: str
    target_family: str
    alpha_shift: GaussianRational
    i_shift: int
    coeff: GaussianRational

    @property
    def key(self) -> ShiftKey:
        return (self.source_family, self.target_family, self.alpha_shift, self.i_shift)

    def as_dict(self) -> Dict:
        return {
            "source": self.source_family,
            "target": self.target_family,
            "alpha_shift": render_scalar(self.alpha_shift),
            "i_shift": self.i_shift,
            "coeff": render_scalar(self.coeff),
        }


def shift_key_order(key: ShiftKey):
    source, target, alpha_shift, i_shift = key
    return (source, target, alpha_shift.sort_key(), i_shift)


class ShiftMap(LinearMap):
    """Finite sum of constant-coefficient shift terms, kept canonical."""

    def __init__(self, terms: Iterable[ShiftTerm] = ()):
        merged: Dict[ShiftKey, GaussianRational] = {}
        for t in terms:
            merged[t.key] = merged.get(t.key, ZERO) + coerce(t.coeff)
        ordered = sorted((k for k, c in merged.items() if c), key=shift_key_order)
        self.terms: Tuple[ShiftTerm, ...] = tuple(
            ShiftTerm(k[0], k[1], k[2], k[3], merged[k]) for k in ordered
        )
        self._by_source: Dict[str, List[ShiftTerm]] = {}
        for t in self.terms:
            self._by_source.setdefault(t.source_family, []).append(t)

    @classmethod
    def from_coefficients(cls, coefficients: Mapping[ShiftKey, Scalarish]) -> "ShiftMap":
        return cls(ShiftTerm(k[0], k[1], coerce(k[2]), int(k[3]), coerce(c)) for k, c in coefficients.items())

    @classmethod
    def identity(cls, families: Iterable[str], coeff: Scalarish = ONE) -> "ShiftMap":
        return cls(ShiftTerm(f, f, ZERO, 0, coerce(coeff)) for f in families)

    def apply_basis(self, b: BasisIndex) -> Element:
        acc: Dict[BasisIndex, GaussianRational] = {}
        for t in self._by_source.get(b.family, ()):
            accumulate(acc, BasisIndex(t.target_family, b.alpha + t.alpha_shift, b.i + t.i_shift), t.coeff)
        return Element.from_dict(acc)

    def coefficients(self) -> Dict[ShiftKey, GaussianRational]:
        return {t.key: t.coeff for t in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, scalar: Scalarish) -> "ShiftMap":
        scalar = coerce(scalar)
        return ShiftMap(ShiftTerm(t.source_family, t.target_family, t.alpha_shift, t.i_shift, t.coeff * scalar)
                        for t in self.terms)

    def __add__(self, other: "ShiftMap") -> "ShiftMap":
        return ShiftMap(list(self.terms) + list(other.terms))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShiftMap):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def max_abs_i_shift(self) -> int:
        return max((abs(t.i_shift) for t in self.terms), default=0)

    def grade_shifts(self, alg: RuleSystem) -> List[GaussianRational]:
        """Distinct grade shifts of the terms under the algebra's grading."""
        shifts = []
        for t in self.terms:
            source, target = alg.family(t.source_family), alg.family(t.target_family)
            u, v = target.grade_coeffs
            shift = u * t.alpha_shift + v * (t.i_shift + target.index_offset - source.index_offset)
            if shift not in shifts:
                shifts.append(shift)
        return shifts

    def restrict(self, domain: Sequence[BasisIndex], codomain: Optional[Sequence[BasisIndex]] = None) -> "WindowMap":
        """Raw WindowMap on `domain`.

        Raises:
            WindowError: if an image leaves `codomain` (when given).
        """
        allowed = set(codomain) if codomain is not None else None
        images = {}
        for b in domain:
            image = self.apply_basis(b)
            if allowed is not None:
                for c, _ in image.terms:
                    if c not in allowed:
                        raise WindowError(f"Image of {b} leaves the codomain window", details={"index": str(b)})
            images[b] = image
        return WindowMap(list(domain), list(codomain) if codomain is not None else None, images)

    def as_records(self) -> List[Dict]:
        return [t.as_dict() for t in self.terms]

    def __repr__(self) -> str:
        return f"ShiftMap({[t.as_dict() for t in self.terms]!r})"


class WindowMap(LinearMap):
    """Explicit images of the basis elements of a finite domain.

    Args:
        domain: Ordered domain basis (enumeration order).
        codomain: Ordered codomain basis, or None when unconstrained.
        images: Image element for each domain basis element (missing means 0).
    """

    def __init__(self, domain: Sequence[BasisIndex], codomain: Optional[Sequence[BasisIndex]],
                 images: Mapping[BasisIndex, Element]):
        self.domain = list(domain)
        self.codomain = list(codomain) if codomain is not None else None
        domain_set = set(self.domain)
        self._images: Dict[BasisIndex, Element] = {}
        for b, image in images.items():
            if b not in domain_set:
                raise WindowError(f"{b} is not in the map's domain", details={"index": str(b)})
            if image:
                self._images[b] = image
        self._domain_set = domain_set

    def apply_basis(self, b: BasisIndex) -> Optional[Element]:
        if b not in self._domain_set:
            return None
        return self._images.get(b, Element())

    def entries(self) -> Dict[Tuple[int, int], GaussianRational]:
        """Sparse matrix (codomain position, domain position) -> coefficient."""
        if self.codomain is None:
            raise WindowError("WindowMap without a codomain has no matrix form")
        row_of = {c: k for k, c in enumerate(self.codomain)}
        out = {}
        for col, b in enumerate(self.domain):
            for c, coeff in self._images.get(b, Element()).terms:
                out[(row_of[c], col)] = coeff
        return out

    def restrict_domain(self, core: Sequence[BasisIndex]) -> "WindowMap":
        kept = [b for b in core if b in self._domain_set]
        return WindowMap(kept, self.codomain, {b: self._images[b] for b in kept if b in self._images})

    def is_zero(self) -> bool:
        return not self._images

    def __eq__(self, other) -> bool:
        if not isinstance(other, WindowMap):
            return NotImplemented
        return self.domain == other.domain and self._images == other._images
