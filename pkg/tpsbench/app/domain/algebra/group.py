"""
Finitely generated additive subgroups of the Gaussian rationals.

The group part alpha of a basis index lives in the lattice spanned by the
algebra's generators. Each alpha is addressed by its integer coordinate
vector, which is what windows bound and enumeration walks over.
"""

from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

from tpsbench.app.core.exceptions import ParameterError, IndexOutsideGroupError
from tpsbench.app.domain.exactnum import GaussianRational, ZERO, coerce, render_scalar

Coords = Tuple[int, ...]


class GroupLattice:
    """Z-span of at most two Q-independent Gaussian rationals."""

    MAX_RANK = 2

    def __init__(self, generators: Sequence[GaussianRational] = ()):
        gens = tuple(coerce(g) for g in generators)
        if len(gens) > self.MAX_RANK:
            raise ParameterError(
                f"At most {self.MAX_RANK} group generators are supported",
                details={"generators": [render_scalar(g) for g in gens]},
            )
        if any(g.is_zero() for g in gens):
            raise ParameterError("Group generators must be nonzero")
        if len(gens) == 2 and self._det(gens) == 0:
            raise ParameterError(
                "Group generators must be independent over the rationals",
                details={"generators": [render_scalar(g) for g in gens]},
            )
        self.generators = gens
        self._coords: Dict[GaussianRational, Coords] = {}

    @staticmethod
    def _det(gens: Tuple[GaussianRational, ...]) -> Fraction:
        g1, g2 = gens
        return g1.re * g2.im - g2.re * g1.im

    @property
    def rank(self) -> int:
        return len(self.generators)

    def coordinates(self, alpha: GaussianRational) -> Coords:
        """Integer coordinates of alpha over the generators.

        Raises:
            IndexOutsideGroupError: if alpha is not in the lattice.
        """
        alpha = coerce(alpha)
        cached = self._coords.get(alpha)
        if cached is not None:
            return cached

        if self.rank == 0:
            if not alpha.is_zero():
                raise IndexOutsideGroupError(render_scalar(alpha), [])
            coords: Coords = ()
        elif self.rank == 1:
            ratio = alpha / self.generators[0]
            if not ratio.is_integer():
                raise IndexOutsideGroupError(render_scalar(alpha), [render_scalar(g) for g in self.generators])
            coords = (ratio.to_int(),)
        else:
            g1, g2 = self.generators
            det = self._det(self.generators)
            c1 = (alpha.re * g2.im - g2.re * alpha.im) / det
            c2 = (g1.re * alpha.im - alpha.re * g1.im) / det
            if c1.denominator != 1 or c2.denominator != 1:
                raise IndexOutsideGroupError(render_scalar(alpha), [render_scalar(g) for g in self.generators])
            coords = (c1.numerator, c2.numerator)

        self._coords[alpha] = coords
        return coords

    def contains(self, alpha: GaussianRational) -> bool:
        try:
            self.coordinates(alpha)
        except IndexOutsideGroupError:
            return False
        return True

    def element(self, coords: Coords) -> GaussianRational:
        if len(coords) != self.rank:
            raise ParameterError(f"Expected {self.rank} group coordinates, got {len(coords)}")
        value = ZERO
        for c, g in zip(coords, self.generators):
            value = value + g * c
        return value

    def enumerate(self, bound: int) -> List[GaussianRational]:
        """All lattice points with every coordinate in [-bound, bound], lexicographic in coordinates."""
        if self.rank == 0:
            return [ZERO]
        points = []
        for coords in product(range(-bound, bound + 1), repeat=self.rank):
            alpha = self.element(coords)
            self._coords.setdefault(alpha, coords)
            points.append(alpha)
        return points

    def height(self, alpha: GaussianRational) -> int:
        """Largest absolute coordinate of alpha."""
        coords = self.coordinates(alpha)
        return max((abs(c) for c in coords), default=0)
