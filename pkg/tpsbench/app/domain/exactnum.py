"""
Exact Gaussian-rational scalars.

GaussianRational is the coefficient field of every algebra in the workbench:
complex numbers whose real and imaginary parts are rationals. Both parts are
stored as reduced `fractions.Fraction` values, so there is no overflow and
no floating point anywhere.
"""

import re
from fractions import Fraction
from typing import Tuple, Union

from tpsbench.app.core.exceptions import ScalarDivisionError, ScalarFormatError

Scalarish = Union["GaussianRational", int, Fraction]

_FRACTION_ZERO = Fraction(0)


class GaussianRational:
    """Immutable complex number with rational parts."""

    __slots__ = ("_re", "_im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "_re", Fraction(re))
        object.__setattr__(self, "_im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_re", re)
        object.__setattr__(obj, "_im", im)
        return obj

    # Parts

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @property
    def re_num(self) -> int:
        return self._re.numerator

    @property
    def re_den(self) -> int:
        return self._re.denominator

    @property
    def im_num(self) -> int:
        return self._im.numerator

    @property
    def im_den(self) -> int:
        return self._im.denominator

    # Predicates

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_real(self) -> bool:
        return not self._im

    def is_integer(self) -> bool:
        return not self._im and self._re.denominator == 1

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self._re.numerator

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self._re, self._im)

    # Field operations

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._re, -self._im)

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def inv(self) -> "GaussianRational":
        if self.is_zero():
            raise ScalarDivisionError()
        if not self._im:
            return GaussianRational._raw(1 / self._re, _FRACTION_ZERO)
        n = self.norm()
        return GaussianRational._raw(self._re / n, -self._im / n)

    def __add__(self, other: Scalarish) -> "GaussianRational":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return GaussianRational._raw(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other: Scalarish) -> "GaussianRational":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return GaussianRational._raw(self._re - other._re, self._im - other._im)

    def __rsub__(self, other: Scalarish) -> "GaussianRational":
        other = _operand(other)
        return NotImplemented if other is None else other - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self._re, -self._im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __mul__(self, other: Scalarish) -> "GaussianRational":
        other = _operand(other)
        if other is None:
            return NotImplemented
        if not self._im and not other._im:
            return GaussianRational._raw(self._re * other._re, _FRACTION_ZERO)
        return GaussianRational._raw(
            self._re * other._re - self._im * other._im,
            self._re * other._im + self._im * other._re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalarish) -> "GaussianRational":
        other = _operand(other)
        return NotImplemented if other is None else self * other.inv()

    def __rtruediv__(self, other: Scalarish) -> "GaussianRational":
        other = _operand(other)
        return NotImplemented if other is None else other * self.inv()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inv()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # Comparison and hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return not self._im and self._re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"GaussianRational({render_scalar(self)!r})"

    def __str__(self) -> str:
        return render_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
HALF = GaussianRational(Fraction(1, 2))
I = GaussianRational(0, 1)


def coerce(value: Scalarish) -> GaussianRational:
    """Lift ints and Fractions into the Gaussian rationals."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussianRational._raw(Fraction(value), _FRACTION_ZERO)
    raise TypeError(f"Cannot use {type(value).__name__} as a Gaussian rational")


def _operand(value) -> "GaussianRational":
    """Like coerce, but None for foreign types so operators can defer."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational._raw(Fraction(value), _FRACTION_ZERO)
    return None


def from_fraction(re: Fraction, im: Fraction = _FRACTION_ZERO) -> GaussianRational:
    return GaussianRational(re, im)


def add(x: Scalarish, y: Scalarish) -> GaussianRational:
    return coerce(x) + coerce(y)


def mul(x: Scalarish, y: Scalarish) -> GaussianRational:
    return coerce(x) * coerce(y)


def inv(x: Scalarish) -> GaussianRational:
    return coerce(x).inv()


def _render_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_scalar(x: Scalarish) -> str:
    """Canonical text form, e.g. "3/2-2i", "5", "i", "-1/2i".

    The output is accepted by parse_scalar and is the form used in reports.
    """
    x = coerce(x)
    if not x.im:
        return _render_rational(x.re)
    if abs(x.im) == 1:
        im_text = "i"
    else:
        im_text = _render_rational(abs(x.im)) + "i"
    sign = "-" if x.im < 0 else "+"
    if not x.re:
        return im_text if sign == "+" else "-" + im_text
    return f"{_render_rational(x.re)}{sign}{im_text}"


_RAT = r"\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<rs>[+-]?)(?P<re>{_RAT})(?:(?P<is>[+-])(?P<im>{_RAT})?i)?$"
)
_IMAG_RE = re.compile(rf"^(?P<is>[+-]?)(?P<im>{_RAT})?i$")


def _rational(text: str, original: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ScalarFormatError(original)


def parse_scalar(text: str) -> GaussianRational:
    """Parse `[sign] rat [sign rat 'i'] | [sign] rat 'i'` with rat = int[/int].

    Whitespace anywhere is ignored. A bare `i` (optionally signed) means the
    imaginary unit.

    Raises:
        ScalarFormatError: if the text is not a Gaussian-rational literal.
    """
    if not isinstance(text, str):
        raise ScalarFormatError(repr(text))
    compact = "".join(text.split())
    match = _COMPLEX_RE.match(compact)
    if match:
        re_part = _rational(match.group("re"), text)
        if match.group("rs") == "-":
            re_part = -re_part
        im_part = _FRACTION_ZERO
        if match.group("is"):
            im_part = _rational(match.group("im"), text) if match.group("im") else Fraction(1)
            if match.group("is") == "-":
                im_part = -im_part
        return GaussianRational(re_part, im_part)
    match = _IMAG_RE.match(compact)
    if match:
        im_part = _rational(match.group("im"), text) if match.group("im") else Fraction(1)
        if match.group("is") == "-":
            im_part = -im_part
        return GaussianRational(0, im_part)
    raise ScalarFormatError(text)
