"""Rigorous interval arithmetic for certified elimination.

Real intervals are closed [lo, hi] with finite float endpoints. Complex
intervals are axis-aligned rectangles, a real interval for each of the real
and imaginary parts. Matrices are 2x2 with complex-interval entries.

Soundness policy: every arithmetic primitive returns an interval that
encloses the exact result for every choice of points in the operands.
Directed rounding is emulated by epsilon inflation, one `math.nextafter`
step per endpoint per rounding-sensitive float operation. One step suffices
under IEEE round-to-nearest: the true value of a single rounded operation
lies strictly between the two neighbors of the computed float. Operations
that are exact in floating point (negation, adding an exact zero,
multiplying by an exact zero or an exact one, the SL2 adjugate) skip
inflation. The zero shortcut is what keeps the lower-left entry of products
of upper-triangular matrices exactly [0, 0], so structurally parabolic
words never acquire a spurious nonzero bound.

Inversion uses the SL2 adjugate; nothing in this module divides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


@dataclass(slots=True)
class RealInterval:
    """Closed interval of reals with finite float endpoints, lo <= hi."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        self.lo = float(self.lo)
        self.hi = float(self.hi)
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "RealInterval":
        return cls(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def _is_zero(self) -> bool:
        return self.lo == 0.0 and self.hi == 0.0

    def _is_one(self) -> bool:
        return self.lo == 1.0 and self.hi == 1.0

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "RealInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def midpoint(self) -> float:
        """Split point strictly inside for nondegenerate intervals.

        All floats are dyadic rationals, so the returned point is a valid
        dyadic bisection vertex.
        """
        return self.lo + (self.hi - self.lo) / 2.0

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo)

    def __add__(self, other: "RealInterval") -> "RealInterval":
        if other._is_zero():
            return self
        if self._is_zero():
            return other
        return RealInterval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    def __sub__(self, other: "RealInterval") -> "RealInterval":
        if other._is_zero():
            return self
        if self._is_zero():
            return -other
        return RealInterval(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __mul__(self, other: "RealInterval") -> "RealInterval":
        if self._is_zero() or other._is_zero():
            return RealInterval(0.0, 0.0)
        if self._is_one():
            return other
        if other._is_one():
            return self
        p1 = self.lo * other.lo
        p2 = self.lo * other.hi
        p3 = self.hi * other.lo
        p4 = self.hi * other.hi
        return RealInterval(_down(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4)))


@dataclass(slots=True)
class ComplexInterval:
    """Axis-aligned rectangle, one real interval per coordinate."""

    re: RealInterval
    im: RealInterval

    @classmethod
    def point(cls, z: complex) -> "ComplexInterval":
        z = complex(z)
        return cls(RealInterval.point(z.real), RealInterval.point(z.imag))

    @classmethod
    def box(cls, re_lo: float, re_hi: float, im_lo: float, im_hi: float) -> "ComplexInterval":
        return cls(RealInterval(re_lo, re_hi), RealInterval(im_lo, im_hi))

    @property
    def is_point(self) -> bool:
        return self.re.is_point and self.im.is_point

    def contains(self, z: complex) -> bool:
        z = complex(z)
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def encloses(self, other: "ComplexInterval") -> bool:
        return self.re.encloses(other.re) and self.im.encloses(other.im)

    def conjugate(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.re, -self.im)

    def __add__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexInterval") -> "ComplexInterval":
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return ComplexInterval(re, im)

    def abs_bounds(self) -> RealInterval:
        """Certified enclosure [L, U] of |z| over the rectangle.

        L comes from the rectangle point nearest the origin, U from the
        farthest corner. When the extremal point lies on an axis the
        modulus reduces to a plain absolute value and no rounding occurs,
        so L is exactly 0 iff the rectangle contains the origin and point
        rectangles on an axis get exact bounds.
        """
        rl, rh = self.re.lo, self.re.hi
        il, ih = self.im.lo, self.im.hi
        near_x = 0.0 if rl <= 0.0 <= rh else (rl if rl > 0.0 else rh)
        near_y = 0.0 if il <= 0.0 <= ih else (il if il > 0.0 else ih)
        if near_x == 0.0 and near_y == 0.0:
            lo = 0.0
        elif near_x == 0.0:
            lo = abs(near_y)
        elif near_y == 0.0:
            lo = abs(near_x)
        else:
            lo = _down(math.hypot(near_x, near_y))
        far_x = max(-rl, rh)
        far_y = max(-il, ih)
        if far_x == 0.0 and far_y == 0.0:
            hi = 0.0
        elif far_x == 0.0:
            hi = far_y
        elif far_y == 0.0:
            hi = far_x
        else:
            hi = _up(math.hypot(far_x, far_y))
        return RealInterval(max(lo, 0.0), hi)


@dataclass(slots=True)
class IntervalMatrix:
    """2x2 matrix of complex intervals."""

    m11: ComplexInterval
    m12: ComplexInterval
    m21: ComplexInterval
    m22: ComplexInterval

    @classmethod
    def exact(cls, m11: complex, m12: complex, m21: complex, m22: complex) -> "IntervalMatrix":
        return cls(
            ComplexInterval.point(m11),
            ComplexInterval.point(m12),
            ComplexInterval.point(m21),
            ComplexInterval.point(m22),
        )

    @classmethod
    def identity(cls) -> "IntervalMatrix":
        return cls.exact(1.0, 0.0, 0.0, 1.0)

    def __matmul__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        return IntervalMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def inverse_sl2(self) -> "IntervalMatrix":
        """Adjugate inverse, exact for determinant-one matrices.

        Entry negation is exact in floats, so no inflation is introduced.
        """
        return IntervalMatrix(self.m22, -self.m12, -self.m21, self.m11)

    def det(self) -> ComplexInterval:
        return self.m11 * self.m22 - self.m12 * self.m21

    def contains(self, m11: complex, m12: complex, m21: complex, m22: complex) -> bool:
        return (
            self.m11.contains(m11)
            and self.m12.contains(m12)
            and self.m21.contains(m21)
            and self.m22.contains(m22)
        )
