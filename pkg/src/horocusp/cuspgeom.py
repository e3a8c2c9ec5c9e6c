"""Cusp cross-section arithmetic on the height-1 horotorus.

The cross section is the flat torus C/<a, b>.  Area, volume, slope
lengths, the complete list of short slopes, intersection numbers, the
36/area distance bound, and the exceptional-count rule live here.
"""

import math
from dataclasses import dataclass
from typing import List

from .bicuspid import Params

DEFAULT_LENGTH_CUTOFF = 6.0


@dataclass(frozen=True)
class CuspShape:
    """Lattice generators of the cusp torus; must span a nondegenerate lattice."""

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        if _signed_area(self.a, self.b) == 0.0:
            raise ValueError("degenerate lattice: generators are collinear")

    @classmethod
    def from_params(cls, p: Params) -> "CuspShape":
        # normalized groups have translation length |a| >= 1
        if abs(p.a) < 1.0 - 1e-12:
            raise ValueError("parameter a shorter than the minimal translation length 1")
        return cls(p.a, p.b)


@dataclass(frozen=True, order=True)
class Slope:
    """Primitive slope class in canonical sign form: q > 0, or q = 0 and p = 1."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise ValueError("slope (0, 0) is not a slope")
        if math.gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError(f"slope ({self.p}, {self.q}) is imprimitive")
        if not (self.q > 0 or (self.q == 0 and self.p == 1)):
            raise ValueError(f"slope ({self.p}, {self.q}) is not in canonical sign form")

    @classmethod
    def canonical(cls, p: int, q: int) -> "Slope":
        if (p, q) == (0, 0):
            raise ValueError("slope (0, 0) is not a slope")
        g = math.gcd(abs(p), abs(q))
        p //= g
        q //= g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)


def _signed_area(a: complex, b: complex) -> float:
    return (a.conjugate() * b).imag


def cusp_area(s: CuspShape) -> float:
    """Euclidean area of the quotient torus, |Im(conj(a) * b)|."""
    return abs(_signed_area(s.a, s.b))


def cusp_volume(s: CuspShape) -> float:
    """Volume enclosed by the horotorus, half the boundary area."""
    return cusp_area(s) / 2.0


def slope_length(s: CuspShape, sl: Slope) -> float:
    """Geodesic length of the slope on the height-1 horotorus."""
    return abs(sl.p * s.a + sl.q * s.b)


def short_slopes(s: CuspShape, cutoff: float = DEFAULT_LENGTH_CUTOFF) -> List[Slope]:
    """All canonical slopes of length <= cutoff, shortest first.

    The window is complete: writing v = p*a + q*b, the dual-basis identities
    p = Im(conj(b) v)/Im(conj(b) a) and q = Im(conj(a) v)/Im(conj(a) b)
    bound |p| by cutoff*|b|/area and |q| by cutoff*|a|/area.
    """
    if not cutoff > 0.0:
        raise ValueError("cutoff must be positive")
    area = cusp_area(s)
    p_max = int(math.ceil(cutoff * abs(s.b) / area)) + 1
    q_max = int(math.ceil(cutoff * abs(s.a) / area)) + 1
    found = []
    for q in range(0, q_max + 1):
        for p in range(-p_max, p_max + 1):
            if q == 0 and p != 1:
                continue
            if math.gcd(abs(p), abs(q)) != 1:
                continue
            sl = Slope(p, q)
            length = slope_length(s, sl)
            if length <= cutoff:
                found.append((length, sl.q, sl.p, sl))
    found.sort(key=lambda t: t[:3])
    return [t[3] for t in found]


def delta(s1: Slope, s2: Slope) -> int:
    """Geometric intersection number of two slopes."""
    return abs(s1.p * s2.q - s2.p * s1.q)


def delta_bound(area: float) -> float:
    """Strict upper bound 36/area for the distance between exceptional slopes."""
    if not area > 0.0:
        raise ValueError("area must be positive")
    return 36.0 / area


def strict_delta_max(area: float) -> int:
    """Largest integer strictly below delta_bound(area)."""
    return max(0, math.ceil(delta_bound(area)) - 1)


def max_exceptional_count(delta_max: int) -> int:
    """Smallest prime strictly above delta_max, plus one."""
    if delta_max < 0:
        raise ValueError("delta_max must be nonnegative")
    n = delta_max + 1
    while not _is_prime(n):
        n += 1
    return n + 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def audit_cusp(s: CuspShape, cutoff: float = DEFAULT_LENGTH_CUTOFF) -> dict:
    """One-shot JSON-ready summary of the cusp cross-section invariants."""
    area = cusp_area(s)
    dmax = strict_delta_max(area)
    return {
        "generators": {
            "a": [s.a.real, s.a.imag],
            "b": [s.b.real, s.b.imag],
        },
        "area": area,
        "volume": cusp_volume(s),
        "length_cutoff": cutoff,
        "short_slopes": [
            {"p": sl.p, "q": sl.q, "length": slope_length(s, sl)}
            for sl in short_slopes(s, cutoff)
        ],
        "delta_bound": delta_bound(area),
        "delta_max": dmax,
        "max_exceptional_count": max_exceptional_count(dmax),
    }
