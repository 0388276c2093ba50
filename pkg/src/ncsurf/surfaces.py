"""Surfaces with boundary as value types.

A surface is classified by orientability, the number of handles (orientable)
or cross-caps (non-orientable), and the number beta of boundary circles.
`cap_off` denotes the closed surface obtained by gluing a disk on every
boundary circle; its Euler characteristic is chi + beta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class Surface:
    orientable: bool
    count: int  # handles g >= 0 if orientable, cross-caps h >= 1 if not
    boundary: int  # beta >= 0

    def __post_init__(self):
        if self.count < 0:
            raise SurfaceError("handle/cross-cap count must be >= 0")
        if not self.orientable and self.count < 1:
            raise SurfaceError("a non-orientable surface needs at least one cross-cap")
        if self.boundary < 0:
            raise SurfaceError("boundary count must be >= 0")

    @property
    def beta(self) -> int:
        return self.boundary

    def euler_characteristic(self) -> int:
        base = 2 - 2 * self.count if self.orientable else 2 - self.count
        return base - self.boundary

    def euler_characteristic_capped(self) -> int:
        """chi of the closed surface with a disk glued on each boundary."""
        return self.euler_characteristic() + self.boundary

    def asymptotic_exponent(self) -> Fraction:
        """The polynomial exponent -3/2 chi + beta - 1 in the coefficient scale n^e 4^n."""
        return Fraction(-3, 2) * self.euler_characteristic() + self.boundary - 1

    def descriptor(self) -> str:
        kind = "orient" if self.orientable else "nonorient"
        letter = "g" if self.orientable else "h"
        return f"{kind}:{letter}={self.count},b={self.boundary}"

    def __str__(self) -> str:
        for alias, surf in ALIASES.items():
            if surf == self:
                return alias
        return self.descriptor()


DISK = Surface(True, 0, 1)
CYLINDER = Surface(True, 0, 2)
MOBIUS = Surface(False, 1, 1)
TORUS1 = Surface(True, 1, 1)
KLEIN1 = Surface(False, 2, 1)

ALIASES = {
    "disk": DISK,
    "cylinder": CYLINDER,
    "mobius": MOBIUS,
    "torus1": TORUS1,
    "klein1": KLEIN1,
}


def split_check(total: Surface, v1: Surface, v2: Surface) -> bool:
    """Separating-cycle Euler identity: chi(total) == chi(v1) + chi(v2) - 2."""
    return (
        total.euler_characteristic()
        == v1.euler_characteristic() + v2.euler_characteristic() - 2
    )


def parse_surface(text: str) -> Surface:
    """Parse `disk` style aliases or `orient:g=1,b=2` / `nonorient:h=1,b=1`."""
    t = text.strip().lower()
    if t in ALIASES:
        return ALIASES[t]
    try:
        kind, rest = t.split(":", 1)
        fields = dict(part.split("=", 1) for part in rest.split(","))
        if kind == "orient":
            return Surface(True, int(fields["g"]), int(fields["b"]))
        if kind == "nonorient":
            return Surface(False, int(fields["h"]), int(fields["b"]))
    except (ValueError, KeyError) as exc:
        raise SurfaceError(f"cannot parse surface descriptor {text!r}") from exc
    raise SurfaceError(f"unknown surface kind {kind!r} in {text!r}")
