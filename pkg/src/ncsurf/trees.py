"""Generating functions for non-crossing partition trees and their relatives.

Families (z marks danglings, u marks block vertices):

  T   trees rooted at a block vertex:        T = u / (1 - B)
  B   trees rooted at a non-block vertex:    B = z / (1 - z T)
  T1  double trees with two block ends:      B^2 / (1 - T^2 B^2 / u)
  T2  double trees with mixed ends:          1 / (1 - T^2 B^2 / u)
  T3  double trees with two non-block ends:  (T^2 / u) / (1 - T^2 B^2 / u)
  T•  trees with a marked dangling:          z dT/dz   (same for B•)

Eliminating B from the system yields the quadratic

    z T^2 + (z(1 - u) - 1) T + u = 0,

whose power-series branch is the closed form

    T = (1 - z(1-u) - sqrt((z(1-u) - 1)^2 - 4zu)) / (2zu).

`build_T_B` always computes both routes and insists on exact agreement, so a
series-kernel bug cannot slip through silently.  Note two fine points that
are easy to get wrong:

  * B = zT holds at u = 1 only.  Bivariately B = z/(1 - zT): the minimal
    non-block-rooted tree is a lone dangling and carries no block, so
    [z^1] B = 1, not u.  Everything downstream uses the system B.
  * The compact double-tree forms above imply T1 = z^2 * T3 at u = 1.  The
    reference table of univariate closed forms instead normalizes the
    two-non-block-ends family as z^2 * T1 (four danglings folded in) and the
    pointed families per marked dangling (divided by z), which keeps every
    leading singular coefficient in [1/256, 4].  `univariate_closed_forms`
    returns those normalized rows and checks each against its constructive
    counterpart with the corresponding power of z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .series import SeriesError, TruncatedSeries, binomial_half_series


class TreeGFError(ValueError):
    pass


@dataclass(frozen=True)
class TreeGFSet:
    """The seven series, all bivariate, all at the same truncation order."""

    T: TruncatedSeries
    B: TruncatedSeries
    T1: TruncatedSeries
    T2: TruncatedSeries
    T3: TruncatedSeries
    Tdot: TruncatedSeries
    Bdot: TruncatedSeries

    @property
    def order(self) -> int:
        return self.T.order


def _t_closed_form(order: int) -> TruncatedSeries:
    # radicand (z(1-u) - 1)^2 - 4zu has constant term 1, so sqrt applies;
    # the numerator is divisible by 2z (quadratic-formula denominator 2a),
    # hence the working order bump.
    work = order + 1
    one = TruncatedSeries.one(work)
    z = TruncatedSeries.z(work)
    u = TruncatedSeries.u(work)
    zm = z - z * u  # z(1-u)
    radicand = (zm - one) * (zm - one) - 4 * (z * u)
    root = radicand.sqrt()
    numerator = one - zm - root
    return numerator.div_z(1).scale(Fraction(1, 2))


def _t_newton(order: int) -> TruncatedSeries:
    # Newton iteration on F(T) = zT^2 + (z(1-u)-1)T + u, seeded with the
    # exact constant-term solution T = u.  Each pass doubles the valid
    # order; iterating to a fixed point is the constructive route through
    # the tree system (the quadratic is its elimination).
    one = TruncatedSeries.one(order)
    z = TruncatedSeries.z(order)
    u = TruncatedSeries.u(order)
    lin = z - z * u - one  # z(1-u) - 1
    t = TruncatedSeries.u(order)
    for _ in range(order.bit_length() + 2):
        f = z * t * t + lin * t + u
        if f.is_zero():
            break
        fprime = 2 * (z * t) + lin
        t = t - f * fprime.invert()
    return t


def fixed_point_T(order: int, sweeps: int | None = None) -> TruncatedSeries:
    """Plain fixed-point iteration of T = u/(1-B), B = z/(1-zT).

    Linear convergence (one z-order per sweep); kept as an independent
    small-order oracle for the Newton/closed-form builds.
    """
    one = TruncatedSeries.one(order)
    z = TruncatedSeries.z(order)
    u = TruncatedSeries.u(order)
    t = TruncatedSeries.zero(order)
    for _ in range(sweeps if sweeps is not None else order + 2):
        b = z * (one - z * t).invert()
        t = u * (one - b).invert()
    return t


def build_T_B(order: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """T and B, computed by two independent routes that must agree exactly."""
    if order < 0:
        raise TreeGFError("order must be >= 0")
    t_closed = _t_closed_form(order)
    t_newton = _t_newton(order)
    if t_closed != t_newton:
        raise TreeGFError(
            "internal error: closed-form and constructive T disagree "
            "(series kernel bug)"
        )
    one = TruncatedSeries.one(order)
    z = TruncatedSeries.z(order)
    b = z * (one - z * t_closed).invert()
    # the system's other equation, as a consistency check: T = u/(1-B)
    if TruncatedSeries.u(order) != t_closed * (one - b):
        raise TreeGFError("internal error: system equation T(1-B) = u fails")
    return t_closed, b


def build_double_trees(
    T: TruncatedSeries, B: TruncatedSeries
) -> Tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """(T1, T2, T3) from the compact forms; the u-division is an exponent shift."""
    if B.at_u1() != T.at_u1().mul_z(1):
        raise TreeGFError("inputs do not satisfy B = zT at u = 1")
    bivariate = T.u_degree() > 0
    div_u = (lambda s: s.div_u(1)) if bivariate else (lambda s: s)
    core = div_u(T * T * B * B)
    t2 = core.seq()
    t1 = B * B * t2
    t3 = div_u(T * T) * t2
    return t1, t2, t3


def build_pointed(
    T: TruncatedSeries, B: TruncatedSeries
) -> Tuple[TruncatedSeries, TruncatedSeries]:
    return T.point(), B.point()


def build_all(order: int) -> TreeGFSet:
    T, B = build_T_B(order)
    t1, t2, t3 = build_double_trees(T, B)
    tdot, bdot = build_pointed(T, B)
    return TreeGFSet(T=T, B=B, T1=t1, T2=t2, T3=t3, Tdot=tdot, Bdot=bdot)


def build_all_univariate(order: int) -> TreeGFSet:
    """The u = 1 specialization, built directly (fast path for long series)."""
    one = TruncatedSeries.one(order)
    z = TruncatedSeries.z(order)
    y = binomial_half_series(1, order + 1)  # (1-4z)^{1/2}
    T = (TruncatedSeries.one(order + 1) - y).div_z(1).scale(Fraction(1, 2))
    newton = _t_newton_u1(order)
    if T != newton:
        raise TreeGFError("internal error: univariate T routes disagree")
    B = z * (one - z * T).invert()
    t1, t2, t3 = build_double_trees(T, B)
    return TreeGFSet(T=T, B=B, T1=t1, T2=t2, T3=t3, Tdot=T.point(), Bdot=B.point())


def _t_newton_u1(order: int) -> TruncatedSeries:
    one = TruncatedSeries.one(order)
    z = TruncatedSeries.z(order)
    t = TruncatedSeries.one(order)
    lin = -one
    for _ in range(order.bit_length() + 2):
        f = z * t * t + lin * t + one
        if f.is_zero():
            break
        fprime = 2 * (z * t) + lin
        t = t - f * fprime.invert()
    return t


# ---------------------------------------------------------------------------
# univariate closed forms and singular data


#: z-power relating each published closed form to the constructive series:
#: table_row = z^shift * constructive (negative shift: constructive = z^k * row).
TABLE_SHIFTS: Dict[str, int] = {
    "T": 0,
    "B": 0,
    "T1": 0,
    "T2": 0,
    "T3": 4,   # table row z^2*T1 versus compact (T^2/u)Seq(...) = T1/z^2
    "Tdot": -1,
    "Bdot": -1,
}


def univariate_closed_forms(order: int) -> Dict[str, TruncatedSeries]:
    """The reference table of univariate closed forms, expanded exactly.

    Every row is produced from binomial expansions of (1-4z)^{k/2} and then
    verified coefficientwise against the constructive build (with the
    z-normalizations recorded in TABLE_SHIFTS).  A mismatch raises.
    """
    if order < 0:
        raise TreeGFError("order must be >= 0")
    w = binomial_half_series(-1, order)  # (1-4z)^{-1/2}
    y1 = binomial_half_series(1, order)
    y3 = binomial_half_series(3, order)
    one = TruncatedSeries.one(order)

    t1 = w.scale(Fraction(1, 16)) - y1.scale(Fraction(1, 8)) + y3.scale(Fraction(1, 16))
    t2 = w.scale(Fraction(1, 4)) + one.scale(Fraction(1, 2)) + y1.scale(Fraction(1, 4))
    t3 = t1.mul_z(2)
    y1_hi = binomial_half_series(1, order + 1)
    w_hi = binomial_half_series(-1, order + 1)
    t_hi = (TruncatedSeries.one(order + 2) - binomial_half_series(1, order + 2)).div_z(
        1
    ).scale(Fraction(1, 2))
    t = t_hi.truncate(order)
    b = (one - y1).scale(Fraction(1, 2))
    tdot = (w_hi - t_hi).div_z(1)  # z dT/dz = (1-4z)^{-1/2} - T, per dangling
    bdot = w

    table = {"T1": t1, "T2": t2, "T3": t3, "T": t, "B": b, "Tdot": tdot, "Bdot": bdot}

    gfs = build_all(order)
    constructive = {
        "T": gfs.T,
        "B": gfs.B,
        "T1": gfs.T1,
        "T2": gfs.T2,
        "T3": gfs.T3,
        "Tdot": gfs.Tdot,
        "Bdot": gfs.Bdot,
    }
    for name, row in table.items():
        built = constructive[name].at_u1()
        shift = TABLE_SHIFTS[name]
        if shift >= 0:
            lhs, rhs = row, built.mul_z(shift)
        else:
            lhs, rhs = row.mul_z(-shift), built
        if lhs != rhs:
            raise TreeGFError(f"closed form {name} disagrees with constructive series")
    return table


def singular_constants() -> Dict[str, Tuple[int, Fraction, Fraction | None]]:
    """Leading singular datum of each closed-form row at z = 1/4.

    Returns name -> (leading power of X, leading coefficient, value at 1/4)
    where X = sqrt(1-4z); the value is only meaningful for rows analytic at
    the singularity (leading power >= 0).
    """
    from .asymptotics import family_x_expansion

    out: Dict[str, Tuple[int, Fraction, Fraction | None]] = {}
    for name in ("T", "B", "T1", "T2", "T3", "Tdot", "Bdot"):
        xs = family_x_expansion(name, top=3)
        power, coeff = xs.leading()
        value = coeff if power == 0 else None
        out[name] = (power, coeff, value)
    return out
