"""Singular expansions at z = 1/4, the constant c(S), and coefficient bounds.

All singular manipulation happens in the variable X with X^2 = 1 - 4z, i.e.
z = (1 - X^2)/4, as exact truncated Laurent series over Q (`XSeries`).  The
seven tree families have closed forms rational in z and X, so substituting
gives exact X-expansions:

    T  = 2/(1+X)              B  = (1-X)/2
    T1 = (1-X^2)^2/(16X)      T2 = (1+X)^2/(4X)      T3 = T1/z^2 = 1/X
    T• = 1/X - T              B• = z/X = (1/X - X)/4

A scheme contributes a product of family powers; with e = e(s) edges its
expansion is g(1/4) X^{-e} + O(X^{-e+1}), and c(S) is the sum of g(1/4)
over cubic schemes.  Leading coefficients of all factors are positive, so
no cancellation can lower the order, but `g_at_quarter` measures the actual
leading power and flags a drop instead of assuming.

The public `family_x_expansion` ids follow the reference table of closed
forms, which normalizes T3 as z^2*T1 and the pointed families per marked
dangling (see `trees`); the raw constructive variants used for c(S) carry a
`_raw` suffix.

Decimals appear only at the outermost estimate layer, via mpmath at a
configurable working precision (default 50 digits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import mpmath

from .schemes import Scheme, enumerate_cubic_schemes, scheme_stats
from .series import TruncatedSeries, binomial_half_series
from .surfaces import DISK, Surface

DEFAULT_DPS = 50


class AsymptoticsError(ValueError):
    pass


class XSeries:
    """Truncated Laurent series in X over Q: terms X^k for min support .. top."""

    __slots__ = ("top", "_c")

    def __init__(self, top: int, coeffs: Dict[int, Fraction] | None = None):
        self.top = top
        self._c: Dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v and k <= top:
                    self._c[k] = v

    @classmethod
    def constant(cls, value, top: int) -> "XSeries":
        return cls(top, {0: Fraction(value)})

    @classmethod
    def x_power(cls, k: int, top: int) -> "XSeries":
        return cls(top, {k: Fraction(1)})

    def coeff(self, k: int) -> Fraction:
        if k > self.top:
            raise AsymptoticsError(f"X^{k} beyond truncation {self.top}")
        return self._c.get(k, Fraction(0))

    def leading(self) -> Tuple[int, Fraction]:
        if not self._c:
            raise AsymptoticsError("zero X-series has no leading term")
        k = min(self._c)
        return k, self._c[k]

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.top == other.top and self._c == other._c

    def __repr__(self):
        terms = ", ".join(f"{v}*X^{k}" for k, v in sorted(self._c.items())[:6])
        return f"<XSeries top={self.top}: {terms}>"

    def _check(self, other: "XSeries") -> None:
        if self.top != other.top:
            raise AsymptoticsError("X-series truncation mismatch")

    def __add__(self, other: "XSeries") -> "XSeries":
        self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            w = c.get(k, Fraction(0)) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return XSeries(self.top, c)

    def __neg__(self) -> "XSeries":
        return XSeries(self.top, {k: -v for k, v in self._c.items()})

    def __sub__(self, other: "XSeries") -> "XSeries":
        return self + (-other)

    def scale(self, value) -> "XSeries":
        v = Fraction(value)
        return XSeries(self.top, {k: v * w for k, w in self._c.items()})

    def __mul__(self, other) -> "XSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        c: Dict[int, Fraction] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                if k > self.top:
                    continue
                w = c.get(k, Fraction(0)) + v1 * v2
                if w:
                    c[k] = w
                else:
                    del c[k]
        return XSeries(self.top, c)

    __rmul__ = __mul__

    def shift(self, k: int) -> "XSeries":
        """Multiply by X^k (truncation stays fixed, top terms drop)."""
        return XSeries(self.top, {j + k: v for j, v in self._c.items() if j + k <= self.top})

    def invert(self) -> "XSeries":
        """Inverse of a series with nonzero leading coefficient."""
        if not self._c:
            raise AsymptoticsError("cannot invert zero")
        lead, c0 = self.leading()
        # normalize to a unit power series in X
        length = self.top - lead
        a = [Fraction(0)] * (length + 1)
        for k, v in self._c.items():
            a[k - lead] = v
        b = [Fraction(0)] * (length + 1)
        b[0] = 1 / c0
        for n in range(1, length + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                if a[k]:
                    s += a[k] * b[n - k]
            b[n] = -s / c0
        return XSeries(self.top, {n - lead: v for n, v in enumerate(b) if v})

    def pow(self, k: int) -> "XSeries":
        if k < 0:
            return self.invert().pow(-k)
        out = XSeries.constant(1, self.top)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def substitute_sqrt(self, order: int) -> TruncatedSeries:
        """Substitute X = (1-4z)^{1/2} back, returning a z-series of `order`.

        Requires enough X-terms to pin all z-coefficients (top >= 2*order
        plus the negative support); the round trip is exact.
        """
        lead = min(self._c) if self._c else 0
        if self.top < 2 * order + max(0, -lead):
            raise AsymptoticsError("X-truncation too small for the requested z-order")
        out = TruncatedSeries.zero(order)
        for k, v in sorted(self._c.items()):
            out = out + binomial_half_series(k, order).scale(v)
        return out


# ---------------------------------------------------------------------------
# tree-family expansions


def _z_xseries(top: int) -> XSeries:
    return XSeries(top, {0: Fraction(1, 4), 2: Fraction(-1, 4)})


def _raw_family(name: str, top: int) -> XSeries:
    one_plus = XSeries(top, {0: Fraction(1), 1: Fraction(1)})
    one_minus = XSeries(top, {0: Fraction(1), 1: Fraction(-1)})
    if name == "T":
        return one_plus.invert().scale(2)
    if name == "B":
        return one_minus.scale(Fraction(1, 2))
    if name == "T1":
        sq = one_plus * one_minus  # 1 - X^2
        return (sq * sq).shift(-1).scale(Fraction(1, 16))
    if name == "T2":
        return (one_plus * one_plus).shift(-1).scale(Fraction(1, 4))
    if name == "T3":
        return _raw_family("T1", top) * _z_xseries(top).pow(-2)
    if name == "Tdot":
        return XSeries.x_power(-1, top) - _raw_family("T", top)
    if name == "Bdot":
        return _z_xseries(top).shift(-1)
    raise AsymptoticsError(f"unknown family {name!r}")


def family_x_expansion(name: str, top: int = 8) -> XSeries:
    """X-expansion of a closed-form row (table normalization for T3, T•, B•)."""
    if name == "T3":
        return _raw_family("T1", top) * _z_xseries(top).pow(2)
    if name == "Tdot":
        return _raw_family("Tdot", top) * _z_xseries(top).invert()
    if name == "Bdot":
        return XSeries.x_power(-1, top)
    if name.endswith("_raw"):
        return _raw_family(name[:-4], top)
    return _raw_family(name, top)


def to_x_expansion(closed_form_id: str, order: int = 8) -> XSeries:
    if closed_form_id not in {"T", "B", "T1", "T2", "T3", "Tdot", "Bdot"} and not (
        closed_form_id.endswith("_raw")
    ):
        raise AsymptoticsError(f"unknown closed form id {closed_form_id!r}")
    return family_x_expansion(closed_form_id, top=order)


# ---------------------------------------------------------------------------
# per-scheme singular data


@dataclass(frozen=True)
class GValue:
    """Leading singular datum of one scheme's contribution."""

    value: Fraction        # coefficient at X^{-e(s)} (or actual leading if dropped)
    power: int             # actual leading power
    expected_power: int    # -e(s)
    cancelled: bool        # true if the leading order dropped (never seen)


def scheme_x_expansion(scheme: Scheme, top: int = 4) -> XSeries:
    """Exact X-expansion of the scheme's u=1 contribution factor product."""
    st = scheme_stats(scheme)
    if scheme.degenerate:
        return _raw_family("T", top)
    need = st.e_total + top + 1
    factors = (
        ("T1", st.e1),
        ("T2", st.e2),
        ("T3", st.e3),
        ("T", st.t_power),
        ("B", st.b_power),
        ("Tdot", st.black_roots),
        ("Bdot", st.white_roots),
    )
    out = XSeries.constant(1, top + need)
    for name, k in factors:
        if k:
            out = out * _raw_family(name, top + need).pow(k)
    return XSeries(top, dict(out._c))


def g_at_quarter(scheme: Scheme) -> GValue:
    """g(1/4): coefficient of X^{-e(s)} in the scheme's contribution."""
    st = scheme_stats(scheme)
    expected = -st.e_total
    xs = scheme_x_expansion(scheme, top=max(expected + 4, 1))
    power, coeff = xs.leading()
    return GValue(
        value=coeff, power=power, expected_power=expected, cancelled=power != expected
    )


def c_sigma(surface: Surface) -> Fraction:
    """Sum of g(1/4) over cubic schemes; the singular amplitude of P(z,1).

    The disk is degenerate (it has no cubic schemes: 2*beta - 3*chi < 0);
    there the amplitude is the coefficient of X^{3chi/2 - beta} = X^1 in the
    expansion of T, namely -2 (the transfer step divides by Gamma(-1/2) < 0,
    giving back the positive Catalan constant 1/sqrt(pi)).
    """
    if surface == DISK:
        return _raw_family("T", 2).coeff(1)
    total = Fraction(0)
    for scheme in enumerate_cubic_schemes(surface):
        g = g_at_quarter(scheme)
        if g.cancelled:
            raise AsymptoticsError(
                f"leading-order cancellation in scheme contribution "
                f"(power {g.power}, expected {g.expected_power})"
            )
        total += g.value
    return total


# ---------------------------------------------------------------------------
# gamma and transfer estimates


def gamma_half_integer(a: Fraction) -> Tuple[Fraction, int]:
    """Gamma at an integer or half-integer as (rational, power of sqrt(pi)).

    Gamma(n) = (n-1)! and Gamma(1/2 + k) via the recurrence from
    Gamma(1/2) = sqrt(pi); negative half-integers use the reflection-free
    downward recurrence Gamma(x) = Gamma(x+1)/x.
    """
    a = Fraction(a)
    if a.denominator == 1:
        if a <= 0:
            raise AsymptoticsError("Gamma pole at non-positive integer")
        return Fraction(math.factorial(a.numerator - 1)), 0
    if a.denominator != 2:
        raise AsymptoticsError("exact path only covers half-integers")
    value = Fraction(1)
    x = a
    while x > Fraction(1, 2):
        x -= 1
        value *= x
    while x < Fraction(1, 2):
        value /= x
        x += 1
    return value, 1


def gamma_value(a: Fraction, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    a = Fraction(a)
    if a.denominator == 1 and a <= 0:
        raise AsymptoticsError("Gamma pole at non-positive integer")
    with mpmath.workdps(dps):
        if a.denominator in (1, 2):
            rat, sp = gamma_half_integer(a)
            return +(mpmath.mpf(rat.numerator) / rat.denominator
                     * mpmath.sqrt(mpmath.pi) ** sp)
        return +mpmath.gamma(mpmath.mpf(a.numerator) / a.denominator)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """c/Gamma(alpha) * n^(alpha-1) * (1/rho)^n with its exact ingredients."""

    constant: Fraction
    alpha: Fraction
    rho: Fraction

    def at(self, n: int, dps: int = DEFAULT_DPS) -> mpmath.mpf:
        return transfer_estimate(self.constant, self.alpha, self.rho, n, dps=dps)


def transfer_estimate(
    c, alpha, rho, n: int, dps: int = DEFAULT_DPS
) -> mpmath.mpf:
    """Coefficient estimate c * n^(alpha-1) / Gamma(alpha) * rho^(-n)."""
    alpha = Fraction(alpha)
    if alpha.denominator == 1 and alpha <= 0:
        raise AsymptoticsError("transfer needs alpha outside {0, -1, -2, ...}")
    if n < 1:
        raise AsymptoticsError("transfer estimate needs n >= 1")
    with mpmath.workdps(dps):
        cf = mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator
        rf = mpmath.mpf(Fraction(rho).numerator) / Fraction(rho).denominator
        af = mpmath.mpf(alpha.numerator) / alpha.denominator
        return +(cf * mpmath.power(n, af - 1) / gamma_value(alpha, dps)
                 * mpmath.power(1 / rf, n))


def upper_bound(surface: Surface, n: int, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """The headline coefficient bound c(S)/Gamma(-3chi/2+beta) n^{...} 4^n."""
    alpha = Fraction(-3, 2) * surface.euler_characteristic() + surface.boundary
    return transfer_estimate(c_sigma(surface), alpha, Fraction(1, 4), n, dps=dps)


@dataclass(frozen=True)
class LiteratureBound:
    value: mpmath.mpf
    zero_binomial: bool


def c_sigma_literature_bound(
    surface: Surface, t_g, dps: int = DEFAULT_DPS
) -> LiteratureBound:
    """Evaluate t_g * beta^{-5chi/2} * (12 sqrt3)^beta * C(-6chi, beta-1) * 2^beta.

    t_g is a caller-supplied constant from the cubic-map literature; it is
    configuration, not something this package computes.
    """
    chi = surface.euler_characteristic()
    beta = surface.boundary
    top = -6 * chi
    k = beta - 1
    with mpmath.workdps(dps):
        if top >= 0 and k > top:
            return LiteratureBound(mpmath.mpf(0), True)
        binom = mpmath.binomial(top, k)
        val = (
            mpmath.mpf(str(t_g))
            * mpmath.power(beta, Fraction(-5, 2) * chi)
            * mpmath.power(12 * mpmath.sqrt(3), beta)
            * binom
            * mpmath.power(2, beta)
        )
        return LiteratureBound(+val, False)


def x_roundtrip_check(name: str, order: int) -> bool:
    """Verify an X-expansion reproduces the z-series it came from."""
    from .trees import univariate_closed_forms

    xs = family_x_expansion(name, top=2 * order + 2)
    row = univariate_closed_forms(order)[name]
    return xs.substitute_sqrt(order) == row
