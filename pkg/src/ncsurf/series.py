"""Exact truncated formal power series in z, with an optional marker u.

The series ring used throughout is Q[[z]][u]: coefficients are exact
rationals, truncation happens in z only, and at each retained z-order the
u-part is a polynomial.  A series of order N knows its coefficients for
every z-exponent n <= N; operations on series of different orders raise,
so precision loss is always explicit.

Coefficients are stored sparsely as a dict (z_exp, u_exp) -> Fraction with
no stored zeros.  Univariate series keep u_exp == 0 everywhere and take a
fast list-based path through multiplication, which matters for the long
(order 400) univariate runs.

All arithmetic is exact; nothing in this module touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple

Key = Tuple[int, int]

ZERO = Fraction(0)
ONE = Fraction(1)


class SeriesError(ValueError):
    """Raised on contract violations (order mismatch, bad constant term...)."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise SeriesError(f"coefficients must be exact rationals, got {type(x).__name__}")


class TruncatedSeries:
    """A formal power series truncated at a fixed z-order, exact coefficients."""

    __slots__ = ("order", "_c")

    def __init__(self, order: int, coeffs: Mapping[Key, Fraction] | None = None):
        if order < 0:
            raise SeriesError("order must be >= 0")
        self.order = order
        c: Dict[Key, Fraction] = {}
        if coeffs:
            for (n, m), v in coeffs.items():
                if n < 0 or m < 0:
                    raise SeriesError(f"negative exponent ({n}, {m})")
                if n > order:
                    continue
                v = _as_fraction(v)
                if v:
                    c[(n, m)] = v
        self._c = c

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order)

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls(order, {(0, 0): _as_fraction(value)})

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    @classmethod
    def z(cls, order: int) -> "TruncatedSeries":
        return cls(order, {(1, 0): ONE})

    @classmethod
    def u(cls, order: int) -> "TruncatedSeries":
        return cls(order, {(0, 1): ONE})

    # ------------------------------------------------------------------
    # inspection

    def coeff(self, n: int, m: int = 0) -> Fraction:
        """Coefficient of z^n u^m; n beyond the truncation order is an error."""
        if n > self.order:
            raise SeriesError(f"coefficient z^{n} beyond truncation order {self.order}")
        return self._c.get((n, m), ZERO)

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self._c.items())

    def is_univariate(self) -> bool:
        return all(m == 0 for (_, m) in self._c)

    def is_zero(self) -> bool:
        return not self._c

    def z_valuation(self) -> int:
        """Smallest z-exponent with a nonzero coefficient (order+1 if zero)."""
        if not self._c:
            return self.order + 1
        return min(n for (n, _) in self._c)

    def u_degree(self) -> int:
        return max((m for (_, m) in self._c), default=0)

    def univariate_coeffs(self) -> list:
        """Dense coefficient list [a_0 .. a_order]; requires a univariate series."""
        if not self.is_univariate():
            raise SeriesError("series is not univariate")
        out = [ZERO] * (self.order + 1)
        for (n, _), v in self._c.items():
            out[n] = v
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self):
        return hash((self.order, frozenset(self._c.items())))

    def __repr__(self) -> str:
        terms = sorted(self._c.items())[:6]
        body = " + ".join(
            f"{v}*z^{n}" + (f"*u^{m}" if m else "") for (n, m), v in terms
        )
        more = " + ..." if len(self._c) > 6 else ""
        return f"<series O(z^{self.order + 1}): {body or '0'}{more}>"

    # ------------------------------------------------------------------
    # ring operations

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise SeriesError(
                f"order mismatch: {self.order} vs {other.order} "
                "(truncate explicitly before mixing)"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        c = dict(self._c)
        for k, v in other._c.items():
            w = c.get(k, ZERO) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        out = TruncatedSeries(self.order)
        out._c = c
        return out

    def __neg__(self) -> "TruncatedSeries":
        out = TruncatedSeries(self.order)
        out._c = {k: -v for k, v in self._c.items()}
        return out

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, value) -> "TruncatedSeries":
        v = _as_fraction(value)
        out = TruncatedSeries(self.order)
        if v:
            out._c = {k: v * w for k, w in self._c.items()}
        return out

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_order(other)
        if self.is_univariate() and other.is_univariate():
            return self._mul_univariate(other)
        N = self.order
        c: Dict[Key, Fraction] = {}
        for (n1, m1), v1 in self._c.items():
            for (n2, m2), v2 in other._c.items():
                n = n1 + n2
                if n > N:
                    continue
                k = (n, m1 + m2)
                w = c.get(k, ZERO) + v1 * v2
                if w:
                    c[k] = w
                else:
                    del c[k]
        out = TruncatedSeries(N)
        out._c = c
        return out

    __rmul__ = __mul__

    def _mul_univariate(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = self.order
        a = self.univariate_coeffs()
        b = other.univariate_coeffs()
        res = [ZERO] * (N + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            jmax = N - i
            for j in range(jmax + 1):
                bj = b[j]
                if bj:
                    res[i + j] += ai * bj
        out = TruncatedSeries(N)
        out._c = {(n, 0): v for n, v in enumerate(res) if v}
        return out

    def pow(self, k: int) -> "TruncatedSeries":
        """Integer power; negative exponents go through invert()."""
        if k < 0:
            return self.invert().pow(-k)
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # shifts

    def truncate(self, new_order: int) -> "TruncatedSeries":
        if new_order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return TruncatedSeries(new_order, self._c)

    def mul_z(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by z^k, keeping the order (top coefficients drop off)."""
        out = TruncatedSeries(self.order)
        out._c = {
            (n + k, m): v for (n, m), v in self._c.items() if n + k <= self.order
        }
        return out

    def div_z(self, k: int = 1) -> "TruncatedSeries":
        """Divide by z^k; the result has order reduced by k."""
        if any(n < k for (n, _) in self._c):
            raise SeriesError(f"series not divisible by z^{k}")
        if self.order < k:
            raise SeriesError("order too small for z-division")
        out = TruncatedSeries(self.order - k)
        out._c = {(n - k, m): v for (n, m), v in self._c.items()}
        return out

    def mul_u(self, k: int = 1) -> "TruncatedSeries":
        out = TruncatedSeries(self.order)
        out._c = {(n, m + k): v for (n, m), v in self._c.items()}
        return out

    def div_u(self, k: int = 1) -> "TruncatedSeries":
        if any(m < k for (_, m) in self._c):
            raise SeriesError(f"series not divisible by u^{k}")
        out = TruncatedSeries(self.order)
        out._c = {(n, m - k): v for (n, m), v in self._c.items()}
        return out

    def at_u1(self) -> "TruncatedSeries":
        """Specialize u = 1 (collapse u-exponents)."""
        c: Dict[Key, Fraction] = {}
        for (n, _), v in self._c.items():
            k = (n, 0)
            w = c.get(k, ZERO) + v
            if w:
                c[k] = w
            else:
                del c[k]
        out = TruncatedSeries(self.order)
        out._c = c
        return out

    # ------------------------------------------------------------------
    # z-order blocks (u-polynomials), used by the solvers below

    def _blocks(self) -> list:
        blocks: list = [None] * (self.order + 1)
        for (n, m), v in self._c.items():
            if blocks[n] is None:
                blocks[n] = {}
            blocks[n][m] = v
        return [b or {} for b in blocks]

    @staticmethod
    def _from_blocks(order: int, blocks) -> "TruncatedSeries":
        out = TruncatedSeries(order)
        c: Dict[Key, Fraction] = {}
        for n, b in enumerate(blocks):
            for m, v in b.items():
                if v:
                    c[(n, m)] = v
        out._c = c
        return out

    # ------------------------------------------------------------------
    # inverse, square root, sequence, pointing

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; the z^0 part must be a nonzero pure rational."""
        a = self._blocks()
        a0 = a[0]
        if set(a0) - {0} or not a0.get(0):
            raise SeriesError("invert() needs a nonzero u-free constant term")
        c0 = a0[0]
        inv0 = ONE / c0
        b: list = [{0: inv0}]
        for n in range(1, self.order + 1):
            acc: Dict[int, Fraction] = {}
            for k in range(1, n + 1):
                ak = a[k]
                if not ak:
                    continue
                bn = b[n - k]
                for m1, v1 in ak.items():
                    for m2, v2 in bn.items():
                        m = m1 + m2
                        acc[m] = acc.get(m, ZERO) + v1 * v2
            b.append({m: -v * inv0 for m, v in acc.items() if v})
        return TruncatedSeries._from_blocks(self.order, b)

    def sqrt(self) -> "TruncatedSeries":
        """Square root with constant term +1; requires the z^0 part to be 1."""
        a = self._blocks()
        if a[0] != {0: ONE}:
            raise SeriesError("sqrt() needs constant term exactly 1")
        s: list = [{0: ONE}]
        half = Fraction(1, 2)
        for n in range(1, self.order + 1):
            acc: Dict[int, Fraction] = dict(a[n])
            for k in range(1, n):
                sk = s[k]
                sn = s[n - k]
                for m1, v1 in sk.items():
                    for m2, v2 in sn.items():
                        m = m1 + m2
                        acc[m] = acc.get(m, ZERO) - v1 * v2
            s.append({m: v * half for m, v in acc.items() if v})
        return TruncatedSeries._from_blocks(self.order, s)

    def seq(self) -> "TruncatedSeries":
        """Sequence construction 1/(1 - a); a must have no z^0 terms."""
        if any(n == 0 for (n, _) in self._c):
            raise SeriesError("seq() needs zero constant term (all u-degrees)")
        return (TruncatedSeries.one(self.order) - self).invert()

    def point(self) -> "TruncatedSeries":
        """Pointing operator z d/dz: coefficient of z^n is multiplied by n."""
        out = TruncatedSeries(self.order)
        out._c = {(n, m): n * v for (n, m), v in self._c.items() if n}
        return out


def binomial_half_series(k: int, order: int) -> TruncatedSeries:
    """(1 - 4z)^(k/2) as an exact univariate series, for any integer k.

    Built from the hypergeometric-style coefficient recurrence
    c_{j+1} = c_j * (-4) * (k/2 - j) / (j + 1), which stays exact in Q.
    """
    c = ONE
    half_k = Fraction(k, 2)
    coeffs = {(0, 0): c}
    for j in range(order):
        c = c * (-4) * (half_k - j) / (j + 1)
        if c:
            coeffs[(j + 1, 0)] = c
    return TruncatedSeries(order, coeffs)


def geometric_sum(a: TruncatedSeries) -> TruncatedSeries:
    """Direct geometric summation sum_k a^k, an independent oracle for seq()."""
    if any(n == 0 for (n, _) in a._c):
        raise SeriesError("geometric_sum needs zero constant term")
    val = a.z_valuation()
    total = TruncatedSeries.one(a.order)
    power = TruncatedSeries.one(a.order)
    k = 0
    while k * val <= a.order:
        power = power * a
        if power.is_zero():
            break
        total = total + power
        k += 1
    return total
