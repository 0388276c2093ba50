"""Assembling the counting series of irreducible bipartite subdivisions.

A dual map decomposes into its scheme plus tree decorations: every non-root
edge carries a double tree typed by its endpoint colors, every corner of an
internal vertex carries a tree (rooted at that vertex), and every root edge
carries a pointed tree whose marked dangling is the root.  Summing over all
schemes gives

    P(z, u) = sum over schemes of
        u^{v1} T1^{e1} T2^{e2} T3^{e3}
        (T/u)^{sum over black vertices of d - 2r}
        B^{sum over white vertices of d - 2r}
        (T•/u)^{b} (B•)^{w}

where b and w count roots attached to black and white vertices.  A root
consumes the two corners flanking its edge, hence the d - 2r corner counts;
a tree or pointed tree rooted at a black scheme vertex would re-mark that
vertex's block, hence the divisions by u.

The disk's degenerate scheme bypasses the formula: its dual IS a tree, so
the contribution is the full tree series T(z, u) (Catalan at u = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .schemes import Scheme, SchemeStats, enumerate_schemes, scheme_stats
from .series import TruncatedSeries
from .surfaces import Surface
from .trees import TreeGFSet, build_all, build_all_univariate


class AssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSeries:
    surface: Surface
    series: TruncatedSeries
    per_scheme: Tuple[Tuple[str, TruncatedSeries], ...]

    def coefficients(self) -> list:
        return self.series.univariate_coeffs()


class _PowerCache:
    """Memoized integer powers of the tree factors (exponents repeat a lot)."""

    def __init__(self, gfs: TreeGFSet, bivariate: bool):
        if bivariate:
            factors = {
                "T1": gfs.T1,
                "T2": gfs.T2,
                "T3": gfs.T3,
                "T": gfs.T.div_u(1),
                "B": gfs.B,
                "Tdot": gfs.Tdot.div_u(1),
                "Bdot": gfs.Bdot,
            }
        else:
            factors = {
                "T1": gfs.T1,
                "T2": gfs.T2,
                "T3": gfs.T3,
                "T": gfs.T,
                "B": gfs.B,
                "Tdot": gfs.Tdot,
                "Bdot": gfs.Bdot,
            }
        self.factors = factors
        self.order = gfs.order
        self._cache: Dict[Tuple[str, int], TruncatedSeries] = {}

    def power(self, name: str, k: int) -> TruncatedSeries:
        key = (name, k)
        if key not in self._cache:
            self._cache[key] = self.factors[name].pow(k)
        return self._cache[key]


def _contribution(stats: SchemeStats, cache: _PowerCache, bivariate: bool) -> TruncatedSeries:
    if stats.t_power < 0 or stats.b_power < 0:
        raise AssemblyError(
            "malformed scheme: negative corner count d(x) - 2r(x) "
            "(roots would overlap around a vertex)"
        )
    out = TruncatedSeries.one(cache.order)
    for name, k in (
        ("T1", stats.e1),
        ("T2", stats.e2),
        ("T3", stats.e3),
        ("T", stats.t_power),
        ("B", stats.b_power),
        ("Tdot", stats.black_roots),
        ("Bdot", stats.white_roots),
    ):
        if k:
            out = out * cache.power(name, k)
    if bivariate and stats.v1:
        out = out.mul_u(stats.v1)
    return out


def scheme_contribution(
    scheme: Scheme, gfs: TreeGFSet, bivariate: bool = True
) -> TruncatedSeries:
    """The scheme's factor in P(z, u) (or its u = 1 specialization)."""
    if scheme.degenerate:
        return gfs.T if bivariate else gfs.T.at_u1()
    cache = _PowerCache(gfs, bivariate)
    return _contribution(scheme_stats(scheme), cache, bivariate)


def p_series(surface: Surface, order: int, bivariate: bool = False) -> SurfaceSeries:
    """P as a truncated series: the counting series of rooted duals.

    Coefficients at u = 1 are the dual counts p_n; the bivariate version
    also tracks the number of blocks.  Output coefficients are validated to
    be non-negative integers with u-degree at most z-degree + 1.
    """
    if order < 0:
        raise AssemblyError("order must be >= 0")
    schemes = enumerate_schemes(surface)
    if bivariate:
        gfs = build_all(order)
    else:
        gfs = build_all_univariate(order)
    cache = _PowerCache(gfs, bivariate)
    total = TruncatedSeries.zero(order)
    per_scheme = []
    for i, scheme in enumerate(schemes):
        if scheme.degenerate:
            contrib = gfs.T if bivariate else gfs.T.at_u1()
        else:
            stats = scheme_stats(scheme)
            contrib = _contribution(stats, cache, bivariate)
            if any(n == 0 for (n, _m), _v in _iter_terms(contrib)):
                # pointed trees kill constants; a z^0 term signals a bug
                raise AssemblyError("non-degenerate scheme with constant term")
        per_scheme.append((f"s{i}", contrib))
        total = total + contrib
    _validate_counts(total, bivariate)
    return SurfaceSeries(surface=surface, series=total, per_scheme=tuple(per_scheme))


def _iter_terms(series: TruncatedSeries):
    return list(series.items())


def _validate_counts(series: TruncatedSeries, bivariate: bool) -> None:
    for (n, m), v in series.items():
        if v.denominator != 1 or v < 0:
            raise AssemblyError(f"coefficient z^{n}u^{m} = {v} is not a count")
        if bivariate and m > n + 1:
            raise AssemblyError(f"u-degree {m} exceeds z-degree {n} + 1")
