"""Enumeration of schemes: the finite cores left after pruning dual maps.

A scheme on a surface S is a map on the capped surface with exactly beta(S)
faces, one root per face, root vertices of degree one, and every other
vertex of degree at least three, with each non-root vertex colored black
(block) or white (non-block).  Roots form an ordered tuple (boundary
circles are distinguishable).  Euler's formula plus the degree condition
bounds the edge count by 2*beta - 3*chi, so the set is finite; the cubic
subset (all non-root degrees exactly three) attains the bound.

Enumeration is a backtracking search over rotation systems with the edge
involution fixed as alpha(d) = d ^ 1:

  * root edges occupy darts 0..2*beta-1, the root darts being the odd ones
    (every rooted class has such a representative, since relabeling edges
    and swapping the two darts of an edge are isomorphisms);
  * the remaining degree-sum 2e - beta is split into cyclic orders, each
    cycle generated once by fixing its minimal dart first;
  * signs are all +1 for orientable targets, and range over all vectors for
    non-orientable ones (vertex-flip duplicates collapse in the canonical
    code, which is flip-invariant);
  * candidates are filtered by connectivity, Euler characteristic,
    orientability class, face count = beta, and one root per face, then
    colored and deduplicated by rooted canonical code.

The disk is degenerate: pruning a tree leaves just the root edge and its
white endpoint (root danglings are always adjacent to non-block vertices),
with no degree-3 vertex.  It is emitted as a single `degenerate` scheme
that downstream assembly special-cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .maps import CombMap, build_sigma
from .surfaces import Surface

BLACK = 0
WHITE = 1
ROOT = 2


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class Scheme:
    """A rooted bicolored scheme map."""

    cmap: CombMap
    colors: Tuple[int, ...]  # per vertex: BLACK/WHITE, ROOT for root vertices
    roots: Tuple[int, ...]  # root darts, ordered, one per face
    degenerate: bool = False

    def canonical_code(self) -> Tuple:
        return self.cmap.canonical_code(self.roots, self.colors)

    def vertex_color(self, vertex: int) -> int:
        return self.colors[vertex]


@dataclass(frozen=True)
class SchemeStats:
    """Per-scheme counts entering the assembled counting series."""

    v1: int  # black non-root vertices
    v2: int  # white non-root vertices
    e1: int  # black-black non-root edges
    e2: int  # mixed non-root edges
    e3: int  # white-white non-root edges
    black_roots: int  # roots incident with a black vertex (b)
    white_roots: int  # roots incident with a white vertex (w)
    e_total: int
    degrees: Tuple[int, ...]  # per non-root vertex, scheme vertex order
    root_incidence: Tuple[int, ...]  # roots attached per non-root vertex
    t_power: int  # sum over black vertices of d(x) - 2r(x)
    b_power: int  # sum over white vertices of d(y) - 2r(y)


def scheme_stats(scheme: Scheme) -> SchemeStats:
    cmap = scheme.cmap
    colors = scheme.colors
    root_vertices = {cmap.vertex_of(r) for r in scheme.roots}
    internal = [v for v in range(cmap.n_vertices) if v not in root_vertices]
    r_count = {v: 0 for v in internal}
    e1 = e2 = e3 = b = w = 0
    for e in range(cmap.n_edges):
        va = cmap.vertex_of(2 * e)
        vb = cmap.vertex_of(2 * e + 1)
        if va in root_vertices or vb in root_vertices:
            other = vb if va in root_vertices else va
            if colors[other] == BLACK:
                b += 1
            else:
                w += 1
            r_count[other] += 1
        else:
            pair = (colors[va], colors[vb])
            if pair == (BLACK, BLACK):
                e1 += 1
            elif pair == (WHITE, WHITE):
                e3 += 1
            else:
                e2 += 1
    stats = SchemeStats(
        v1=sum(1 for v in internal if colors[v] == BLACK),
        v2=sum(1 for v in internal if colors[v] == WHITE),
        e1=e1,
        e2=e2,
        e3=e3,
        black_roots=b,
        white_roots=w,
        e_total=cmap.n_edges,
        degrees=tuple(cmap.degree(v) for v in internal),
        root_incidence=tuple(r_count[v] for v in internal),
        t_power=sum(
            cmap.degree(v) - 2 * r_count[v] for v in internal if colors[v] == BLACK
        ),
        b_power=sum(
            cmap.degree(v) - 2 * r_count[v] for v in internal if colors[v] == WHITE
        ),
    )
    if stats.e1 + stats.e2 + stats.e3 + stats.black_roots + stats.white_roots != stats.e_total:
        raise SchemeError("edge typing does not add up to e(s)")
    return stats


def intrinsic_edge_bound(surface: Surface) -> int:
    return 2 * surface.boundary - 3 * surface.euler_characteristic()


def _degree_partitions(total: int, parts: int, minimum: int = 3) -> Iterator[Tuple[int, ...]]:
    """Non-increasing partitions of `total` into exactly `parts` parts >= minimum."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _degree_partitions(total - first, parts - 1, minimum):
            if not rest or first >= rest[0]:
                yield (first,) + rest


def _cycle_assignments(darts: Tuple[int, ...], sizes: Tuple[int, ...]) -> Iterator[List[Tuple[int, ...]]]:
    """All ways to split `darts` into cyclic orders with the given size multiset.

    Each cycle is emitted once: it starts at the minimal remaining dart, and
    the (size-1)! orderings of the rest enumerate its rotations exactly once.
    """
    if not darts:
        yield []
        return
    first = darts[0]
    rest = darts[1:]
    for size in sorted(set(sizes)):
        remaining_sizes = list(sizes)
        remaining_sizes.remove(size)
        for tail in itertools.permutations(rest, size - 1):
            cycle = (first,) + tail
            left = tuple(d for d in rest if d not in tail)
            for more in _cycle_assignments(left, tuple(remaining_sizes)):
                yield [cycle] + more


def _degenerate_disk_scheme() -> Scheme:
    # single root edge: dart 0 at the white endpoint, dart 1 at the root
    cmap = CombMap(sigma=(0, 1), signs=(1,))
    colors = (WHITE, ROOT)
    return Scheme(cmap=cmap, colors=colors, roots=(1,), degenerate=True)


@lru_cache(maxsize=None)
def enumerate_schemes(surface: Surface, max_edges: int | None = None) -> Tuple[Scheme, ...]:
    """All schemes for the surface, duplicate-free, in canonical order."""
    beta = surface.boundary
    if beta < 1:
        raise SchemeError("scheme enumeration needs at least one boundary circle")
    bound = intrinsic_edge_bound(surface)
    if max_edges is None:
        max_edges = bound
    elif max_edges < bound:
        raise SchemeError(
            f"max_edges={max_edges} below the intrinsic bound 2b-3chi = {bound}"
        )
    chi_bar = surface.euler_characteristic_capped()
    if surface.euler_characteristic() == 1:
        # disk: no vertex of degree >= 3 survives pruning
        return (_degenerate_disk_scheme(),)

    found: Dict[Tuple, Scheme] = {}
    e_min = 2 * beta - chi_bar + 1  # smallest e with at least one internal vertex
    for e in range(max(e_min, beta + 1), bound + 1):
        for scheme in _schemes_with_edges(surface, e, beta, chi_bar):
            found.setdefault(scheme.canonical_code(), scheme)
    ordered = sorted(found.items(), key=lambda kv: kv[0])
    return tuple(s for _, s in ordered)


def _schemes_with_edges(
    surface: Surface, e: int, beta: int, chi_bar: int
) -> Iterator[Scheme]:
    v_internal = e - 2 * beta + chi_bar
    if v_internal < 1:
        return
    degree_sum = 2 * e - beta
    root_darts = tuple(2 * i + 1 for i in range(beta))
    free = tuple(sorted(set(range(2 * e)) - set(root_darts)))
    if surface.orientable:
        sign_vectors = [(1,) * e]
    else:
        sign_vectors = list(itertools.product((1, -1), repeat=e))
    target_chi = chi_bar
    for sizes in _degree_partitions(degree_sum, v_internal):
        for cycles in _cycle_assignments(free, sizes):
            sigma = tuple(build_sigma(2 * e, cycles))
            for signs in sign_vectors:
                cmap = CombMap(sigma, signs)
                if not cmap.is_connected():
                    continue
                faces = cmap.face_states()
                if len(faces) != beta:
                    continue
                if cmap.n_vertices - e + len(faces) != target_chi:
                    continue
                if cmap.is_orientable() != surface.orientable:
                    continue
                face_by_state = {}
                for i, face in enumerate(faces):
                    for orb in face:
                        for s in orb:
                            face_by_state[s] = i
                root_faces = [face_by_state[2 * r] for r in root_darts]
                if len(set(root_faces)) != beta:
                    continue
                yield from _colored_schemes(cmap, root_darts)


def _colored_schemes(cmap: CombMap, root_darts: Tuple[int, ...]) -> Iterator[Scheme]:
    root_vertices = {cmap.vertex_of(r) for r in root_darts}
    internal = [v for v in range(cmap.n_vertices) if v not in root_vertices]
    base = [ROOT] * cmap.n_vertices
    for combo in itertools.product((BLACK, WHITE), repeat=len(internal)):
        colors = list(base)
        for v, c in zip(internal, combo):
            colors[v] = c
        yield Scheme(cmap=cmap, colors=tuple(colors), roots=root_darts)


def enumerate_cubic_schemes(surface: Surface) -> Tuple[Scheme, ...]:
    """The subset of schemes whose non-root vertices all have degree three."""
    out = []
    for scheme in enumerate_schemes(surface):
        if scheme.degenerate:
            continue
        stats = scheme_stats(scheme)
        if all(d == 3 for d in stats.degrees):
            out.append(scheme)
    return tuple(out)


def validate_scheme(scheme: Scheme, surface: Surface) -> None:
    """Structural checks: Euler formula, orientability, faces, roots, degrees."""
    cmap = scheme.cmap
    if scheme.degenerate:
        if cmap.n_edges != 1 or surface.euler_characteristic() != 1:
            raise SchemeError("degenerate scheme only arises on the disk")
        return
    if not cmap.is_connected():
        raise SchemeError("scheme map is disconnected")
    if cmap.euler_characteristic() != surface.euler_characteristic_capped():
        raise SchemeError("Euler characteristic mismatch")
    if cmap.is_orientable() != surface.orientable:
        raise SchemeError("orientability mismatch")
    faces = cmap.face_states()
    if len(faces) != surface.boundary:
        raise SchemeError("face count differs from beta")
    face_by_state = {}
    for i, face in enumerate(faces):
        for orb in face:
            for s in orb:
                face_by_state[s] = i
    root_faces = {face_by_state[2 * r] for r in scheme.roots}
    if len(root_faces) != surface.boundary:
        raise SchemeError("roots do not hit every face exactly once")
    root_vertices = {cmap.vertex_of(r) for r in scheme.roots}
    for v in range(cmap.n_vertices):
        d = cmap.degree(v)
        if v in root_vertices:
            if d != 1:
                raise SchemeError("root vertex degree must be one")
        elif d < 3:
            raise SchemeError("non-root vertex of degree < 3")
