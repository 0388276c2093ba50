"""Brute-force enumeration of duals of irreducible bipartite subdivisions.

This module is the independent ground truth for the assembled counting
series.  It never looks at schemes or tree generating functions: it
enumerates the dual maps directly from their structural invariants.

A dual with n danglings on surface S is a map on the capped surface with

  * three vertex kinds: block, non-block, dangling;
  * danglings of degree one, attached to non-block vertices;
  * edges only block-nonblock and nonblock-dangling;
  * around every non-block vertex, block darts and danglings alternate
    (between two consecutive block touches of a white face there is exactly
    one boundary arc, and conversely);
  * exactly beta faces, each carrying one root dangling, roots ordered.

The alternation makes danglings forced decorations: stripping them leaves a
bipartite core map with n edges whose non-block vertices of degree k carry
exactly k danglings.  So the search runs over cores: block-side rotations
are fixed in standard form per degree multiset (edge relabeling reaches it),
non-block-side rotations range over all permutations with the right cycle
count, and candidates are filtered by connectivity and face count before
danglings are reinserted, roots chosen per face, and duplicates removed by
rooted canonical code.  Orientable targets use all-positive signs (counting
is orientation-sensitive); non-orientable targets also range over edge
signs, with flip duplicates collapsing in the canonical code.

Partitions are read off a dual by walking each face from its root: the walk
decomposes into segments between consecutive dangling visits, one segment
per boundary point, and the unique block vertex seen in a segment is the
block of that point.  Labels follow the stored rotation's face traversal,
starting right after the root dangling (the root arc joins points 1 and 2,
so segments get labels 2, 3, ..., n_r, 1).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .maps import CombMap
from .surfaces import DISK, Surface

BLOCK = 0
NONBLOCK = 1
DANGLING = 2


class OracleError(ValueError):
    pass


def catalan(n: int) -> int:
    """C(n) = binom(2n, n)/(n+1), exact."""
    if n < 0:
        raise OracleError("catalan needs n >= 0")
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class BipartiteDualMap:
    """A rooted dual map: full map, vertex kinds, ordered root danglings."""

    cmap: CombMap
    kinds: Tuple[int, ...]
    roots: Tuple[int, ...]

    def canonical_code(self) -> Tuple:
        return self.cmap.canonical_code(self.roots, self.kinds)

    def n_danglings(self) -> int:
        return sum(1 for k in self.kinds if k == DANGLING)

    def n_blocks(self) -> int:
        return sum(1 for k in self.kinds if k == BLOCK)

    def dangling_composition(self) -> Tuple[int, ...]:
        """Danglings per face, ordered by root index."""
        if not self.roots:
            return ()
        idx = self.cmap.face_index_by_state()
        per_face: Dict[int, int] = {}
        for v, kind in enumerate(self.kinds):
            if kind == DANGLING:
                d = self.cmap.vertices[v][0]
                per_face[idx[d << 1]] = per_face.get(idx[d << 1], 0) + 1
        return tuple(per_face[idx[r << 1]] for r in self.roots)


NcPartition = FrozenSet[FrozenSet[Tuple[int, int]]]


# ---------------------------------------------------------------------------
# core generation


@lru_cache(maxsize=8)
def _perms_by_cycles(n: int) -> Dict[int, List[Tuple[int, ...]]]:
    out: Dict[int, List[Tuple[int, ...]]] = {}
    for perm in itertools.permutations(range(n)):
        seen = [False] * n
        cyc = 0
        for i in range(n):
            if not seen[i]:
                cyc += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        out.setdefault(cyc, []).append(perm)
    return out


def _partitions_min1(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(math.ceil(total / parts), total - parts + 2):
        for rest in _partitions_min1(total - first, parts - 1):
            if first >= rest[0]:
                yield (first,) + rest


def _face_count_positive(sigma: Sequence[int]) -> int:
    n = len(sigma)
    seen = bytearray(n)
    count = 0
    for d in range(n):
        if not seen[d]:
            count += 1
            x = d
            while not seen[x]:
                seen[x] = 1
                x = sigma[x ^ 1]
    return count


def _connected_incidence(
    n_edges: int, block_of_edge: Sequence[int], white_of_edge: Sequence[int],
    a: int, b: int,
) -> bool:
    adj: List[List[int]] = [[] for _ in range(a + b)]
    for e in range(n_edges):
        u = block_of_edge[e]
        v = a + white_of_edge[e]
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * (a + b)
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == a + b


def _core_candidates(surface: Surface, n: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Yield (sigma, signs) of bipartite cores passing the cheap filters.

    Dart convention: edge i has block-side dart 2i and white-side dart 2i+1.
    """
    chi = surface.euler_characteristic()
    beta = surface.boundary
    v_total = n + chi
    if v_total < 2:
        return
    perms = _perms_by_cycles(n)
    for a in range(1, v_total):
        b = v_total - a
        if b < 1 or a > n or b > n:
            continue
        odd_perms = perms.get(b)
        if not odd_perms:
            continue
        for mult in _partitions_min1(n, a):
            # standard-form block rotations: consecutive even darts per vertex
            sigma = [0] * (2 * n)
            block_of_edge = [0] * n
            pos = 0
            for vid, deg in enumerate(mult):
                edges = range(pos, pos + deg)
                for i in edges:
                    block_of_edge[i] = vid
                    nxt = pos + (i - pos + 1) % deg
                    sigma[2 * i] = 2 * nxt
                pos += deg
            for perm in odd_perms:
                for i in range(n):
                    sigma[2 * i + 1] = 2 * perm[i] + 1
                # white vertex ids from perm cycles
                white_of_edge = [-1] * n
                wid = 0
                for i in range(n):
                    if white_of_edge[i] < 0:
                        j = i
                        while white_of_edge[j] < 0:
                            white_of_edge[j] = wid
                            j = perm[j]
                        wid += 1
                if not _connected_incidence(n, block_of_edge, white_of_edge, a, b):
                    continue
                if surface.orientable:
                    if _face_count_positive(sigma) != beta:
                        continue
                    yield tuple(sigma), (1,) * n
                else:
                    for signs in itertools.product((1, -1), repeat=n):
                        cmap = CombMap(tuple(sigma), signs)
                        if cmap.n_faces() != beta:
                            continue
                        if cmap.is_orientable():
                            continue
                        yield tuple(sigma), signs


def _attach_danglings(core_sigma: Tuple[int, ...], core_signs: Tuple[int, ...]) -> CombMap:
    """Insert the forced danglings: one right after each white-side dart."""
    n = len(core_sigma) // 2
    total = 4 * n
    sigma = list(range(total))
    for i in range(n):
        sigma[2 * i] = core_sigma[2 * i]
        t = 2 * i + 1
        p = 2 * n + 2 * i
        sigma[t] = p
        sigma[p] = core_sigma[t]
        # dangling dart 2n + 2i + 1 stays fixed (degree-one vertex)
    return CombMap(tuple(sigma), core_signs + (1,) * n)


def _dual_kinds(cmap: CombMap, n: int) -> Tuple[int, ...]:
    kinds = []
    for cyc in cmap.vertices:
        d = cyc[0]
        if d >= 2 * n:
            kinds.append(DANGLING if d & 1 else NONBLOCK)  # p-darts sit on whites
        elif d & 1:
            kinds.append(NONBLOCK)
        else:
            kinds.append(BLOCK)
    return tuple(kinds)


def _lone_block_dual() -> BipartiteDualMap:
    # the n = 0 disk convention: a single block vertex, no danglings, no root
    cmap = CombMap((), ())
    return BipartiteDualMap(cmap=cmap, kinds=(BLOCK,), roots=())


def enumerate_duals(
    surface: Surface, n: int, max_total_darts: int = 40
) -> List[BipartiteDualMap]:
    """All rooted duals with n danglings, duplicate-free, canonically ordered."""
    if n < 0:
        raise OracleError("n must be >= 0")
    if 4 * n > max_total_darts:
        raise OracleError(
            f"n = {n} exceeds the search cap ({max_total_darts} darts); "
            "raise max_total_darts explicitly if you mean it"
        )
    beta = surface.boundary
    if beta < 1:
        raise OracleError("duals need at least one boundary circle")
    if surface == DISK and n == 0:
        return [_lone_block_dual()]
    if n < beta:
        return []  # every face carries a root dangling
    chi_bar = surface.euler_characteristic_capped()
    found: Dict[Tuple, BipartiteDualMap] = {}
    for core_sigma, core_signs in _core_candidates(surface, n):
        full = _attach_danglings(core_sigma, core_signs)
        if full.euler_characteristic() != chi_bar:
            continue
        kinds = _dual_kinds(full, n)
        face_idx = full.face_index_by_state()
        face_dangs: Dict[int, List[int]] = {}
        for v, kind in enumerate(kinds):
            if kind == DANGLING:
                d = full.vertices[v][0]
                face_dangs.setdefault(face_idx[d << 1], []).append(d)
        if len(face_dangs) != beta:
            continue
        faces = sorted(face_dangs)
        for face_order in itertools.permutations(faces):
            for combo in itertools.product(*[face_dangs[f] for f in face_order]):
                dual = BipartiteDualMap(cmap=full, kinds=kinds, roots=tuple(combo))
                found.setdefault(dual.canonical_code(), dual)
    ordered = sorted(found.items(), key=lambda kv: kv[0])
    return [d for _, d in ordered]


def count_duals(surface: Surface, n: int, **kwargs) -> int:
    return len(enumerate_duals(surface, n, **kwargs))


# ---------------------------------------------------------------------------
# partitions


def dual_to_partition(dual: BipartiteDualMap) -> NcPartition:
    """The non-crossing partition realized by a dual.

    Points are (boundary_index, label) pairs, labels counterclockwise from
    the root per face; each point's block is the unique block vertex its
    corner segment touches.
    """
    if not dual.roots:
        return frozenset()  # lone-block convention: empty point set
    cmap = dual.cmap
    kinds = dual.kinds
    blocks: Dict[int, List[Tuple[int, int]]] = {}
    for r, root in enumerate(dual.roots):
        walk = cmap.face_walk_from(root << 1)
        darts = [s >> 1 for s in walk]
        if kinds[cmap.vertex_of(darts[0])] != DANGLING:
            raise OracleError("face walk must start at the root dangling")
        # the walk passes each pendant as a (p, q) pair; the q-darts (at the
        # dangling vertices) separate the corner segments, one per point
        segments: List[List[int]] = []
        current: List[int] = []
        for d in darts[1:]:
            if kinds[cmap.vertex_of(d)] == DANGLING:
                segments.append(current)
                current = []
            else:
                current.append(d)
        segments.append(current)  # closed by the wrap back to the root
        n_r = len(segments)
        labels = list(range(2, n_r + 1)) + [1]
        for seg, label in zip(segments, labels):
            block_vertices = {
                cmap.vertex_of(d) for d in seg if kinds[cmap.vertex_of(d)] == BLOCK
            }
            if len(block_vertices) != 1:
                raise OracleError(
                    f"corner segment touches {len(block_vertices)} blocks, expected 1"
                )
            blocks.setdefault(block_vertices.pop(), []).append((r + 1, label))
    return frozenset(frozenset(pts) for pts in blocks.values())


def count_partitions(surface: Surface, n_per_boundary: Sequence[int], **kwargs) -> int:
    """Distinct partitions among duals with the given per-boundary counts.

    This is a lower bound on the partition count restricted to irreducible
    realizations (exact on the disk, where duals and partitions biject).
    """
    comp = tuple(n_per_boundary)
    if len(comp) != surface.boundary:
        raise OracleError("composition length must equal the boundary count")
    total = sum(comp)
    partitions = set()
    for dual in enumerate_duals(surface, total, **kwargs):
        if dual.dangling_composition() == comp:
            partitions.add(dual_to_partition(dual))
    return len(partitions)
