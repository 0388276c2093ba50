"""Combinatorial maps as signed rotation systems on darts.

Encoding (shared by the scheme enumerator and the brute-force oracle):

  * darts are 0 .. 2E-1; the dart of edge e are 2e and 2e+1, so the edge
    involution is fixed once and for all: alpha(d) = d ^ 1;
  * sigma maps each dart to the next dart around its vertex;
  * signs[e] in {+1, -1} is the signature of edge e.  All-positive systems
    describe maps on orientable surfaces.

Faces are traced on the orientable double cover.  A cover state packs a dart
with a direction bit as 2*d + t.  Crossing edge e flips the bit when
signs[e] < 0, and the rotation is sigma or sigma^{-1} depending on the bit.
Every face of the map lifts to exactly two state orbits (its two traversal
directions), which the code pairs via the reversal map (d, t) -> (d^1, 1-t).
This gives a uniform, convention-free face count and orientability test for
both orientable and non-orientable maps.

Rooted canonical codes are breadth-first normal forms of the cover seeded at
a root state, in the style of rooted-map canonicalization: the traversal
order is deterministic, so two maps have equal codes exactly when an
isomorphism matching the roots (and vertex labels) exists.  For orientable
maps the code is orientation-sensitive (mirror images differ); for
non-orientable maps the code is minimized over the two directions at the
root, which makes it invariant under local vertex flips and the global
mirror, i.e. under signed-rotation-system equivalence.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple


class MapError(ValueError):
    pass


class CombMap:
    """Immutable signed rotation system."""

    __slots__ = ("sigma", "signs", "_sigma_inv", "_vertex_of", "_vertices")

    def __init__(self, sigma: Sequence[int], signs: Sequence[int]):
        n = len(sigma)
        if n % 2:
            raise MapError("dart count must be even")
        if len(signs) != n // 2:
            raise MapError("need one sign per edge")
        if sorted(sigma) != list(range(n)):
            raise MapError("sigma is not a permutation of the darts")
        if any(s not in (1, -1) for s in signs):
            raise MapError("signs must be +1 or -1")
        self.sigma = tuple(sigma)
        self.signs = tuple(signs)
        inv = [0] * n
        for d, e in enumerate(self.sigma):
            inv[e] = d
        self._sigma_inv = tuple(inv)
        # vertices = sigma-cycles, each rotated to start at its minimum
        seen = [False] * n
        verts: List[Tuple[int, ...]] = []
        vertex_of = [0] * n
        for d in range(n):
            if seen[d]:
                continue
            cyc = []
            x = d
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.sigma[x]
            verts.append(tuple(cyc))
        verts.sort(key=lambda c: c[0])
        for i, cyc in enumerate(verts):
            for d in cyc:
                vertex_of[d] = i
        self._vertices = tuple(verts)
        self._vertex_of = tuple(vertex_of)

    # ------------------------------------------------------------------

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def vertices(self) -> Tuple[Tuple[int, ...], ...]:
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    def vertex_of(self, dart: int) -> int:
        return self._vertex_of[dart]

    def degree(self, vertex: int) -> int:
        return len(self._vertices[vertex])

    def alpha(self, dart: int) -> int:
        return dart ^ 1

    def is_connected(self) -> bool:
        n = self.n_darts
        if n == 0:
            return True
        seen = [False] * n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], d ^ 1):
                if not seen[e]:
                    seen[e] = True
                    count += 1
                    stack.append(e)
        return count == n

    # ------------------------------------------------------------------
    # double-cover face machinery

    def state_next(self, state: int) -> int:
        """Face-tracing successor on cover states (2*dart + direction bit)."""
        d, t = state >> 1, state & 1
        e = d ^ 1
        if self.signs[e >> 1] < 0:
            t ^= 1
        nd = self._sigma_inv[e] if t else self.sigma[e]
        return (nd << 1) | t

    def state_orbits(self) -> List[Tuple[int, ...]]:
        n2 = 2 * self.n_darts
        seen = [False] * n2
        orbits: List[Tuple[int, ...]] = []
        for s in range(n2):
            if seen[s]:
                continue
            orb = []
            x = s
            while not seen[x]:
                seen[x] = True
                orb.append(x)
                x = self.state_next(x)
            orbits.append(tuple(orb))
        return orbits

    def face_states(self) -> List[Tuple[Tuple[int, ...], ...]]:
        """Faces as pairs of mutually reversed state orbits."""
        orbits = self.state_orbits()
        orbit_of: Dict[int, int] = {}
        for i, orb in enumerate(orbits):
            for s in orb:
                orbit_of[s] = i
        paired = [False] * len(orbits)
        faces: List[Tuple[Tuple[int, ...], ...]] = []
        for i, orb in enumerate(orbits):
            if paired[i]:
                continue
            s = orb[0]
            rev = ((s >> 1) ^ 1) << 1 | (1 - (s & 1))
            j = orbit_of[rev]
            paired[i] = True
            if j == i:
                faces.append((orb,))
            else:
                paired[j] = True
                faces.append((orb, orbits[j]))
        return faces

    def trace_faces(self) -> List[Tuple[int, ...]]:
        """Faces as dart walks (one traversal direction per face)."""
        out = []
        for face in self.face_states():
            orb = min(face, key=lambda o: min(o))
            out.append(tuple(s >> 1 for s in orb))
        out.sort(key=lambda w: min(w))
        return out

    def n_faces(self) -> int:
        return len(self.face_states())

    def face_index_by_state(self) -> Dict[int, int]:
        idx: Dict[int, int] = {}
        for i, face in enumerate(self.face_states()):
            for orb in face:
                for s in orb:
                    idx[s] = i
        return idx

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces()

    def is_orientable(self) -> bool:
        """A connected signed map is orientable iff its double cover splits."""
        n = self.n_darts
        if n == 0:
            return True
        seen = set([0])  # state (dart0, +)
        stack = [0]
        while stack:
            s = stack.pop()
            d, t = s >> 1, s & 1
            nbrs = (
                ((self._sigma_inv[d] if t else self.sigma[d]) << 1) | t,
                ((d ^ 1) << 1) | (t ^ (self.signs[d >> 1] < 0)),
            )
            for x in nbrs:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return len(seen) == n  # full cover (2n states) means non-orientable

    def face_walk_from(self, state: int) -> Tuple[int, ...]:
        """The state cycle of the face traversal starting at `state`."""
        walk = [state]
        x = self.state_next(state)
        while x != state:
            walk.append(x)
            x = self.state_next(x)
        return tuple(walk)

    # ------------------------------------------------------------------
    # rooted canonical codes

    def _code_from(self, start_state: int, vlabels: Sequence[int],
                   roots: Sequence[int]) -> Tuple:
        sigma = self.sigma
        sigma_inv = self._sigma_inv
        signs = self.signs
        vertex_of = self._vertex_of

        ids: Dict[int, int] = {start_state: 0}
        queue = [start_state]
        moves: List[Tuple[int, int, int]] = []
        qi = 0
        while qi < len(queue):
            s = queue[qi]
            qi += 1
            d, t = s >> 1, s & 1
            nxt_sigma = ((sigma_inv[d] if t else sigma[d]) << 1) | t
            nxt_alpha = ((d ^ 1) << 1) | (t ^ (signs[d >> 1] < 0))
            pair = []
            for x in (nxt_sigma, nxt_alpha):
                if x not in ids:
                    ids[x] = len(queue)
                    queue.append(x)
                pair.append(ids[x])
            moves.append((pair[0], pair[1], vlabels[vertex_of[d]]))

        def dart_id(dart: int) -> int:
            a = ids.get(dart << 1)
            b = ids.get((dart << 1) | 1)
            vals = [x for x in (a, b) if x is not None]
            if not vals:
                raise MapError("root dart not reached by the rooted traversal")
            return min(vals)

        return (tuple(moves), tuple(dart_id(r) for r in roots))

    def canonical_code(self, roots: Sequence[int], vlabels: Sequence[int]) -> Tuple:
        """Isomorphism code for the rooted labeled map.

        Orientable maps must be stored with all-positive signs; their code is
        orientation-sensitive.  Signed (non-orientable) maps get the minimum
        over the two directions at the first root, which quotients by vertex
        flips and the global mirror.
        """
        if not roots:
            raise MapError("canonical_code needs at least one root dart")
        r = roots[0]
        if all(s == 1 for s in self.signs):
            return self._code_from(r << 1, vlabels, roots)
        return min(
            self._code_from(r << 1, vlabels, roots),
            self._code_from((r << 1) | 1, vlabels, roots),
        )


def build_sigma(n_darts: int, cycles: Iterable[Sequence[int]]) -> List[int]:
    """Assemble a sigma permutation from vertex cycles; unmentioned darts are fixed."""
    sigma = list(range(n_darts))
    for cyc in cycles:
        k = len(cyc)
        for i, d in enumerate(cyc):
            sigma[d] = cyc[(i + 1) % k]
    return sigma
