"""Brute-force enumeration of rooted planar (hyper)maps.

Two independent routes are provided.

* Rotation route: fix the edge involution ``alpha = (0 1)(2 3)...`` and run
  over every rotation ``sigma`` of ``2E`` darts, keeping transitive planar
  pairs.  Used to count rooted planar maps for very small ``E``.
* Gluing route: a map with a boundary is a gluing of polygons (the
  boundary face and the inner faces).  Starting from the labeled boundary
  polygon, the lowest open side is either glued to another open side or to
  side 0 of a fresh face.  Every rooted map is produced exactly once, and a
  partial gluing is abandoned as soon as it stops being planar.

In a hypermap the sides are split into two classes: sides of black faces
together with boundary sides marked black (``'b'``), and sides of white
faces together with boundary sides marked white (``'w'``).  Only sides of
different classes may be glued; this encodes both the proper coloring of
inner faces and the rule for edges seen twice along the boundary.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

MAX_EDGES = 6
MAX_PROFILE_FACES = 8
BLACK, WHITE = "b", "w"


class OracleLimitError(ValueError):
    """The requested enumeration exceeds the safety cap."""


# -- permutations --------------------------------------------------------------

def cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = perm[j]
            out.append(tuple(cyc))
    return out


def compose_perm(f: Sequence[int], g: Sequence[int]) -> List[int]:
    """``f o g`` (apply ``g`` first)."""
    return [f[g[i]] for i in range(len(g))]


def is_transitive(*perms: Sequence[int]) -> bool:
    n = len(perms[0])
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for p in perms:
            j = p[i]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


@dataclass(frozen=True)
class RootedMap:
    """A map as a rotation ``sigma`` and a fixed-point-free involution ``alpha``.

    Vertices are the cycles of ``sigma``, faces the cycles of ``phi = sigma o alpha``.
    ``dart_class`` optionally records the side class (``'b'``/``'w'``) of each dart.
    """

    sigma: Tuple[int, ...]
    alpha: Tuple[int, ...]
    root: int = 0
    dart_class: Optional[Tuple[Optional[str], ...]] = None

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)) or sorted(self.alpha) != list(range(n)):
            raise ValueError("sigma and alpha must be permutations of the same darts")
        if any(self.alpha[i] == i or self.alpha[self.alpha[i]] != i for i in range(n)):
            raise ValueError("alpha must be a fixed-point-free involution")
        if n and not 0 <= self.root < n:
            raise ValueError("root dart out of range")

    @property
    def phi(self) -> List[int]:
        return compose_perm(self.sigma, self.alpha)

    @property
    def num_edges(self) -> int:
        return len(self.alpha) // 2

    def vertices(self) -> List[Tuple[int, ...]]:
        return cycles(self.sigma)

    def faces(self) -> List[Tuple[int, ...]]:
        return cycles(self.phi)

    def is_connected(self) -> bool:
        return is_transitive(self.sigma, self.alpha)

    def euler_characteristic(self) -> int:
        return len(self.vertices()) - self.num_edges + len(self.faces())

    def is_planar(self) -> bool:
        return self.is_connected() and self.euler_characteristic() == 2

    def root_face(self) -> Tuple[int, ...]:
        """The boundary face, read from the root dart."""
        phi = self.phi
        out = [self.root]
        j = phi[self.root]
        while j != self.root:
            out.append(j)
            j = phi[j]
        return tuple(out)

    def vertex_of(self) -> Dict[int, int]:
        return {d: i for i, cyc in enumerate(self.vertices()) for d in cyc}


# -- rotation route --------------------------------------------------------------------

def rooted_maps_by_rotations(E: int) -> Tuple[int, int]:
    """``(labeled, rooted)`` planar map counts with ``E`` edges.

    ``labeled`` is the number of rotations ``sigma`` making a connected planar
    map with the fixed involution; it must equal ``rooted * 2^(E-1) (E-1)!``.
    """
    if E < 1:
        raise ValueError("E must be positive")
    if E > 4:
        raise OracleLimitError("the rotation route is limited to 4 edges")
    n = 2 * E
    alpha = [i ^ 1 for i in range(n)]
    labeled = 0
    for sigma in itertools.permutations(range(n)):
        if not is_transitive(sigma, alpha):
            continue
        phi = [sigma[alpha[i]] for i in range(n)]
        if len(cycles(sigma)) - E + len(cycles(phi)) == 2:
            labeled += 1
    norm = 2 ** (E - 1) * math.factorial(E - 1)
    if labeled % norm:
        raise ArithmeticError("labeled count is not divisible by the relabeling group size")
    return labeled, labeled // norm


def rooted_maps_by_pairs(E: int) -> Tuple[int, int]:
    """``(labeled, rooted)`` with both ``sigma`` and ``alpha`` free; divisor ``(2E-1)!``."""
    if E > 3:
        raise OracleLimitError("the pair route is limited to 3 edges")
    n = 2 * E
    count = 0
    involutions = []

    def matchings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for i in range(1, len(rest)):
            for m in matchings(rest[1:i] + rest[i + 1:]):
                yield [(a, rest[i])] + m

    for m in matchings(list(range(n))):
        al = [0] * n
        for a, b in m:
            al[a], al[b] = b, a
        involutions.append(al)
    for sigma in itertools.permutations(range(n)):
        for al in involutions:
            if is_transitive(sigma, al):
                phi = [sigma[al[i]] for i in range(n)]
                if len(cycles(sigma)) - E + len(cycles(phi)) == 2:
                    count += 1
    norm = math.factorial(n - 1)
    if count % norm:
        raise ArithmeticError("labeled count is not divisible by (2E-1)!")
    return count, count // norm


# -- boundary words and constraints ---------------------------------------------------------

@dataclass(frozen=True)
class BoundaryWord:
    """Letters ``'b'``/``'w'``: the color of the boundary as seen from each edge.

    The inner face across a ``'b'`` edge is white, across a ``'w'`` edge black.
    """

    letters: str

    def __post_init__(self):
        word = self.letters.replace("•", BLACK).replace("∘", WHITE)
        if set(word) - {BLACK, WHITE}:
            raise ValueError(f"invalid boundary word {self.letters!r}")
        object.__setattr__(self, "letters", word)

    @classmethod
    def alternating(cls, r: int) -> "BoundaryWord":
        return cls((WHITE + BLACK) * r)

    @classmethod
    def monochromatic(cls, color: str, p: int) -> "BoundaryWord":
        return cls(color * p)

    @classmethod
    def mixed(cls, p: int, r: int) -> "BoundaryWord":
        return cls(BLACK * p + (WHITE + BLACK) * r)

    def __len__(self):
        return len(self.letters)

    def is_alternating(self) -> bool:
        return len(self.letters) % 2 == 0 and self.letters == (WHITE + BLACK) * (len(self.letters) // 2)


@dataclass(frozen=True)
class FaceConstraint:
    """Allowed inner face degrees per color; ``colored=False`` gives plain maps."""

    black: Optional[Tuple[int, ...]] = None
    white: Optional[Tuple[int, ...]] = None
    colored: bool = True
    name: str = "custom"

    def degrees(self, color: Optional[str], budget: int) -> List[int]:
        allowed = {BLACK: self.black, WHITE: self.white, None: None}[color]
        if allowed is None:
            return list(range(1, budget + 1))
        return [k for k in allowed if k <= budget]

    @classmethod
    def constellation(cls, m: int, max_white: int = 12) -> "FaceConstraint":
        return cls((m,), tuple(range(m, max_white + 1, m)), True, f"constellation(m={m})")

    @classmethod
    def eulerian_triangulation(cls) -> "FaceConstraint":
        return cls((3,), (3,), True, "eulerian-triangulation")

    @classmethod
    def hypermap(cls, black: Iterable[int], white: Iterable[int]) -> "FaceConstraint":
        return cls(tuple(sorted(black)), tuple(sorted(white)), True, "hypermap")

    @classmethod
    def any_degree(cls) -> "FaceConstraint":
        return cls(None, None, False, "plain-map")


# -- gluing route -----------------------------------------------------------------------------

@dataclass(frozen=True)
class GluedMap:
    """A completed gluing: polygon 0 is the boundary."""

    phi: Tuple[int, ...]
    alpha: Tuple[int, ...]
    dart_face: Tuple[int, ...]
    face_color: Tuple[Optional[str], ...]
    face_degree: Tuple[int, ...]
    dart_class: Tuple[Optional[str], ...]
    boundary_length: int

    def rooted_map(self) -> RootedMap:
        sigma = tuple(self.phi[self.alpha[i]] for i in range(len(self.phi)))
        return RootedMap(sigma, self.alpha, 0, self.dart_class)

    def corner_vertices(self) -> List[int]:
        """Vertex label of the corner at the start of each dart."""
        n = len(self.phi)
        sigma = [self.phi[self.alpha[i]] for i in range(n)]
        label = [-1] * n
        for v, cyc in enumerate(cycles(sigma)):
            for d in cyc:
                label[d] = v
        return label

    @property
    def num_vertices(self) -> int:
        return len(set(self.corner_vertices()))

    @property
    def num_edges(self) -> int:
        return len(self.phi) // 2

    def profile(self, color: Optional[str]) -> Tuple[int, ...]:
        return tuple(sorted(d for d, c in zip(self.face_degree[1:], self.face_color[1:]) if c == color))

    def is_semi_simple(self) -> bool:
        """No vertex at an odd boundary corner is visited twice by the boundary."""
        if self.boundary_length == 0:
            return True
        label = self.corner_vertices()
        seen = Counter(label[k] for k in range(self.boundary_length))
        return not any(seen[label[k]] > 1 for k in range(1, self.boundary_length, 2))


class _Gluer:
    def __init__(self, word: str, constraint: FaceConstraint, side_budget: int,
                 profile: Optional[Dict[Tuple[str, int], int]]):
        self.constraint = constraint
        self.side_budget = side_budget
        self.profile = dict(profile) if profile is not None else None
        L = len(word)
        self.phi = [(i + 1) % L for i in range(L)]
        self.alpha = [-1] * L
        self.dart_face = [0] * L
        self.dart_class = [c if constraint.colored else None for c in word]
        self.face_start = [0]
        self.face_color: List[Optional[str]] = [None]
        self.face_degree = [L]
        self.L = L

    def _planar(self) -> bool:
        n = len(self.phi)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        glued = 0
        phi, alpha = self.phi, self.alpha
        for s in range(n):
            o = alpha[s]
            if o > s:
                glued += 1
                for a, b in ((s, phi[o]), (phi[s], o)):
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[ra] = rb
        V = sum(1 for i in range(n) if find(i) == i)
        opens = [s for s in range(n) if alpha[s] < 0]
        seen = set()
        b = 0
        for s in opens:
            if s in seen:
                continue
            b += 1
            x = s
            while x not in seen:
                seen.add(x)
                y = phi[x]
                while alpha[y] >= 0:
                    y = phi[alpha[y]]
                x = y
        chi = V - (glued + len(opens)) + len(self.face_degree)
        return chi == 2 - b if b else chi == 2

    def _new_face_options(self, cls: Optional[str]):
        if self.constraint.colored:
            color = WHITE if cls == BLACK else BLACK
        else:
            color = None
        budget = self.side_budget - len(self.phi)
        for k in self.constraint.degrees(color, budget):
            if self.profile is not None and self.profile.get((color, k), 0) <= 0:
                continue
            yield color, k

    def run(self, emit: Callable[[GluedMap], None]) -> None:
        if self.L == 0:
            if not self.profile or not any(self.profile.values()):
                emit(self._snapshot())
            return
        self._step(0, emit)

    def _snapshot(self) -> GluedMap:
        return GluedMap(tuple(self.phi), tuple(self.alpha), tuple(self.dart_face),
                        tuple(self.face_color), tuple(self.face_degree), tuple(self.dart_class), self.L)

    def _step(self, start: int, emit) -> None:
        n = len(self.phi)
        s = start
        while s < n and self.alpha[s] >= 0:
            s += 1
        if s == n:
            if self.profile is None or not any(self.profile.values()):
                emit(self._snapshot())
            return
        cls = self.dart_class[s]
        # glue to an existing open side
        for o in range(s + 1, n):
            if self.alpha[o] >= 0:
                continue
            if cls is not None and self.dart_class[o] == cls:
                continue
            self.alpha[s], self.alpha[o] = o, s
            if self._planar():
                self._step(s + 1, emit)
            self.alpha[s] = self.alpha[o] = -1
        # glue to side 0 of a new face
        for color, k in list(self._new_face_options(cls)):
            base = n
            f = len(self.face_degree)
            self.phi.extend(base + (i + 1) % k for i in range(k))
            self.alpha.extend([-1] * k)
            self.dart_face.extend([f] * k)
            self.dart_class.extend([color] * k)
            self.face_start.append(base)
            self.face_color.append(color)
            self.face_degree.append(k)
            if self.profile is not None:
                self.profile[(color, k)] -= 1
            self.alpha[s], self.alpha[base] = base, s
            self._step(s + 1, emit)
            self.alpha[s] = -1
            if self.profile is not None:
                self.profile[(color, k)] += 1
            del self.phi[base:], self.alpha[base:], self.dart_face[base:], self.dart_class[base:]
            self.face_start.pop()
            self.face_color.pop()
            self.face_degree.pop()


def iter_glued_maps(boundary: BoundaryWord, constraint: FaceConstraint, max_edges: int,
                    profile: Optional[Mapping[Tuple[str, int], int]] = None) -> Iterator[GluedMap]:
    """All rooted planar maps with the given boundary, face constraint and at most ``max_edges`` edges."""
    out: List[GluedMap] = []
    _Gluer(boundary.letters, constraint, 2 * max_edges, profile).run(out.append)
    return iter(out)


MapKey = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


def enumerate_maps(boundary: BoundaryWord, constraint: FaceConstraint, max_edges: int,
                   semi_simple: bool = False) -> Counter:
    """Counts keyed by ``(vertices, black face degrees, white face degrees)``."""
    if max_edges > MAX_EDGES:
        raise OracleLimitError(f"max_edges {max_edges} exceeds the safety cap {MAX_EDGES}")
    if max_edges < 0:
        raise ValueError("max_edges must be nonnegative")
    counts: Counter = Counter()

    def emit(g: GluedMap):
        if semi_simple and not g.is_semi_simple():
            return
        if constraint.colored:
            key = (g.num_vertices, g.profile(BLACK), g.profile(WHITE))
        else:
            key = (g.num_vertices, g.profile(None), ())
        counts[key] += 1

    _Gluer(boundary.letters, constraint, 2 * max_edges, None).run(emit)
    return counts


def count_with_profile(boundary: BoundaryWord, constraint: FaceConstraint,
                       profile: Mapping[Tuple[str, int], int], semi_simple: bool = False) -> Counter:
    """Counts by vertex number for an exact multiset of inner faces ``{(color, degree): n}``."""
    faces = sum(profile.values())
    if faces > MAX_PROFILE_FACES:
        raise OracleLimitError(f"{faces} inner faces exceed the cap {MAX_PROFILE_FACES}")
    sides = len(boundary) + sum(k * n for (_, k), n in profile.items())
    counts: Counter = Counter()
    if sides % 2:
        return counts

    def emit(g: GluedMap):
        if semi_simple and not g.is_semi_simple():
            return
        counts[g.num_vertices] += 1

    _Gluer(boundary.letters, constraint, sides, dict(profile)).run(emit)
    return counts


def eulerian_triangulation_count(n: int, r: int, semi_simple: bool = False) -> int:
    """Eulerian triangulations with ``n`` black triangles and an alternating boundary of length ``2r``."""
    c = count_with_profile(BoundaryWord.alternating(r), FaceConstraint.eulerian_triangulation(),
                           {(BLACK, 3): n, (WHITE, 3): n}, semi_simple)
    return sum(c.values())


def plain_rooted_maps(E: int) -> int:
    """Rooted planar maps with ``E`` edges via the gluing route (any root face degree)."""
    total = 0
    for L in range(1, 2 * E + 1):
        counts = enumerate_maps(BoundaryWord("w" * L), FaceConstraint.any_degree(), E)
        for (_, degrees, _), c in counts.items():
            if L + sum(degrees) == 2 * E:
                total += c
    return total


def check_orientation_potential(g: GluedMap, m: int) -> bool:
    """Orient each edge along its white-class side; the orientation must admit a
    potential ``h: vertices -> Z/m`` with ``h(head) - h(tail) = 1`` on every edge.

    Equivalently, along every cycle (in particular the boundary contour) the
    clockwise minus counterclockwise edge count is divisible by ``m``.
    """
    n = len(g.phi)
    if any(c is None for c in g.dart_class):
        raise ValueError("an uncolored map has no canonical orientation")
    for f, (c, k) in enumerate(zip(g.face_color[1:], g.face_degree[1:]), start=1):
        if (c == BLACK and k != m) or (c == WHITE and k % m):
            raise ValueError("not an m-constellation")
    if n == 0:
        return True
    label = g.corner_vertices()
    adj: Dict[int, List[Tuple[int, int]]] = {}
    for s in range(n):
        if g.dart_class[s] == WHITE:
            tail, head = label[s], label[g.phi[s]]
            adj.setdefault(tail, []).append((head, 1))
            adj.setdefault(head, []).append((tail, -1))
    h: Dict[int, int] = {}
    for v0 in adj:
        if v0 in h:
            continue
        h[v0] = 0
        stack = [v0]
        while stack:
            v = stack.pop()
            for u, step in adj[v]:
                val = (h[v] + step) % m
                if u not in h:
                    h[u] = val
                    stack.append(u)
                elif h[u] != val:
                    return False
    return True


def boundary_turning(g: GluedMap) -> int:
    """Clockwise minus counterclockwise oriented edges along the boundary contour."""
    return sum(1 if g.dart_class[k] == WHITE else -1 for k in range(g.boundary_length))
